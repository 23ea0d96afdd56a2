#include "adiascale/report.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "adiascale/env.hpp"
#include "adiascale/rng.hpp"

namespace adiascale {

using nlohmann::json;
namespace fs = std::filesystem;

ReportFormat report_format_from_string(const std::string& name) {
    if (name == "csv") return ReportFormat::csv;
    if (name == "jsonl") return ReportFormat::jsonl;
    if (name == "plotdata") return ReportFormat::plotdata;
    throw std::invalid_argument("unknown report format '" + name + "'");
}

const std::vector<std::string>& record_columns() {
    static const std::vector<std::string> columns = {
        "index",    "t_end",       "s_start",        "status",   "length",      "s_c",
        "epsilon",  "qd_D1",       "qd_D2",          "qd_Dhalf", "qd_over_l_D1", "qd_over_l_D2",
        "qd_over_l_Dhalf", "evaluations", "steps_taken", "refinements", "norm_drift",
        "quadrature_intervals", "failure"};
    return columns;
}

json record_to_json(const TraversalRecord& r) {
    json j;
    j["index"] = r.index;
    j["t_end"] = r.t_end;
    j["s_start"] = r.s_start;
    j["status"] = r.ok ? "ok" : "failed";
    if (!r.ok) j["failure"] = r.failure;
    j["length"] = r.length;
    j["s_c"] = r.s_c;
    j["epsilon"] = r.epsilon;
    json qd = json::object();
    json qdl = json::object();
    for (const auto& [v, x] : r.qd) qd[to_string(v)] = x;
    for (const auto& [v, x] : r.qd_over_l) qdl[to_string(v)] = x;
    j["qd"] = std::move(qd);
    j["qd_over_l"] = std::move(qdl);
    j["evaluations"] = r.evaluations;
    j["steps_taken"] = r.steps_taken;
    j["refinements"] = r.refinements;
    j["norm_drift"] = r.norm_drift;
    j["quadrature_intervals"] = r.quadrature_intervals;
    return j;
}

TraversalRecord record_from_json(const json& j) {
    try {
        TraversalRecord r;
        r.index = j.at("index").get<int>();
        r.t_end = j.at("t_end").get<double>();
        r.s_start = j.at("s_start").get<double>();
        r.ok = j.at("status").get<std::string>() == "ok";
        if (!r.ok) r.failure = j.at("failure").get<std::string>();
        r.length = j.at("length").get<double>();
        r.s_c = j.at("s_c").get<double>();
        r.epsilon = j.at("epsilon").get<double>();
        for (const auto& [k, v] : j.at("qd").items()) r.qd[proxy_variant_from_string(k)] = v.get<double>();
        for (const auto& [k, v] : j.at("qd_over_l").items()) r.qd_over_l[proxy_variant_from_string(k)] = v.get<double>();
        r.evaluations = j.at("evaluations").get<int>();
        r.steps_taken = j.at("steps_taken").get<std::int64_t>();
        r.refinements = j.at("refinements").get<int>();
        r.norm_drift = j.at("norm_drift").get<double>();
        r.quadrature_intervals = j.at("quadrature_intervals").get<std::size_t>();
        return r;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("record: ") + e.what());
    }
}

namespace {

std::ofstream open_for_write(const fs::path& file, std::ios::openmode mode = std::ios::trunc) {
    std::ofstream out(file, std::ios::out | mode);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    return out;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
}

std::string quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cells.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cells.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            cells.emplace_back();
        } else {
            cells.back() += c;
        }
    }
    return cells;
}

std::string optional_cell(const std::map<ProxyVariant, double>& m, ProxyVariant v) {
    const auto it = m.find(v);
    return it == m.end() ? std::string() : format_double(it->second);
}

double parse_number(const std::string& s) {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
    return v;
}

std::vector<TraversalRecord> merged(const ScalingSeries& series) {
    std::vector<TraversalRecord> all = series.records;
    all.insert(all.end(), series.failures.begin(), series.failures.end());
    std::sort(all.begin(), all.end(), [](const auto& a, const auto& b) { return a.index < b.index; });
    return all;
}

}  // namespace

void write_records_csv(const std::vector<TraversalRecord>& records, const fs::path& file) {
    std::ofstream out = open_for_write(file);
    const auto& cols = record_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    for (const auto& r : records) {
        out << r.index << ',' << format_double(r.t_end) << ',' << format_double(r.s_start) << ','
            << (r.ok ? "ok" : "failed") << ',' << format_double(r.length) << ',' << format_double(r.s_c) << ','
            << format_double(r.epsilon);
        for (auto v : kAllVariants) out << ',' << optional_cell(r.qd, v);
        for (auto v : kAllVariants) out << ',' << optional_cell(r.qd_over_l, v);
        out << ',' << r.evaluations << ',' << r.steps_taken << ',' << r.refinements << ','
            << format_double(r.norm_drift) << ',' << r.quadrature_intervals << ',' << quote(r.failure) << '\n';
    }
    if (!out) throw std::runtime_error("failed writing " + file.string());
}

std::vector<TraversalRecord> read_records_csv(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open " + file.string());
    std::string line;
    std::getline(in, line);
    if (split_csv(line) != record_columns()) throw std::invalid_argument("csv: unexpected header in " + file.string());
    std::vector<TraversalRecord> records;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto c = split_csv(line);
        if (c.size() != record_columns().size()) throw std::invalid_argument("csv: wrong column count");
        TraversalRecord r;
        r.index = std::stoi(c[0]);
        r.t_end = parse_number(c[1]);
        r.s_start = parse_number(c[2]);
        r.ok = c[3] == "ok";
        r.length = parse_number(c[4]);
        r.s_c = parse_number(c[5]);
        r.epsilon = parse_number(c[6]);
        std::size_t col = 7;
        for (auto v : kAllVariants) {
            if (!c[col].empty()) r.qd[v] = parse_number(c[col]);
            ++col;
        }
        for (auto v : kAllVariants) {
            if (!c[col].empty()) r.qd_over_l[v] = parse_number(c[col]);
            ++col;
        }
        r.evaluations = std::stoi(c[13]);
        r.steps_taken = std::stoll(c[14]);
        r.refinements = std::stoi(c[15]);
        r.norm_drift = parse_number(c[16]);
        r.quadrature_intervals = std::stoull(c[17]);
        r.failure = c[18];
        records.push_back(std::move(r));
    }
    return records;
}

void append_record_jsonl(const TraversalRecord& record, const fs::path& file) {
    std::ofstream out = open_for_write(file, std::ios::app);
    out << record_to_json(record).dump() << '\n';
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + file.string());
}

std::vector<TraversalRecord> read_records_jsonl(const fs::path& file) {
    std::vector<TraversalRecord> records;
    std::ifstream in(file);
    if (!in) return records;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        try {
            records.push_back(record_from_json(json::parse(line)));
        } catch (const json::parse_error&) {
            break;  // torn final line from an interrupted run
        }
    }
    return records;
}

void write_manifest(const fs::path& dir, const json& config, const std::string& hash,
                    const std::vector<std::string>& files) {
    json m;
    m["format"] = "adiascale-manifest/1";
    m["config"] = config;
    m["config_hash"] = hash;
    m["generator_identity"] = std::string(kGeneratorIdentity);
    m["files"] = files;
    std::ofstream out = open_for_write(dir / "manifest.json");
    out << m.dump(2) << '\n';
}

json read_manifest(const fs::path& dir) {
    std::ifstream in(dir / "manifest.json");
    if (!in) throw std::invalid_argument("no manifest in " + dir.string());
    return json::parse(in);
}

void emit_report(const ScalingSeries& series, const SweepConfig& config, const fs::path& dir,
                 const std::set<ReportFormat>& formats) {
    if (series.records.empty() && series.failures.empty()) throw std::invalid_argument("emit_report: empty series");
    ensure_dir(dir);
    const std::vector<TraversalRecord> all = merged(series);
    std::vector<std::string> files;

    if (formats.count(ReportFormat::csv)) {
        write_records_csv(all, dir / "records.csv");
        files.push_back("records.csv");
    }
    if (formats.count(ReportFormat::jsonl)) {
        std::ofstream out = open_for_write(dir / "records.jsonl");
        for (const auto& r : all) out << record_to_json(r).dump() << '\n';
        files.push_back("records.jsonl");
    }
    if (formats.count(ReportFormat::plotdata)) {
        for (auto v : config.variants) {
            const std::string name = "qd_over_l_" + to_string(v) + ".dat";
            std::ofstream out = open_for_write(dir / name);
            out << "# L Q_D/L (" << to_string(v) << ")\n";
            for (const auto& [l, y] : series.points(v)) out << format_double(l) << ' ' << format_double(y) << '\n';
            files.push_back(name);
        }
    }

    json fits = json::object();
    for (const auto& [v, f] : series.fits) {
        fits[to_string(v)] = {{"a", f.a},           {"b", f.b},
                              {"residual", f.residual}, {"stderr_a", f.stderr_a},
                              {"stderr_b", f.stderr_b}, {"points", f.points},
                              {"superlinear", f.superlinear()}};
    }
    {
        std::ofstream out = open_for_write(dir / "fits.json");
        out << fits.dump(2) << '\n';
        files.push_back("fits.json");
    }
    write_manifest(dir, to_json(config), config_hash(config), files);
}

void emit_report(const DimStudyTable& table, const fs::path& dir, const std::set<ReportFormat>& formats) {
    if (table.rows.empty()) throw std::invalid_argument("emit_report: empty dimension table");
    ensure_dir(dir);
    std::vector<std::string> files;
    json config;
    json dims = json::array();
    for (const auto& r : table.rows) dims.push_back(r.dimension);
    config["dims"] = dims;
    config["samples"] = table.rows.front().samples;
    config["t_end"] = table.t_end;
    config["seed"] = table.seed;

    if (formats.count(ReportFormat::csv)) {
        std::ofstream out = open_for_write(dir / "dim_study.csv");
        out << "dimension,mean_length,std_length,samples,redraws\n";
        for (const auto& r : table.rows) {
            out << r.dimension << ',' << format_double(r.mean_length) << ',' << format_double(r.std_length) << ','
                << r.samples << ',' << r.redraws << '\n';
        }
        files.push_back("dim_study.csv");
    }
    if (formats.count(ReportFormat::jsonl)) {
        std::ofstream out = open_for_write(dir / "dim_study.jsonl");
        for (const auto& r : table.rows) {
            out << json{{"dimension", r.dimension}, {"mean_length", r.mean_length}, {"std_length", r.std_length},
                        {"samples", r.samples}, {"redraws", r.redraws}}
                       .dump()
                << '\n';
        }
        files.push_back("dim_study.jsonl");
    }
    if (formats.count(ReportFormat::plotdata)) {
        std::ofstream out = open_for_write(dir / "length_vs_dim.dat");
        out << "# dim mean_L\n";
        for (const auto& r : table.rows) out << r.dimension << ' ' << format_double(r.mean_length) << '\n';
        files.push_back("length_vs_dim.dat");
    }
    json fits = json::object();
    const auto put = [&](const char* name, const std::optional<LinearFit>& f) {
        if (f) fits[name] = {{"a", f->a}, {"b", f->b}, {"residual", f->residual}, {"stderr_a", f->stderr_a}};
    };
    put("log", table.log_fit);
    put("linear", table.linear_fit);
    {
        std::ofstream out = open_for_write(dir / "fits.json");
        out << fits.dump(2) << '\n';
        files.push_back("fits.json");
    }
    std::ostringstream hash;
    hash << std::hex << std::hash<std::string>{}(config.dump());
    write_manifest(dir, config, hash.str(), files);
}

}  // namespace adiascale
