#include "adiascale/config.hpp"

#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "adiascale/path_io.hpp"

namespace adiascale {

using nlohmann::json;

void SweepConfig::validate() const {
    const auto fail = [](const std::string& what) { throw std::invalid_argument("config: " + what); };
    if (!(epsilon_th > 0.0 && epsilon_th < 1.0)) fail("epsilon_th must lie in (0, 1)");
    if (!(t0 > 0.0) || !std::isfinite(t0)) fail("t0 must be positive");
    if (!(k > 1.0) || !std::isfinite(k)) fail("k must exceed 1");
    if (!(kappa > 1.0) || !std::isfinite(kappa)) fail("kappa must exceed 1");
    if (ladder_points < 1) fail("ladder_points must be at least 1");
    if (variants.empty()) fail("variants must not be empty");
    if (!(s_start > 0.0) || !std::isfinite(s_start)) fail("s_start must be positive");
    if (!(gamma > 0.0 && gamma < 1.0)) fail("gamma must lie in (0, 1)");
    if (!(search_tolerance < epsilon_th) || !std::isfinite(search_tolerance)) fail("search_tolerance must be below epsilon_th");
    if (!(integrator_tolerance > 0.0)) fail("integrator_tolerance must be positive");
    if (!(quadrature_tolerance > 0.0)) fail("quadrature_tolerance must be positive");
    if (path.kind == PathKind::file) {
        if (path.file.empty()) fail("path.file is required for kind 'file'");
    } else if (path.kind == PathKind::random_trig || path.kind == PathKind::translation) {
        if (path.dimension < 2) fail("path.dimension must be at least 2");
        if (path.kind == PathKind::translation && !(path.v > 0.0)) fail("path.v must be positive");
    } else {
        fail("path.kind must be random-trig, translation or file");
    }
}

HamiltonianPath SweepConfig::build_path(const std::filesystem::path& base_dir) const {
    const std::uint64_t seed = path.seed.value_or(run_seed);
    switch (path.kind) {
        case PathKind::random_trig: return make_random_trig_path(seed, path.dimension);
        case PathKind::translation: return make_translation_path(seed, path.dimension, path.v);
        case PathKind::file: {
            std::filesystem::path file(path.file);
            if (file.is_relative() && !base_dir.empty()) file = base_dir / file;
            return load_path_from_file(file);
        }
        case PathKind::constant: break;
    }
    throw std::invalid_argument("config: unsupported path kind");
}

json to_json(const SweepConfig& c) {
    json path;
    path["kind"] = to_string(c.path.kind);
    if (c.path.kind == PathKind::file) {
        path["file"] = c.path.file;
    } else {
        path["dimension"] = c.path.dimension;
        if (c.path.seed) path["seed"] = *c.path.seed;
        if (c.path.kind == PathKind::translation) path["v"] = c.path.v;
    }
    json doc;
    doc["format"] = kSweepFormat;
    doc["path"] = std::move(path);
    doc["epsilon_th"] = c.epsilon_th;
    doc["t0"] = c.t0;
    doc["k"] = c.k;
    doc["kappa"] = c.kappa;
    doc["ladder_points"] = c.ladder_points;
    json variants = json::array();
    for (auto v : c.variants) variants.push_back(to_string(v));
    doc["variants"] = std::move(variants);
    doc["s_start"] = c.s_start;
    doc["gamma"] = c.gamma;
    doc["search_tolerance"] = c.search_tolerance;
    doc["integrator_tolerance"] = c.integrator_tolerance;
    doc["quadrature_tolerance"] = c.quadrature_tolerance;
    doc["output_dir"] = c.output_dir;
    doc["run_seed"] = c.run_seed;
    return doc;
}

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
}

double get_number(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number()) throw std::invalid_argument(std::string("config: '") + key + "' must be a number");
    return obj[key].get<double>();
}

std::uint64_t get_unsigned(const json& obj, const char* key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_number_unsigned()) {
        throw std::invalid_argument(std::string("config: '") + key + "' must be a non-negative integer");
    }
    return obj[key].get<std::uint64_t>();
}

PathKind parse_kind(const std::string& name) {
    if (name == "random-trig") return PathKind::random_trig;
    if (name == "translation") return PathKind::translation;
    if (name == "file") return PathKind::file;
    throw std::invalid_argument("config: unknown path kind '" + name + "'");
}

}  // namespace

SweepConfig sweep_config_from_json(const json& doc) {
    try {
        if (!doc.is_object()) throw std::invalid_argument("config: top level must be an object");
        reject_unknown(doc,
                       {"format", "path", "epsilon_th", "t0", "k", "kappa", "ladder_points", "variants", "s_start",
                        "gamma", "search_tolerance", "integrator_tolerance", "quadrature_tolerance", "output_dir",
                        "run_seed"},
                       "config");
        if (doc.contains("format") && doc["format"] != kSweepFormat) {
            throw std::invalid_argument("config: unsupported format " + doc["format"].dump());
        }
        if (!doc.contains("path") || !doc["path"].is_object()) throw std::invalid_argument("config: 'path' object is required");

        SweepConfig c;
        const json& p = doc["path"];
        if (!p.contains("kind") || !p["kind"].is_string()) throw std::invalid_argument("config: path.kind is required");
        c.path.kind = parse_kind(p["kind"].get<std::string>());
        if (c.path.kind == PathKind::file) {
            reject_unknown(p, {"kind", "file"}, "config.path");
            if (!p.contains("file") || !p["file"].is_string()) throw std::invalid_argument("config: path.file must be a string");
            c.path.file = p["file"].get<std::string>();
        } else {
            reject_unknown(p, c.path.kind == PathKind::translation ? std::set<std::string>{"kind", "seed", "dimension", "v"}
                                                                   : std::set<std::string>{"kind", "seed", "dimension"},
                           "config.path");
            if (p.contains("seed")) c.path.seed = get_unsigned(p, "seed", 0);
            c.path.dimension = static_cast<Eigen::Index>(get_unsigned(p, "dimension", 4));
            c.path.v = get_number(p, "v", c.path.v);
        }

        c.epsilon_th = get_number(doc, "epsilon_th", c.epsilon_th);
        c.t0 = get_number(doc, "t0", c.t0);
        c.k = get_number(doc, "k", c.k);
        c.kappa = get_number(doc, "kappa", c.kappa);
        if (doc.contains("ladder_points")) {
            if (!doc["ladder_points"].is_number_integer()) throw std::invalid_argument("config: 'ladder_points' must be an integer");
            c.ladder_points = doc["ladder_points"].get<int>();
        }
        if (doc.contains("variants")) {
            if (!doc["variants"].is_array()) throw std::invalid_argument("config: 'variants' must be an array");
            c.variants.clear();
            for (const auto& v : doc["variants"]) c.variants.push_back(proxy_variant_from_string(v.get<std::string>()));
        }
        c.s_start = get_number(doc, "s_start", c.s_start);
        c.gamma = get_number(doc, "gamma", c.gamma);
        c.search_tolerance = get_number(doc, "search_tolerance", c.search_tolerance);
        c.integrator_tolerance = get_number(doc, "integrator_tolerance", c.integrator_tolerance);
        c.quadrature_tolerance = get_number(doc, "quadrature_tolerance", c.quadrature_tolerance);
        if (doc.contains("output_dir")) {
            if (!doc["output_dir"].is_string()) throw std::invalid_argument("config: 'output_dir' must be a string");
            c.output_dir = doc["output_dir"].get<std::string>();
        }
        c.run_seed = get_unsigned(doc, "run_seed", c.run_seed);
        c.validate();
        return c;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: ") + e.what());
    }
}

SweepConfig load_sweep_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open config file " + file.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: malformed JSON: ") + e.what());
    }
    return sweep_config_from_json(doc);
}

std::string config_hash(const SweepConfig& config) {
    std::ostringstream out;
    out << std::hex << std::hash<std::string>{}(to_json(config).dump());
    return out.str();
}

}  // namespace adiascale
