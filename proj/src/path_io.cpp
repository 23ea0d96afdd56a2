#include "adiascale/path_io.hpp"

#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adiascale/rng.hpp"

namespace adiascale {

using nlohmann::json;

namespace {

void reject_unknown_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) throw std::invalid_argument(where + ": unknown key '" + key + "'");
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where) {
    const auto it = obj.find(key);
    if (it == obj.end()) throw std::invalid_argument(where + ": missing key '" + key + "'");
    return *it;
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) throw std::invalid_argument(where + ": expected a number");
    return v.get<double>();
}

Matrix parse_matrix(const json& rows, Eigen::Index d, const std::string& where, bool symmetric) {
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != d) {
        throw std::invalid_argument(where + ": expected " + std::to_string(d) + " rows");
    }
    Matrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
            throw std::invalid_argument(where + ": row " + std::to_string(i) + " must have " +
                                        std::to_string(d) + " entries");
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            m(i, j) = number(row[static_cast<std::size_t>(j)],
                             where + "[" + std::to_string(i) + "][" + std::to_string(j) + "]");
        }
    }
    if (symmetric) {
        for (Eigen::Index i = 0; i < d; ++i) {
            for (Eigen::Index j = i + 1; j < d; ++j) {
                if (m(i, j) != m(j, i)) {
                    std::ostringstream msg;
                    msg.precision(17);
                    msg << where << ": not symmetric at entry (" << i << "," << j << "): " << m(i, j)
                        << " != " << m(j, i);
                    throw std::invalid_argument(msg.str());
                }
            }
        }
    }
    return m;
}

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

CoefficientTerm parse_term(const json& t, std::size_t matrix_count, const std::string& where) {
    if (!t.is_object()) throw std::invalid_argument(where + ": expected an object");
    const std::string fn = require(t, "function", where).get<std::string>();
    CoefficientTerm term;
    if (fn == "sin" || fn == "cos") {
        reject_unknown_keys(t, {"target", "function", "amplitude", "frequency"}, where);
        term.function = fn == "sin" ? CoefficientFunction::sin : CoefficientFunction::cos;
        term.amplitude = number(require(t, "amplitude", where), where + ".amplitude");
        term.frequency = number(require(t, "frequency", where), where + ".frequency");
    } else if (fn == "polynomial") {
        reject_unknown_keys(t, {"target", "function", "coefficients"}, where);
        term.function = CoefficientFunction::polynomial;
        const json& c = require(t, "coefficients", where);
        if (!c.is_array() || c.empty()) throw std::invalid_argument(where + ".coefficients: expected a non-empty array");
        for (const auto& x : c) term.coefficients.push_back(number(x, where + ".coefficients"));
    } else {
        throw std::invalid_argument(where + ": unknown function identifier '" + fn + "'");
    }
    const json& target = require(t, "target", where);
    if (!target.is_number_integer() || target.get<long long>() < 1 ||
        static_cast<std::size_t>(target.get<long long>()) > matrix_count) {
        throw std::invalid_argument(where + ".target: must be an integer in [1, " +
                                    std::to_string(matrix_count) + "]");
    }
    term.target = static_cast<std::size_t>(target.get<long long>()) - 1;
    return term;
}

}  // namespace

HamiltonianPath parse_path(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("path file: malformed JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw std::invalid_argument("path file: top level must be an object");
        const std::string format = require(doc, "format", "path file").get<std::string>();
        if (format != kPathFormat) throw std::invalid_argument("path file: unsupported format '" + format + "'");
        const std::string kind = require(doc, "kind", "path file").get<std::string>();
        const json& dim = require(doc, "dimension", "path file");
        if (!dim.is_number_integer() || dim.get<long long>() < 2) {
            throw std::invalid_argument("path file: dimension must be an integer >= 2");
        }
        const auto d = static_cast<Eigen::Index>(dim.get<long long>());

        PathMetadata meta;
        meta.kind = PathKind::file;
        if (doc.contains("seed")) {
            if (!doc["seed"].is_number_unsigned()) throw std::invalid_argument("path file: seed must be an unsigned integer");
            meta.seed = doc["seed"].get<std::uint64_t>();
        }

        const json& mats = require(doc, "matrices", "path file");
        if (!mats.is_array() || mats.empty()) throw std::invalid_argument("path file: matrices must be a non-empty array");
        std::vector<Matrix> matrices;
        for (std::size_t i = 0; i < mats.size(); ++i) {
            matrices.push_back(parse_matrix(mats[i], d, "matrices[" + std::to_string(i) + "]", true));
        }

        if (kind == "series") {
            reject_unknown_keys(doc, {"format", "kind", "dimension", "seed", "generator_identity", "matrices", "terms"},
                                "path file");
            const json& terms = require(doc, "terms", "path file");
            if (!terms.is_array()) throw std::invalid_argument("path file: terms must be an array");
            SeriesModel model;
            model.matrices = std::move(matrices);
            for (std::size_t i = 0; i < terms.size(); ++i) {
                model.terms.push_back(parse_term(terms[i], model.matrices.size(), "terms[" + std::to_string(i) + "]"));
            }
            meta.description = "series";
            return make_series_path(std::move(model), std::move(meta));
        }
        if (kind == "translation") {
            reject_unknown_keys(doc,
                                {"format", "kind", "dimension", "seed", "generator_identity", "matrices", "v", "generator"},
                                "path file");
            if (matrices.size() != 1) throw std::invalid_argument("path file: translation expects matrices = [H0]");
            const double v = number(require(doc, "v", "path file"), "v");
            const Matrix k = parse_matrix(require(doc, "generator", "path file"), d, "generator", false);
            TranslationModel model = std::get<TranslationModel>(make_translation_path(matrices[0], k, v).model());
            meta.description = "translation";
            return HamiltonianPath(std::move(model), std::move(meta));
        }
        throw std::invalid_argument("path file: unknown kind '" + kind + "' (expected series or translation)");
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("path file: ") + e.what());
    }
}

HamiltonianPath load_path_from_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::invalid_argument("cannot open path file " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_path(buffer.str());
}

std::string serialize_path(const HamiltonianPath& path) {
    if (path.scale() != 1.0) throw std::invalid_argument("serialize_path: scaled paths are not serializable");
    json doc;
    doc["format"] = kPathFormat;
    doc["dimension"] = path.dimension();
    if (path.metadata().seed) {
        doc["seed"] = *path.metadata().seed;
        doc["generator_identity"] = std::string(kGeneratorIdentity);
    }
    std::visit(
        [&](const auto& m) {
            using T = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<T, SeriesModel>) {
                doc["kind"] = "series";
                json mats = json::array();
                for (const auto& mat : m.matrices) mats.push_back(matrix_json(mat));
                doc["matrices"] = std::move(mats);
                json terms = json::array();
                for (const auto& t : m.terms) {
                    json j;
                    j["target"] = t.target + 1;
                    j["function"] = to_string(t.function);
                    if (t.function == CoefficientFunction::polynomial) {
                        j["coefficients"] = t.coefficients;
                    } else {
                        j["amplitude"] = t.amplitude;
                        j["frequency"] = t.frequency;
                    }
                    terms.push_back(std::move(j));
                }
                doc["terms"] = std::move(terms);
            } else {
                doc["kind"] = "translation";
                doc["matrices"] = json::array({matrix_json(m.h0)});
                doc["generator"] = matrix_json(m.generator);
                doc["v"] = m.v;
            }
        },
        path.model());
    return doc.dump(2);
}

void save_path(const HamiltonianPath& path, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw std::runtime_error("cannot write path file " + file.string());
    out << serialize_path(path) << '\n';
}

}  // namespace adiascale
