#pragma once

#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "lipfree/embedding.hpp"
#include "lipfree/exotic.hpp"
#include "lipfree/metric.hpp"
#include "lipfree/monotonicity.hpp"
#include "lipfree/transport.hpp"

// JSON and CSV encodings of the library's data. Every number written goes
// through round12, and objects keep insertion order, so output is
// byte-stable for a given input.
namespace lipfree::io {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

/// Throws Error(ParseError) on malformed JSON.
Json parse_json(std::string_view text);

/// Number or numeric string ("1/3", "0.25") to a scalar; decimals are read
/// exactly in rational mode.
template <typename Scalar>
Scalar scalar_from_json(const Json& j) {
    try {
        if (j.is_string()) return parse_scalar<Scalar>(j.get<std::string>());
        if (j.is_number_integer()) return Scalar(j.get<long long>());
        if (j.is_number()) return scalar_from_double<Scalar>(j.get<double>());
    } catch (const std::invalid_argument& e) {
        throw Error(Errc::ParseError, e.what());
    }
    throw Error(Errc::SchemaMismatch, "expected a number, got " + j.dump());
}

template <typename Scalar>
Json scalar_to_json(const Scalar& v) {
    return round12(to_double(v));
}

inline const Json& require(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw Error(Errc::SchemaMismatch, std::string("missing key '") + key + "'");
    return j.at(key);
}

template <typename Scalar>
FiniteMetricSpace<Scalar> metric_from_json(const Json& j, const Comparator<Scalar>& cmp = {}) {
    const Json& labels = require(j, "labels");
    const Json& rows = require(j, "dist");
    if (!labels.is_array() || !rows.is_array()) throw Error(Errc::SchemaMismatch, "'labels' and 'dist' must be arrays");
    std::vector<std::string> names;
    for (const auto& l : labels) {
        if (!l.is_string()) throw Error(Errc::SchemaMismatch, "labels must be strings");
        names.push_back(l.get<std::string>());
    }
    const Index n = static_cast<Index>(rows.size());
    Matrix<Scalar> dist(n, n);
    for (Index i = 0; i < n; ++i) {
        const Json& row = rows[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Index>(row.size()) != n) {
            throw Error(Errc::SchemaMismatch, "'dist' must be a square matrix");
        }
        for (Index k = 0; k < n; ++k) dist(i, k) = scalar_from_json<Scalar>(row[static_cast<std::size_t>(k)]);
    }
    return validate_metric(std::move(dist), std::move(names), cmp);
}

/// Square matrix with a header row of labels.
template <typename Scalar>
FiniteMetricSpace<Scalar> metric_from_csv(std::string_view text, const Comparator<Scalar>& cmp = {}) {
    auto split = [](const std::string& line) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
            while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
            cells.push_back(cell);
        }
        return cells;
    };
    std::stringstream in{std::string(text)};
    std::string line;
    std::vector<std::vector<std::string>> rows;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \r\t") == std::string::npos) continue;
        rows.push_back(split(line));
    }
    if (rows.empty()) throw Error(Errc::ParseError, "empty CSV");
    const std::vector<std::string> labels = rows.front();
    const Index n = static_cast<Index>(labels.size());
    if (static_cast<Index>(rows.size()) != n + 1) throw Error(Errc::SchemaMismatch, "CSV matrix is not square");
    Matrix<Scalar> dist(n, n);
    for (Index i = 0; i < n; ++i) {
        const auto& row = rows[static_cast<std::size_t>(i + 1)];
        if (static_cast<Index>(row.size()) != n) throw Error(Errc::SchemaMismatch, "CSV matrix is not square");
        for (Index k = 0; k < n; ++k) {
            try {
                dist(i, k) = parse_scalar<Scalar>(row[static_cast<std::size_t>(k)]);
            } catch (const std::invalid_argument& e) {
                throw Error(Errc::ParseError, e.what());
            }
        }
    }
    return validate_metric(std::move(dist), labels, cmp);
}

/// Reads a metric space from a .csv file or from JSON otherwise.
template <typename Scalar>
FiniteMetricSpace<Scalar> load_metric(const std::string& path, const Comparator<Scalar>& cmp = {}) {
    const std::string text = read_file(path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return metric_from_csv<Scalar>(text, cmp);
    return metric_from_json<Scalar>(parse_json(text), cmp);
}

/// Metric entries stay exact so files reload without rounding.
template <typename Scalar>
Json distance_to_json(const Scalar& v) {
    if constexpr (std::is_same_v<Scalar, Rational>) {
        if (boost::multiprecision::denominator(v) == 1) return scalar_to_json(v);
        return v.str();
    } else {
        return scalar_to_json(v);
    }
}

template <typename Scalar>
std::string distance_to_text(const Scalar& v) {
    const Json j = distance_to_json(v);
    return j.is_string() ? j.get<std::string>() : j.dump();
}

template <typename Scalar>
Json metric_to_json(const FiniteMetricSpace<Scalar>& space) {
    Json out;
    out["labels"] = space.labels();
    Json rows = Json::array();
    for (Index i = 0; i < space.size(); ++i) {
        Json row = Json::array();
        for (Index k = 0; k < space.size(); ++k) row.push_back(distance_to_json(space.d(i, k)));
        rows.push_back(std::move(row));
    }
    out["dist"] = std::move(rows);
    return out;
}

template <typename Scalar>
std::string metric_to_csv(const FiniteMetricSpace<Scalar>& space) {
    std::string out;
    for (Index i = 0; i < space.size(); ++i) out += (i ? "," : "") + space.label(i);
    out += "\n";
    for (Index i = 0; i < space.size(); ++i) {
        for (Index k = 0; k < space.size(); ++k) out += (k ? "," : "") + distance_to_text(space.d(i, k));
        out += "\n";
    }
    return out;
}

/// {"coeffs": {"label": number, ...}}
template <typename Scalar>
Functional<Scalar> functional_from_json(const Json& j, const FiniteMetricSpace<Scalar>& space) {
    const Json& coeffs = require(j, "coeffs");
    if (!coeffs.is_object()) throw Error(Errc::SchemaMismatch, "'coeffs' must be an object");
    Functional<Scalar> phi;
    for (const auto& [label, value] : coeffs.items()) phi.add(space.index_of(label), scalar_from_json<Scalar>(value));
    return phi;
}

template <typename Scalar>
Json functional_to_json(const Functional<Scalar>& phi, const FiniteMetricSpace<Scalar>& space) {
    Json coeffs = Json::object();
    for (const auto& [x, c] : phi.coeffs()) coeffs[space.label(x)] = scalar_to_json(c);
    Json out;
    out["coeffs"] = std::move(coeffs);
    return out;
}

/// {"pairs": [["x","y"], ...]}
template <typename Scalar>
PairSet pair_set_from_json(const Json& j, const FiniteMetricSpace<Scalar>& space) {
    const Json& pairs = require(j, "pairs");
    if (!pairs.is_array()) throw Error(Errc::SchemaMismatch, "'pairs' must be an array");
    std::vector<Pair> out;
    for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string()) {
            throw Error(Errc::SchemaMismatch, "each pair must be [\"x\", \"y\"]");
        }
        out.push_back({space.index_of(p[0].get<std::string>()), space.index_of(p[1].get<std::string>())});
    }
    return PairSet(std::move(out), space.size());
}

template <typename Scalar>
Json pair_measure_to_json(const PairMeasure<Scalar>& mu, const FiniteMetricSpace<Scalar>& space) {
    Json out = Json::array();
    for (const auto& [p, m] : mu.masses()) out.push_back(Json::array({space.label(p.x), space.label(p.y), scalar_to_json(m)}));
    return out;
}

template <typename Scalar>
Json potential_to_json(const LipschitzPotential<Scalar>& f, const FiniteMetricSpace<Scalar>& space) {
    Json out = Json::object();
    for (Index i = 0; i < space.size(); ++i) out[space.label(i)] = scalar_to_json(f(i));
    return out;
}

template <typename Scalar>
Json transport_to_json(const TransportResult<Scalar>& r, const FiniteMetricSpace<Scalar>& space) {
    Json out;
    out["value"] = scalar_to_json(r.value);
    out["coupling"] = pair_measure_to_json(r.coupling, space);
    out["representation"] = pair_measure_to_json(r.representation, space);
    out["potential"] = potential_to_json(r.potential, space);
    return out;
}

/// {"monotone": bool, "cycle": [["x","y"], ...], "slack": number}; slack is
/// 0 and the cycle empty for a monotone set.
template <typename Scalar>
Json certificate_to_json(const CycleCertificate<Scalar>& cert, const PairSet& pairs,
                         const FiniteMetricSpace<Scalar>& space) {
    Json out;
    out["monotone"] = cert.monotone;
    Json cycle = Json::array();
    for (std::size_t i : cert.cycle) cycle.push_back(Json::array({space.label(pairs[i].x), space.label(pairs[i].y)}));
    out["cycle"] = std::move(cycle);
    out["slack"] = scalar_to_json(cert.slack.value_or(Scalar(0)));
    return out;
}

template <typename Scalar>
Json embedding_to_json(const EmbeddingReport<Scalar>& report, const FiniteMetricSpace<Scalar>& space) {
    Json out;
    out["dimension"] = report.functions.size();
    out["lip_h"] = scalar_to_json(report.lip_h);
    out["lip_hinv"] = report.lip_hinv ? scalar_to_json(*report.lip_hinv) : Json(nullptr);
    out["distortion"] = report.distortion ? scalar_to_json(*report.distortion) : Json(nullptr);
    out["objective"] = scalar_to_json(report.objective);
    Json functions = Json::array();
    for (const auto& f : report.functions) functions.push_back(potential_to_json(f, space));
    out["functions"] = std::move(functions);
    return out;
}

/// {"horizon": N, "gamma": {"1": [[k,p], ...], ...}} for n = 1..max index.
Json gamma_to_json(const exotic::IFamily& family, int N);

}  // namespace lipfree::io
