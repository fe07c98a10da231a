// json_io.hpp - JSON file schemas for channels, states, observables,
// stochastic models, realizations, dilations and spectral reports.
//
// Complex matrices are row-major nested arrays of [re, im] pairs; real
// matrices are row-major nested arrays of numbers.
#pragma once

#include <fstream>
#include <string>

#include "json.hpp"

#include "classical.hpp"
#include "dilation.hpp"
#include "error.hpp"
#include "quantum.hpp"
#include "realization.hpp"
#include "spectral.hpp"

namespace delaydim::json {

using nlohmann::json;

namespace detail {

[[noreturn]] inline void schema_error(const std::string& what) {
    throw Error(ErrorCode::ParseError, "JSON schema: " + what);
}

inline const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) schema_error(std::string("missing field '") + key + "'");
    return j.at(key);
}

inline double number(const json& j, const std::string& what) {
    if (!j.is_number()) schema_error(what + " must be a number");
    return j.get<double>();
}

inline Eigen::Index positive_int(const json& j, const std::string& what) {
    if (!j.is_number_integer() || j.get<long long>() < 1) schema_error(what + " must be a positive integer");
    return static_cast<Eigen::Index>(j.get<long long>());
}

}  // namespace detail

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) detail::schema_error("complex entries must be [re, im] pairs");
    return {detail::number(j[0], "re"), detail::number(j[1], "im")};
}

inline json to_json(const CMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(complex_to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline CMatrix complex_matrix_from_json(const json& j, Eigen::Index d) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d)
        detail::schema_error("matrix must have " + std::to_string(d) + " rows");
    CMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
            detail::schema_error("matrix rows must have " + std::to_string(d) + " entries");
        for (Eigen::Index k = 0; k < d; ++k) m(i, k) = complex_from_json(row[static_cast<std::size_t>(k)]);
    }
    return m;
}

inline json to_json(const CVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v(i)));
    return out;
}

inline CVector complex_vector_from_json(const json& j, Eigen::Index n) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
        detail::schema_error("vector must have " + std::to_string(n) + " entries");
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = complex_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

inline json real_matrix_to_json(const RMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline RMatrix real_matrix_from_json(const json& j, Eigen::Index d) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != d)
        detail::schema_error("matrix must have " + std::to_string(d) + " rows");
    RMatrix m(d, d);
    for (Eigen::Index i = 0; i < d; ++i) {
        const json& row = j[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d)
            detail::schema_error("matrix rows must have " + std::to_string(d) + " entries");
        for (Eigen::Index k = 0; k < d; ++k) m(i, k) = detail::number(row[static_cast<std::size_t>(k)], "entry");
    }
    return m;
}

inline RVector real_vector_from_json(const json& j, Eigen::Index n) {
    if (!j.is_array() || static_cast<Eigen::Index>(j.size()) != n)
        detail::schema_error("vector must have " + std::to_string(n) + " entries");
    RVector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = detail::number(j[static_cast<std::size_t>(i)], "entry");
    return v;
}

// --- quantum objects --------------------------------------------------------

inline json to_json(const KrausChannel& ch) {
    json kraus = json::array();
    for (const auto& k : ch.kraus()) kraus.push_back(to_json(k));
    return {{"d", ch.dim()}, {"kraus", std::move(kraus)}};
}

inline KrausChannel channel_from_json(const json& j) {
    const Eigen::Index d = detail::positive_int(detail::field(j, "d"), "d");
    const json& list = detail::field(j, "kraus");
    if (!list.is_array() || list.empty()) detail::schema_error("'kraus' must be a non-empty array");
    std::vector<CMatrix> kraus;
    for (const auto& k : list) kraus.push_back(complex_matrix_from_json(k, d));
    return KrausChannel(std::move(kraus));
}

inline json to_json(const DensityMatrix& rho) { return {{"d", rho.dim()}, {"rho", to_json(rho.matrix())}}; }

inline DensityMatrix state_from_json(const json& j) {
    const Eigen::Index d = detail::positive_int(detail::field(j, "d"), "d");
    return DensityMatrix(complex_matrix_from_json(detail::field(j, "rho"), d));
}

inline json to_json(const Observable& a) { return {{"d", a.dim()}, {"a", to_json(a.matrix())}}; }

inline Observable observable_from_json(const json& j) {
    const Eigen::Index d = detail::positive_int(detail::field(j, "d"), "d");
    return Observable(complex_matrix_from_json(detail::field(j, "a"), d));
}

// --- classical model --------------------------------------------------------

inline json to_json(const StochasticModel& model) {
    return {{"dc", model.dc()},
            {"s", real_matrix_to_json(model.s())},
            {"p", std::vector<double>(model.p().data(), model.p().data() + model.p().size())},
            {"a", std::vector<double>(model.a_out().data(), model.a_out().data() + model.a_out().size())}};
}

inline StochasticModel stochastic_model_from_json(const json& j) {
    const Eigen::Index dc = detail::positive_int(detail::field(j, "dc"), "dc");
    return StochasticModel(real_matrix_from_json(detail::field(j, "s"), dc),
                           real_vector_from_json(detail::field(j, "p"), dc),
                           real_vector_from_json(detail::field(j, "a"), dc));
}

// --- realization and derived reports ------------------------------------------

inline json to_json(const LinearRealization& real) {
    return {{"r", real.r},
            {"m", to_json(real.m)},
            {"l", to_json(real.l)},
            {"rvec", to_json(real.rvec)},
            {"norm", real.contraction_norm}};
}

/// The stored "norm" is informational; it is recomputed from m on load.
inline LinearRealization realization_from_json(const json& j) {
    const Eigen::Index r = detail::positive_int(detail::field(j, "r"), "r");
    return make_realization(complex_matrix_from_json(detail::field(j, "m"), r),
                            complex_vector_from_json(detail::field(j, "l"), r),
                            complex_vector_from_json(detail::field(j, "rvec"), r));
}

inline json to_json(const QuantumRealization& q) {
    return {{"dim", q.dim}, {"channel", to_json(q.channel)}, {"rho", to_json(q.rho)}, {"a", to_json(q.a)}};
}

inline QuantumRealization quantum_realization_from_json(const json& j) {
    const Eigen::Index dim = detail::positive_int(detail::field(j, "dim"), "dim");
    QuantumRealization q{dim, channel_from_json(detail::field(j, "channel")),
                         state_from_json(detail::field(j, "rho")), observable_from_json(detail::field(j, "a"))};
    if (q.channel.dim() != dim || q.rho.dim() != dim || q.a.dim() != dim)
        throw Error(ErrorCode::DimensionMismatch, "dilation parts disagree with 'dim'");
    return q;
}

inline json to_json(const SpectralReport& rep) {
    json poles = json::array();
    for (const Complex& p : rep.poles) poles.push_back(complex_to_json(p));
    json min_dc = rep.min_classical_dimension ? json(*rep.min_classical_dimension) : json("unbounded");
    return {{"poles", std::move(poles)}, {"min_dc", std::move(min_dc)}, {"tol", rep.tolerance}};
}

inline SpectralReport spectral_report_from_json(const json& j) {
    SpectralReport rep;
    const json& poles = detail::field(j, "poles");
    if (!poles.is_array()) detail::schema_error("'poles' must be an array");
    for (const auto& p : poles) rep.poles.push_back(complex_from_json(p));
    const json& min_dc = detail::field(j, "min_dc");
    if (min_dc.is_string()) {
        if (min_dc.get<std::string>() != "unbounded") detail::schema_error("'min_dc' must be an integer or \"unbounded\"");
    } else {
        rep.min_classical_dimension = static_cast<int>(detail::positive_int(min_dc, "min_dc"));
    }
    rep.tolerance = detail::number(detail::field(j, "tol"), "tol");
    return rep;
}

// --- files ------------------------------------------------------------------

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::ParseError, "'" + path + "': " + e.what());
    }
}

inline void save_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

}  // namespace delaydim::json
