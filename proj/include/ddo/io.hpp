// Copyright 2026 The ddo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "ddo/channels.hpp"
#include "ddo/matrix.hpp"

namespace ddo {

using json = nlohmann::json;

// Matrix codec: {"rows": n, "cols": m, "data": [[re, im], ...]} row-major.
// nlohmann emits shortest round-tripping decimal forms, so the codec is
// bit-exact for finite doubles.

inline json matrix_to_json(const CMatrix &m) {
    json data = json::array();
    for (const cx &e : m.entries) data.push_back(json::array({e.real(), e.imag()}));
    return json{{"rows", m.rows}, {"cols", m.cols}, {"data", std::move(data)}};
}

inline CMatrix matrix_from_json(const json &j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw std::invalid_argument("matrix codec: expected {rows, cols, data}");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    const json &data = j.at("data");
    if (rows <= 0 || cols <= 0) throw std::invalid_argument("matrix codec: dimensions must be positive");
    if (!data.is_array() || data.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("matrix codec: data length does not match rows*cols");
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < m.size(); ++i) {
        const json &pair = data.at(i);
        if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() || !pair.at(1).is_number())
            throw std::invalid_argument("matrix codec: entries must be [re, im] number pairs");
        m.entries[i] = cx(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    if (!all_finite(m)) throw std::invalid_argument("matrix codec: entries must be finite");
    return m;
}

inline json kraus_channel_to_json(const KrausChannel &ch) {
    json ops = json::array();
    for (const CMatrix &k : ch.kraus) ops.push_back(matrix_to_json(k));
    return json{{"dim", ch.in_dim}, {"kraus", std::move(ops)}};
}

inline KrausChannel kraus_channel_from_json(const json &j, double tol = kDefaultTol) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
        throw std::invalid_argument("kraus codec: expected {dim, kraus}");
    const int d = j.at("dim").get<int>();
    std::vector<CMatrix> ops;
    for (const json &k : j.at("kraus")) ops.push_back(matrix_from_json(k));
    for (const CMatrix &k : ops)
        if (k.rows != d || k.cols != d)
            throw std::invalid_argument("kraus codec: operator shape disagrees with dim");
    return KrausChannel::make(std::move(ops), tol);
}

inline json instrument_to_json(const Instrument &inst) {
    json ops = json::array();
    for (const CMatrix &k : inst.ops) ops.push_back(matrix_to_json(k));
    return json{{"dim", inst.dim}, {"kraus", std::move(ops)}, {"labels", inst.labels}};
}

inline Instrument instrument_from_json(const json &j, double tol = kDefaultTol) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("kraus"))
        throw std::invalid_argument("instrument codec: expected {dim, kraus[, labels]}");
    const int d = j.at("dim").get<int>();
    std::vector<CMatrix> ops;
    for (const json &k : j.at("kraus")) ops.push_back(matrix_from_json(k));
    for (const CMatrix &k : ops)
        if (k.rows != d || k.cols != d)
            throw std::invalid_argument("instrument codec: operator shape disagrees with dim");
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    return Instrument::make(std::move(ops), std::move(labels), tol);
}

inline json read_json_file(const std::string &path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw std::invalid_argument("invalid JSON in " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << text;
}

inline CMatrix load_matrix_file(const std::string &path) { return matrix_from_json(read_json_file(path)); }

/// Ket file: matrix codec with cols = 1, unit norm within tol.
inline CMatrix load_ket_file(const std::string &path, double tol = kDefaultTol) {
    CMatrix v = load_matrix_file(path);
    if (v.cols != 1) throw std::invalid_argument("ket file must have cols = 1: " + path);
    double norm2 = 0.0;
    for (const cx &a : v.entries) norm2 += std::norm(a);
    if (std::abs(std::sqrt(norm2) - 1.0) > tol)
        throw std::domain_error("ket file is not normalized: " + path);
    return v;
}

inline CMatrix load_unitary_file(const std::string &path, double tol = kDefaultTol) {
    CMatrix u = load_matrix_file(path);
    require_square(u, "unitary file");
    if (max_abs_diff(multiply(adjoint(u), u), CMatrix::identity(u.rows)) > tol)
        throw std::domain_error("matrix file is not unitary within tolerance: " + path);
    return u;
}

/// Canonical decimal form of a double (shortest representation that parses
/// back to the same value); used by the process-text serializer.
inline std::string canonical_double(double x) { return json(x).dump(); }

}  // namespace ddo
