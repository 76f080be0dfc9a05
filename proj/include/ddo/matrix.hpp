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

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace ddo {

using cx = std::complex<double>;

inline constexpr double kDefaultTol = 1e-9;       // predicates
inline constexpr double kAlgebraicTol = 1e-12;    // algebraic identities

/// Dense complex matrix, row-major storage. Values are immutable by
/// convention once handed to an operation; all functions below are pure.
struct CMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cx> entries;  // row-major, rows*cols

    CMatrix() = default;
    CMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<std::size_t>(r) * c) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("CMatrix: dimensions must be positive");
    }
    CMatrix(int r, int c, std::vector<cx> data) : rows(r), cols(c), entries(std::move(data)) {
        if (r <= 0 || c <= 0) throw std::invalid_argument("CMatrix: dimensions must be positive");
        if (entries.size() != static_cast<std::size_t>(r) * c)
            throw std::invalid_argument("CMatrix: entry count does not match rows*cols");
    }

    static CMatrix zero(int r, int c) { return CMatrix(r, c); }
    static CMatrix identity(int n) {
        CMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
        return m;
    }

    cx &at(int i, int j) { return entries[static_cast<std::size_t>(i) * cols + j]; }
    const cx &at(int i, int j) const { return entries[static_cast<std::size_t>(i) * cols + j]; }

    bool square() const { return rows == cols; }
    std::size_t size() const { return entries.size(); }
};

inline void require_square(const CMatrix &m, const char *who) {
    if (!m.square()) throw std::invalid_argument(std::string(who) + ": matrix must be square");
}

inline bool all_finite(const CMatrix &m) {
    for (const cx &e : m.entries)
        if (!std::isfinite(e.real()) || !std::isfinite(e.imag())) return false;
    return true;
}

inline CMatrix multiply(const CMatrix &a, const CMatrix &b) {
    if (a.cols != b.rows) throw std::invalid_argument("multiply: inner dimensions disagree");
    CMatrix c(a.rows, b.cols);
    // ikj order keeps the inner loop contiguous in both b and c.
    for (int i = 0; i < a.rows; ++i) {
        const cx *arow = &a.entries[static_cast<std::size_t>(i) * a.cols];
        cx *crow = &c.entries[static_cast<std::size_t>(i) * c.cols];
        for (int k = 0; k < a.cols; ++k) {
            const cx aik = arow[k];
            if (aik == cx(0.0, 0.0)) continue;
            const cx *brow = &b.entries[static_cast<std::size_t>(k) * b.cols];
            for (int j = 0; j < b.cols; ++j) crow[j] += aik * brow[j];
        }
    }
    return c;
}

inline CMatrix add(const CMatrix &a, const CMatrix &b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("add: shape mismatch");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.entries[i] += b.entries[i];
    return c;
}

inline CMatrix subtract(const CMatrix &a, const CMatrix &b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("subtract: shape mismatch");
    CMatrix c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c.entries[i] -= b.entries[i];
    return c;
}

inline CMatrix scaled(const CMatrix &a, cx s) {
    CMatrix c = a;
    for (cx &e : c.entries) e *= s;
    return c;
}

inline CMatrix adjoint(const CMatrix &a) {
    CMatrix c(a.cols, a.rows);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) c.at(j, i) = std::conj(a.at(i, j));
    return c;
}

inline cx trace(const CMatrix &a) {
    require_square(a, "trace");
    cx t = 0.0;
    for (int i = 0; i < a.rows; ++i) t += a.at(i, i);
    return t;
}

/// Tr(a·b) without forming the product.
inline cx trace_product(const CMatrix &a, const CMatrix &b) {
    if (a.cols != b.rows || a.rows != b.cols) throw std::invalid_argument("trace_product: shape mismatch");
    cx t = 0.0;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) t += a.at(i, j) * b.at(j, i);
    return t;
}

/// (a⊗b)[(i·rb+k),(j·cb+l)] = a[i,j]·b[k,l]
inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix c(a.rows * b.rows, a.cols * b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const cx aij = a.at(i, j);
            if (aij == cx(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l)
                    c.at(i * b.rows + k, j * b.cols + l) = aij * b.at(k, l);
        }
    return c;
}

inline CMatrix kron_all(const std::vector<CMatrix> &factors) {
    if (factors.empty()) throw std::invalid_argument("kron_all: empty factor list");
    CMatrix c = factors[0];
    for (std::size_t i = 1; i < factors.size(); ++i) c = kron(c, factors[i]);
    return c;
}

/// Tr[(a⊗b)·w] without materializing a⊗b.
inline cx trace_kron_product(const CMatrix &a, const CMatrix &b, const CMatrix &w) {
    if (w.rows != a.rows * b.rows || w.cols != a.cols * b.cols || a.rows != a.cols || b.rows != b.cols)
        throw std::invalid_argument("trace_kron_product: shape mismatch");
    cx t = 0.0;
    const int nb = b.rows;
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const cx aij = a.at(i, j);
            if (aij == cx(0.0, 0.0)) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) {
                    const cx bkl = b.at(k, l);
                    if (bkl == cx(0.0, 0.0)) continue;
                    t += aij * bkl * w.at(j * nb + l, i * nb + k);
                }
        }
    return t;
}

inline double max_abs(const CMatrix &a) {
    double m = 0.0;
    for (const cx &e : a.entries) m = std::max(m, std::abs(e));
    return m;
}

inline double max_abs_diff(const CMatrix &a, const CMatrix &b) {
    if (a.rows != b.rows || a.cols != b.cols) throw std::invalid_argument("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a.entries[i] - b.entries[i]));
    return m;
}

/// Ordered tensor-factor dimensions of a square matrix; product(dims) must
/// equal the matrix side.
struct FactorShape {
    std::vector<int> dims;

    explicit FactorShape(std::vector<int> d) : dims(std::move(d)) {
        for (int x : dims)
            if (x <= 0) throw std::invalid_argument("FactorShape: dimensions must be positive");
    }
    int total() const {
        long long t = 1;
        for (int x : dims) t *= x;
        return static_cast<int>(t);
    }
    int factors() const { return static_cast<int>(dims.size()); }
};

namespace detail {

inline void index_to_digits(int index, const std::vector<int> &dims, std::vector<int> &digits) {
    // Big-endian: dims[0] is the most significant digit, matching kron.
    digits.resize(dims.size());
    for (int k = static_cast<int>(dims.size()) - 1; k >= 0; --k) {
        digits[k] = index % dims[k];
        index /= dims[k];
    }
}

inline int digits_to_index(const std::vector<int> &digits, const std::vector<int> &dims) {
    int index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) index = index * dims[k] + digits[k];
    return index;
}

}  // namespace detail

/// Reduced matrix on the kept factors (ascending factor indices), tracing the
/// rest by multi-index arithmetic. Tr(result) = Tr(m).
inline CMatrix partial_trace(const CMatrix &m, const FactorShape &shape, const std::vector<int> &keep) {
    require_square(m, "partial_trace");
    if (shape.total() != m.rows) throw std::invalid_argument("partial_trace: shape does not match matrix");
    const int nf = shape.factors();
    std::vector<char> kept(nf, 0);
    for (int k : keep) {
        if (k < 0 || k >= nf) throw std::invalid_argument("partial_trace: keep index out of range");
        if (kept[k]) throw std::invalid_argument("partial_trace: duplicate keep index");
        kept[k] = 1;
    }

    std::vector<int> keep_dims, trace_dims, keep_pos, trace_pos;
    for (int f = 0; f < nf; ++f) {
        if (kept[f]) {
            keep_dims.push_back(shape.dims[f]);
            keep_pos.push_back(f);
        } else {
            trace_dims.push_back(shape.dims[f]);
            trace_pos.push_back(f);
        }
    }
    int keep_total = 1;
    for (int x : keep_dims) keep_total *= x;
    int trace_total = 1;
    for (int x : trace_dims) trace_total *= x;

    CMatrix out(keep_total, keep_total);
    std::vector<int> rk, ck, td, full_r(nf), full_c(nf);
    for (int r = 0; r < keep_total; ++r) {
        detail::index_to_digits(r, keep_dims, rk);
        for (int c = 0; c < keep_total; ++c) {
            detail::index_to_digits(c, keep_dims, ck);
            cx sum = 0.0;
            for (int t = 0; t < trace_total; ++t) {
                detail::index_to_digits(t, trace_dims, td);
                for (std::size_t k = 0; k < keep_pos.size(); ++k) {
                    full_r[keep_pos[k]] = rk[k];
                    full_c[keep_pos[k]] = ck[k];
                }
                for (std::size_t k = 0; k < trace_pos.size(); ++k) {
                    full_r[trace_pos[k]] = td[k];
                    full_c[trace_pos[k]] = td[k];
                }
                sum += m.at(detail::digits_to_index(full_r, shape.dims),
                            detail::digits_to_index(full_c, shape.dims));
            }
            out.at(r, c) = sum;
        }
    }
    return out;
}

/// Embeds `op` (acting on the listed factors, in the listed order) into the
/// full space described by `shape`, identity on the rest. Positions need not
/// be ascending; op factor k acts on global factor positions[k].
inline CMatrix embed_on_factors(const CMatrix &op, const std::vector<int> &positions, const FactorShape &shape) {
    require_square(op, "embed_on_factors");
    const int nf = shape.factors();
    std::vector<char> used(nf, 0);
    int op_side = 1;
    for (int p : positions) {
        if (p < 0 || p >= nf) throw std::invalid_argument("embed_on_factors: position out of range");
        if (used[p]) throw std::invalid_argument("embed_on_factors: duplicate position");
        used[p] = 1;
        op_side *= shape.dims[p];
    }
    if (op_side != op.rows) throw std::invalid_argument("embed_on_factors: operator does not fit positions");

    std::vector<int> op_dims, rest_dims, rest_pos;
    for (int p : positions) op_dims.push_back(shape.dims[p]);
    for (int f = 0; f < nf; ++f)
        if (!used[f]) {
            rest_dims.push_back(shape.dims[f]);
            rest_pos.push_back(f);
        }
    int rest_total = 1;
    for (int x : rest_dims) rest_total *= x;

    CMatrix out(shape.total(), shape.total());
    std::vector<int> orow, ocol, rd, full_r(nf), full_c(nf);
    for (int i = 0; i < op.rows; ++i) {
        detail::index_to_digits(i, op_dims, orow);
        for (int j = 0; j < op.cols; ++j) {
            const cx v = op.at(i, j);
            if (v == cx(0.0, 0.0)) continue;
            detail::index_to_digits(j, op_dims, ocol);
            for (int t = 0; t < rest_total; ++t) {
                detail::index_to_digits(t, rest_dims, rd);
                for (std::size_t k = 0; k < positions.size(); ++k) {
                    full_r[positions[k]] = orow[k];
                    full_c[positions[k]] = ocol[k];
                }
                for (std::size_t k = 0; k < rest_pos.size(); ++k) {
                    full_r[rest_pos[k]] = rd[k];
                    full_c[rest_pos[k]] = rd[k];
                }
                out.at(detail::digits_to_index(full_r, shape.dims),
                       detail::digits_to_index(full_c, shape.dims)) = v;
            }
        }
    }
    return out;
}

/// max|m − m†| ≤ tol
inline bool is_hermitian(const CMatrix &m, double tol = kDefaultTol) {
    require_square(m, "is_hermitian");
    if (tol < 0) throw std::invalid_argument("is_hermitian: tolerance must be nonnegative");
    return max_abs_diff(m, adjoint(m)) <= tol;
}

inline double hermiticity_residual(const CMatrix &m) {
    require_square(m, "hermiticity_residual");
    return max_abs_diff(m, adjoint(m));
}

namespace detail {

inline std::vector<cx> hermitized_buffer(const CMatrix &m) {
    std::vector<cx> a(m.size());
    for (int i = 0; i < m.rows; ++i)
        for (int j = 0; j < m.cols; ++j)
            a[static_cast<std::size_t>(i) * m.cols + j] = 0.5 * (m.at(i, j) + std::conj(m.at(j, i)));
    return a;
}

/// LAPACK divide-and-conquer Hermitian eigensolve on (m+m†)/2; fills `vals`
/// ascending, and `vectors` (column k = eigenvector k, row-major) if asked.
inline void hermitian_eig(const CMatrix &m, std::vector<double> &vals, std::vector<cx> *vectors) {
    require_square(m, "hermitian_eigenvalues");
    const int n = m.rows;
    std::vector<cx> a = hermitized_buffer(m);
    vals.assign(n, 0.0);
    const int info =
        LAPACKE_zheevd(LAPACK_ROW_MAJOR, vectors ? 'V' : 'N', 'L', n,
                       reinterpret_cast<lapack_complex_double *>(a.data()), n, vals.data());
    if (info != 0) throw std::runtime_error("hermitian_eig: LAPACK zheevd failed");
    if (vectors) *vectors = std::move(a);
}

}  // namespace detail

/// Ascending eigenvalues of (m+m†)/2. Callers are expected to have checked
/// Hermiticity to their own tolerance; hermitizing makes PSD checks robust
/// to rounding.
inline std::vector<double> hermitian_eigenvalues(const CMatrix &m) {
    std::vector<double> vals;
    detail::hermitian_eig(m, vals, nullptr);
    return vals;
}

inline double min_eigenvalue_hermitian(const CMatrix &m) {
    return hermitian_eigenvalues(m).front();
}

/// Principal square root of a PSD Hermitian matrix (small negative
/// eigenvalues from rounding are clamped to zero).
inline CMatrix hermitian_sqrt(const CMatrix &m) {
    const int n = m.rows;
    std::vector<double> vals;
    std::vector<cx> z;
    detail::hermitian_eig(m, vals, &z);
    std::vector<double> roots(n);
    for (int k = 0; k < n; ++k) roots[k] = std::sqrt(std::max(0.0, vals[k]));
    CMatrix out(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            cx acc = 0.0;
            for (int k = 0; k < n; ++k)
                acc += z[static_cast<std::size_t>(i) * n + k] * roots[k] *
                       std::conj(z[static_cast<std::size_t>(j) * n + k]);
            out.at(i, j) = acc;
        }
    return out;
}

}  // namespace ddo
