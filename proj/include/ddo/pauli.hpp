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

#include <vector>

#include "ddo/matrix.hpp"

namespace ddo {

/// Hermitian operator basis {σ_μ} for one local dimension d:
///   σ_0 = I, Tr(σ_j) = 0 for j ≥ 1, Tr(σ_μ σ_ν) = d δ_μν.
///
/// Ordering is frozen (index conventions propagate into every correlation
/// tensor): identity; then for each 0 ≤ j < k < d the symmetric pair
/// |j⟩⟨k|+|k⟩⟨j|; then the antisymmetric pairs −i|j⟩⟨k|+i|k⟩⟨j| in the same
/// (j,k) order; then the d−1 diagonal traceless matrices. All rescaled by
/// √(d/2) from the conventional Gell-Mann normalization so Tr(σ_μ²) = d.
/// At d = 2 this yields exactly (I, σ_x, σ_y, σ_z).
struct PauliBasis {
    int dim = 0;
    std::vector<CMatrix> ops;  // d² matrices, index μ = 0..d²−1

    int count() const { return static_cast<int>(ops.size()); }
};

inline PauliBasis build_basis(int d) {
    if (d < 2) throw std::domain_error("build_basis: local dimension must be at least 2");
    PauliBasis basis;
    basis.dim = d;
    basis.ops.reserve(static_cast<std::size_t>(d) * d);

    basis.ops.push_back(CMatrix::identity(d));

    const double off_scale = std::sqrt(d / 2.0);
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMatrix sym(d, d);
            sym.at(j, k) = off_scale;
            sym.at(k, j) = off_scale;
            basis.ops.push_back(std::move(sym));
        }
    for (int j = 0; j < d; ++j)
        for (int k = j + 1; k < d; ++k) {
            CMatrix asym(d, d);
            asym.at(j, k) = cx(0.0, -off_scale);
            asym.at(k, j) = cx(0.0, off_scale);
            basis.ops.push_back(std::move(asym));
        }
    for (int l = 1; l < d; ++l) {
        // √(d/(l(l+1))) (Σ_{j<l} |j⟩⟨j| − l|l⟩⟨l|), trace zero, Tr(σ²) = d.
        const double scale = std::sqrt(static_cast<double>(d) / (static_cast<double>(l) * (l + 1)));
        CMatrix diag(d, d);
        for (int j = 0; j < l; ++j) diag.at(j, j) = scale;
        diag.at(l, l) = -scale * l;
        basis.ops.push_back(std::move(diag));
    }
    return basis;
}

/// max over (μ,ν) of |Tr(σ_μσ_ν) − d·δ_μν|
inline double gram_residual(const PauliBasis &basis) {
    double worst = 0.0;
    const int n = basis.count();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const cx g = trace_product(basis.ops[a], basis.ops[b]);
            const double want = (a == b) ? static_cast<double>(basis.dim) : 0.0;
            worst = std::max(worst, std::abs(g - want));
        }
    return worst;
}

/// Coefficients g_μ = Tr(m·σ_μ)/d, so that m = Σ_μ g_μ σ_μ.
inline std::vector<cx> expand_in_basis(const CMatrix &m, const PauliBasis &basis) {
    if (m.rows != basis.dim || m.cols != basis.dim)
        throw std::invalid_argument("expand_in_basis: matrix does not match basis dimension");
    std::vector<cx> coeffs(basis.count());
    for (int mu = 0; mu < basis.count(); ++mu)
        coeffs[mu] = trace_product(m, basis.ops[mu]) / static_cast<double>(basis.dim);
    return coeffs;
}

inline CMatrix reconstruct_from_basis(const std::vector<cx> &coeffs, const PauliBasis &basis) {
    if (coeffs.size() != static_cast<std::size_t>(basis.count()))
        throw std::invalid_argument("reconstruct_from_basis: coefficient count mismatch");
    CMatrix m(basis.dim, basis.dim);
    for (int mu = 0; mu < basis.count(); ++mu)
        for (std::size_t i = 0; i < m.size(); ++i) m.entries[i] += coeffs[mu] * basis.ops[mu].entries[i];
    return m;
}

}  // namespace ddo
