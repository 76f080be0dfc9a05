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

#include <string>
#include <vector>

#include "ddo/correlation.hpp"

namespace ddo {

/// Operator W on H_L ⊗ H_R assembled from a correlation tensor,
///   W = (1/d^{2N}) Σ T^{μ⃗;ν⃗} (⊗_i σ_μi) ⊗ (⊗_j σ_νj).
/// Factor order is frozen as (L_1..L_N, R_1..R_N); W has unit trace but is
/// generally not Hermitian.
struct DoubledDensityOperator {
    int local_dim = 0;
    int num_events = 0;
    CMatrix mat;  // side d^{2N}

    int side() const { return mat.rows; }
    FactorShape factor_shape() const {
        return FactorShape(std::vector<int>(2 * num_events, local_dim));
    }
};

namespace detail {

/// Replaces every fiber f of the given tensor mode by y_e = Σ_m f_m S[m·extent+e].
inline void transform_mode(std::vector<cx> &x, std::size_t stride, int extent,
                           const std::vector<cx> &s) {
    std::vector<cx> fiber(extent), out(extent);
    const std::size_t block = stride * extent;
    for (std::size_t base = 0; base < x.size(); base += block)
        for (std::size_t lo = 0; lo < stride; ++lo) {
            for (int m = 0; m < extent; ++m) fiber[m] = x[base + lo + m * stride];
            for (int e = 0; e < extent; ++e) {
                cx acc = 0.0;
                for (int m = 0; m < extent; ++m) acc += fiber[m] * s[static_cast<std::size_t>(m) * extent + e];
                out[e] = acc;
            }
            for (int e = 0; e < extent; ++e) x[base + lo + e * stride] = out[e];
        }
}

/// σ_m laid out as s[m][e], e = r·d + c (row-major entries per basis label).
inline std::vector<cx> basis_as_rows(const PauliBasis &basis, bool conjugate) {
    const int D = basis.count();
    std::vector<cx> s(static_cast<std::size_t>(D) * D);
    for (int m = 0; m < D; ++m)
        for (int e = 0; e < D; ++e) {
            const cx v = basis.ops[m].entries[e];
            s[static_cast<std::size_t>(m) * D + e] = conjugate ? std::conj(v) : v;
        }
    return s;
}

/// Inverse direction s2[e][m] = σ_m[c, r]: contracting a matrix-entry mode
/// against the basis recovers tensor indices via Tr(W·σ).
inline std::vector<cx> basis_as_trace_rows(const PauliBasis &basis) {
    const int d = basis.dim;
    const int D = basis.count();
    std::vector<cx> s(static_cast<std::size_t>(D) * D);
    for (int e = 0; e < D; ++e) {
        const int r = e / d, c = e % d;
        for (int m = 0; m < D; ++m)
            s[static_cast<std::size_t>(e) * D + m] = basis.ops[m].at(c, r);
    }
    return s;
}

inline std::size_t ipow(std::size_t base, int exp) {
    std::size_t t = 1;
    for (int i = 0; i < exp; ++i) t *= base;
    return t;
}

}  // namespace detail

/// T ↦ W. Each of the 2N tensor modes is transformed from a Pauli label to a
/// matrix-entry pair, then digits are rearranged into the frozen factor
/// order; cost is O(2N·d²·(d²)^{2N}) instead of a sum over all index tuples.
inline DoubledDensityOperator assemble(const CorrelationTensor &t, const PauliBasis &basis) {
    if (basis.dim != t.local_dim) throw std::invalid_argument("assemble: basis dimension mismatch");
    const int d = t.local_dim;
    const int N = t.num_events;
    const int D = d * d;
    const std::size_t half = t.half_size();

    std::vector<cx> u = t.entries;
    const std::vector<cx> s = detail::basis_as_rows(basis, false);
    for (int k = 0; k < N; ++k) {
        detail::transform_mode(u, detail::ipow(D, k), D, s);         // ν_k
        detail::transform_mode(u, detail::ipow(D, k) * half, D, s);  // μ_k
    }

    const int side = static_cast<int>(detail::ipow(d, 2 * N));
    DoubledDensityOperator w;
    w.local_dim = d;
    w.num_events = N;
    w.mat = CMatrix(side, side);

    // Digit → (row, col) contribution tables per mode; factor L_k sits at
    // place d^{2N−1−k} in W's indices, factor R_k at place d^{N−1−k}.
    std::vector<std::vector<std::size_t>> lrow(N, std::vector<std::size_t>(D)),
        lcol(N, std::vector<std::size_t>(D)), rrow(N, std::vector<std::size_t>(D)),
        rcol(N, std::vector<std::size_t>(D));
    for (int k = 0; k < N; ++k) {
        const std::size_t lplace = detail::ipow(d, 2 * N - 1 - k);
        const std::size_t rplace = detail::ipow(d, N - 1 - k);
        for (int e = 0; e < D; ++e) {
            lrow[k][e] = static_cast<std::size_t>(e / d) * lplace;
            lcol[k][e] = static_cast<std::size_t>(e % d) * lplace;
            rrow[k][e] = static_cast<std::size_t>(e / d) * rplace;
            rcol[k][e] = static_cast<std::size_t>(e % d) * rplace;
        }
    }

    const double scale = 1.0 / static_cast<double>(detail::ipow(d, 2 * N));
    for (std::size_t pos = 0; pos < u.size(); ++pos) {
        std::size_t row = 0, col = 0, rem = pos;
        for (int k = 0; k < N; ++k) {  // ν digits occupy the low half
            const int e = static_cast<int>(rem % D);
            rem /= D;
            row += rrow[k][e];
            col += rcol[k][e];
        }
        for (int k = 0; k < N; ++k) {
            const int e = static_cast<int>(rem % D);
            rem /= D;
            row += lrow[k][e];
            col += lcol[k][e];
        }
        w.mat.entries[row * side + col] = u[pos] * scale;
    }
    return w;
}

/// W ↦ T via T^{μ⃗;ν⃗} = Tr[W·(⊗σ_μ)⊗(⊗σ_ν)]; exact inverse of assemble by
/// basis orthogonality.
inline CorrelationTensor disassemble(const DoubledDensityOperator &w, const PauliBasis &basis) {
    if (basis.dim != w.local_dim) throw std::invalid_argument("disassemble: basis dimension mismatch");
    const int d = w.local_dim;
    const int N = w.num_events;
    const int D = d * d;

    CorrelationTensor t = CorrelationTensor::zeros(d, N, TensorProvenance::External);
    const std::size_t half = t.half_size();
    const int side = w.side();

    // Scatter W entries into the tensor layout with matrix-entry digits.
    std::vector<cx> u(t.entries.size());
    for (int row = 0; row < side; ++row)
        for (int col = 0; col < side; ++col) {
            std::size_t pos = 0;
            for (int k = 0; k < N; ++k) {
                const std::size_t lplace = detail::ipow(d, 2 * N - 1 - k);
                const std::size_t rplace = detail::ipow(d, N - 1 - k);
                const int lr = static_cast<int>((row / lplace) % d);
                const int lc = static_cast<int>((col / lplace) % d);
                const int rr = static_cast<int>((row / rplace) % d);
                const int rc = static_cast<int>((col / rplace) % d);
                pos += (static_cast<std::size_t>(lr) * d + lc) * detail::ipow(D, k) * half;
                pos += (static_cast<std::size_t>(rr) * d + rc) * detail::ipow(D, k);
            }
            u[pos] = w.mat.entries[static_cast<std::size_t>(row) * side + col];
        }

    const std::vector<cx> s2 = detail::basis_as_trace_rows(basis);
    for (int k = 0; k < N; ++k) {
        detail::transform_mode(u, detail::ipow(D, k), D, s2);
        detail::transform_mode(u, detail::ipow(D, k) * half, D, s2);
    }
    t.entries = std::move(u);
    return t;
}

/// Partial trace over all L factors; for a spatial process this is the state
/// itself.
inline CMatrix reduce_left(const DoubledDensityOperator &w) {
    std::vector<int> keep;
    for (int k = 0; k < w.num_events; ++k) keep.push_back(w.num_events + k);
    return partial_trace(w.mat, w.factor_shape(), keep);
}

/// Partial trace over all R factors.
inline CMatrix reduce_right(const DoubledDensityOperator &w) {
    std::vector<int> keep;
    for (int k = 0; k < w.num_events; ++k) keep.push_back(k);
    return partial_trace(w.mat, w.factor_shape(), keep);
}

enum class TemporalityVerdict { TemporalSignature, Inconclusive };

/// Density-operator residuals of both reductions. A violation on either side
/// witnesses temporal correlation; the converse does not hold, so the only
/// verdicts are a positive signature or "inconclusive", never "spatial".
/// left_* fields describe Tr_L W, right_* fields Tr_R W.
struct TemporalityReport {
    double left_hermiticity_residual = 0.0;
    double right_hermiticity_residual = 0.0;
    double left_min_eig = 0.0;
    double right_min_eig = 0.0;
    cx left_trace;
    cx right_trace;
    double tol = kDefaultTol;
    TemporalityVerdict verdict = TemporalityVerdict::Inconclusive;
};

inline TemporalityReport detect_temporality(const DoubledDensityOperator &w, double tol = kDefaultTol) {
    TemporalityReport report;
    report.tol = tol;
    CMatrix left = reduce_left(w);
    CMatrix right = reduce_right(w);
    report.left_hermiticity_residual = hermiticity_residual(left);
    report.right_hermiticity_residual = hermiticity_residual(right);
    report.left_min_eig = min_eigenvalue_hermitian(left);
    report.right_min_eig = min_eigenvalue_hermitian(right);
    report.left_trace = trace(left);
    report.right_trace = trace(right);
    auto bad = [&](double herm, double mineig, cx tr) {
        return herm > tol || mineig < -tol || std::abs(tr - cx(1.0, 0.0)) > tol;
    };
    const bool signature = bad(report.left_hermiticity_residual, report.left_min_eig, report.left_trace) ||
                           bad(report.right_hermiticity_residual, report.right_min_eig, report.right_trace);
    report.verdict = signature ? TemporalityVerdict::TemporalSignature : TemporalityVerdict::Inconclusive;
    return report;
}

/// Equal-time state ρ_{t_k} (0-based step; step 0 is the initial state) read
/// off an information-complete doubled operator: keep step k's event factors
/// on both halves, then trace the right half. Factors follow the step's
/// measured-list order.
inline DensityOperator recover_state_at_step(const DoubledDensityOperator &w, const ProcessModel &model,
                                             int step) {
    if (!model.information_complete())
        throw std::domain_error("recover_state_at_step: model is not information-complete");
    if (step < 0 || step >= static_cast<int>(model.steps.size()))
        throw std::domain_error("recover_state_at_step: step out of range");
    if (w.num_events != model.num_events() || w.local_dim != model.local_dim)
        throw std::invalid_argument("recover_state_at_step: operator does not match model");

    int first = 0;
    for (int k = 0; k < step; ++k) first += static_cast<int>(model.steps[k].measured.size());
    const int m = static_cast<int>(model.steps[step].measured.size());

    std::vector<int> keep;
    for (int j = 0; j < m; ++j) keep.push_back(first + j);
    for (int j = 0; j < m; ++j) keep.push_back(w.num_events + first + j);
    CMatrix step_ddo = partial_trace(w.mat, w.factor_shape(), keep);

    std::vector<int> left_half;
    for (int j = 0; j < m; ++j) left_half.push_back(j);
    CMatrix rho = partial_trace(step_ddo, FactorShape(std::vector<int>(2 * m, model.local_dim)), left_half);
    return DensityOperator::make(std::move(rho));
}

/// Superdensity image under row-major vectorization, σ_μ ↦ |σ_μ⟩⟩ on the
/// left and σ_ν ↦ ⟨⟨σ_ν| on the right:
///   ρ_W = (1/d^{3N}) Σ T^{μ⃗;ν⃗} |⊗σ_μ⟩⟩⟨⟨⊗σ_ν|.
/// The 1/d^{3N} is fixed once by requiring unit trace on the single-event
/// maximally mixed case and held fixed; every process tensor then has unit
/// trace because Σ_μ⃗ T^{μ⃗;μ⃗} = d^{2N}.
inline CMatrix superdensity_from_tensor(const CorrelationTensor &t, const PauliBasis &basis) {
    if (basis.dim != t.local_dim) throw std::invalid_argument("superdensity: basis dimension mismatch");
    const int d = t.local_dim;
    const int N = t.num_events;
    const int D = d * d;
    const std::size_t half = t.half_size();

    std::vector<cx> u = t.entries;
    const std::vector<cx> s = detail::basis_as_rows(basis, false);
    const std::vector<cx> sbar = detail::basis_as_rows(basis, true);
    for (int k = 0; k < N; ++k) {
        detail::transform_mode(u, detail::ipow(D, k), D, sbar);      // ν_k, conjugated
        detail::transform_mode(u, detail::ipow(D, k) * half, D, s);  // μ_k
    }

    const int side = static_cast<int>(detail::ipow(d, 2 * N));
    CMatrix out(side, side);
    const double scale = 1.0 / static_cast<double>(detail::ipow(d, 3 * N));
    for (std::size_t pos = 0; pos < u.size(); ++pos) {
        std::size_t row = 0, col = 0, rem = pos;
        for (int k = 0; k < N; ++k) {  // ν digits (low half) → column index
            const int e = static_cast<int>(rem % D);
            rem /= D;
            const std::size_t place = detail::ipow(d, N - 1 - k);
            col += (static_cast<std::size_t>(e / d) * place) * detail::ipow(d, N) +
                   static_cast<std::size_t>(e % d) * place;
        }
        for (int k = 0; k < N; ++k) {
            const int e = static_cast<int>(rem % D);
            rem /= D;
            const std::size_t place = detail::ipow(d, N - 1 - k);
            row += (static_cast<std::size_t>(e / d) * place) * detail::ipow(d, N) +
                   static_cast<std::size_t>(e % d) * place;
        }
        out.entries[row * side + col] = u[pos] * scale;
    }
    return out;
}

inline CMatrix to_superdensity(const DoubledDensityOperator &w, const PauliBasis &basis) {
    return superdensity_from_tensor(disassemble(w, basis), basis);
}

/// Channel-state duality in the Hermitian basis:
///   J̃[ε] = (1/d) Σ_α ε(σ_α) ⊗ σ_α,   ε(ρ) = Tr_I[ J̃ (I⊗ρ) ].
inline CMatrix gen_jamiolkowski(const KrausChannel &ch, const PauliBasis &basis) {
    if (ch.in_dim != ch.out_dim || ch.in_dim != basis.dim)
        throw std::invalid_argument("gen_jamiolkowski: square channel matching the basis required");
    const int d = basis.dim;
    CMatrix j(d * d, d * d);
    for (int alpha = 0; alpha < basis.count(); ++alpha) {
        CMatrix mapped = apply_channel(ch, basis.ops[alpha]);
        const CMatrix term = kron(mapped, basis.ops[alpha]);
        for (std::size_t i = 0; i < j.size(); ++i) j.entries[i] += term.entries[i] / static_cast<double>(d);
    }
    return j;
}

/// Evaluates ε(ρ) = Tr_I[ J̃ (I⊗ρ) ] for a duality matrix on (output⊗input).
inline CMatrix apply_via_jamiolkowski(const CMatrix &j, const CMatrix &rho) {
    const int d = rho.rows;
    if (j.rows != d * d) throw std::invalid_argument("apply_via_jamiolkowski: dimension mismatch");
    CMatrix prod = multiply(j, kron(CMatrix::identity(d), rho));
    return partial_trace(prod, FactorShape({d, d}), {0});
}

namespace detail {

inline void accumulate_kron(CMatrix &dst, const CMatrix &a, const CMatrix &b, cx scale) {
    for (int i = 0; i < a.rows; ++i)
        for (int j = 0; j < a.cols; ++j) {
            const cx aij = a.at(i, j);
            if (aij == cx(0.0, 0.0)) continue;
            for (int k = 0; k < b.rows; ++k)
                for (int l = 0; l < b.cols; ++l) {
                    const cx bkl = b.at(k, l);
                    if (bkl == cx(0.0, 0.0)) continue;
                    dst.at(i * b.rows + k, j * b.cols + l) += scale * aij * bkl;
                }
        }
}

}  // namespace detail

/// Closed-form doubled operator for a purely temporal chain via the doubled
/// duality matrices
///   𝒥^{μ⃗;ν⃗} = (1/d) Σ_α [σ_μN ε_{N−1}(⋯ε_1(σ_μ1 σ_α σ_ν1)⋯) σ_νN] ⊗ σ_α,
///   𝒲 = (1/d^{2N}) Σ 𝒥^{μ⃗;ν⃗} ⊗ (⊗σ_μ)⊗(⊗σ_ν),
///   W = Tr_𝒥[ 𝒲 (I ⊗ ρ ⊗ I ⊗ ⋯ ⊗ I) ].
/// The 1/d^{2N} is the Definition-level normalization of W, folded into 𝒲.
inline DoubledDensityOperator closed_form_ddo(const ProcessModel &model, const PauliBasis &basis) {
    if (model.num_qudits != 1) throw std::domain_error("closed_form_ddo: purely temporal chain required");
    for (const Step &s : model.steps)
        if (s.measured.size() != 1)
            throw std::domain_error("closed_form_ddo: every step must measure the single qudit");
    if (basis.dim != model.local_dim) throw std::invalid_argument("closed_form_ddo: basis dimension mismatch");

    const int d = model.local_dim;
    const int D = d * d;
    const int N = static_cast<int>(model.steps.size());
    const std::size_t half = detail::ipow(D, N);

    std::vector<KrausChannel> channels;
    for (int k = 0; k + 1 < N; ++k) channels.push_back(*model.steps[k].next_channel);

    // Accumulate 𝒥 per (μ⃗,ν⃗), indexed in the frozen tensor layout.
    std::vector<CMatrix> duality(half * half, CMatrix(d * d, d * d));
    std::vector<std::size_t> mu_stride(N), nu_stride(N);
    {
        std::size_t place = 1;
        for (int k = 0; k < N; ++k) {
            nu_stride[k] = place;
            mu_stride[k] = place * half;
            place *= D;
        }
    }
    for (int alpha = 0; alpha < D; ++alpha) {
        auto recurse = [&](auto &&self, int k, const CMatrix &x, std::size_t base) -> void {
            if (k == N - 1) {
                for (int mu = 0; mu < D; ++mu)
                    for (int nu = 0; nu < D; ++nu) {
                        CMatrix op = multiply(multiply(basis.ops[mu], x), basis.ops[nu]);
                        detail::accumulate_kron(duality[base + mu * mu_stride[k] + nu * nu_stride[k]],
                                                op, basis.ops[alpha], 1.0 / d);
                    }
                return;
            }
            for (int mu = 0; mu < D; ++mu)
                for (int nu = 0; nu < D; ++nu) {
                    CMatrix y = multiply(multiply(basis.ops[mu], x), basis.ops[nu]);
                    self(self, k + 1, apply_channel(channels[k], y),
                         base + mu * mu_stride[k] + nu * nu_stride[k]);
                }
        };
        recurse(recurse, 0, basis.ops[alpha], 0);
    }

    const std::size_t pauli_side = detail::ipow(d, N);
    const int big_side = static_cast<int>(static_cast<std::size_t>(d) * d * pauli_side * pauli_side);
    CMatrix script_w(big_side, big_side);
    const double norm = 1.0 / static_cast<double>(detail::ipow(d, 2 * N));
    std::vector<int> mu(N), nu(N);
    for (std::size_t lf = 0; lf < half; ++lf)
        for (std::size_t rf = 0; rf < half; ++rf) {
            std::size_t rem = lf;
            for (int k = 0; k < N; ++k) {
                mu[k] = static_cast<int>(rem % D);
                rem /= D;
            }
            rem = rf;
            for (int k = 0; k < N; ++k) {
                nu[k] = static_cast<int>(rem % D);
                rem /= D;
            }
            std::vector<CMatrix> factors;
            for (int k = 0; k < N; ++k) factors.push_back(basis.ops[mu[k]]);
            for (int k = 0; k < N; ++k) factors.push_back(basis.ops[nu[k]]);
            detail::accumulate_kron(script_w, duality[lf * half + rf], kron_all(factors), norm);
        }

    CMatrix selector = kron(CMatrix::identity(d),
                            kron(model.initial.mat, CMatrix::identity(static_cast<int>(pauli_side * pauli_side))));
    CMatrix prod = multiply(script_w, selector);
    CMatrix w_mat = partial_trace(
        prod,
        FactorShape({d, d, static_cast<int>(pauli_side), static_cast<int>(pauli_side)}), {2, 3});

    DoubledDensityOperator w;
    w.local_dim = d;
    w.num_events = N;
    w.mat = std::move(w_mat);
    return w;
}

/// Linear map on tensor space given as a raw matrix over flat indices:
/// R_flat = Φ·T_flat. No admissibility certification is performed here;
/// use dqc_audit to sample-check that valid tensors map to valid tensors.
inline CorrelationTensor dqc_apply(const CMatrix &phi, const CorrelationTensor &t, int out_dim,
                                   int out_events) {
    if (phi.cols != static_cast<int>(t.entries.size()))
        throw std::invalid_argument("dqc_apply: map columns do not match input tensor size");
    CorrelationTensor out = CorrelationTensor::zeros(out_dim, out_events, TensorProvenance::External);
    if (phi.rows != static_cast<int>(out.entries.size()))
        throw std::invalid_argument("dqc_apply: map rows do not match output tensor size");
    for (int i = 0; i < phi.rows; ++i) {
        cx acc = 0.0;
        for (int j = 0; j < phi.cols; ++j) acc += phi.at(i, j) * t.entries[j];
        out.entries[i] = acc;
    }
    return out;
}

struct DqcAuditResult {
    int passed = 0;
    int failed = 0;
    double worst_hermiticity = 0.0;
    double worst_min_eigenvalue = 0.0;
    double worst_normalization = 0.0;

    bool all_pass() const { return failed == 0; }
};

/// Applies Φ to each supplied valid tensor and runs the axiom checks on the
/// results.
inline DqcAuditResult dqc_audit(const CMatrix &phi, const std::vector<CorrelationTensor> &inputs,
                                int out_dim, int out_events, double tol = kDefaultTol) {
    DqcAuditResult result;
    result.worst_min_eigenvalue = 1e300;
    for (const CorrelationTensor &t : inputs) {
        AxiomReport report = verify_axioms(dqc_apply(phi, t, out_dim, out_events), tol);
        if (report.pass())
            ++result.passed;
        else
            ++result.failed;
        result.worst_hermiticity = std::max(result.worst_hermiticity, report.hermiticity_residual);
        result.worst_min_eigenvalue = std::min(result.worst_min_eigenvalue, report.min_eigenvalue);
        result.worst_normalization = std::max(result.worst_normalization, report.normalization_residual);
    }
    return result;
}

/// Optional audit beyond the defining axioms: every one-event slice of the
/// tensor (all other events pinned to the identity label) should reduce to a
/// density operator on both halves. Advisory only; tensors failing it are
/// not rejected anywhere.
inline std::vector<TemporalityReport> one_event_reduction_audit(const CorrelationTensor &t,
                                                                const PauliBasis &basis,
                                                                double tol = kDefaultTol) {
    const int D = t.pauli_count();
    std::vector<TemporalityReport> reports;
    for (int event = 0; event < t.num_events; ++event) {
        CorrelationTensor slice = CorrelationTensor::zeros(t.local_dim, 1, TensorProvenance::External);
        for (int mu = 0; mu < D; ++mu)
            for (int nu = 0; nu < D; ++nu) {
                std::vector<int> mv(t.num_events, 0), nv(t.num_events, 0);
                mv[event] = mu;
                nv[event] = nu;
                slice.entries[static_cast<std::size_t>(mu) * D + nu] = t.at(mv, nv);
            }
        reports.push_back(detect_temporality(assemble(slice, basis), tol));
    }
    return reports;
}

inline json ddo_to_json(const DoubledDensityOperator &w) {
    json j = matrix_to_json(w.mat);
    j["d"] = w.local_dim;
    j["n_events"] = w.num_events;
    return j;
}

inline DoubledDensityOperator ddo_from_json(const json &j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("n_events"))
        throw std::invalid_argument("ddo codec: expected matrix fields plus {d, n_events}");
    DoubledDensityOperator w;
    w.local_dim = j.at("d").get<int>();
    w.num_events = j.at("n_events").get<int>();
    w.mat = matrix_from_json(j);
    std::size_t side = 1;
    for (int k = 0; k < 2 * w.num_events; ++k) side *= static_cast<std::size_t>(w.local_dim);
    if (w.mat.rows != static_cast<int>(side) || w.mat.cols != static_cast<int>(side))
        throw std::invalid_argument("ddo codec: matrix side is not d^(2N)");
    return w;
}

}  // namespace ddo
