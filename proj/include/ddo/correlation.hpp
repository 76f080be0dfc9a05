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

#include "ddo/channels.hpp"
#include "ddo/matrix.hpp"
#include "ddo/pauli.hpp"
#include "ddo/process.hpp"

namespace ddo {

enum class TensorProvenance { Spatial, Temporal, Spatiotemporal, External };

inline const char *provenance_name(TensorProvenance p) {
    switch (p) {
        case TensorProvenance::Spatial: return "spatial";
        case TensorProvenance::Temporal: return "temporal";
        case TensorProvenance::Spatiotemporal: return "spatiotemporal";
        case TensorProvenance::External: return "external";
    }
    return "external";
}

/// Correlation tensor T^{μ_1..μ_N; ν_1..ν_N} over doubled generalized-Pauli
/// indices, each in 0..d²−1.
///
/// Frozen flat layout (the doubled-operator assembly and the effect-tensor
/// contraction both depend on it):
///   D = d²,  flat = Lflat·D^N + Rflat,
///   Lflat = Σ_k μ_k·D^k,  Rflat = Σ_k ν_k·D^k   (event 0 least significant).
/// The flat buffer read as a row-major D^N × D^N matrix is therefore exactly
/// the matricization M[(μ⃗),(ν⃗)] used by the axiom checks.
struct CorrelationTensor {
    int local_dim = 0;
    int num_events = 0;
    std::vector<cx> entries;
    TensorProvenance provenance = TensorProvenance::External;

    int pauli_count() const { return local_dim * local_dim; }
    std::size_t half_size() const {
        std::size_t h = 1;
        for (int k = 0; k < num_events; ++k) h *= static_cast<std::size_t>(pauli_count());
        return h;
    }

    static CorrelationTensor zeros(int d, int n_events, TensorProvenance prov) {
        if (d < 2) throw std::domain_error("CorrelationTensor: local dimension must be at least 2");
        if (n_events < 1) throw std::domain_error("CorrelationTensor: needs at least one event");
        long long side = 1;
        for (int k = 0; k < 2 * n_events; ++k) {
            side *= d;
            if (side > 4096) throw std::invalid_argument("CorrelationTensor: d^(2N) exceeds the 4096 desk-scale cap");
        }
        CorrelationTensor t;
        t.local_dim = d;
        t.num_events = n_events;
        t.provenance = prov;
        t.entries.assign(t.half_size() * t.half_size(), cx(0.0, 0.0));
        return t;
    }

    std::size_t flat_index(const std::vector<int> &mu, const std::vector<int> &nu) const {
        std::size_t lf = 0, rf = 0, place = 1;
        for (int k = 0; k < num_events; ++k) {
            lf += static_cast<std::size_t>(mu[k]) * place;
            rf += static_cast<std::size_t>(nu[k]) * place;
            place *= static_cast<std::size_t>(pauli_count());
        }
        return lf * half_size() + rf;
    }
    cx at(const std::vector<int> &mu, const std::vector<int> &nu) const {
        return entries[flat_index(mu, nu)];
    }

    /// Matricization over the (μ⃗),(ν⃗) multi-indices.
    CMatrix matricization() const {
        const int side = static_cast<int>(half_size());
        return CMatrix(side, side, entries);
    }
};

inline CorrelationTensor tensor_lin_comb(cx a, const CorrelationTensor &t1, cx b,
                                         const CorrelationTensor &t2) {
    if (t1.local_dim != t2.local_dim || t1.num_events != t2.num_events)
        throw std::invalid_argument("tensor_lin_comb: shape mismatch");
    CorrelationTensor out = t1;
    out.provenance = TensorProvenance::External;
    for (std::size_t i = 0; i < out.entries.size(); ++i)
        out.entries[i] = a * t1.entries[i] + b * t2.entries[i];
    return out;
}

namespace detail {

/// Products σ_ν·σ_μ indexed [ν][μ]; Tr(σ_μ X σ_ν) = Tr(X·σ_ν·σ_μ).
inline std::vector<std::vector<CMatrix>> pair_products(const PauliBasis &basis) {
    const int count = basis.count();
    std::vector<std::vector<CMatrix>> prod(count);
    for (int nu = 0; nu < count; ++nu) {
        prod[nu].reserve(count);
        for (int mu = 0; mu < count; ++mu) prod[nu].push_back(multiply(basis.ops[nu], basis.ops[mu]));
    }
    return prod;
}

/// Boundary contraction: given X on (d^n)², contract every qudit factor —
/// measured factors against all (μ,ν) Pauli pairs, unmeasured factors by
/// plain trace. Returns, for each combination, Tr[(⊗σ_μ ⊗ I) X (⊗σ_ν ⊗ I)]
/// indexed big-endian over the measured qudits in ascending-qudit order with
/// per-qudit digit q = μ·D + ν.
inline std::vector<cx> contract_boundary(const std::vector<cx> &x, int d, int n,
                                         const std::vector<char> &measured,
                                         const std::vector<std::vector<CMatrix>> &prods) {
    const int D = d * d;
    const int Q = D * D;  // per-qudit (μ,ν) combinations
    std::vector<cx> cur = x;  // layout: [q-prefix big-endian][i-rest][j-rest]
    long long rest = 1;
    for (int k = 0; k < n; ++k) rest *= d;
    long long prefix = 1;

    std::vector<cx> next;
    for (int f = 0; f < n; ++f) {
        const long long sub = rest / d;  // remaining block after factor f
        if (measured[f]) {
            next.assign(static_cast<std::size_t>(prefix) * Q * sub * sub, cx(0.0, 0.0));
            for (long long p = 0; p < prefix; ++p) {
                const cx *src = &cur[static_cast<std::size_t>(p) * rest * rest];
                for (int q = 0; q < Q; ++q) {
                    const int mu = q / D, nu = q % D;
                    const CMatrix &pm = prods[nu][mu];  // entry [j_f, i_f]
                    cx *dst = &next[(static_cast<std::size_t>(p) * Q + q) * sub * sub];
                    for (int a = 0; a < d; ++a)
                        for (int b = 0; b < d; ++b) {
                            const cx w = pm.at(b, a);
                            if (w == cx(0.0, 0.0)) continue;
                            const cx *blk = src + (static_cast<std::size_t>(a) * sub) * rest +
                                            static_cast<std::size_t>(b) * sub;
                            for (long long i = 0; i < sub; ++i)
                                for (long long j = 0; j < sub; ++j)
                                    dst[i * sub + j] += w * blk[i * rest + j];
                        }
                }
            }
            prefix *= Q;
        } else {
            next.assign(static_cast<std::size_t>(prefix) * sub * sub, cx(0.0, 0.0));
            for (long long p = 0; p < prefix; ++p) {
                const cx *src = &cur[static_cast<std::size_t>(p) * rest * rest];
                cx *dst = &next[static_cast<std::size_t>(p) * sub * sub];
                for (int a = 0; a < d; ++a) {
                    const cx *blk = src + (static_cast<std::size_t>(a) * sub) * rest +
                                    static_cast<std::size_t>(a) * sub;
                    for (long long i = 0; i < sub; ++i)
                        for (long long j = 0; j < sub; ++j) dst[i * sub + j] += blk[i * rest + j];
                }
            }
        }
        cur.swap(next);
        rest = sub;
    }
    return cur;
}

}  // namespace detail

/// Spatial tensor T^{μ⃗;ν⃗} = Tr[(⊗_i σ_μi) ρ (⊗_i σ_νi)] for an n-event
/// state on d^n.
inline CorrelationTensor dct_spatial(const DensityOperator &rho, const PauliBasis &basis, int n_events) {
    const int d = basis.dim;
    long long total = 1;
    for (int k = 0; k < n_events; ++k) total *= d;
    if (rho.dim != total) throw std::invalid_argument("dct_spatial: state dimension is not d^n");

    CorrelationTensor t = CorrelationTensor::zeros(d, n_events, TensorProvenance::Spatial);
    const auto prods = detail::pair_products(basis);
    const std::vector<char> measured(n_events, 1);
    std::vector<cx> vals = detail::contract_boundary(rho.mat.entries, d, n_events, measured, prods);

    // vals index: big-endian per event (event 0 most significant), digit μ·D+ν
    const int D = d * d;
    const std::size_t half = t.half_size();
    std::vector<int> mu(n_events), nu(n_events);
    for (std::size_t v = 0; v < vals.size(); ++v) {
        std::size_t rem = v;
        for (int k = n_events - 1; k >= 0; --k) {
            const int q = static_cast<int>(rem % (D * D));
            mu[k] = q / D;
            nu[k] = q % D;
            rem /= D * D;
        }
        std::size_t lf = 0, rf = 0, place = 1;
        for (int k = 0; k < n_events; ++k) {
            lf += static_cast<std::size_t>(mu[k]) * place;
            rf += static_cast<std::size_t>(nu[k]) * place;
            place *= D;
        }
        t.entries[lf * half + rf] = vals[v];
    }
    return t;
}

/// Temporal tensor T^{μ⃗;ν⃗} = Tr[σ_μN ε_{N−1}(⋯ε_1(σ_μ1 ρ σ_ν1)⋯) σ_νN]
/// for a single qudit through N−1 channels. Prefixes are shared across the
/// recursion so each channel application is reused by all later indices.
inline CorrelationTensor dct_temporal(const DensityOperator &rho, const std::vector<KrausChannel> &channels,
                                      const PauliBasis &basis) {
    const int d = basis.dim;
    if (rho.dim != d) throw std::invalid_argument("dct_temporal: state must live on one qudit");
    for (const KrausChannel &ch : channels)
        if (ch.in_dim != d || ch.out_dim != d)
            throw std::invalid_argument("dct_temporal: channel dimensions must equal the qudit dimension");
    const int n_events = static_cast<int>(channels.size()) + 1;

    CorrelationTensor t = CorrelationTensor::zeros(d, n_events, TensorProvenance::Temporal);
    const auto prods = detail::pair_products(basis);
    const int D = d * d;
    const std::size_t half = t.half_size();

    std::vector<std::size_t> mu_stride(n_events), nu_stride(n_events);
    std::size_t place = 1;
    for (int k = 0; k < n_events; ++k) {
        nu_stride[k] = place;
        mu_stride[k] = place * half;
        place *= D;
    }

    auto recurse = [&](auto &&self, int k, const CMatrix &x, std::size_t base) -> void {
        if (k == n_events - 1) {
            for (int mu = 0; mu < D; ++mu)
                for (int nu = 0; nu < D; ++nu)
                    t.entries[base + mu * mu_stride[k] + nu * nu_stride[k]] =
                        trace_product(x, prods[nu][mu]);
            return;
        }
        for (int mu = 0; mu < D; ++mu)
            for (int nu = 0; nu < D; ++nu) {
                CMatrix y = multiply(multiply(basis.ops[mu], x), basis.ops[nu]);
                self(self, k + 1, apply_channel(channels[k], y),
                     base + mu * mu_stride[k] + nu * nu_stride[k]);
            }
    };
    recurse(recurse, 0, rho.mat, 0);
    return t;
}

/// General space-time tensor: at step k the measured qudits carry σ factors
/// (identity on the rest) on both sides, interleaved with the inter-step
/// channels; events are numbered by (step, slot).
inline CorrelationTensor dct_spacetime(const ProcessModel &model, const PauliBasis &basis) {
    if (basis.dim != model.local_dim) throw std::invalid_argument("dct_spacetime: basis dimension mismatch");
    const int d = model.local_dim;
    const int n = model.num_qudits;
    const int n_events = model.num_events();
    const int num_steps = static_cast<int>(model.steps.size());
    const int D = d * d;

    CorrelationTensor t = CorrelationTensor::zeros(d, n_events, TensorProvenance::Spatiotemporal);
    if (model.steps.size() == 1) t.provenance = TensorProvenance::Spatial;
    if (n == 1) {
        bool all = true;
        for (const Step &s : model.steps) all = all && s.measured.size() == 1;
        if (all && num_steps == n_events) t.provenance = TensorProvenance::Temporal;
    }

    const auto prods = detail::pair_products(basis);
    const std::size_t half = t.half_size();
    const FactorShape shape = model.qudit_shape();

    // Per-event strides in the frozen layout.
    std::vector<std::size_t> mu_stride(n_events), nu_stride(n_events);
    {
        std::size_t place = 1;
        for (int g = 0; g < n_events; ++g) {
            nu_stride[g] = place;
            mu_stride[g] = place * half;
            place *= D;
        }
    }
    // Global event number of (step, slot).
    std::vector<std::vector<int>> global_of(num_steps);
    {
        int g = 0;
        for (int k = 0; k < num_steps; ++k)
            for (std::size_t j = 0; j < model.steps[k].measured.size(); ++j)
                global_of[k].push_back(g++);
    }

    // Embedded single-side σ combinations for every non-final step; combo
    // digits run big-endian over the step's slots.
    std::vector<std::vector<CMatrix>> combos(num_steps);
    for (int k = 0; k + 1 < num_steps; ++k) {
        const std::vector<int> &slots = model.steps[k].measured;
        const int m = static_cast<int>(slots.size());
        long long count = 1;
        for (int i = 0; i < m; ++i) count *= D;
        combos[k].reserve(count);
        std::vector<int> digit(m, 0);
        for (long long c = 0; c < count; ++c) {
            long long rem = c;
            for (int i = m - 1; i >= 0; --i) {
                digit[i] = static_cast<int>(rem % D);
                rem /= D;
            }
            if (m == 0) {
                combos[k].push_back(CMatrix::identity(model.total_dim()));
            } else {
                std::vector<CMatrix> factors;
                for (int i = 0; i < m; ++i) factors.push_back(basis.ops[digit[i]]);
                combos[k].push_back(embed_on_factors(kron_all(factors), slots, shape));
            }
        }
    }

    // Final step handled by the boundary contraction over qudits.
    const std::vector<int> &last_slots = model.steps[num_steps - 1].measured;
    std::vector<char> last_measured(n, 0);
    for (int q : last_slots) last_measured[q] = 1;
    std::vector<int> sorted_qudits;
    for (int q = 0; q < n; ++q)
        if (last_measured[q]) sorted_qudits.push_back(q);
    std::vector<int> slot_of_sorted(sorted_qudits.size());
    for (std::size_t s = 0; s < sorted_qudits.size(); ++s)
        for (std::size_t j = 0; j < last_slots.size(); ++j)
            if (last_slots[j] == sorted_qudits[s]) slot_of_sorted[s] = static_cast<int>(j);
    const int m_last = static_cast<int>(last_slots.size());

    auto scatter_last = [&](const std::vector<cx> &vals, std::size_t base) {
        std::vector<int> mu(m_last), nu(m_last);
        for (std::size_t v = 0; v < vals.size(); ++v) {
            std::size_t rem = v;
            for (int s = m_last - 1; s >= 0; --s) {
                const int q = static_cast<int>(rem % (D * D));
                mu[s] = q / D;
                nu[s] = q % D;
                rem /= D * D;
            }
            std::size_t idx = base;
            for (int s = 0; s < m_last; ++s) {
                const int g = global_of[num_steps - 1][slot_of_sorted[s]];
                idx += mu[s] * mu_stride[g] + nu[s] * nu_stride[g];
            }
            t.entries[idx] = vals[v];
        }
    };

    auto recurse = [&](auto &&self, int k, const CMatrix &x, std::size_t base) -> void {
        if (k == num_steps - 1) {
            scatter_last(detail::contract_boundary(x.entries, d, n, last_measured, prods), base);
            return;
        }
        const std::vector<int> &slots = model.steps[k].measured;
        const int m = static_cast<int>(slots.size());
        const KrausChannel &ch = *model.steps[k].next_channel;
        if (m == 0) {
            self(self, k + 1, apply_channel(ch, x), base);
            return;
        }
        long long count = static_cast<long long>(combos[k].size());
        std::vector<int> mdig(m), ndig(m);
        for (long long cmu = 0; cmu < count; ++cmu) {
            long long rem = cmu;
            for (int i = m - 1; i >= 0; --i) {
                mdig[i] = static_cast<int>(rem % D);
                rem /= D;
            }
            CMatrix left = multiply(combos[k][cmu], x);
            for (long long cnu = 0; cnu < count; ++cnu) {
                rem = cnu;
                for (int i = m - 1; i >= 0; --i) {
                    ndig[i] = static_cast<int>(rem % D);
                    rem /= D;
                }
                std::size_t next_base = base;
                for (int i = 0; i < m; ++i) {
                    const int g = global_of[k][i];
                    next_base += mdig[i] * mu_stride[g] + ndig[i] * nu_stride[g];
                }
                self(self, k + 1, apply_channel(ch, multiply(left, combos[k][cnu])), next_base);
            }
        }
    };
    recurse(recurse, 0, model.initial.mat, 0);
    return t;
}

/// Residuals of the three defining conditions, computed on the matricization.
struct AxiomReport {
    double hermiticity_residual = 0.0;
    double min_eigenvalue = 0.0;
    double normalization_residual = 0.0;
    double tol = kDefaultTol;
    bool hermitian_pass = false;
    bool psd_pass = false;
    bool normalized_pass = false;

    bool pass() const { return hermitian_pass && psd_pass && normalized_pass; }
};

inline AxiomReport verify_axioms(const CorrelationTensor &t, double tol = kDefaultTol) {
    AxiomReport report;
    report.tol = tol;
    CMatrix m = t.matricization();
    report.hermiticity_residual = hermiticity_residual(m);
    report.min_eigenvalue = min_eigenvalue_hermitian(m);
    report.normalization_residual = std::abs(t.entries[0] - cx(1.0, 0.0));
    report.hermitian_pass = report.hermiticity_residual <= tol;
    report.psd_pass = report.min_eigenvalue >= -tol;
    report.normalized_pass = report.normalization_residual <= tol;
    return report;
}

inline json tensor_to_json(const CorrelationTensor &t) {
    json entries = json::array();
    for (const cx &e : t.entries) entries.push_back(json::array({e.real(), e.imag()}));
    return json{{"d", t.local_dim}, {"n_events", t.num_events}, {"entries", std::move(entries)}};
}

inline CorrelationTensor tensor_from_json(const json &j) {
    if (!j.is_object() || !j.contains("d") || !j.contains("n_events") || !j.contains("entries"))
        throw std::invalid_argument("tensor codec: expected {d, n_events, entries}");
    CorrelationTensor t =
        CorrelationTensor::zeros(j.at("d").get<int>(), j.at("n_events").get<int>(), TensorProvenance::External);
    const json &entries = j.at("entries");
    if (!entries.is_array() || entries.size() != t.entries.size())
        throw std::invalid_argument("tensor codec: entry count does not match (d^2)^(2N)");
    for (std::size_t i = 0; i < t.entries.size(); ++i) {
        const json &pair = entries.at(i);
        if (!pair.is_array() || pair.size() != 2)
            throw std::invalid_argument("tensor codec: entries must be [re, im] pairs");
        t.entries[i] = cx(pair.at(0).get<double>(), pair.at(1).get<double>());
    }
    return t;
}

}  // namespace ddo
