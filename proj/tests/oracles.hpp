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

// Straight-line reference evaluations for the tensor constructions and the
// doubled-operator assembly. Everything here recomputes the defining
// expressions literally (explicit kron products, explicit Kraus sums,
// full matrix products per index tuple) and deliberately avoids the shared
// contraction/recursion machinery of the library code it checks.

#include <vector>

#include "ddo/ddo.hpp"

namespace oracle {

using ddo::CMatrix;
using ddo::cx;

inline CMatrix kraus_sum(const std::vector<CMatrix> &kraus, const CMatrix &m) {
    CMatrix out(m.rows, m.cols);
    for (const CMatrix &k : kraus)
        out = ddo::add(out, ddo::multiply(ddo::multiply(k, m), ddo::adjoint(k)));
    return out;
}

inline CMatrix pauli_chain(const ddo::PauliBasis &basis, const std::vector<int> &labels) {
    std::vector<CMatrix> factors;
    for (int l : labels) factors.push_back(basis.ops[l]);
    return ddo::kron_all(factors);
}

inline void decode_multi(std::size_t flat, int digits, int base, std::vector<int> &out) {
    out.resize(digits);
    for (int k = 0; k < digits; ++k) {  // event 0 least significant
        out[k] = static_cast<int>(flat % base);
        flat /= base;
    }
}

inline ddo::CorrelationTensor naive_dct_spatial(const CMatrix &rho, const ddo::PauliBasis &basis,
                                                int n_events) {
    ddo::CorrelationTensor t =
        ddo::CorrelationTensor::zeros(basis.dim, n_events, ddo::TensorProvenance::External);
    const int D = basis.count();
    const std::size_t half = t.half_size();
    std::vector<int> mu, nu;
    for (std::size_t lf = 0; lf < half; ++lf)
        for (std::size_t rf = 0; rf < half; ++rf) {
            decode_multi(lf, n_events, D, mu);
            decode_multi(rf, n_events, D, nu);
            CMatrix prod = ddo::multiply(ddo::multiply(pauli_chain(basis, mu), rho), pauli_chain(basis, nu));
            t.entries[lf * half + rf] = ddo::trace(prod);
        }
    return t;
}

inline ddo::CorrelationTensor naive_dct_temporal_matrix(const CMatrix &rho,
                                                        const std::vector<std::vector<CMatrix>> &kraus_sets,
                                                        const ddo::PauliBasis &basis) {
    const int n_events = static_cast<int>(kraus_sets.size()) + 1;
    ddo::CorrelationTensor t =
        ddo::CorrelationTensor::zeros(basis.dim, n_events, ddo::TensorProvenance::External);
    const int D = basis.count();
    const std::size_t half = t.half_size();
    std::vector<int> mu, nu;
    for (std::size_t lf = 0; lf < half; ++lf)
        for (std::size_t rf = 0; rf < half; ++rf) {
            decode_multi(lf, n_events, D, mu);
            decode_multi(rf, n_events, D, nu);
            CMatrix state = ddo::multiply(ddo::multiply(basis.ops[mu[0]], rho), basis.ops[nu[0]]);
            for (int k = 1; k < n_events; ++k) {
                state = kraus_sum(kraus_sets[k - 1], state);
                state = ddo::multiply(ddo::multiply(basis.ops[mu[k]], state), basis.ops[nu[k]]);
            }
            t.entries[lf * half + rf] = ddo::trace(state);
        }
    return t;
}

inline ddo::CorrelationTensor naive_dct_temporal(const ddo::DensityOperator &rho,
                                                 const std::vector<ddo::KrausChannel> &channels,
                                                 const ddo::PauliBasis &basis) {
    std::vector<std::vector<CMatrix>> kraus_sets;
    for (const ddo::KrausChannel &ch : channels) kraus_sets.push_back(ch.kraus);
    return naive_dct_temporal_matrix(rho.mat, kraus_sets, basis);
}

inline ddo::CorrelationTensor naive_dct_spacetime(const ddo::ProcessModel &model,
                                                  const ddo::PauliBasis &basis) {
    const int n_events = model.num_events();
    ddo::CorrelationTensor t =
        ddo::CorrelationTensor::zeros(model.local_dim, n_events, ddo::TensorProvenance::External);
    const int D = basis.count();
    const std::size_t half = t.half_size();
    const ddo::FactorShape shape = model.qudit_shape();

    std::vector<int> mu, nu;
    for (std::size_t lf = 0; lf < half; ++lf)
        for (std::size_t rf = 0; rf < half; ++rf) {
            decode_multi(lf, n_events, D, mu);
            decode_multi(rf, n_events, D, nu);
            CMatrix state = model.initial.mat;
            int event = 0;
            for (std::size_t k = 0; k < model.steps.size(); ++k) {
                const ddo::Step &step = model.steps[k];
                if (!step.measured.empty()) {
                    std::vector<int> mlabels, nlabels;
                    for (std::size_t j = 0; j < step.measured.size(); ++j) {
                        mlabels.push_back(mu[event + static_cast<int>(j)]);
                        nlabels.push_back(nu[event + static_cast<int>(j)]);
                    }
                    CMatrix left = ddo::embed_on_factors(pauli_chain(basis, mlabels), step.measured, shape);
                    CMatrix right = ddo::embed_on_factors(pauli_chain(basis, nlabels), step.measured, shape);
                    state = ddo::multiply(ddo::multiply(left, state), right);
                    event += static_cast<int>(step.measured.size());
                }
                if (step.next_channel) state = kraus_sum(step.next_channel->kraus, state);
            }
            t.entries[lf * half + rf] = ddo::trace(state);
        }
    return t;
}

inline CMatrix naive_assemble(const ddo::CorrelationTensor &t, const ddo::PauliBasis &basis) {
    const int D = basis.count();
    const std::size_t half = t.half_size();
    std::size_t side = 1;
    for (int k = 0; k < 2 * t.num_events; ++k) side *= static_cast<std::size_t>(t.local_dim);
    CMatrix w(static_cast<int>(side), static_cast<int>(side));
    double norm = 1.0;
    for (int k = 0; k < 2 * t.num_events; ++k) norm /= t.local_dim;

    std::vector<int> mu, nu;
    for (std::size_t lf = 0; lf < half; ++lf)
        for (std::size_t rf = 0; rf < half; ++rf) {
            const cx coeff = t.entries[lf * half + rf];
            if (coeff == cx(0.0, 0.0)) continue;
            decode_multi(lf, t.num_events, D, mu);
            decode_multi(rf, t.num_events, D, nu);
            CMatrix term = ddo::kron(pauli_chain(basis, mu), pauli_chain(basis, nu));
            for (std::size_t i = 0; i < w.size(); ++i) w.entries[i] += coeff * norm * term.entries[i];
        }
    return w;
}

/// Row-major vectorization |m⟩⟩.
inline std::vector<cx> vec_row_major(const CMatrix &m) { return m.entries; }

inline CMatrix naive_superdensity(const ddo::CorrelationTensor &t, const ddo::PauliBasis &basis) {
    const int D = basis.count();
    const std::size_t half = t.half_size();
    std::size_t side = 1;
    for (int k = 0; k < 2 * t.num_events; ++k) side *= static_cast<std::size_t>(t.local_dim);
    CMatrix out(static_cast<int>(side), static_cast<int>(side));
    double norm = 1.0;
    for (int k = 0; k < 3 * t.num_events; ++k) norm /= t.local_dim;

    std::vector<int> mu, nu;
    for (std::size_t lf = 0; lf < half; ++lf)
        for (std::size_t rf = 0; rf < half; ++rf) {
            const cx coeff = t.entries[lf * half + rf];
            if (coeff == cx(0.0, 0.0)) continue;
            decode_multi(lf, t.num_events, D, mu);
            decode_multi(rf, t.num_events, D, nu);
            const std::vector<cx> ket = vec_row_major(pauli_chain(basis, mu));
            const std::vector<cx> bra = vec_row_major(pauli_chain(basis, nu));
            for (std::size_t i = 0; i < side; ++i)
                for (std::size_t j = 0; j < side; ++j)
                    out.entries[i * side + j] += coeff * norm * ket[i] * std::conj(bra[j]);
        }
    return out;
}

/// Single-event tensor from the Bloch coefficients, written out entrywise.
inline CMatrix single_event_tensor(double c1, double c2, double c3) {
    const cx i(0.0, 1.0);
    CMatrix m(4, 4);
    m.at(0, 0) = 1.0; m.at(0, 1) = c1;      m.at(0, 2) = c2;      m.at(0, 3) = c3;
    m.at(1, 0) = c1;  m.at(1, 1) = 1.0;     m.at(1, 2) = -i * c3; m.at(1, 3) = i * c2;
    m.at(2, 0) = c2;  m.at(2, 1) = i * c3;  m.at(2, 2) = 1.0;     m.at(2, 3) = -i * c1;
    m.at(3, 0) = c3;  m.at(3, 1) = -i * c2; m.at(3, 2) = i * c1;  m.at(3, 3) = 1.0;
    return m;
}

inline ddo::DensityOperator bloch_state(double c1, double c2, double c3) {
    CMatrix rho(2, 2);
    rho.at(0, 0) = 0.5 * (1.0 + c3);
    rho.at(0, 1) = 0.5 * cx(c1, -c2);
    rho.at(1, 0) = 0.5 * cx(c1, c2);
    rho.at(1, 1) = 0.5 * (1.0 - c3);
    return ddo::DensityOperator::make(std::move(rho));
}

inline double tensor_diff(const ddo::CorrelationTensor &a, const ddo::CorrelationTensor &b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i)
        worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
    return worst;
}

}  // namespace oracle
