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
#include "ddo/doubled.hpp"

namespace ddo {

/// Measurement on the doubled space. Local: one instrument per event, the
/// realized outcome operator is (⊗_i K_i) ⊗ (⊗_i K_i†). Joint: one
/// instrument on the full d^N event space with outcome operator K ⊗ K†.
struct DoubledMeasurement {
    enum class Kind { Local, Joint };
    Kind kind = Kind::Local;
    int local_dim = 0;
    int num_events = 0;
    std::vector<Instrument> locals;  // N instruments of dimension d
    Instrument joint;                // one instrument of dimension d^N

    static DoubledMeasurement local(int d, std::vector<Instrument> instruments) {
        DoubledMeasurement m;
        m.kind = Kind::Local;
        m.local_dim = d;
        m.num_events = static_cast<int>(instruments.size());
        for (const Instrument &inst : instruments)
            if (inst.dim != d)
                throw std::invalid_argument("DoubledMeasurement: local instrument dimension mismatch");
        m.locals = std::move(instruments);
        return m;
    }

    static DoubledMeasurement joint_on(int d, int n_events, Instrument instrument) {
        int full = 1;
        for (int k = 0; k < n_events; ++k) full *= d;
        if (instrument.dim != full)
            throw std::invalid_argument("DoubledMeasurement: joint instrument must act on d^N");
        DoubledMeasurement m;
        m.kind = Kind::Joint;
        m.local_dim = d;
        m.num_events = n_events;
        m.joint = std::move(instrument);
        return m;
    }

    /// Realized outcome operator on H_L ⊗ H_R.
    CMatrix outcome_operator(const std::vector<int> &selection) const {
        if (kind == Kind::Joint) {
            if (selection.size() != 1) throw std::invalid_argument("outcome_operator: joint selection is one index");
            const CMatrix &k = joint.ops[selection[0]];
            return kron(k, adjoint(k));
        }
        if (static_cast<int>(selection.size()) != num_events)
            throw std::invalid_argument("outcome_operator: need one outcome per event");
        std::vector<CMatrix> ks, kds;
        for (int i = 0; i < num_events; ++i) {
            ks.push_back(locals[i].ops[selection[i]]);
            kds.push_back(adjoint(locals[i].ops[selection[i]]));
        }
        return kron(kron_all(ks), kron_all(kds));
    }
};

/// Pauli expansion of a doubled-measurement outcome,
///   E^{μ⃗;ν⃗} = Tr[M (⊗σ_μ)⊗(⊗σ_ν)] / d^{2N},
/// stored in the same frozen flat layout as the correlation tensor so the
/// Born rule is a plain dot product.
struct EffectTensor {
    int local_dim = 0;
    int num_events = 0;
    std::vector<cx> entries;
};

inline EffectTensor effect_tensor_local(const std::vector<CMatrix> &kraus, const PauliBasis &basis) {
    const int d = basis.dim;
    const int D = d * d;
    const int n = static_cast<int>(kraus.size());
    // Tr[M (⊗σ_μ)⊗(⊗σ_ν)] factorizes as Π_i Tr(K_i σ_μi) Tr(K_i† σ_νi).
    std::vector<std::vector<cx>> left(n), right(n);
    for (int i = 0; i < n; ++i) {
        left[i].resize(D);
        right[i].resize(D);
        CMatrix kd = adjoint(kraus[i]);
        for (int mu = 0; mu < D; ++mu) {
            left[i][mu] = trace_product(kraus[i], basis.ops[mu]) / static_cast<double>(D);
            right[i][mu] = trace_product(kd, basis.ops[mu]);
        }
    }
    EffectTensor e;
    e.local_dim = d;
    e.num_events = n;
    std::size_t half = 1;
    for (int i = 0; i < n; ++i) half *= D;
    e.entries.assign(half * half, cx(0.0, 0.0));
    for (std::size_t lf = 0; lf < half; ++lf) {
        cx lprod = 1.0;
        std::size_t rem = lf;
        for (int i = 0; i < n; ++i) {
            lprod *= left[i][rem % D];
            rem /= D;
        }
        if (lprod == cx(0.0, 0.0)) continue;
        for (std::size_t rf = 0; rf < half; ++rf) {
            cx prod = lprod;
            rem = rf;
            for (int i = 0; i < n; ++i) {
                prod *= right[i][rem % D];
                rem /= D;
            }
            e.entries[lf * half + rf] = prod;
        }
    }
    return e;
}

inline EffectTensor effect_tensor_joint(const CMatrix &kraus, int d, int n_events, const PauliBasis &basis) {
    const int D = d * d;
    EffectTensor e;
    e.local_dim = d;
    e.num_events = n_events;
    std::size_t half = 1;
    for (int i = 0; i < n_events; ++i) half *= D;
    e.entries.assign(half * half, cx(0.0, 0.0));

    double norm = 1.0;
    for (int i = 0; i < n_events; ++i) norm *= D;
    CMatrix kd = adjoint(kraus);
    std::vector<cx> gl(half), gr(half);
    std::vector<int> digits(n_events);
    for (std::size_t f = 0; f < half; ++f) {
        std::size_t rem = f;
        std::vector<CMatrix> factors;
        for (int i = 0; i < n_events; ++i) {
            digits[i] = static_cast<int>(rem % D);
            rem /= D;
        }
        // event 0 is the first kron factor
        for (int i = 0; i < n_events; ++i) factors.push_back(basis.ops[digits[i]]);
        CMatrix sigma = kron_all(factors);
        gl[f] = trace_product(kraus, sigma);
        gr[f] = trace_product(kd, sigma);
    }
    for (std::size_t lf = 0; lf < half; ++lf)
        for (std::size_t rf = 0; rf < half; ++rf) e.entries[lf * half + rf] = gl[lf] * gr[rf] / norm;
    return e;
}

inline EffectTensor effect_tensor(const DoubledMeasurement &m, const std::vector<int> &selection,
                                  const PauliBasis &basis) {
    if (m.kind == DoubledMeasurement::Kind::Joint)
        return effect_tensor_joint(m.joint.ops[selection.at(0)], m.local_dim, m.num_events, basis);
    std::vector<CMatrix> kraus;
    for (int i = 0; i < m.num_events; ++i) kraus.push_back(m.locals[i].ops[selection[i]]);
    return effect_tensor_local(kraus, basis);
}

/// Born rule, matrix form: Tr(M·W). The raw complex value is returned;
/// interpreting it as a probability is the caller's concern (joint
/// measurements on temporal operators can leave the usual range).
inline cx born(const DoubledDensityOperator &w, const CMatrix &outcome_op) {
    if (outcome_op.rows != w.side() || outcome_op.cols != w.side())
        throw std::invalid_argument("born: outcome operator does not match the doubled space");
    return trace_product(outcome_op, w.mat);
}

/// Born rule for a local outcome without materializing the d^{4N}-entry
/// outcome operator.
inline cx born_local(const DoubledDensityOperator &w, const std::vector<CMatrix> &kraus) {
    std::vector<CMatrix> kds;
    kds.reserve(kraus.size());
    for (const CMatrix &k : kraus) kds.push_back(adjoint(k));
    return trace_kron_product(kron_all(kraus), kron_all(kds), w.mat);
}

/// Born rule, tensor form: Σ T^{μ⃗;ν⃗} E^{μ⃗;ν⃗}.
inline cx born_by_contraction(const CorrelationTensor &t, const EffectTensor &e) {
    if (t.local_dim != e.local_dim || t.num_events != e.num_events ||
        t.entries.size() != e.entries.size())
        throw std::invalid_argument("born_by_contraction: index ranges disagree");
    cx acc = 0.0;
    for (std::size_t i = 0; i < t.entries.size(); ++i) acc += t.entries[i] * e.entries[i];
    return acc;
}

struct OutcomeDistribution {
    std::vector<std::string> labels;        // per-event labels joined with ','
    std::vector<double> probabilities;
    double residual_imag = 0.0;             // largest imaginary part discarded
    std::vector<std::string> warnings;

    double total() const {
        double s = 0.0;
        for (double p : probabilities) s += p;
        return s;
    }
};

inline double max_distribution_deviation(const OutcomeDistribution &a, const OutcomeDistribution &b) {
    if (a.probabilities.size() != b.probabilities.size())
        throw std::invalid_argument("max_distribution_deviation: outcome counts differ");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.probabilities.size(); ++i)
        worst = std::max(worst, std::abs(a.probabilities[i] - b.probabilities[i]));
    return worst;
}

namespace detail {

/// Odometer over per-event outcome counts; the last event varies fastest.
inline bool advance_selection(std::vector<int> &sel, const std::vector<int> &counts) {
    for (int i = static_cast<int>(sel.size()) - 1; i >= 0; --i) {
        if (++sel[i] < counts[i]) return true;
        sel[i] = 0;
    }
    return false;
}

inline std::string joined_label(const std::vector<Instrument> &instruments, const std::vector<int> &sel) {
    std::string label;
    for (std::size_t i = 0; i < sel.size(); ++i) {
        if (i) label += ",";
        label += instruments[i].labels[sel[i]];
    }
    return label;
}

}  // namespace detail

/// Reference statistics straight from standard quantum mechanics: at each
/// step the selected outcome operators act on the measured qudits (identity
/// elsewhere), then the inter-step channel; the probability is the trace of
/// the final conditional state. Deliberately shares no tensor machinery with
/// the doubled-operator pipeline.
inline OutcomeDistribution qm_oracle(const ProcessModel &model, const std::vector<Instrument> &instruments) {
    const int n_events = model.num_events();
    if (static_cast<int>(instruments.size()) != n_events)
        throw std::invalid_argument("qm_oracle: need one instrument per event");
    for (const Instrument &inst : instruments)
        if (inst.dim != model.local_dim)
            throw std::invalid_argument("qm_oracle: instrument dimension must equal the local dimension");

    const FactorShape shape = model.qudit_shape();
    std::vector<int> counts;
    for (const Instrument &inst : instruments) counts.push_back(inst.outcomes());

    OutcomeDistribution dist;
    std::vector<int> sel(n_events, 0);
    do {
        CMatrix state = model.initial.mat;
        int event = 0;
        for (std::size_t k = 0; k < model.steps.size(); ++k) {
            const Step &step = model.steps[k];
            if (!step.measured.empty()) {
                std::vector<CMatrix> ks;
                for (std::size_t j = 0; j < step.measured.size(); ++j)
                    ks.push_back(instruments[event + static_cast<int>(j)].ops[sel[event + static_cast<int>(j)]]);
                CMatrix op = embed_on_factors(kron_all(ks), step.measured, shape);
                state = multiply(multiply(op, state), adjoint(op));
                event += static_cast<int>(step.measured.size());
            }
            if (step.next_channel) state = apply_channel(*step.next_channel, state);
        }
        const cx p = trace(state);
        dist.residual_imag = std::max(dist.residual_imag, std::abs(p.imag()));
        dist.labels.push_back(detail::joined_label(instruments, sel));
        dist.probabilities.push_back(p.real());
    } while (detail::advance_selection(sel, counts));
    return dist;
}

/// Born-rule statistics through the doubled pipeline: the tensor and W are
/// built once, then each outcome tuple is one trace against W. Imaginary
/// parts below `tol` are discarded (and surfaced via residual_imag); larger
/// ones are an error. Out-of-range real parts are retained with a warning.
inline OutcomeDistribution born_distribution(const ProcessModel &model,
                                             const std::vector<Instrument> &instruments,
                                             const PauliBasis &basis, double tol = kDefaultTol) {
    const int n_events = model.num_events();
    if (static_cast<int>(instruments.size()) != n_events)
        throw std::invalid_argument("born_distribution: need one instrument per event");

    CorrelationTensor t = dct_spacetime(model, basis);
    DoubledDensityOperator w = assemble(t, basis);

    std::vector<int> counts;
    for (const Instrument &inst : instruments) counts.push_back(inst.outcomes());

    OutcomeDistribution dist;
    std::vector<int> sel(n_events, 0);
    do {
        std::vector<CMatrix> kraus;
        for (int i = 0; i < n_events; ++i) kraus.push_back(instruments[i].ops[sel[i]]);
        const cx value = born_local(w, kraus);
        if (std::abs(value.imag()) > tol)
            throw std::domain_error("born_distribution: imaginary part exceeds tolerance");
        dist.residual_imag = std::max(dist.residual_imag, std::abs(value.imag()));
        const double p = value.real();
        if (p < -tol || p > 1.0 + tol)
            dist.warnings.push_back("outcome " + detail::joined_label(instruments, sel) +
                                    " outside [0,1]: " + std::to_string(p));
        dist.labels.push_back(detail::joined_label(instruments, sel));
        dist.probabilities.push_back(p);
    } while (detail::advance_selection(sel, counts));
    return dist;
}

inline json distribution_to_json(const OutcomeDistribution &dist) {
    json probs = json::object();
    for (std::size_t i = 0; i < dist.labels.size(); ++i) probs[dist.labels[i]] = dist.probabilities[i];
    json j{{"probabilities", std::move(probs)},
           {"residual_imag", dist.residual_imag},
           {"total", dist.total()}};
    if (!dist.warnings.empty()) j["warnings"] = dist.warnings;
    return j;
}

}  // namespace ddo
