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

#include "ddo/correlation.hpp"
#include "ddo/doubled.hpp"
#include "ddo/process.hpp"
#include "ddo/rng.hpp"

namespace ddo {

enum class LayoutClass { Spatial, Temporal, Mixed };

namespace detail {

inline int ipow_int(int base, int exp) {
    int t = 1;
    for (int i = 0; i < exp; ++i) t *= base;
    return t;
}

inline KrausChannel random_step_channel(CounterRng &rng, int d, int n) {
    const int total_dim = ipow_int(d, n);
    switch (rng.uniform_int(0, 3)) {
        case 0: return KrausChannel::identity(total_dim);
        case 1: return KrausChannel::from_unitary(random_unitary(rng, total_dim));
        case 2: return random_channel(rng, total_dim, rng.uniform_int(2, 3));
        default: {
            if (n == 1) return builtin_channel("depolarizing", {rng.uniform(0.0, 1.0)}, d);
            // local channel on one random qudit, identity on the rest
            const int target = rng.uniform_int(0, n - 1);
            KrausChannel local = random_channel(rng, d, rng.uniform_int(1, 2));
            std::vector<CMatrix> embedded;
            const FactorShape shape(std::vector<int>(n, d));
            for (const CMatrix &k : local.kraus)
                embedded.push_back(embed_on_factors(k, {target}, shape));
            return KrausChannel::make(std::move(embedded));
        }
    }
}

}  // namespace detail

/// Random process of the requested layout class at local dimension d, with
/// at most `max_events` events (desk-scale sizes only). The resulting model
/// is fully realized but carries no serializable channel specs.
inline ProcessModel random_model(CounterRng &rng, int d, LayoutClass layout, int max_events = 3) {
    ProcessModel model;
    model.local_dim = d;
    model.state_spec.kind = StateSpec::Kind::MaximallyMixed;  // placeholder spec; state set below

    auto random_initial = [&](int total_dim) {
        return rng.uniform() < 0.3 ? random_pure_state(rng, total_dim) : random_state(rng, total_dim);
    };

    switch (layout) {
        case LayoutClass::Spatial: {
            const int n = rng.uniform_int(1, std::min(max_events, d == 2 ? 3 : 3));
            model.num_qudits = n;
            model.initial = random_initial(detail::ipow_int(d, n));
            Step step;
            for (int q = 0; q < n; ++q) step.measured.push_back(q);
            model.steps = {step};
            break;
        }
        case LayoutClass::Temporal: {
            const int n_events = rng.uniform_int(2, max_events);
            model.num_qudits = 1;
            model.initial = random_initial(d);
            for (int k = 0; k < n_events; ++k) {
                Step step;
                step.measured = {0};
                if (k + 1 < n_events) step.next_channel = detail::random_step_channel(rng, d, 1);
                model.steps.push_back(std::move(step));
            }
            break;
        }
        case LayoutClass::Mixed: {
            model.num_qudits = 2;
            model.initial = random_initial(d * d);
            // layouts with events split across steps; occasionally an
            // unmeasured middle step
            const int pick = rng.uniform_int(0, 4);
            std::vector<std::vector<int>> plan;
            if (pick == 0)
                plan = {{0}, {1}};
            else if (pick == 1)
                plan = {{0, 1}, {rng.uniform_int(0, 1)}};
            else if (pick == 2)
                plan = {{rng.uniform_int(0, 1)}, {0, 1}};
            else if (pick == 3)
                plan = {{0}, {1}, {rng.uniform_int(0, 1)}};
            else
                plan = {{0}, {}, {1}};
            while (static_cast<int>(plan.size()) > 1) {
                int events = 0;
                for (const auto &s : plan) events += static_cast<int>(s.size());
                if (events <= max_events) break;
                plan.pop_back();
            }
            for (std::size_t k = 0; k < plan.size(); ++k) {
                Step step;
                step.measured = plan[k];
                if (k + 1 < plan.size()) step.next_channel = detail::random_step_channel(rng, d, 2);
                model.steps.push_back(std::move(step));
            }
            break;
        }
    }
    return model;
}

/// One instrument per event of the model: projective frames and general
/// isometry-split instruments, mixed.
inline std::vector<Instrument> random_instruments_for(CounterRng &rng, const ProcessModel &model) {
    std::vector<Instrument> instruments;
    const int d = model.local_dim;
    for (int e = 0; e < model.num_events(); ++e) {
        if (rng.uniform() < 0.5)
            instruments.push_back(random_projective_instrument(rng, d));
        else
            instruments.push_back(random_instrument(rng, d, rng.uniform_int(2, 3)));
    }
    return instruments;
}

/// Random valid correlation tensor with exactly `n_events` events; the
/// process layout is drawn from whatever classes fit that event count.
inline CorrelationTensor random_dct_fixed(CounterRng &rng, int d, int n_events, const PauliBasis &basis) {
    if (n_events == 1) {
        DensityOperator rho = rng.uniform() < 0.3 ? random_pure_state(rng, d) : random_state(rng, d);
        return dct_spatial(rho, basis, 1);
    }
    const int pick = rng.uniform_int(0, n_events <= 3 ? 2 : 1);
    if (pick == 0) {  // spatial on n_events qudits
        int total = detail::ipow_int(d, n_events);
        return dct_spatial(random_state(rng, total), basis, n_events);
    }
    if (pick == 1) {  // temporal chain
        std::vector<KrausChannel> channels;
        for (int k = 0; k + 1 < n_events; ++k) channels.push_back(detail::random_step_channel(rng, d, 1));
        return dct_temporal(random_state(rng, d), channels, basis);
    }
    // mixed: two qudits, one event per step except a doubled first step when
    // three events are needed
    ProcessModel model;
    model.local_dim = d;
    model.num_qudits = 2;
    model.initial = random_state(rng, d * d);
    std::vector<std::vector<int>> plan =
        n_events == 2 ? std::vector<std::vector<int>>{{0}, {1}}
                      : std::vector<std::vector<int>>{{0, 1}, {rng.uniform_int(0, 1)}};
    for (std::size_t k = 0; k < plan.size(); ++k) {
        Step step;
        step.measured = plan[k];
        if (k + 1 < plan.size()) step.next_channel = detail::random_step_channel(rng, d, 2);
        model.steps.push_back(std::move(step));
    }
    return dct_spacetime(model, basis);
}

/// Random valid correlation tensor built through the class's constructor.
inline CorrelationTensor random_dct(CounterRng &rng, int d, LayoutClass layout, const PauliBasis &basis,
                                    int max_events = 3) {
    ProcessModel model = random_model(rng, d, layout, max_events);
    switch (layout) {
        case LayoutClass::Spatial:
            return dct_spatial(model.initial, basis, model.num_qudits);
        case LayoutClass::Temporal: {
            std::vector<KrausChannel> channels;
            for (std::size_t k = 0; k + 1 < model.steps.size(); ++k)
                channels.push_back(*model.steps[k].next_channel);
            return dct_temporal(model.initial, channels, basis);
        }
        case LayoutClass::Mixed:
            return dct_spacetime(model, basis);
    }
    throw std::logic_error("random_dct: unreachable");
}

/// Admissibility audit of a tensor-space map over freshly sampled valid
/// tensors of the map's input shape (default 200 samples).
inline DqcAuditResult dqc_audit_random(const CMatrix &phi, int d, int n_events, const PauliBasis &basis,
                                       CounterRng rng, int samples = 200, double tol = kDefaultTol) {
    std::vector<CorrelationTensor> inputs;
    inputs.reserve(samples);
    for (int i = 0; i < samples; ++i) inputs.push_back(random_dct_fixed(rng, d, n_events, basis));
    return dqc_audit(phi, inputs, d, n_events, tol);
}

}  // namespace ddo
