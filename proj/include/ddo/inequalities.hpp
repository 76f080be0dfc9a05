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

#include <array>
#include <string>
#include <vector>

#include "ddo/born.hpp"

namespace ddo {

/// Two-party behavior p(a,b|x,y), binary settings and outcomes.
struct BehaviorTable {
    // indexed [x][y][a][b]
    std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> p{};

    double &at(int x, int y, int a, int b) { return p[x][y][a][b]; }
    double at(int x, int y, int a, int b) const { return p[x][y][a][b]; }

    void validate(double tol = kDefaultTol) const {
        for (int x = 0; x < 2; ++x)
            for (int y = 0; y < 2; ++y) {
                double sum = 0.0;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b) {
                        if (p[x][y][a][b] < -tol)
                            throw std::domain_error("BehaviorTable: negative probability");
                        sum += p[x][y][a][b];
                    }
                if (std::abs(sum - 1.0) > tol)
                    throw std::domain_error("BehaviorTable: conditional distribution does not sum to 1");
            }
    }

    /// Alice marginal p(a|x,y).
    double alice_marginal(int a, int x, int y) const { return p[x][y][a][0] + p[x][y][a][1]; }
    /// Bob marginal p(b|x,y).
    double bob_marginal(int b, int x, int y) const { return p[x][y][0][b] + p[x][y][1][b]; }
};

inline BehaviorTable mix_behaviors(double lambda, const BehaviorTable &first, const BehaviorTable &second) {
    BehaviorTable out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    out.p[x][y][a][b] = lambda * first.p[x][y][a][b] + (1.0 - lambda) * second.p[x][y][a][b];
    return out;
}

/// Role swap: the returned table describes the same experiment with Alice
/// and Bob exchanged.
inline BehaviorTable swap_roles(const BehaviorTable &t) {
    BehaviorTable out;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) out.p[x][y][a][b] = t.p[y][x][b][a];
    return out;
}

enum class CausalInequality { Gyni, Lgyni };

/// Weighted success sums of the two causal games; every convex mixture of
/// fixed-order behaviors obeys GYNI ≤ 1/2 and LGYNI ≤ 3/4.
inline double causal_value(const BehaviorTable &t, CausalInequality which) {
    double sum = 0.0;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    bool counts;
                    if (which == CausalInequality::Gyni) {
                        counts = (a == y) && (b == x);
                    } else {
                        counts = (x * ((a + y) % 2) == 0) && (y * ((b + x) % 2) == 0);
                    }
                    if (counts) sum += t.p[x][y][a][b];
                }
    return 0.25 * sum;
}

enum class SignalDirection { AliceToBob, BobToAlice };

/// Residual of the one-way no-signaling condition: how much one party's
/// marginal depends on the other party's setting.
inline double signaling_check(const BehaviorTable &t, SignalDirection direction) {
    double worst = 0.0;
    if (direction == SignalDirection::BobToAlice) {
        for (int a = 0; a < 2; ++a)
            for (int x = 0; x < 2; ++x)
                worst = std::max(worst, std::abs(t.alice_marginal(a, x, 0) - t.alice_marginal(a, x, 1)));
    } else {
        for (int b = 0; b < 2; ++b)
            for (int y = 0; y < 2; ++y)
                worst = std::max(worst, std::abs(t.bob_marginal(b, 0, y) - t.bob_marginal(b, 1, y)));
    }
    return worst;
}

/// Behavior of a two-step single-qudit process where the first measurement
/// is Alice's (setting x) and the second Bob's (setting y).
inline BehaviorTable behavior_from_sequential(const ProcessModel &model,
                                              const std::array<Instrument, 2> &alice,
                                              const std::array<Instrument, 2> &bob) {
    if (model.num_events() != 2 || model.steps.size() != 2)
        throw std::invalid_argument("behavior_from_sequential: need a two-step, two-event process");
    BehaviorTable table;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
            OutcomeDistribution dist = qm_oracle(model, {alice[x], bob[y]});
            // outcome tuples enumerate the last event fastest
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) table.at(x, y, a, b) = dist.probabilities[a * 2 + b];
        }
    return table;
}

/// Configuration of the three-measurement space-time correlation test:
/// Q1 on qubit 0 at the first step, Q2 on qubit 1 at the second step,
/// Q3 on qubit 0 at the third step, singlet input, identity dynamics.
struct STTestConfig {
    BlochObservable a1, a2, a3;
};

struct STTestResult {
    double simulated = 0.0;  // E21 + E32 + E31 from the Born engine
    double analytic = 0.0;   // −cosθ12 − cosθ23 + cosθ13
    double e21 = 0.0, e32 = 0.0, e31 = 0.0;
};

inline ProcessModel st_test_model() {
    ProcessModel model;
    model.local_dim = 2;
    model.num_qudits = 2;
    model.state_spec.kind = StateSpec::Kind::Singlet;
    model.initial = realize_state(model.state_spec, 2, 2, "");
    ChannelSpec id_spec;
    id_spec.kind = ChannelSpec::Kind::Builtin;
    id_spec.name = "identity";
    Step s1, s2, s3;
    s1.measured = {0};
    s1.channel_spec = id_spec;
    s1.next_channel = KrausChannel::identity(4);
    s2.measured = {1};
    s2.channel_spec = id_spec;
    s2.next_channel = KrausChannel::identity(4);
    s3.measured = {0};
    model.steps = {s1, s2, s3};
    return model;
}

namespace detail {

/// ±1 correlator between two of the three events; the excluded event gets
/// the trivial single-outcome instrument, so only the two relevant
/// measurements disturb the run. Outcome 0 ↦ +1, outcome 1 ↦ −1.
inline double pair_correlator(const ProcessModel &model, const std::vector<Instrument> &instruments,
                              int event_a, int event_b, const PauliBasis *basis) {
    OutcomeDistribution dist = basis ? born_distribution(model, instruments, *basis)
                                     : qm_oracle(model, instruments);
    std::vector<int> counts;
    for (const Instrument &inst : instruments) counts.push_back(inst.outcomes());
    double corr = 0.0;
    std::vector<int> sel(instruments.size(), 0);
    std::size_t idx = 0;
    do {
        const double sign_a = sel[event_a] == 0 ? 1.0 : -1.0;
        const double sign_b = sel[event_b] == 0 ? 1.0 : -1.0;
        corr += sign_a * sign_b * dist.probabilities[idx++];
    } while (advance_selection(sel, counts));
    return corr;
}

}  // namespace detail

/// Runs the space-time test through the doubled-operator Born engine and
/// reports the simulated value next to the closed form. Each correlator is a
/// separate run with only its two measurements inserted; the third event
/// carries the trivial instrument.
inline STTestResult st_test_value(const STTestConfig &cfg, const PauliBasis &basis) {
    if (basis.dim != 2) throw std::invalid_argument("st_test_value: qubit basis required");
    ProcessModel model = st_test_model();
    const Instrument trivial = Instrument::trivial(2);
    const Instrument m1 = cfg.a1.instrument();
    const Instrument m2 = cfg.a2.instrument();
    const Instrument m3 = cfg.a3.instrument();

    STTestResult result;
    result.e21 = detail::pair_correlator(model, {m1, m2, trivial}, 0, 1, &basis);
    result.e32 = detail::pair_correlator(model, {trivial, m2, m3}, 1, 2, &basis);
    result.e31 = detail::pair_correlator(model, {m1, trivial, m3}, 0, 2, &basis);
    result.simulated = result.e21 + result.e32 + result.e31;
    result.analytic = -cfg.a1.dot(cfg.a2) - cfg.a2.dot(cfg.a3) + cfg.a1.dot(cfg.a3);
    return result;
}

struct LgResult {
    double value = 0.0;  // E21 + E32 − E31
    double e21 = 0.0, e32 = 0.0, e31 = 0.0;
};

/// Leggett-Garg combination K = ⟨Q2Q1⟩ + ⟨Q3Q2⟩ − ⟨Q3Q1⟩ for a single-qudit
/// three-step chain, with per-pair sequential correlators (only the two
/// relevant measurements inserted per run).
inline LgResult lg_value(const ProcessModel &model, const std::array<BlochObservable, 3> &observables) {
    if (model.num_qudits != 1 || model.local_dim != 2)
        throw std::domain_error("lg_value: single-qubit temporal model required");
    if (model.steps.size() != 3) throw std::domain_error("lg_value: three steps required");
    for (const Step &s : model.steps)
        if (s.measured.size() != 1) throw std::domain_error("lg_value: every step must measure the qubit");

    const Instrument trivial = Instrument::trivial(2);
    const Instrument m1 = observables[0].instrument();
    const Instrument m2 = observables[1].instrument();
    const Instrument m3 = observables[2].instrument();

    LgResult result;
    result.e21 = detail::pair_correlator(model, {m1, m2, trivial}, 0, 1, nullptr);
    result.e32 = detail::pair_correlator(model, {trivial, m2, m3}, 1, 2, nullptr);
    result.e31 = detail::pair_correlator(model, {m1, trivial, m3}, 0, 2, nullptr);
    result.value = result.e21 + result.e32 - result.e31;
    return result;
}

inline json behavior_to_json(const BehaviorTable &t) {
    json px = json::array();
    for (int x = 0; x < 2; ++x) {
        json py = json::array();
        for (int y = 0; y < 2; ++y) {
            json pa = json::array();
            for (int a = 0; a < 2; ++a) {
                json pb = json::array();
                for (int b = 0; b < 2; ++b) pb.push_back(t.p[x][y][a][b]);
                pa.push_back(std::move(pb));
            }
            py.push_back(std::move(pa));
        }
        px.push_back(std::move(py));
    }
    return json{{"p", std::move(px)}};
}

inline BehaviorTable behavior_from_json(const json &j) {
    if (!j.is_object() || !j.contains("p"))
        throw std::invalid_argument("behavior codec: expected {p: [x][y][a][b]}");
    BehaviorTable t;
    const json &px = j.at("p");
    if (!px.is_array() || px.size() != 2) throw std::invalid_argument("behavior codec: bad x extent");
    for (int x = 0; x < 2; ++x) {
        const json &py = px.at(x);
        if (!py.is_array() || py.size() != 2) throw std::invalid_argument("behavior codec: bad y extent");
        for (int y = 0; y < 2; ++y) {
            const json &pa = py.at(y);
            if (!pa.is_array() || pa.size() != 2) throw std::invalid_argument("behavior codec: bad a extent");
            for (int a = 0; a < 2; ++a) {
                const json &pb = pa.at(a);
                if (!pb.is_array() || pb.size() != 2) throw std::invalid_argument("behavior codec: bad b extent");
                for (int b = 0; b < 2; ++b) t.p[x][y][a][b] = pb.at(b).get<double>();
            }
        }
    }
    return t;
}

}  // namespace ddo
