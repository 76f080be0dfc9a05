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

#include <catch2/catch_amalgamated.hpp>

#include "ddo/inequalities.hpp"
#include "ddo/sampling.hpp"
#include "oracles.hpp"

using namespace ddo;

namespace {

BehaviorTable uniform_table() {
    BehaviorTable t;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) t.at(x, y, a, b) = 0.25;
    return t;
}

ProcessModel sequential_qubit_model(CounterRng &rng) {
    ProcessModel model;
    model.local_dim = 2;
    model.num_qudits = 1;
    model.initial = random_state(rng, 2);
    Step s1, s2;
    s1.measured = {0};
    s1.next_channel = random_channel(rng, 2, 2);
    s2.measured = {0};
    model.steps = {s1, s2};
    return model;
}

ProcessModel precession_model(double bloch_angle_per_step) {
    // rotation about x̂ by the given Bloch angle: U = cos(θ/2) I − i sin(θ/2) σ_x
    CMatrix u(2, 2);
    const double c = std::cos(bloch_angle_per_step / 2.0), s = std::sin(bloch_angle_per_step / 2.0);
    u.at(0, 0) = c;
    u.at(1, 1) = c;
    u.at(0, 1) = cx(0.0, -s);
    u.at(1, 0) = cx(0.0, -s);
    KrausChannel rot = KrausChannel::from_unitary(u);
    ProcessModel model;
    model.local_dim = 2;
    model.num_qudits = 1;
    model.initial = oracle::bloch_state(0, 0, 0);
    Step s1, s2, s3;
    s1.measured = {0};
    s1.next_channel = rot;
    s2.measured = {0};
    s2.next_channel = rot;
    s3.measured = {0};
    model.steps = {s1, s2, s3};
    return model;
}

}  // namespace

TEST_CASE("causal game values on reference tables") {
    BehaviorTable uniform = uniform_table();
    uniform.validate();
    REQUIRE(std::abs(causal_value(uniform, CausalInequality::Gyni) - 0.25) < 1e-15);
    REQUIRE(std::abs(causal_value(uniform, CausalInequality::Lgyni) - 9.0 / 16.0) < 1e-15);

    BehaviorTable guess;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) guess.at(x, y, y, x) = 1.0;
    guess.validate();
    REQUIRE(std::abs(causal_value(guess, CausalInequality::Gyni) - 1.0) < 1e-15);
    REQUIRE(std::abs(causal_value(guess, CausalInequality::Lgyni) - 1.0) < 1e-15);
}

TEST_CASE("signaling residuals on reference tables") {
    // product behavior: no signaling either way
    BehaviorTable product;
    const double pa[2] = {0.3, 0.7};
    const double pb[2] = {0.6, 0.4};
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b)
                    product.at(x, y, a, b) = (a == 0 ? pa[x] : 1 - pa[x]) * (b == 0 ? pb[y] : 1 - pb[y]);
    product.validate();
    REQUIRE(signaling_check(product, SignalDirection::AliceToBob) < 1e-15);
    REQUIRE(signaling_check(product, SignalDirection::BobToAlice) < 1e-15);

    // a = y deterministically: maximal signaling from Bob to Alice
    BehaviorTable leak;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int b = 0; b < 2; ++b) leak.at(x, y, y, b) = 0.5;
    leak.validate();
    REQUIRE(std::abs(signaling_check(leak, SignalDirection::BobToAlice) - 1.0) < 1e-15);
}

TEST_CASE("space-time test closed form at pinned configurations") {
    PauliBasis basis = build_basis(2);

    STTestConfig max_cfg{BlochObservable::make(0, 0, 1), BlochObservable::make(0, 0, -1),
                         BlochObservable::make(0, 0, 1)};
    STTestResult top = st_test_value(max_cfg, basis);
    REQUIRE(std::abs(top.simulated - 3.0) < 1e-9);
    REQUIRE(std::abs(top.analytic - 3.0) < 1e-12);
    REQUIRE(top.simulated > 1.5);

    STTestConfig same{BlochObservable::make(0, 0, 1), BlochObservable::make(0, 0, 1),
                      BlochObservable::make(0, 0, 1)};
    STTestResult equal = st_test_value(same, basis);
    REQUIRE(std::abs(equal.simulated + 1.0) < 1e-9);
    REQUIRE(std::abs(equal.analytic + 1.0) < 1e-12);

    STTestConfig axes{BlochObservable::make(1, 0, 0), BlochObservable::make(0, 1, 0),
                      BlochObservable::make(0, 0, 1)};
    STTestResult orthogonal = st_test_value(axes, basis);
    REQUIRE(std::abs(orthogonal.simulated) < 1e-9);
    REQUIRE(std::abs(orthogonal.analytic) < 1e-12);
}

TEST_CASE("space-time test simulation tracks the closed form") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        STTestConfig cfg{random_bloch(rng), random_bloch(rng), random_bloch(rng)};
        STTestResult result = st_test_value(cfg, basis);
        REQUIRE(std::abs(result.simulated - result.analytic) < 1e-9);
        REQUIRE(result.simulated <= 3.0 + 1e-9);
    }
}

TEST_CASE("leggett-garg value of trivial and precessing chains") {
    ProcessModel still = precession_model(0.0);
    BlochObservable z = BlochObservable::make(0, 0, 1);
    LgResult repeated = lg_value(still, {z, z, z});
    REQUIRE(std::abs(repeated.e21 - 1.0) < 1e-12);
    REQUIRE(std::abs(repeated.e32 - 1.0) < 1e-12);
    REQUIRE(std::abs(repeated.e31 - 1.0) < 1e-12);
    REQUIRE(std::abs(repeated.value - 1.0) < 1e-12);

    // two-point correlator of a precessing qubit is cos(θ) per step, so the
    // combination 2cos(θ) − cos(2θ) peaks at 1.5 for θ = π/3
    const double pi = 3.14159265358979323846;
    LgResult peak = lg_value(precession_model(pi / 3.0), {z, z, z});
    REQUIRE(std::abs(peak.e21 - 0.5) < 1e-12);
    REQUIRE(std::abs(peak.e32 - 0.5) < 1e-12);
    REQUIRE(std::abs(peak.e31 + 0.5) < 1e-12);
    REQUIRE(std::abs(peak.value - 1.5) < 1e-12);
}

TEST_CASE("leggett-garg value never exceeds the qubit ceiling") {
    CounterRng rng(102);
    for (int trial = 0; trial < 100; ++trial) {
        ProcessModel model;
        model.local_dim = 2;
        model.num_qudits = 1;
        model.initial = random_state(rng, 2);
        Step s1, s2, s3;
        s1.measured = {0};
        s1.next_channel = KrausChannel::from_unitary(random_unitary(rng, 2));
        s2.measured = {0};
        s2.next_channel = KrausChannel::from_unitary(random_unitary(rng, 2));
        s3.measured = {0};
        model.steps = {s1, s2, s3};
        LgResult result = lg_value(model, {random_bloch(rng), random_bloch(rng), random_bloch(rng)});
        REQUIRE(result.value <= 1.5 + 1e-9);
    }
}

TEST_CASE("leggett-garg rejects non-temporal models") {
    CounterRng rng(103);
    ProcessModel spatial;
    spatial.local_dim = 2;
    spatial.num_qudits = 2;
    spatial.initial = random_state(rng, 4);
    Step both;
    both.measured = {0, 1};
    spatial.steps = {both};
    BlochObservable z = BlochObservable::make(0, 0, 1);
    REQUIRE_THROWS_AS(lg_value(spatial, {z, z, z}), std::domain_error);
}

TEST_CASE("sequential behaviors respect the causal bounds and never signal backwards") {
    CounterRng rng(104);
    for (int trial = 0; trial < 20; ++trial) {
        ProcessModel model = sequential_qubit_model(rng);
        std::array<Instrument, 2> alice = {random_instrument(rng, 2, 2),
                                           random_projective_instrument(rng, 2)};
        std::array<Instrument, 2> bob = {random_projective_instrument(rng, 2),
                                         random_instrument(rng, 2, 2)};
        BehaviorTable table = behavior_from_sequential(model, alice, bob);
        table.validate();
        REQUIRE(causal_value(table, CausalInequality::Gyni) <= 0.5 + 1e-9);
        REQUIRE(causal_value(table, CausalInequality::Lgyni) <= 0.75 + 1e-9);
        REQUIRE(signaling_check(table, SignalDirection::BobToAlice) <= 1e-9);

        BehaviorTable reversed = swap_roles(table);
        REQUIRE(signaling_check(reversed, SignalDirection::AliceToBob) <= 1e-9);
        REQUIRE(causal_value(reversed, CausalInequality::Gyni) <= 0.5 + 1e-9);

        BehaviorTable mixed = mix_behaviors(rng.uniform(), table, reversed);
        REQUIRE(causal_value(mixed, CausalInequality::Gyni) <= 0.5 + 1e-9);
        REQUIRE(causal_value(mixed, CausalInequality::Lgyni) <= 0.75 + 1e-9);
    }
}

TEST_CASE("behavior table json codec and validation") {
    BehaviorTable t = uniform_table();
    BehaviorTable back = behavior_from_json(behavior_to_json(t));
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y)
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) REQUIRE(back.at(x, y, a, b) == t.at(x, y, a, b));

    BehaviorTable bad = uniform_table();
    bad.at(0, 0, 0, 0) = 0.5;
    REQUIRE_THROWS_AS(bad.validate(), std::domain_error);
    REQUIRE_THROWS_AS(behavior_from_json(json{{"p", json::array()}}), std::invalid_argument);
}
