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

#include "ddo/born.hpp"
#include "ddo/inequalities.hpp"
#include "ddo/sampling.hpp"
#include "oracles.hpp"

using namespace ddo;

namespace {

ddo::StateSpec singlet_spec() {
    ddo::StateSpec spec;
    spec.kind = ddo::StateSpec::Kind::Singlet;
    return spec;
}

}  // namespace


namespace {

Instrument projective_z() {
    CMatrix p0(2, 2), p1(2, 2);
    p0.at(0, 0) = 1.0;
    p1.at(1, 1) = 1.0;
    return Instrument::make({p0, p1}, {"0", "1"});
}

ProcessModel temporal_model(DensityOperator rho, std::vector<KrausChannel> channels) {
    ProcessModel model;
    model.local_dim = rho.dim;
    model.num_qudits = 1;
    model.initial = std::move(rho);
    for (std::size_t k = 0; k <= channels.size(); ++k) {
        Step step;
        step.measured = {0};
        if (k < channels.size()) step.next_channel = channels[k];
        model.steps.push_back(std::move(step));
    }
    return model;
}

}  // namespace

TEST_CASE("normalization and projective certainty in the matrix form") {
    PauliBasis basis = build_basis(2);
    DensityOperator rho = oracle::bloch_state(0.1, -0.2, 0.9);
    DoubledDensityOperator w = assemble(dct_spatial(rho, basis, 1), basis);

    DoubledMeasurement trivial = DoubledMeasurement::local(2, {Instrument::trivial(2)});
    REQUIRE(std::abs(born(w, trivial.outcome_operator({0})) - cx(1.0, 0.0)) < 1e-12);

    DoubledDensityOperator wz = assemble(dct_spatial(oracle::bloch_state(0, 0, 1), basis, 1), basis);
    DoubledMeasurement z = DoubledMeasurement::local(2, {projective_z()});
    REQUIRE(std::abs(born(wz, z.outcome_operator({0})) - cx(1.0, 0.0)) < 1e-12);
    REQUIRE(std::abs(born(wz, z.outcome_operator({1}))) < 1e-12);
}

TEST_CASE("singlet correlations through the doubled operator") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(91);
    ProcessModel model;
    model.local_dim = 2;
    model.num_qudits = 2;
    model.initial = realize_state(singlet_spec(), 2, 2, "");
    Step step;
    step.measured = {0, 1};
    model.steps = {step};

    for (int trial = 0; trial < 5; ++trial) {
        BlochObservable a = random_bloch(rng), b = random_bloch(rng);
        std::vector<Instrument> instruments = {a.instrument(), b.instrument()};
        OutcomeDistribution dist = born_distribution(model, instruments, basis);
        const double want = 0.25 * (1.0 - a.dot(b));
        REQUIRE(std::abs(dist.probabilities[0] - want) < 1e-12);  // (+,+) outcome
        REQUIRE(max_distribution_deviation(dist, qm_oracle(model, instruments)) < 1e-12);
    }
}

TEST_CASE("contraction form agrees with the matrix form") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(92);

    // identity effect on any valid tensor gives 1
    CorrelationTensor t = dct_temporal(random_state(rng, 2), {random_channel(rng, 2, 2)}, basis);
    DoubledMeasurement trivial =
        DoubledMeasurement::local(2, {Instrument::trivial(2), Instrument::trivial(2)});
    EffectTensor identity_effect = effect_tensor(trivial, {0, 0}, basis);
    REQUIRE(std::abs(born_by_contraction(t, identity_effect) - cx(1.0, 0.0)) < 1e-12);

    // projective-z effect on the single-event tensor picks out (1+c3)/2
    const double c3 = 0.62;
    CorrelationTensor single = dct_spatial(oracle::bloch_state(0.3, -0.4, c3), basis, 1);
    DoubledMeasurement z = DoubledMeasurement::local(2, {projective_z()});
    EffectTensor ez = effect_tensor(z, {0}, basis);
    REQUIRE(std::abs(born_by_contraction(single, ez) - cx(0.5 * (1.0 + c3), 0.0)) < 1e-12);

    // random temporal tensor and instrument: both routes agree
    std::vector<Instrument> instruments = {random_instrument(rng, 2, 2), random_instrument(rng, 2, 3)};
    DoubledMeasurement m = DoubledMeasurement::local(2, instruments);
    DoubledDensityOperator w = assemble(t, basis);
    for (int a0 = 0; a0 < 2; ++a0)
        for (int a1 = 0; a1 < 3; ++a1) {
            const cx via_matrix = born(w, m.outcome_operator({a0, a1}));
            const cx via_tensor = born_by_contraction(t, effect_tensor(m, {a0, a1}, basis));
            REQUIRE(std::abs(via_matrix - via_tensor) < 1e-10);
        }
}

TEST_CASE("effect tensor all-zero entry is the scaled operator trace") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(93);
    Instrument inst = random_instrument(rng, 2, 2);
    DoubledMeasurement m = DoubledMeasurement::local(2, {inst});
    EffectTensor e = effect_tensor(m, {1}, basis);
    const CMatrix op = m.outcome_operator({1});
    REQUIRE(std::abs(e.entries[0] - trace(op) / 4.0) < 1e-12);
}

TEST_CASE("reference statistics of simple chains") {
    PauliBasis basis = build_basis(2);

    ProcessModel flip = temporal_model(oracle::bloch_state(0, 0, 1), {builtin_channel("bitflip", {1.0}, 2)});
    OutcomeDistribution dist = qm_oracle(flip, {projective_z(), projective_z()});
    REQUIRE(dist.labels[1] == "0,1");
    REQUIRE(std::abs(dist.probabilities[1] - 1.0) < 1e-12);
    REQUIRE(std::abs(dist.probabilities[0]) < 1e-12);
    REQUIRE(std::abs(dist.probabilities[2]) < 1e-12);
    REQUIRE(std::abs(dist.probabilities[3]) < 1e-12);

    ProcessModel bell;
    bell.local_dim = 2;
    bell.num_qudits = 2;
    bell.initial = realize_state(singlet_spec(), 2, 2, "");
    Step both;
    both.measured = {0, 1};
    bell.steps = {both};
    OutcomeDistribution anti = qm_oracle(bell, {projective_z(), projective_z()});
    REQUIRE(std::abs(anti.probabilities[0]) < 1e-12);        // 0,0
    REQUIRE(std::abs(anti.probabilities[1] - 0.5) < 1e-12);  // 0,1
    REQUIRE(std::abs(anti.probabilities[2] - 0.5) < 1e-12);  // 1,0
    REQUIRE(std::abs(anti.probabilities[3]) < 1e-12);        // 1,1

    OutcomeDistribution one = qm_oracle(bell, {Instrument::trivial(2), Instrument::trivial(2)});
    REQUIRE(one.probabilities.size() == 1);
    REQUIRE(std::abs(one.probabilities[0] - 1.0) < 1e-12);
}

TEST_CASE("doubled pipeline equals the reference on the named chains") {
    PauliBasis basis = build_basis(2);

    // |+⟩ measured twice in z across trivial dynamics: perfectly repeatable
    ProcessModel plus = temporal_model(oracle::bloch_state(1, 0, 0), {KrausChannel::identity(2)});
    OutcomeDistribution dist = born_distribution(plus, {projective_z(), projective_z()}, basis);
    REQUIRE(std::abs(dist.probabilities[0] - 0.5) < 1e-12);  // 0,0
    REQUIRE(std::abs(dist.probabilities[1]) < 1e-12);
    REQUIRE(std::abs(dist.probabilities[2]) < 1e-12);
    REQUIRE(std::abs(dist.probabilities[3] - 0.5) < 1e-12);  // 1,1
    REQUIRE(max_distribution_deviation(dist, qm_oracle(plus, {projective_z(), projective_z()})) < 1e-12);

    // product state with local instruments factorizes into marginals
    CounterRng rng(94);
    DensityOperator rho1 = random_state(rng, 2), rho2 = random_state(rng, 2);
    ProcessModel product;
    product.local_dim = 2;
    product.num_qudits = 2;
    product.initial = DensityOperator::make(kron(rho1.mat, rho2.mat));
    Step both;
    both.measured = {0, 1};
    product.steps = {both};
    Instrument ia = random_instrument(rng, 2, 2), ib = random_instrument(rng, 2, 2);
    OutcomeDistribution joint = born_distribution(product, {ia, ib}, basis);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
            const double pa = trace(multiply(multiply(ia.ops[a], rho1.mat), adjoint(ia.ops[a]))).real();
            const double pb = trace(multiply(multiply(ib.ops[b], rho2.mat), adjoint(ib.ops[b]))).real();
            REQUIRE(std::abs(joint.probabilities[a * 2 + b] - pa * pb) < 1e-12);
        }
}

TEST_CASE("born engine equals the reference across random processes") {
    PauliBasis basis2 = build_basis(2), basis3 = build_basis(3);
    CounterRng rng(95);
    for (LayoutClass layout : {LayoutClass::Spatial, LayoutClass::Temporal, LayoutClass::Mixed})
        for (int trial = 0; trial < 8; ++trial) {
            const int d = trial % 2 == 0 ? 2 : 3;
            const PauliBasis &basis = d == 2 ? basis2 : basis3;
            ProcessModel model = random_model(rng, d, layout);
            std::vector<Instrument> instruments = random_instruments_for(rng, model);
            OutcomeDistribution a = born_distribution(model, instruments, basis);
            OutcomeDistribution b = qm_oracle(model, instruments);
            REQUIRE(max_distribution_deviation(a, b) < 1e-10);
            REQUIRE(std::abs(a.total() - 1.0) < 1e-10);
        }
}

TEST_CASE("joint measurements reproduce standard statistics on spatial operators") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(96);
    DensityOperator rho = random_state(rng, 4);
    DoubledDensityOperator w = assemble(dct_spatial(rho, basis, 2), basis);

    Instrument joint = random_instrument(rng, 4, 3);
    DoubledMeasurement m = DoubledMeasurement::joint_on(2, 2, joint);
    double total = 0.0;
    for (int a = 0; a < 3; ++a) {
        const cx value = born(w, m.outcome_operator({a}));
        const CMatrix &k = joint.ops[a];
        const double expected = trace(multiply(multiply(k, rho.mat), adjoint(k))).real();
        REQUIRE(std::abs(value - cx(expected, 0.0)) < 1e-9);
        // tensor route agrees with the matrix route for joint outcomes too
        CorrelationTensor t = disassemble(w, basis);
        REQUIRE(std::abs(born_by_contraction(t, effect_tensor(m, {a}, basis)) - value) < 1e-10);
        total += value.real();
    }
    REQUIRE(std::abs(total - 1.0) < 1e-9);
}

TEST_CASE("joint measurements on temporal operators are evaluated, not clamped") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(97);
    CorrelationTensor t = dct_temporal(oracle::bloch_state(0, 0, 1), {KrausChannel::identity(2)}, basis);
    DoubledDensityOperator w = assemble(t, basis);
    Instrument joint = random_instrument(rng, 4, 2);
    DoubledMeasurement m = DoubledMeasurement::joint_on(2, 2, joint);
    const cx v0 = born(w, m.outcome_operator({0}));
    const cx v1 = born(w, m.outcome_operator({1}));
    // joint outcomes across time need not form a probability distribution;
    // the value is surfaced as-is and both evaluation routes agree on it
    REQUIRE(std::abs(born_by_contraction(t, effect_tensor(m, {0}, basis)) - v0) < 1e-10);
    REQUIRE(std::abs(born_by_contraction(t, effect_tensor(m, {1}, basis)) - v1) < 1e-10);
    REQUIRE(std::isfinite(v0.real()));
    REQUIRE(std::isfinite(v1.real()));
}

TEST_CASE("born distribution rejects mismatched instrument lists") {
    PauliBasis basis = build_basis(2);
    ProcessModel model = temporal_model(oracle::bloch_state(0, 0, 1), {KrausChannel::identity(2)});
    REQUIRE_THROWS_AS(born_distribution(model, {projective_z()}, basis), std::invalid_argument);
    REQUIRE_THROWS_AS(qm_oracle(model, {projective_z()}), std::invalid_argument);
}
