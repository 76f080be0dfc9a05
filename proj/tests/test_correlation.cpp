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

#include "ddo/correlation.hpp"
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


TEST_CASE("single-event tensor matches the closed form") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(51);
    for (int trial = 0; trial < 100; ++trial) {
        double c1, c2, c3;
        do {
            c1 = rng.uniform(-1.0, 1.0);
            c2 = rng.uniform(-1.0, 1.0);
            c3 = rng.uniform(-1.0, 1.0);
        } while (c1 * c1 + c2 * c2 + c3 * c3 > 1.0);
        CorrelationTensor t = dct_spatial(oracle::bloch_state(c1, c2, c3), basis, 1);
        REQUIRE(max_abs_diff(t.matricization(), oracle::single_event_tensor(c1, c2, c3)) < 1e-12);
    }
    // maximally mixed input gives the identity tensor
    CorrelationTensor tm = dct_spatial(oracle::bloch_state(0, 0, 0), basis, 1);
    REQUIRE(max_abs_diff(tm.matricization(), CMatrix::identity(4)) < 1e-14);
}

TEST_CASE("two-qubit singlet tensor: axioms and independent recomputation") {
    PauliBasis basis = build_basis(2);
    DensityOperator singlet = realize_state(singlet_spec(), 2, 2, "");
    CorrelationTensor t = dct_spatial(singlet, basis, 2);
    REQUIRE(t.matricization().rows == 16);

    AxiomReport report = verify_axioms(t);
    REQUIRE(report.pass());
    REQUIRE(report.hermiticity_residual < 1e-12);
    REQUIRE(report.min_eigenvalue >= -1e-9);
    REQUIRE(std::abs(t.entries[0] - cx(1.0, 0.0)) < 1e-12);

    REQUIRE(oracle::tensor_diff(t, oracle::naive_dct_spatial(singlet.mat, basis, 2)) < 1e-12);
}

TEST_CASE("quadratic form of the matricization equals the Gram expression") {
    // Σ X*_μ⃗ M X_ν⃗ = Tr(G ρ G†) with G = Σ X*_α⃗ (⊗σ_α): the positivity
    // mechanism checked directly against its defining expression.
    PauliBasis basis = build_basis(2);
    CounterRng rng(52);
    DensityOperator rho = random_state(rng, 4);
    CorrelationTensor t = dct_spatial(rho, basis, 2);
    CMatrix m = t.matricization();

    for (int trial = 0; trial < 20; ++trial) {
        std::vector<cx> x(16);
        for (cx &v : x) v = rng.normal_cx();

        cx quad = 0.0;
        for (int i = 0; i < 16; ++i)
            for (int j = 0; j < 16; ++j) quad += std::conj(x[i]) * m.at(i, j) * x[j];

        CMatrix g(4, 4);
        for (int alpha = 0; alpha < 16; ++alpha) {
            std::vector<int> labels;
            oracle::decode_multi(alpha, 2, 4, labels);
            CMatrix chain = oracle::pauli_chain(basis, labels);
            for (std::size_t e = 0; e < g.size(); ++e)
                g.entries[e] += std::conj(x[alpha]) * chain.entries[e];
        }
        const cx gram = trace(multiply(multiply(g, rho.mat), adjoint(g)));
        REQUIRE(std::abs(quad - gram) < 1e-9);
        REQUIRE(quad.real() >= -1e-9);
    }
}

TEST_CASE("temporal tensor witnesses non-classical index structure") {
    PauliBasis basis = build_basis(2);

    // identity channel: T^{0,0;1,2} = i·Tr(ρ σ_z)
    DensityOperator rho = oracle::bloch_state(0.3, -0.2, 0.6);
    CorrelationTensor t = dct_temporal(rho, {KrausChannel::identity(2)}, basis);
    REQUIRE(std::abs(t.at({0, 0}, {1, 2}) - cx(0.0, 0.6)) < 1e-12);

    DensityOperator mixed = oracle::bloch_state(0, 0, 0);
    CorrelationTensor tm = dct_temporal(mixed, {KrausChannel::identity(2)}, basis);
    REQUIRE(std::abs(tm.at({0, 0}, {1, 2})) < 1e-13);
}

TEST_CASE("temporal tensor equals the straightforward per-entry evaluation") {
    PauliBasis basis = build_basis(2);
    DensityOperator ket0 = oracle::bloch_state(0, 0, 1);
    std::vector<KrausChannel> chain = {builtin_channel("bitflip", {1.0}, 2)};
    CorrelationTensor fast = dct_temporal(ket0, chain, basis);
    CorrelationTensor slow = oracle::naive_dct_temporal(ket0, chain, basis);
    REQUIRE(oracle::tensor_diff(fast, slow) < 1e-12);

    CounterRng rng(53);
    std::vector<KrausChannel> random_chain = {random_channel(rng, 2, 2), random_channel(rng, 2, 3)};
    DensityOperator r = random_state(rng, 2);
    REQUIRE(oracle::tensor_diff(dct_temporal(r, random_chain, basis),
                                oracle::naive_dct_temporal(r, random_chain, basis)) < 1e-12);
}

TEST_CASE("general construction reduces to the spatial and temporal ones") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(54);

    ProcessModel spatial;
    spatial.local_dim = 2;
    spatial.num_qudits = 2;
    spatial.initial = random_state(rng, 4);
    Step all;
    all.measured = {0, 1};
    spatial.steps = {all};
    REQUIRE(oracle::tensor_diff(dct_spacetime(spatial, basis),
                                dct_spatial(spatial.initial, basis, 2)) < 1e-12);

    ProcessModel temporal;
    temporal.local_dim = 2;
    temporal.num_qudits = 1;
    temporal.initial = random_state(rng, 2);
    KrausChannel ch = random_channel(rng, 2, 2);
    Step s1, s2;
    s1.measured = {0};
    s1.next_channel = ch;
    s2.measured = {0};
    temporal.steps = {s1, s2};
    REQUIRE(oracle::tensor_diff(dct_spacetime(temporal, basis),
                                dct_temporal(temporal.initial, {ch}, basis)) < 1e-12);
}

TEST_CASE("two-qubit chain with an entangling unitary channel") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(55);

    CMatrix cnot(4, 4);
    cnot.at(0, 0) = 1.0;
    cnot.at(1, 1) = 1.0;
    cnot.at(2, 3) = 1.0;
    cnot.at(3, 2) = 1.0;

    ProcessModel model;
    model.local_dim = 2;
    model.num_qudits = 2;
    model.initial = random_state(rng, 4);
    Step s1, s2;
    s1.measured = {0};
    s1.next_channel = KrausChannel::from_unitary(cnot);
    s2.measured = {1};
    model.steps = {s1, s2};

    CorrelationTensor t = dct_spacetime(model, basis);
    REQUIRE(verify_axioms(t).pass());
    REQUIRE(oracle::tensor_diff(t, oracle::naive_dct_spacetime(model, basis)) < 1e-12);
}

TEST_CASE("general construction handles unmeasured steps and measured-order permutations") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(56);

    ProcessModel model;
    model.local_dim = 2;
    model.num_qudits = 2;
    model.initial = random_state(rng, 4);
    Step s1, s2, s3;
    s1.measured = {1, 0};  // slot order deliberately reversed
    s1.next_channel = random_channel(rng, 4, 2);
    s2.measured = {};
    s2.next_channel = KrausChannel::from_unitary(random_unitary(rng, 4));
    s3.measured = {1};
    model.steps = {s1, s2, s3};

    CorrelationTensor t = dct_spacetime(model, basis);
    REQUIRE(oracle::tensor_diff(t, oracle::naive_dct_spacetime(model, basis)) < 1e-11);
    REQUIRE(verify_axioms(t).pass());
}

TEST_CASE("final-step slot order and trailing unmeasured steps") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(62);

    // a single step measuring the qudits in reverse order: event 0 is qudit 1
    ProcessModel reversed;
    reversed.local_dim = 2;
    reversed.num_qudits = 2;
    reversed.initial = random_state(rng, 4);
    Step back;
    back.measured = {1, 0};
    reversed.steps = {back};
    CorrelationTensor t = dct_spacetime(reversed, basis);
    REQUIRE(oracle::tensor_diff(t, oracle::naive_dct_spacetime(reversed, basis)) < 1e-12);
    REQUIRE(verify_axioms(t).pass());

    // an empty final step leaves a plain single-event tensor behind
    ProcessModel trailing;
    trailing.local_dim = 2;
    trailing.num_qudits = 1;
    trailing.initial = random_state(rng, 2);
    Step s1, s2;
    s1.measured = {0};
    s1.next_channel = KrausChannel::identity(2);
    s2.measured = {};
    trailing.steps = {s1, s2};
    CorrelationTensor tt = dct_spacetime(trailing, basis);
    REQUIRE(tt.num_events == 1);
    REQUIRE(oracle::tensor_diff(tt, dct_spatial(trailing.initial, basis, 1)) < 1e-12);
}

TEST_CASE("axiom checker flags broken tensors") {
    CorrelationTensor bad = CorrelationTensor::zeros(2, 1, TensorProvenance::External);
    bad.entries[0] = 0.5;  // normalization violated
    AxiomReport r1 = verify_axioms(bad);
    REQUIRE_FALSE(r1.normalized_pass);
    REQUIRE(r1.hermitian_pass);

    CorrelationTensor indefinite = CorrelationTensor::zeros(2, 1, TensorProvenance::External);
    indefinite.entries[0 * 4 + 0] = 1.0;
    indefinite.entries[1 * 4 + 1] = -0.5;  // Hermitian but not PSD
    AxiomReport r2 = verify_axioms(indefinite);
    REQUIRE(r2.hermitian_pass);
    REQUIRE_FALSE(r2.psd_pass);
    REQUIRE(r2.min_eigenvalue < -0.4);
}

TEST_CASE("fixing one event's indices to zero reduces to the smaller tensor") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(57);
    DensityOperator rho = random_state(rng, 4);
    CorrelationTensor two = dct_spatial(rho, basis, 2);

    CMatrix reduced = partial_trace(rho.mat, FactorShape({2, 2}), {1});
    CorrelationTensor one = dct_spatial(DensityOperator::make(std::move(reduced)), basis, 1);
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            REQUIRE(std::abs(two.at({0, mu}, {0, nu}) - one.at({mu}, {nu})) < 1e-12);
}

TEST_CASE("right indices fixed to zero expose the plain expectation slice") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(58);
    DensityOperator rho = random_state(rng, 4);
    CorrelationTensor t = dct_spatial(rho, basis, 2);
    for (int m1 = 0; m1 < 4; ++m1)
        for (int m2 = 0; m2 < 4; ++m2) {
            const cx expectation = trace(multiply(kron(basis.ops[m1], basis.ops[m2]), rho.mat));
            REQUIRE(std::abs(t.at({m1, m2}, {0, 0}) - expectation) < 1e-12);
        }
}

TEST_CASE("valid tensors are closed under convex combination") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(59);
    CorrelationTensor a = dct_spatial(random_state(rng, 4), basis, 2);
    CorrelationTensor b =
        dct_temporal(random_state(rng, 2), {random_channel(rng, 2, 2)}, basis);
    for (double lambda : {0.0, 0.3, 0.8, 1.0}) {
        CorrelationTensor mix = tensor_lin_comb(lambda, a, 1.0 - lambda, b);
        REQUIRE(verify_axioms(mix).pass());
    }
}

TEST_CASE("random processes of every class satisfy the axioms") {
    CounterRng rng(60);
    PauliBasis basis2 = build_basis(2), basis3 = build_basis(3);
    for (LayoutClass layout : {LayoutClass::Spatial, LayoutClass::Temporal, LayoutClass::Mixed})
        for (int trial = 0; trial < 10; ++trial) {
            const int d = trial % 2 == 0 ? 2 : 3;
            const PauliBasis &basis = d == 2 ? basis2 : basis3;
            AxiomReport report = verify_axioms(random_dct(rng, d, layout, basis));
            REQUIRE(report.hermiticity_residual < 1e-9);
            REQUIRE(report.min_eigenvalue >= -1e-9);
            REQUIRE(report.normalization_residual < 1e-10);
        }
}

TEST_CASE("flat layout is little-endian per event with the left block major") {
    CorrelationTensor t = CorrelationTensor::zeros(2, 2, TensorProvenance::External);
    // μ = (1,2), ν = (3,0): Lflat = 1 + 2·4 = 9, Rflat = 3, flat = 9·16 + 3
    REQUIRE(t.flat_index({1, 2}, {3, 0}) == 9u * 16u + 3u);
    REQUIRE_THROWS_AS(CorrelationTensor::zeros(5, 3, TensorProvenance::External),
                      std::invalid_argument);
    PauliBasis basis = build_basis(2);
    REQUIRE_THROWS_AS(dct_spatial(oracle::bloch_state(0, 0, 0), basis, 2), std::invalid_argument);
}

TEST_CASE("tensor json codec round trips") {
    PauliBasis basis = build_basis(2);
    CounterRng rng(61);
    CorrelationTensor t = dct_spatial(random_state(rng, 2), basis, 1);
    CorrelationTensor back = tensor_from_json(tensor_to_json(t));
    REQUIRE(back.local_dim == 2);
    REQUIRE(back.num_events == 1);
    REQUIRE(oracle::tensor_diff(t, back) == 0.0);

    json bad = tensor_to_json(t);
    bad["entries"].erase(0);
    REQUIRE_THROWS_AS(tensor_from_json(bad), std::invalid_argument);
}
