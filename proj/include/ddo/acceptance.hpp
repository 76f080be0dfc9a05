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

#include <chrono>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ddo/ddo.hpp"

// End-to-end verification suite behind `ddo selftest` and the ctest
// acceptance binary: eleven checks, each with pinned tolerances and, where
// stated, a wall-clock budget.

namespace ddo::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;

    CriterionResult() = default;
    CriterionResult(int criterion_id, std::string criterion_name)
        : id(criterion_id), name(std::move(criterion_name)) {}
};

namespace detail {

using clk = std::chrono::steady_clock;

inline double elapsed(clk::time_point start) {
    return std::chrono::duration<double>(clk::now() - start).count();
}

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

/// Single-event tensor written out entry by entry from the Bloch
/// coefficients (c0 = 1): the independent expected value for the closed-form
/// check.
inline CMatrix single_event_expected(double c1, double c2, double c3) {
    const cx i(0.0, 1.0);
    CMatrix m(4, 4);
    const double c0 = 1.0;
    m.at(0, 0) = c0;  m.at(0, 1) = c1;      m.at(0, 2) = c2;      m.at(0, 3) = c3;
    m.at(1, 0) = c1;  m.at(1, 1) = c0;      m.at(1, 2) = -i * c3; m.at(1, 3) = i * c2;
    m.at(2, 0) = c2;  m.at(2, 1) = i * c3;  m.at(2, 2) = c0;      m.at(2, 3) = -i * c1;
    m.at(3, 0) = c3;  m.at(3, 1) = -i * c2; m.at(3, 2) = i * c1;  m.at(3, 3) = c0;
    return m;
}

inline const std::vector<std::string> &parser_corpus() {
    static const std::vector<std::string> corpus = {
        "dim 2\nqudits 1\nstate bloch 0 0 1\nstep { measure 0 }\n",
        "dim 2\nqudits 2\nstate singlet\nstep { measure 0, 1 }\n",
        "dim 2\nqudits 1\nstate maximally_mixed\nstep { measure 0 }\nchannel identity\nstep { measure 0 }\n",
        "dim 2\nqudits 1\nstate bloch 0.6 0 0.8\nstep { measure 0 }\nchannel bitflip(0.25)\nstep { measure 0 }\nchannel amplitude_damping(0.5)\nstep { measure 0 }\n",
        "dim 2\nqudits 1\nstate maximally_mixed\nstep { measure 0 }\nchannel phaseflip(0.75)\nstep { measure 0 }\n",
        "dim 2\nqudits 1\nstate bloch 0 1 0\nstep { measure 0 }\nchannel depolarizing(0.5)\nstep { measure 0 }\nchannel depolarizing(0.125)\nstep { measure 0 }\n",
        "dim 2\nqudits 2\nstate singlet\nstep { measure 0 }\nchannel identity\nstep { measure 1 }\n",
        "dim 2\nqudits 2\nstate maximally_mixed\nstep { measure 0, 1 }\nchannel depolarizing(0.3) on 1\nstep { measure 0 }\n",
        "dim 2\nqudits 2\nstate singlet\nstep { measure 0 }\nchannel swap\nstep { measure 0 }\n",
        "dim 3\nqudits 1\nstate maximally_mixed\nstep { measure 0 }\n",
        "dim 3\nqudits 1\nstate maximally_mixed\nstep { measure 0 }\nchannel depolarizing(0.6)\nstep { measure 0 }\n",
        "dim 4\nqudits 1\nstate maximally_mixed\nstep { measure 0 }\n",
        "dim 5\nqudits 1\nstate maximally_mixed\nstep { measure 0 }\n",
        "dim 2\nqudits 3\nstate maximally_mixed\nstep { measure 0, 1, 2 }\n",
        "dim 2\nqudits 1\nstate bloch 0 0 -1\nstep { measure 0 }\nchannel identity\nstep { }\n",
        "dim 2\nqudits 1\nstate bloch 0.28 -0.53 0.1\nstep { measure 0 }\nchannel identity\nstep { }\nchannel bitflip(1)\nstep { measure 0 }\n",
        "# leading comment\n\ndim 2   # trailing comment\nqudits 2\n\nstate    singlet\nstep {measure 0,1}\n",
        "dim 2\nqudits 2\nstate maximally_mixed\nstep { measure 1, 0 }\nchannel swap on 1 0\nstep { measure 0 }\n",
        "dim 2\nqudits 2\nstate singlet\nstep { measure 0 }\nchannel identity on 0\nstep { measure 1 }\n",
        "dim 2\nqudits 2\nstate maximally_mixed\nstep { measure 0 }\nchannel depolarizing(0.45) on 0\nstep { measure 1 }\nchannel identity\nstep { measure 0 }\n",
    };
    return corpus;
}

inline std::string random_fuzz_bytes(CounterRng &rng) {
    const int len = rng.uniform_int(0, 160);
    std::string s;
    s.reserve(len);
    for (int i = 0; i < len; ++i) {
        const int b = rng.uniform_int(0, 255);
        s.push_back(static_cast<char>(b == 0 ? 1 : b));  // keep it a C++ string, any other byte goes
    }
    return s;
}

inline std::string random_fuzz_tokens(CounterRng &rng) {
    static const std::vector<std::string> vocab = {
        "dim",   "qudits", "state",  "step",  "channel", "measure", "{",    "}",
        ",",     "0",      "1",      "2",     "3",       "9",       "-1",   "2.5",
        "bloch", "singlet", "maximally_mixed", "pure", "dm", "identity", "bitflip(0.5)",
        "depolarizing(2)", "swap", "on", "x.json", "unitary(u.json)", "nan", "1e309", "#",
        "step { measure 0 }", "step { measure 0, 1 }", "step { }", "channel identity",
        "channel depolarizing(0.5) on 1", "state bloch 0 0 1"};
    const int tokens = rng.uniform_int(0, 12);
    std::string s = "dim 2\nqudits 2\nstate singlet\n";
    if (rng.uniform() < 0.4) s.clear();
    if (rng.uniform() < 0.3) s += "step { measure 0 }\n";
    for (int i = 0; i < tokens; ++i) {
        s += vocab[rng.uniform_int(0, static_cast<int>(vocab.size()) - 1)];
        s += rng.uniform() < 0.4 ? "\n" : " ";
    }
    return s;
}

inline BehaviorTable guess_table() {
    // deterministic a = y, b = x
    BehaviorTable t;
    for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) t.at(x, y, y, x) = 1.0;
    return t;
}

}  // namespace detail

inline CriterionResult criterion_basis(CounterRng) {
    const auto start = detail::clk::now();
    double worst_gram = 0.0, worst_herm = 0.0, worst_trace = 0.0, worst_id = 0.0;
    for (int d = 2; d <= 5; ++d) {
        PauliBasis basis = build_basis(d);
        worst_gram = std::max(worst_gram, gram_residual(basis));
        worst_id = std::max(worst_id, max_abs_diff(basis.ops[0], CMatrix::identity(d)));
        for (int mu = 1; mu < basis.count(); ++mu) {
            worst_herm = std::max(worst_herm, hermiticity_residual(basis.ops[mu]));
            worst_trace = std::max(worst_trace, std::abs(trace(basis.ops[mu])));
        }
    }
    CriterionResult r{1, "basis correctness (d=2..5)"};
    r.seconds = detail::elapsed(start);
    r.pass = worst_gram < 1e-12 && worst_herm < 1e-12 && worst_trace < 1e-12 && worst_id == 0.0 &&
             r.seconds < 1.0;
    r.detail = "gram " + detail::fmt(worst_gram) + ", herm " + detail::fmt(worst_herm) + ", trace " +
               detail::fmt(worst_trace);
    return r;
}

inline CriterionResult criterion_single_event(CounterRng rng) {
    const auto start = detail::clk::now();
    PauliBasis basis = build_basis(2);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        double c1, c2, c3;
        do {
            c1 = rng.uniform(-1.0, 1.0);
            c2 = rng.uniform(-1.0, 1.0);
            c3 = rng.uniform(-1.0, 1.0);
        } while (c1 * c1 + c2 * c2 + c3 * c3 > 1.0);
        CMatrix rho(2, 2);
        rho.at(0, 0) = 0.5 * (1.0 + c3);
        rho.at(0, 1) = 0.5 * cx(c1, -c2);
        rho.at(1, 0) = 0.5 * cx(c1, c2);
        rho.at(1, 1) = 0.5 * (1.0 - c3);
        CorrelationTensor t = dct_spatial(DensityOperator::make(std::move(rho)), basis, 1);
        worst = std::max(worst, max_abs_diff(t.matricization(), detail::single_event_expected(c1, c2, c3)));
    }
    CriterionResult r{2, "single-event tensor closed form (100 random states)"};
    r.seconds = detail::elapsed(start);
    r.pass = worst < 1e-12 && r.seconds < 1.0;
    r.detail = "worst entry deviation " + detail::fmt(worst);
    return r;
}

/// Criteria 3 and 7 stream over the same random tensors; construction and
/// axiom checks are timed for criterion 3, superdensity checks for 7.
inline std::pair<CriterionResult, CriterionResult> criterion_axioms_and_superdensity(CounterRng rng) {
    double axiom_time = 0.0, superdensity_time = 0.0;
    double worst_herm = 0.0, worst_norm = 0.0, worst_sd_trace = 0.0;
    double worst_mineig = 1e300, worst_sd_mineig = 1e300;
    int count = 0;

    PauliBasis basis2 = build_basis(2), basis3 = build_basis(3);
    const LayoutClass classes[] = {LayoutClass::Spatial, LayoutClass::Temporal, LayoutClass::Mixed};
    for (LayoutClass layout : classes)
        for (int trial = 0; trial < 100; ++trial) {
            const int d = (trial % 2 == 0) ? 2 : 3;
            const PauliBasis &basis = d == 2 ? basis2 : basis3;

            auto t0 = detail::clk::now();
            CorrelationTensor t = random_dct(rng, d, layout, basis);
            AxiomReport report = verify_axioms(t);
            axiom_time += detail::elapsed(t0);
            worst_herm = std::max(worst_herm, report.hermiticity_residual);
            worst_mineig = std::min(worst_mineig, report.min_eigenvalue);
            worst_norm = std::max(worst_norm, report.normalization_residual);

            t0 = detail::clk::now();
            CMatrix sd = superdensity_from_tensor(t, basis);
            worst_sd_mineig = std::min(worst_sd_mineig, min_eigenvalue_hermitian(sd));
            worst_sd_trace = std::max(worst_sd_trace, std::abs(trace(sd) - cx(1.0, 0.0)));
            superdensity_time += detail::elapsed(t0);
            ++count;
        }

    CriterionResult c3{3, "tensor axioms on 300 random processes"};
    c3.seconds = axiom_time;
    c3.pass = worst_herm < 1e-9 && worst_mineig >= -1e-9 && worst_norm < 1e-10 && axiom_time < 120.0;
    c3.detail = "herm " + detail::fmt(worst_herm) + ", min eig " + detail::fmt(worst_mineig) +
                ", norm " + detail::fmt(worst_norm) + " over " + std::to_string(count);

    CriterionResult c7{7, "superdensity positivity for the same tensors"};
    c7.seconds = superdensity_time;
    c7.pass = worst_sd_mineig >= -1e-9 && worst_sd_trace < 1e-9;
    c7.detail = "min eig " + detail::fmt(worst_sd_mineig) + ", trace dev " + detail::fmt(worst_sd_trace);
    return {c3, c7};
}

inline CriterionResult criterion_spatial_recovery(CounterRng rng) {
    const auto start = detail::clk::now();
    PauliBasis basis2 = build_basis(2), basis3 = build_basis(3);
    double worst_trace = 0.0, worst_reduce = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const int d = (trial % 2 == 0) ? 2 : 3;
        const PauliBasis &basis = d == 2 ? basis2 : basis3;
        ProcessModel model = random_model(rng, d, LayoutClass::Spatial);
        CorrelationTensor t = dct_spatial(model.initial, basis, model.num_qudits);
        DoubledDensityOperator w = assemble(t, basis);
        worst_trace = std::max(worst_trace, std::abs(trace(w.mat) - cx(1.0, 0.0)));
        worst_reduce = std::max(worst_reduce, max_abs_diff(reduce_left(w), model.initial.mat));
        worst_reduce = std::max(worst_reduce, max_abs_diff(reduce_right(w), model.initial.mat));
    }
    CriterionResult r{4, "spatial recovery Tr_L W = Tr_R W = rho"};
    r.seconds = detail::elapsed(start);
    r.pass = worst_trace < 1e-10 && worst_reduce < 1e-10;
    r.detail = "trace dev " + detail::fmt(worst_trace) + ", reduction dev " + detail::fmt(worst_reduce);
    return r;
}

inline CriterionResult criterion_temporality(CounterRng rng) {
    const auto start = detail::clk::now();
    PauliBasis basis2 = build_basis(2), basis3 = build_basis(3);

    bool pass = true;
    std::string note;
    double worst_entry = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        // qubit state with a definite z component
        double c1, c2, c3;
        do {
            c1 = rng.uniform(-1.0, 1.0);
            c2 = rng.uniform(-1.0, 1.0);
            c3 = rng.uniform(-1.0, 1.0);
        } while (c1 * c1 + c2 * c2 + c3 * c3 > 1.0 || std::abs(c3) < 0.05);
        CMatrix rho(2, 2);
        rho.at(0, 0) = 0.5 * (1.0 + c3);
        rho.at(0, 1) = 0.5 * cx(c1, -c2);
        rho.at(1, 0) = 0.5 * cx(c1, c2);
        rho.at(1, 1) = 0.5 * (1.0 - c3);
        CorrelationTensor t =
            dct_temporal(DensityOperator::make(std::move(rho)), {KrausChannel::identity(2)}, basis2);
        worst_entry = std::max(worst_entry, std::abs(t.at({0, 0}, {1, 2}) - cx(0.0, c3)));
        TemporalityReport report = detect_temporality(assemble(t, basis2));
        if (report.verdict != TemporalityVerdict::TemporalSignature) {
            pass = false;
            note = "identity-channel chain not flagged";
        }
    }
    if (worst_entry >= 1e-10) {
        pass = false;
        note += " witness entry deviates";
    }

    int inconclusive = 0, spatial_total = 50;
    for (int trial = 0; trial < spatial_total; ++trial) {
        const int d = (trial % 2 == 0) ? 2 : 3;
        const PauliBasis &basis = d == 2 ? basis2 : basis3;
        ProcessModel model = random_model(rng, d, LayoutClass::Spatial);
        CorrelationTensor t = dct_spatial(model.initial, basis, model.num_qudits);
        TemporalityReport report = detect_temporality(assemble(t, basis));
        if (report.verdict == TemporalityVerdict::Inconclusive) ++inconclusive;
    }
    if (inconclusive != spatial_total) {
        pass = false;
        note += " spatial operator flagged temporal";
    }

    CriterionResult r{5, "temporality witness and spatial inconclusiveness"};
    r.seconds = detail::elapsed(start);
    r.pass = pass;
    r.detail = "witness entry dev " + detail::fmt(worst_entry) + ", spatial inconclusive " +
               std::to_string(inconclusive) + "/" + std::to_string(spatial_total) +
               (note.empty() ? "" : ";" + note);
    return r;
}

inline CriterionResult criterion_born(CounterRng rng) {
    const auto start = detail::clk::now();
    PauliBasis basis2 = build_basis(2), basis3 = build_basis(3);
    const LayoutClass classes[] = {LayoutClass::Spatial, LayoutClass::Temporal, LayoutClass::Mixed};
    double worst_dev = 0.0, worst_sum = 0.0;
    for (int trial = 0; trial < 200; ++trial) {
        const int d = (trial % 2 == 0) ? 2 : 3;
        const PauliBasis &basis = d == 2 ? basis2 : basis3;
        ProcessModel model = random_model(rng, d, classes[trial % 3]);
        std::vector<Instrument> instruments = random_instruments_for(rng, model);
        OutcomeDistribution via_ddo = born_distribution(model, instruments, basis);
        OutcomeDistribution via_qm = qm_oracle(model, instruments);
        worst_dev = std::max(worst_dev, max_distribution_deviation(via_ddo, via_qm));
        worst_sum = std::max(worst_sum, std::abs(via_ddo.total() - 1.0));
        worst_sum = std::max(worst_sum, std::abs(via_qm.total() - 1.0));
    }
    CriterionResult r{6, "unified Born rule vs standard QM (200 processes)"};
    r.seconds = detail::elapsed(start);
    r.pass = worst_dev < 1e-9 && worst_sum < 1e-9 && r.seconds < 180.0;
    r.detail = "worst outcome dev " + detail::fmt(worst_dev) + ", worst sum dev " + detail::fmt(worst_sum);
    return r;
}

inline CriterionResult criterion_jamiolkowski(CounterRng rng) {
    const auto start = detail::clk::now();
    double worst_duality = 0.0;

    auto duality_residual = [&](const KrausChannel &ch, const PauliBasis &basis, CounterRng &r2) {
        CMatrix j = gen_jamiolkowski(ch, basis);
        double worst = 0.0;
        for (int s = 0; s < 50; ++s) {
            DensityOperator rho = random_state(r2, basis.dim);
            worst = std::max(worst, max_abs_diff(apply_via_jamiolkowski(j, rho.mat), apply_channel(ch, rho.mat)));
        }
        return worst;
    };

    PauliBasis basis2 = build_basis(2), basis3 = build_basis(3), basis4 = build_basis(4),
               basis9 = build_basis(9);
    std::vector<std::pair<KrausChannel, const PauliBasis *>> cases;
    cases.push_back({KrausChannel::identity(2), &basis2});
    cases.push_back({builtin_channel("bitflip", {0.2}, 2), &basis2});
    cases.push_back({builtin_channel("phaseflip", {0.7}, 2), &basis2});
    cases.push_back({builtin_channel("depolarizing", {0.5}, 2), &basis2});
    cases.push_back({builtin_channel("amplitude_damping", {0.3}, 2), &basis2});
    cases.push_back({KrausChannel::from_unitary(random_unitary(rng, 2)), &basis2});
    cases.push_back({builtin_channel("swap", {}, 2), &basis4});
    cases.push_back({KrausChannel::identity(3), &basis3});
    cases.push_back({builtin_channel("depolarizing", {0.4}, 3), &basis3});
    cases.push_back({KrausChannel::from_unitary(random_unitary(rng, 3)), &basis3});
    cases.push_back({random_channel(rng, 3, 3), &basis3});
    cases.push_back({builtin_channel("swap", {}, 3), &basis9});
    for (auto &[ch, basis] : cases) worst_duality = std::max(worst_duality, duality_residual(ch, *basis, rng));

    // qubit identity duality matrix is exactly (1/2) Σ σ_α ⊗ σ_α = SWAP
    const double swap_dev = max_abs_diff(gen_jamiolkowski(KrausChannel::identity(2), basis2), swap_matrix(2));

    // closed form against direct assembly for temporal chains
    double worst_closed = 0.0;
    auto closed_case = [&](int d, std::vector<KrausChannel> chans, const PauliBasis &basis) {
        DensityOperator rho = random_state(rng, d);
        ProcessModel model;
        model.local_dim = d;
        model.num_qudits = 1;
        model.initial = rho;
        for (std::size_t k = 0; k <= chans.size(); ++k) {
            Step step;
            step.measured = {0};
            if (k < chans.size()) step.next_channel = chans[k];
            model.steps.push_back(std::move(step));
        }
        DoubledDensityOperator closed = closed_form_ddo(model, basis);
        DoubledDensityOperator direct = assemble(dct_temporal(rho, chans, basis), basis);
        worst_closed = std::max(worst_closed, max_abs_diff(closed.mat, direct.mat));
    };
    closed_case(2, {builtin_channel("bitflip", {0.3}, 2)}, basis2);
    closed_case(2, {random_channel(rng, 2, 2), builtin_channel("amplitude_damping", {0.45}, 2)}, basis2);
    closed_case(2, {KrausChannel::from_unitary(random_unitary(rng, 2)), random_channel(rng, 2, 3)}, basis2);
    closed_case(3, {random_channel(rng, 3, 2)}, basis3);

    CriterionResult r{8, "duality matrices and closed-form assembly"};
    r.seconds = detail::elapsed(start);
    r.pass = worst_duality < 1e-10 && swap_dev < 1e-12 && worst_closed < 1e-10;
    r.detail = "duality " + detail::fmt(worst_duality) + ", swap dev " + detail::fmt(swap_dev) +
               ", closed-form dev " + detail::fmt(worst_closed);
    return r;
}

inline CriterionResult criterion_st_test(CounterRng rng) {
    const auto start = detail::clk::now();
    PauliBasis basis = build_basis(2);

    STTestConfig max_cfg{BlochObservable::make(0, 0, 1), BlochObservable::make(0, 0, -1),
                         BlochObservable::make(0, 0, 1)};
    STTestResult max_result = st_test_value(max_cfg, basis);
    const double max_dev =
        std::max(std::abs(max_result.simulated - 3.0), std::abs(max_result.analytic - 3.0));

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        STTestConfig cfg{random_bloch(rng), random_bloch(rng), random_bloch(rng)};
        STTestResult result = st_test_value(cfg, basis);
        worst = std::max(worst, std::abs(result.simulated - result.analytic));
    }

    CriterionResult r{9, "space-time correlation test"};
    r.seconds = detail::elapsed(start);
    r.pass = max_dev < 1e-9 && worst < 1e-9 && max_result.simulated > 1.5;
    r.detail = "value " + detail::fmt(max_result.simulated) + " (dev " + detail::fmt(max_dev) +
               "), sim-vs-analytic " + detail::fmt(worst);
    return r;
}

inline CriterionResult criterion_causal(CounterRng rng) {
    const auto start = detail::clk::now();

    auto random_binary_instrument = [&](CounterRng &r2) {
        return r2.uniform() < 0.5 ? random_projective_instrument(r2, 2) : random_instrument(r2, 2, 2);
    };
    auto random_two_step_model = [&](CounterRng &r2) {
        ProcessModel model;
        model.local_dim = 2;
        model.num_qudits = 1;
        model.initial = random_state(r2, 2);
        Step s1, s2;
        s1.measured = {0};
        s1.next_channel = ddo::detail::random_step_channel(r2, 2, 1);
        s2.measured = {0};
        model.steps = {s1, s2};
        return model;
    };

    double worst_gyni = 0.0, worst_lgyni = 0.0, worst_signal = 0.0, worst_mix_gyni = 0.0,
           worst_mix_lgyni = 0.0;
    std::vector<BehaviorTable> forward_tables, reversed_tables;
    for (int trial = 0; trial < 200; ++trial) {
        ProcessModel model = random_two_step_model(rng);
        std::array<Instrument, 2> first = {random_binary_instrument(rng), random_binary_instrument(rng)};
        std::array<Instrument, 2> second = {random_binary_instrument(rng), random_binary_instrument(rng)};
        BehaviorTable table = behavior_from_sequential(model, first, second);
        table.validate();
        const bool alice_first = trial % 2 == 0;
        if (!alice_first) table = swap_roles(table);
        worst_gyni = std::max(worst_gyni, causal_value(table, CausalInequality::Gyni));
        worst_lgyni = std::max(worst_lgyni, causal_value(table, CausalInequality::Lgyni));
        worst_signal = std::max(
            worst_signal, signaling_check(table, alice_first ? SignalDirection::BobToAlice
                                                             : SignalDirection::AliceToBob));
        (alice_first ? forward_tables : reversed_tables).push_back(table);
    }
    for (std::size_t i = 0; i < forward_tables.size() && i < reversed_tables.size(); ++i) {
        BehaviorTable mixed = mix_behaviors(rng.uniform(), forward_tables[i], reversed_tables[i]);
        worst_mix_gyni = std::max(worst_mix_gyni, causal_value(mixed, CausalInequality::Gyni));
        worst_mix_lgyni = std::max(worst_mix_lgyni, causal_value(mixed, CausalInequality::Lgyni));
    }

    BehaviorTable guess = detail::guess_table();
    const double gyni_max = causal_value(guess, CausalInequality::Gyni);
    const double lgyni_max = causal_value(guess, CausalInequality::Lgyni);

    CriterionResult r{10, "causal bounds on 200 fixed-order processes"};
    r.seconds = detail::elapsed(start);
    r.pass = worst_gyni <= 0.5 + 1e-9 && worst_lgyni <= 0.75 + 1e-9 && worst_signal <= 1e-9 &&
             worst_mix_gyni <= 0.5 + 1e-9 && worst_mix_lgyni <= 0.75 + 1e-9 &&
             std::abs(gyni_max - 1.0) < 1e-12 && std::abs(lgyni_max - 1.0) < 1e-12;
    r.detail = "max gyni " + detail::fmt(worst_gyni) + ", lgyni " + detail::fmt(worst_lgyni) +
               ", past-signaling " + detail::fmt(worst_signal) + ", deterministic " +
               detail::fmt(gyni_max) + "/" + detail::fmt(lgyni_max);
    return r;
}

inline CriterionResult criterion_parser(CounterRng rng) {
    const auto start = detail::clk::now();

    int roundtrip_ok = 0;
    const auto &corpus = detail::parser_corpus();
    for (const std::string &text : corpus) {
        try {
            ProcessModel m1 = parse(text);
            const std::string s1 = serialize(m1);
            ProcessModel m2 = parse(s1);
            const std::string s2 = serialize(m2);
            if (s1 == s2 && structural_equal(m1, m2)) ++roundtrip_ok;
        } catch (const std::exception &) {
        }
    }

    int parsed = 0, rejected = 0, bad_exceptions = 0;
    for (int trial = 0; trial < 10000; ++trial) {
        const std::string text =
            trial % 2 == 0 ? detail::random_fuzz_bytes(rng) : detail::random_fuzz_tokens(rng);
        try {
            parse(text);
            ++parsed;
        } catch (const ParseError &) {
            ++rejected;
        } catch (const std::exception &) {
            ++bad_exceptions;
        }
    }

    CriterionResult r{11, "parser round-trip and fuzz robustness"};
    r.seconds = detail::elapsed(start);
    r.pass = roundtrip_ok == static_cast<int>(corpus.size()) && bad_exceptions == 0 && r.seconds < 60.0;
    r.detail = "round-trip " + std::to_string(roundtrip_ok) + "/" + std::to_string(corpus.size()) +
               ", fuzz parsed " + std::to_string(parsed) + " rejected " + std::to_string(rejected) +
               " untyped " + std::to_string(bad_exceptions);
    return r;
}

inline std::vector<CriterionResult> run_all(std::uint64_t seed = 0) {
    CounterRng root(seed);
    std::vector<CriterionResult> results;
    results.push_back(criterion_basis(root.fork(1)));
    results.push_back(criterion_single_event(root.fork(2)));
    auto [c3, c7] = criterion_axioms_and_superdensity(root.fork(3));
    results.push_back(c3);
    results.push_back(criterion_spatial_recovery(root.fork(4)));
    results.push_back(criterion_temporality(root.fork(5)));
    results.push_back(criterion_born(root.fork(6)));
    results.push_back(c7);
    results.push_back(criterion_jamiolkowski(root.fork(8)));
    results.push_back(criterion_st_test(root.fork(9)));
    results.push_back(criterion_causal(root.fork(10)));
    results.push_back(criterion_parser(root.fork(11)));
    return results;
}

inline bool all_pass(const std::vector<CriterionResult> &results) {
    for (const CriterionResult &r : results)
        if (!r.pass) return false;
    return true;
}

inline void print_results(const std::vector<CriterionResult> &results, std::FILE *out = stdout) {
    for (const CriterionResult &r : results)
        std::fprintf(out, "[%s] criterion %2d: %s — %s (%.2fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                     r.name.c_str(), r.detail.c_str(), r.seconds);
}

}  // namespace ddo::acceptance
