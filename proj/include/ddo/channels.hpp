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

#include "ddo/matrix.hpp"
#include "ddo/pauli.hpp"

namespace ddo {

/// Validated quantum state. Construction checks the invariants and records
/// the residuals instead of repairing anything: downstream temporality
/// detection relies on non-physical reduced objects staying visible.
struct DensityOperator {
    int dim = 0;
    CMatrix mat;
    double hermiticity = 0.0;  // max|ρ − ρ†|
    double trace_error = 0.0;  // |Tr ρ − 1|
    double min_eig = 0.0;

    static DensityOperator make(CMatrix m, double tol = kDefaultTol) {
        require_square(m, "DensityOperator");
        if (!all_finite(m)) throw std::invalid_argument("DensityOperator: entries must be finite");
        DensityOperator rho;
        rho.dim = m.rows;
        rho.hermiticity = hermiticity_residual(m);
        rho.trace_error = std::abs(trace(m) - cx(1.0, 0.0));
        rho.min_eig = min_eigenvalue_hermitian(m);
        rho.mat = std::move(m);
        if (rho.hermiticity > tol) throw std::domain_error("DensityOperator: not Hermitian within tolerance");
        if (rho.trace_error > tol) throw std::domain_error("DensityOperator: trace differs from 1");
        if (rho.min_eig < -tol) throw std::domain_error("DensityOperator: negative eigenvalue");
        return rho;
    }
};

inline double tp_residual(const std::vector<CMatrix> &kraus, int in_dim) {
    CMatrix sum(in_dim, in_dim);
    for (const CMatrix &k : kraus) sum = add(sum, multiply(adjoint(k), k));
    return max_abs_diff(sum, CMatrix::identity(in_dim));
}

/// CPTP map in Kraus form, ε(X) = Σ_a K_a X K_a†. Kraus form is canonical
/// here; the tensor constructions and their positivity argument are written
/// directly in it.
struct KrausChannel {
    int in_dim = 0;
    int out_dim = 0;
    std::vector<CMatrix> kraus;
    double tp_error = 0.0;  // max|Σ K†K − I|

    static KrausChannel make(std::vector<CMatrix> ops, double tol = kDefaultTol) {
        if (ops.empty()) throw std::invalid_argument("KrausChannel: needs at least one Kraus operator");
        KrausChannel ch;
        ch.out_dim = ops[0].rows;
        ch.in_dim = ops[0].cols;
        for (const CMatrix &k : ops) {
            if (k.rows != ch.out_dim || k.cols != ch.in_dim)
                throw std::invalid_argument("KrausChannel: inconsistent Kraus shapes");
            if (!all_finite(k)) throw std::invalid_argument("KrausChannel: entries must be finite");
        }
        ch.tp_error = tp_residual(ops, ch.in_dim);
        ch.kraus = std::move(ops);
        if (ch.tp_error > tol) throw std::domain_error("KrausChannel: not trace-preserving within tolerance");
        return ch;
    }

    static KrausChannel identity(int d) { return make({CMatrix::identity(d)}); }
    static KrausChannel from_unitary(const CMatrix &u, double tol = kDefaultTol) {
        require_square(u, "KrausChannel::from_unitary");
        if (max_abs_diff(multiply(adjoint(u), u), CMatrix::identity(u.rows)) > tol)
            throw std::domain_error("KrausChannel::from_unitary: matrix is not unitary within tolerance");
        return make({u});
    }
};

/// Σ_a K_a m K_a†. The input need not be a state; the tensor constructions
/// push generally non-Hermitian operators through channels.
inline CMatrix apply_channel(const KrausChannel &ch, const CMatrix &m) {
    if (m.rows != ch.in_dim || m.cols != ch.in_dim)
        throw std::invalid_argument("apply_channel: dimension mismatch");
    CMatrix out(ch.out_dim, ch.out_dim);
    for (const CMatrix &k : ch.kraus) out = add(out, multiply(multiply(k, m), adjoint(k)));
    return out;
}

/// One measurement with explicit outcome operators K_a; Σ_a K_a†K_a = I.
/// Zero operators are allowed and simply produce probability-0 branches.
struct Instrument {
    int dim = 0;
    std::vector<CMatrix> ops;
    std::vector<std::string> labels;
    double completeness_error = 0.0;

    static Instrument make(std::vector<CMatrix> kraus, std::vector<std::string> names = {},
                           double tol = kDefaultTol) {
        if (kraus.empty()) throw std::invalid_argument("Instrument: needs at least one outcome");
        Instrument inst;
        inst.dim = kraus[0].rows;
        for (const CMatrix &k : kraus)
            if (k.rows != inst.dim || k.cols != inst.dim)
                throw std::invalid_argument("Instrument: outcome operators must share one square shape");
        inst.completeness_error = tp_residual(kraus, inst.dim);
        if (inst.completeness_error > tol)
            throw std::domain_error("Instrument: outcome operators do not sum to identity");
        if (names.empty())
            for (std::size_t a = 0; a < kraus.size(); ++a) names.push_back(std::to_string(a));
        if (names.size() != kraus.size())
            throw std::invalid_argument("Instrument: label count mismatch");
        inst.ops = std::move(kraus);
        inst.labels = std::move(names);
        return inst;
    }

    /// Single-outcome instrument K = I (measuring nothing).
    static Instrument trivial(int d) { return make({CMatrix::identity(d)}, {"0"}); }

    int outcomes() const { return static_cast<int>(ops.size()); }
};

/// POVM elements F_a = K_a†K_a of an instrument.
inline std::vector<CMatrix> povm_of(const Instrument &inst) {
    std::vector<CMatrix> povm;
    povm.reserve(inst.ops.size());
    for (const CMatrix &k : inst.ops) povm.push_back(multiply(adjoint(k), k));
    return povm;
}

/// Unit vector on the Bloch sphere; the associated ±1 observable is a⃗·σ⃗.
struct BlochObservable {
    std::array<double, 3> vec{};

    static BlochObservable make(double x, double y, double z, double tol = 1e-12) {
        const double norm = std::sqrt(x * x + y * y + z * z);
        if (std::abs(norm - 1.0) > tol)
            throw std::domain_error("BlochObservable: vector must have unit norm");
        return BlochObservable{{x, y, z}};
    }
    static BlochObservable normalized(double x, double y, double z) {
        const double norm = std::sqrt(x * x + y * y + z * z);
        if (norm == 0.0) throw std::domain_error("BlochObservable: zero vector");
        return BlochObservable{{x / norm, y / norm, z / norm}};
    }

    double dot(const BlochObservable &o) const {
        return vec[0] * o.vec[0] + vec[1] * o.vec[1] + vec[2] * o.vec[2];
    }

    /// a⃗·σ⃗ as a qubit matrix.
    CMatrix matrix() const {
        CMatrix m(2, 2);
        m.at(0, 0) = vec[2];
        m.at(0, 1) = cx(vec[0], -vec[1]);
        m.at(1, 0) = cx(vec[0], vec[1]);
        m.at(1, 1) = -vec[2];
        return m;
    }

    /// Projective instrument {(I + a⃗·σ⃗)/2, (I − a⃗·σ⃗)/2}, outcome 0 ↦ +1.
    Instrument instrument() const {
        CMatrix obs = matrix();
        CMatrix plus = scaled(add(CMatrix::identity(2), obs), 0.5);
        CMatrix minus = scaled(subtract(CMatrix::identity(2), obs), 0.5);
        return Instrument::make({plus, minus}, {"0", "1"});
    }
};

inline CMatrix swap_matrix(int d) {
    CMatrix s(d * d, d * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) s.at(i * d + j, j * d + i) = 1.0;
    return s;
}

inline void require_probability(double p, const char *who) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::domain_error(std::string(who) + ": parameter must lie in [0,1]");
}

/// Standard named channels. `identity`, `depolarizing` and `swap` work for
/// any d; the flip and damping channels are qubit channels.
inline KrausChannel builtin_channel(const std::string &name, const std::vector<double> &params, int d) {
    if (d < 2) throw std::domain_error("builtin_channel: dimension must be at least 2");
    auto want_params = [&](std::size_t n) {
        if (params.size() != n)
            throw std::domain_error("builtin_channel: wrong parameter count for " + name);
    };
    auto want_qubit = [&] {
        if (d != 2) throw std::domain_error("builtin_channel: " + name + " requires dimension 2");
    };

    if (name == "identity") {
        want_params(0);
        return KrausChannel::identity(d);
    }
    if (name == "bitflip" || name == "phaseflip") {
        want_params(1);
        want_qubit();
        require_probability(params[0], "builtin_channel");
        const double p = params[0];
        CMatrix flip(2, 2);
        if (name == "bitflip") {
            flip.at(0, 1) = 1.0;
            flip.at(1, 0) = 1.0;
        } else {
            flip.at(0, 0) = 1.0;
            flip.at(1, 1) = -1.0;
        }
        return KrausChannel::make({scaled(CMatrix::identity(2), std::sqrt(1.0 - p)),
                                   scaled(flip, std::sqrt(p))});
    }
    if (name == "depolarizing") {
        want_params(1);
        require_probability(params[0], "builtin_channel");
        const double p = params[0];
        // ε(ρ) = (1−p)ρ + p Tr(ρ) I/d, realized over the Hermitian basis:
        // Σ_μ σ_μ X σ_μ = d Tr(X) I makes this a valid Kraus set for any d.
        PauliBasis basis = build_basis(d);
        std::vector<CMatrix> kraus;
        kraus.push_back(scaled(CMatrix::identity(d), std::sqrt(1.0 - p + p / (d * static_cast<double>(d)))));
        for (int mu = 1; mu < basis.count(); ++mu)
            kraus.push_back(scaled(basis.ops[mu], std::sqrt(p) / d));
        return KrausChannel::make(std::move(kraus));
    }
    if (name == "amplitude_damping") {
        want_params(1);
        want_qubit();
        require_probability(params[0], "builtin_channel");
        const double gamma = params[0];
        CMatrix k0(2, 2), k1(2, 2);
        k0.at(0, 0) = 1.0;
        k0.at(1, 1) = std::sqrt(1.0 - gamma);
        k1.at(0, 1) = std::sqrt(gamma);
        return KrausChannel::make({k0, k1});
    }
    if (name == "swap") {
        want_params(0);
        return KrausChannel::make({swap_matrix(d)});
    }
    throw std::domain_error("builtin_channel: unknown channel '" + name + "'");
}

/// Choi matrix Σ_ij ε(E_ij) ⊗ E_ij; PSD iff the map is completely positive.
inline CMatrix choi_matrix(const KrausChannel &ch) {
    const int d = ch.in_dim;
    CMatrix choi(ch.out_dim * d, ch.out_dim * d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            CMatrix unit(d, d);
            unit.at(i, j) = 1.0;
            CMatrix mapped = apply_channel(ch, unit);
            for (int a = 0; a < ch.out_dim; ++a)
                for (int b = 0; b < ch.out_dim; ++b)
                    choi.at(a * d + i, b * d + j) += mapped.at(a, b);
        }
    return choi;
}

}  // namespace ddo
