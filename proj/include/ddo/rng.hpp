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

#include <cstdint>

#include "ddo/channels.hpp"
#include "ddo/matrix.hpp"

namespace ddo {

/// Counter-based deterministic generator: draw i of stream (seed) is a hash
/// of (seed, i), so runs are reproducible and independent streams can be
/// derived cheaply for sub-tasks.
class CounterRng {
  public:
    explicit CounterRng(std::uint64_t seed = 0) : seed_(seed) {}

    std::uint64_t next_u64() { return mix(seed_, counter_++); }

    /// Uniform in [0,1).
    double uniform() { return (next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    double normal() {
        // Box–Muller; draws two uniforms per call, no cached spare (keeps the
        // stream position a pure function of call count).
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    cx normal_cx() { return cx(normal(), normal()); }

    /// Independent stream for a labeled sub-task.
    CounterRng fork(std::uint64_t label) const { return CounterRng(mix(seed_, 0x9e3779b97f4a7c15ULL ^ label)); }

    std::uint64_t seed() const { return seed_; }

  private:
    static std::uint64_t mix(std::uint64_t key, std::uint64_t counter) {
        // splitmix64 finalizer over the (key, counter) pair
        std::uint64_t z = key + 0x9e3779b97f4a7c15ULL * (counter + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_ = 0;
    std::uint64_t counter_ = 0;
};

inline CMatrix random_complex_matrix(CounterRng &rng, int rows, int cols) {
    CMatrix m(rows, cols);
    for (cx &e : m.entries) e = rng.normal_cx();
    return m;
}

inline CMatrix random_hermitian(CounterRng &rng, int d) {
    CMatrix g = random_complex_matrix(rng, d, d);
    return scaled(add(g, adjoint(g)), 0.5);
}

/// Ginibre state: ρ = GG†/Tr(GG†), full rank almost surely.
inline DensityOperator random_state(CounterRng &rng, int d) {
    CMatrix g = random_complex_matrix(rng, d, d);
    CMatrix rho = multiply(g, adjoint(g));
    rho = scaled(rho, 1.0 / trace(rho).real());
    return DensityOperator::make(std::move(rho));
}

inline DensityOperator random_pure_state(CounterRng &rng, int d) {
    std::vector<cx> amp(d);
    double norm2 = 0.0;
    for (cx &a : amp) {
        a = rng.normal_cx();
        norm2 += std::norm(a);
    }
    const double inv = 1.0 / std::sqrt(norm2);
    CMatrix rho(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) rho.at(i, j) = amp[i] * inv * std::conj(amp[j] * inv);
    return DensityOperator::make(std::move(rho));
}

/// Haar-ish unitary via modified Gram–Schmidt on a Ginibre matrix (adequate
/// at desk scale; exact Haar weighting is not needed anywhere).
inline CMatrix random_unitary(CounterRng &rng, int d) {
    CMatrix g = random_complex_matrix(rng, d, d);
    // orthonormalize columns
    for (int c = 0; c < d; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            cx overlap = 0.0;
            for (int r = 0; r < d; ++r) overlap += std::conj(g.at(r, prev)) * g.at(r, c);
            for (int r = 0; r < d; ++r) g.at(r, c) -= overlap * g.at(r, prev);
        }
        double norm2 = 0.0;
        for (int r = 0; r < d; ++r) norm2 += std::norm(g.at(r, c));
        const double inv = 1.0 / std::sqrt(norm2);
        for (int r = 0; r < d; ++r) g.at(r, c) *= inv;
    }
    return g;
}

/// Random CPTP channel from a Stinespring isometry: orthonormalize the
/// columns of a (k·d)×d Ginibre block, slice into k Kraus operators.
inline KrausChannel random_channel(CounterRng &rng, int d, int kraus_count) {
    const int stacked = kraus_count * d;
    CMatrix v = random_complex_matrix(rng, stacked, d);
    for (int c = 0; c < d; ++c) {
        for (int prev = 0; prev < c; ++prev) {
            cx overlap = 0.0;
            for (int r = 0; r < stacked; ++r) overlap += std::conj(v.at(r, prev)) * v.at(r, c);
            for (int r = 0; r < stacked; ++r) v.at(r, c) -= overlap * v.at(r, prev);
        }
        double norm2 = 0.0;
        for (int r = 0; r < stacked; ++r) norm2 += std::norm(v.at(r, c));
        const double inv = 1.0 / std::sqrt(norm2);
        for (int r = 0; r < stacked; ++r) v.at(r, c) *= inv;
    }
    std::vector<CMatrix> kraus;
    for (int a = 0; a < kraus_count; ++a) {
        CMatrix k(d, d);
        for (int r = 0; r < d; ++r)
            for (int c = 0; c < d; ++c) k.at(r, c) = v.at(a * d + r, c);
        kraus.push_back(std::move(k));
    }
    return KrausChannel::make(std::move(kraus));
}

/// Projective instrument from a random orthonormal frame.
inline Instrument random_projective_instrument(CounterRng &rng, int d) {
    CMatrix u = random_unitary(rng, d);
    std::vector<CMatrix> ops;
    for (int a = 0; a < d; ++a) {
        CMatrix proj(d, d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) proj.at(i, j) = u.at(i, a) * std::conj(u.at(j, a));
        ops.push_back(std::move(proj));
    }
    return Instrument::make(std::move(ops));
}

/// General instrument with `outcomes` Kraus operators (same isometry trick
/// as random_channel).
inline Instrument random_instrument(CounterRng &rng, int d, int outcomes) {
    KrausChannel ch = random_channel(rng, d, outcomes);
    return Instrument::make(ch.kraus);
}

inline BlochObservable random_bloch(CounterRng &rng) {
    const double z = rng.uniform(-1.0, 1.0);
    const double phi = rng.uniform(0.0, 2.0 * 3.14159265358979323846);
    const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
    return BlochObservable::normalized(s * std::cos(phi), s * std::sin(phi), z);
}

}  // namespace ddo
