/*
Copyright 2026 qdopt developers

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>

#include "qdopt/problem.hpp"
#include "qdopt/rng.hpp"

namespace qdopt {

// Metropolis single-spin-flip annealing with a geometric inverse-temperature
// schedule. Flipping spin i changes the double-sum energy by
// dE = -4 s_i h_i with h_i = sum_j J_ij s_j evaluated before the flip.
struct SaParams {
    long long sweeps = 500;
    double beta_initial = 0.1;
    double beta_final = 10.0;
    int restarts = 1;
    std::uint64_t seed = 0;
};

inline void validate_sa_params(const SaParams& prm) {
    if (prm.sweeps < 1) throw InputError("sa: sweeps must be >= 1");
    if (!(prm.beta_initial > 0.0) || !std::isfinite(prm.beta_initial))
        throw InputError("sa: beta_initial must be > 0");
    if (!(prm.beta_final >= prm.beta_initial) || !std::isfinite(prm.beta_final))
        throw InputError("sa: beta_final must be >= beta_initial");
    if (prm.restarts < 1) throw InputError("sa: restarts must be >= 1");
}

namespace detail {

struct SaBest {
    double energy = std::numeric_limits<double>::infinity();
    long long sweep = 0;
    SpinConfig config;
};

inline SaBest sa_run_restart(const IsingProblem& p, const SaParams& prm, int restart) {
    const std::size_t n = p.n;
    Rng rng = Rng::derive(prm.seed, static_cast<std::uint64_t>(restart));
    SpinConfig s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = rng.spin();
    std::vector<double> h(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = p.J.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * s[j];
        h[i] = acc;
    }
    double raw = 0.0;
    for (std::size_t i = 0; i < n; ++i) raw += s[i] * h[i];

    SaBest best{raw + p.offset, 0, s};
    const double ratio = prm.beta_final / prm.beta_initial;
    for (long long t = 0; t < prm.sweeps; ++t) {
        const double frac =
            prm.sweeps > 1 ? static_cast<double>(t) / static_cast<double>(prm.sweeps - 1) : 0.0;
        const double beta = prm.beta_initial * std::pow(ratio, frac);
        for (std::size_t i = 0; i < n; ++i) {
            const double de = -4.0 * s[i] * h[i];
            if (de > 0.0) {
                const double a = beta * de;
                if (a > 700.0 || rng.uniform() >= std::exp(-a)) continue;
            }
            s[i] = -s[i];
            raw += de;
            const double* row = p.J.row(i);
            const double d = 2.0 * s[i];
            for (std::size_t j = 0; j < n; ++j) h[j] += d * row[j];
            if (raw + p.offset < best.energy) {
                best.energy = raw + p.offset;
                best.sweep = t;
                best.config = s;
            }
        }
    }
    return best;
}

}  // namespace detail

inline Solution sa_solve(const IsingProblem& p, const SaParams& prm) {
    validate_ising(p);
    validate_sa_params(prm);
    detail::SaBest best;
    int best_restart = 0;
    for (int r = 0; r < prm.restarts; ++r) {
        detail::SaBest cur = detail::sa_run_restart(p, prm, r);
        if (cur.energy < best.energy) {
            best = cur;
            best_restart = r;
        }
    }
    const double exact = ising_energy(p, best.config);
    return Solution{best.config, exact, prm.seed, best_restart, best.sweep};
}

inline Solution random_search(const IsingProblem& p, long long samples, std::uint64_t seed) {
    validate_ising(p);
    if (samples < 1) throw InputError("random_search: samples must be >= 1");
    Rng rng = Rng::derive(seed, 0);
    SpinConfig s(p.n);
    double best = std::numeric_limits<double>::infinity();
    SpinConfig best_cfg;
    long long best_step = 0;
    for (long long k = 0; k < samples; ++k) {
        for (std::size_t i = 0; i < p.n; ++i) s[i] = rng.spin();
        const double e = ising_energy(p, s);
        if (e < best) {
            best = e;
            best_cfg = s;
            best_step = k;
        }
    }
    return Solution{best_cfg, best, seed, 0, best_step};
}

}  // namespace qdopt
