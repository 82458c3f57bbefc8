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
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qdopt/problem.hpp"
#include "qdopt/rng.hpp"

namespace qdopt {

// Ballistic simulated bifurcation. Positions bifurcate toward +-1 as the
// control parameter a(t) ramps from 0 to a0; hard inelastic walls keep
// |x| <= 1. The momentum update uses the sign that descends the Ising
// energy: dy_i = -[a0 - a(t)] x_i - c0 sum_j J_ij x_j.
struct BsbParams {
    double a0 = 1.0;
    double dt = 0.1;
    long long steps = 2000;
    int restarts = 1;
    std::uint64_t seed = 0;
    std::optional<double> c0;  // empty = auto: 0.5 a0 / (sigma_J sqrt(n))
};

struct BsbState {
    std::vector<double> x;
    std::vector<double> y;
    double t = 0.0;
};

inline double linear_schedule(long long step, long long steps, double a0) {
    return a0 * static_cast<double>(step) / static_cast<double>(steps);
}

// sigma_J is the population std over all off-diagonal entries (zeros
// included). Falls back to a0 when the spread is zero and the formula
// would divide by zero.
inline double bsb_auto_c0(const IsingProblem& p, double a0) {
    const std::size_t n = p.n;
    if (n < 2) return a0;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double v = p.J(i, j);
            sum += v;
            sumsq += v * v;
        }
    const double m = static_cast<double>(n) * (n - 1);
    const double var = sumsq / m - (sum / m) * (sum / m);
    const double sigma = var > 0.0 ? std::sqrt(var) : 0.0;
    if (sigma == 0.0) return a0;
    return 0.5 * a0 / (sigma * std::sqrt(static_cast<double>(n)));
}

inline void validate_bsb_params(const BsbParams& prm) {
    if (!(prm.a0 > 0.0) || !std::isfinite(prm.a0)) throw InputError("bsb: a0 must be > 0");
    if (!(prm.dt > 0.0) || !std::isfinite(prm.dt)) throw InputError("bsb: dt must be > 0");
    if (prm.steps < 1) throw InputError("bsb: steps must be >= 1");
    if (prm.restarts < 1) throw InputError("bsb: restarts must be >= 1");
    if (prm.c0 && (!(*prm.c0 > 0.0) || !std::isfinite(*prm.c0)))
        throw InputError("bsb: c0 must be > 0");
}

namespace detail {

// One symplectic-Euler update plus the wall rule, in place.
inline void bsb_step_core(std::vector<double>& x, std::vector<double>& y,
                          const IsingProblem& p, double a0, double c0, double dt,
                          double a_t, std::vector<double>& force) {
    const std::size_t n = p.n;
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = p.J.row(i);
        double f = 0.0;
        for (std::size_t j = 0; j < n; ++j) f += row[j] * x[j];
        force[i] = f;
    }
    const double confine = a0 - a_t;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] += dt * (-confine * x[i] - c0 * force[i]);
        x[i] += dt * a0 * y[i];
        if (x[i] > 1.0) {
            x[i] = 1.0;
            y[i] = 0.0;
        } else if (x[i] < -1.0) {
            x[i] = -1.0;
            y[i] = 0.0;
        }
    }
}

}  // namespace detail

inline BsbState bsb_step(const BsbState& state, const IsingProblem& p,
                         const BsbParams& prm, double a_t) {
    validate_ising(p);
    validate_bsb_params(prm);
    if (state.x.size() != p.n || state.y.size() != p.n)
        throw InputError("bsb_step: state dimension mismatch");
    for (std::size_t i = 0; i < p.n; ++i)
        if (!std::isfinite(state.x[i]) || !std::isfinite(state.y[i]))
            throw NumericError("bsb_step: non-finite state");
    const double c0 = prm.c0 ? *prm.c0 : bsb_auto_c0(p, prm.a0);
    BsbState out = state;
    std::vector<double> force(p.n);
    detail::bsb_step_core(out.x, out.y, p, prm.a0, c0, prm.dt, a_t, force);
    out.t = state.t + prm.dt;
    return out;
}

// Called after every integration step with the energy of the current sign
// configuration (sgn(0) = +1).
using BsbTraceFn =
    std::function<void(int restart, long long step, double a_t, double energy)>;
// Called whenever a restart improves on its own best-so-far.
using BsbImproveFn = std::function<void(int restart, long long step, double energy,
                                        const SpinConfig& s)>;

namespace detail {

struct RestartBest {
    double energy = std::numeric_limits<double>::infinity();
    long long step = 0;
    SpinConfig config;
};

// One seeded trajectory. Restart r draws from the stream derived from
// (seed, r), so runs decompose into independent single-restart runs.
inline RestartBest bsb_run_restart(const IsingProblem& p, const BsbParams& prm,
                                   double c0, int restart, const BsbTraceFn& trace,
                                   const BsbImproveFn& improve) {
    const std::size_t n = p.n;
    Rng rng = Rng::derive(prm.seed, static_cast<std::uint64_t>(restart));
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = rng.uniform(-0.1, 0.1);
    for (std::size_t i = 0; i < n; ++i) y[i] = rng.uniform(-0.1, 0.1);

    SpinConfig s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = x[i] >= 0.0 ? +1 : -1;
    std::vector<double> g(n, 0.0);  // g_i = sum_j J_ij s_j
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = p.J.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * s[j];
        g[i] = acc;
    }
    double raw = 0.0;
    for (std::size_t i = 0; i < n; ++i) raw += s[i] * g[i];

    RestartBest best;
    std::vector<double> force(n);
    for (long long k = 1; k <= prm.steps; ++k) {
        const double a_t = linear_schedule(k, prm.steps, prm.a0);
        bsb_step_core(x, y, p, prm.a0, c0, prm.dt, a_t, force);
        for (std::size_t i = 0; i < n; ++i) {
            const int si = x[i] >= 0.0 ? +1 : -1;
            if (si == s[i]) continue;
            raw += -4.0 * s[i] * g[i];
            s[i] = si;
            const double* row = p.J.row(i);
            const double d = 2.0 * si;
            for (std::size_t j = 0; j < n; ++j) g[j] += d * row[j];
        }
        const double energy = raw + p.offset;
        if (!std::isfinite(energy))
            throw NumericError("bsb_solve: non-finite energy at restart " +
                               std::to_string(restart) + ", step " + std::to_string(k));
        if (trace) trace(restart, k, a_t, energy);
        if (energy < best.energy) {
            best.energy = energy;
            best.step = k;
            best.config = s;
            if (improve) improve(restart, k, energy, s);
        }
    }
    return best;
}

}  // namespace detail

inline Solution bsb_solve(const IsingProblem& p, const BsbParams& prm,
                          const BsbTraceFn& trace = {}, const BsbImproveFn& improve = {}) {
    validate_ising(p);
    validate_bsb_params(prm);
    const double c0 = prm.c0 ? *prm.c0 : bsb_auto_c0(p, prm.a0);
    detail::RestartBest best;
    int best_restart = 0;
    for (int r = 0; r < prm.restarts; ++r) {
        detail::RestartBest cur = detail::bsb_run_restart(p, prm, c0, r, trace, improve);
        if (cur.energy < best.energy) {
            best = cur;
            best_restart = r;
        }
    }
    // Exact re-evaluation washes out incremental rounding in the report.
    const double exact = ising_energy(p, best.config);
    return Solution{best.config, exact, prm.seed, best_restart, best.step};
}

}  // namespace qdopt
