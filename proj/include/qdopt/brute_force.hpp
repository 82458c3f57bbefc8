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

namespace qdopt {

namespace detail {

// Configurations are enumerated in lexicographic order (element 0 most
// significant, -1 before +1 / 0 before 1) with strict improvement, so the
// first optimum found is the lexicographically smallest one. Energies are
// maintained incrementally through local fields and re-evaluated exactly
// whenever a configuration threatens the incumbent, which keeps tie-breaking
// immune to accumulated rounding.
inline constexpr std::size_t kBruteForceCap = 24;

}  // namespace detail

inline Solution brute_force_ground_state(const IsingProblem& p) {
    validate_ising(p);
    if (p.n > detail::kBruteForceCap)
        throw CapacityError("brute_force_ground_state: n > 24");
    const std::size_t n = p.n;
    SpinConfig s(n, -1);
    std::vector<double> h(n, 0.0);  // h_i = sum_j J[i][j] s_j
    for (std::size_t i = 0; i < n; ++i) {
        const double* row = p.J.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * s[j];
        h[i] = acc;
    }
    double raw = 0.0;  // energy without offset, tracked incrementally
    for (std::size_t i = 0; i < n; ++i) raw += s[i] * h[i];

    double best = std::numeric_limits<double>::infinity();
    SpinConfig best_cfg;
    const std::uint64_t count = std::uint64_t(1) << n;
    for (std::uint64_t c = 0;; ++c) {
        if (raw + p.offset <= best + 1e-9) {
            const double exact = ising_energy(p, s);
            if (exact < best) {
                best = exact;
                best_cfg = s;
            }
        }
        if (c + 1 == count) break;
        std::uint64_t changed = c ^ (c + 1);  // trailing block of flips
        while (changed) {
            const int b = __builtin_ctzll(changed);
            changed &= changed - 1;
            const std::size_t i = n - 1 - static_cast<std::size_t>(b);
            raw += -4.0 * s[i] * h[i];
            s[i] = -s[i];
            const double* row = p.J.row(i);
            const double d = 2.0 * s[i];
            for (std::size_t j = 0; j < n; ++j) h[j] += d * row[j];
        }
    }
    if (best_cfg[0] == -1)
        for (int& v : best_cfg) v = -v;  // global-flip normalization
    return Solution{best_cfg, best, 0, 0, 0};
}

inline Solution brute_force_ground_state(const QuboProblem& p) {
    validate_qubo(p);
    if (p.n > detail::kBruteForceCap)
        throw CapacityError("brute_force_ground_state: n > 24");
    const std::size_t n = p.n;
    const double sgn = (p.direction == Direction::Maximize) ? -1.0 : 1.0;
    BinaryVector q(n, 0);
    std::vector<double> g(n, 0.0);  // g_i = sum_j Q[i][j] q_j
    double raw = 0.0;

    double best = std::numeric_limits<double>::infinity();
    BinaryVector best_cfg;
    const std::uint64_t count = std::uint64_t(1) << n;
    for (std::uint64_t c = 0;; ++c) {
        if (sgn * raw <= best + 1e-9) {
            const double exact = qubo_value(p, q);
            if (sgn * exact < best) {
                best = sgn * exact;
                best_cfg = q;
            }
        }
        if (c + 1 == count) break;
        std::uint64_t changed = c ^ (c + 1);
        while (changed) {
            const int b = __builtin_ctzll(changed);
            changed &= changed - 1;
            const std::size_t i = n - 1 - static_cast<std::size_t>(b);
            const double d = q[i] ? -1.0 : 1.0;
            raw += 2.0 * d * g[i] + p.Q(i, i);
            q[i] = 1 - q[i];
            const double* row = p.Q.row(i);
            for (std::size_t j = 0; j < n; ++j) g[j] += d * row[j];
        }
    }
    return Solution{best_cfg, qubo_value(p, best_cfg), 0, 0, 0};
}

}  // namespace qdopt
