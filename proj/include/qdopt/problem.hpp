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

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qdopt/errors.hpp"
#include "qdopt/matrix.hpp"

namespace qdopt {

using SpinConfig = std::vector<int>;    // entries in {-1, +1}
using BinaryVector = std::vector<int>;  // entries in {0, 1}

enum class Direction { Minimize, Maximize };

// E(s) = sum_i sum_j J[i][j] s_i s_j + offset, the full double sum (each
// unordered pair counted twice). J symmetric with zero diagonal.
struct IsingProblem {
    std::size_t n = 0;
    Matrix J;
    double offset = 0.0;
};

// value(q) = sum_i sum_j Q[i][j] q_i q_j. Q symmetric; the diagonal acts as
// a linear term since q_i^2 = q_i. Direction tells solvers how to rank.
struct QuboProblem {
    std::size_t n = 0;
    Matrix Q;
    Direction direction = Direction::Minimize;
};

struct Solution {
    std::vector<int> config;  // spins for Ising problems, bits for QUBO
    double energy = 0.0;
    std::uint64_t seed = 0;
    int restart_index = 0;
    long long best_step = 0;
};

inline void validate_ising(const IsingProblem& p) {
    if (p.n < 1) throw InputError("ising: n must be >= 1");
    if (p.J.rows() != p.n || p.J.cols() != p.n)
        throw InputError("ising: J must be n x n");
    if (!all_finite(p.J) || !std::isfinite(p.offset))
        throw InputError("ising: entries must be finite");
    if (!is_symmetric(p.J)) throw InputError("ising: J must be symmetric");
    for (std::size_t i = 0; i < p.n; ++i)
        if (p.J(i, i) != 0.0) throw InputError("ising: J diagonal must be zero");
}

inline void validate_qubo(const QuboProblem& p) {
    if (p.n < 1) throw InputError("qubo: n must be >= 1");
    if (p.Q.rows() != p.n || p.Q.cols() != p.n)
        throw InputError("qubo: Q must be n x n");
    if (!all_finite(p.Q)) throw InputError("qubo: entries must be finite");
    if (!is_symmetric(p.Q)) throw InputError("qubo: Q must be symmetric");
}

inline IsingProblem make_ising(Matrix J, double offset = 0.0) {
    IsingProblem p{J.rows(), std::move(J), offset};
    validate_ising(p);
    return p;
}

inline QuboProblem make_qubo(Matrix Q, Direction direction = Direction::Minimize) {
    QuboProblem p{Q.rows(), std::move(Q), direction};
    validate_qubo(p);
    return p;
}

// Explicit-size variants that double-check the matrix shape against the
// caller's intent.
inline IsingProblem make_ising(std::size_t n, Matrix J, double offset = 0.0) {
    if (J.rows() != n || J.cols() != n) throw InputError("ising: J must be n x n");
    return make_ising(std::move(J), offset);
}

inline QuboProblem make_qubo(std::size_t n, Matrix Q,
                             Direction direction = Direction::Minimize) {
    if (Q.rows() != n || Q.cols() != n) throw InputError("qubo: Q must be n x n");
    return make_qubo(std::move(Q), direction);
}

inline void check_spins(const SpinConfig& s, std::size_t n, const char* who) {
    if (s.size() != n) throw InputError(std::string(who) + ": config length mismatch");
    for (int v : s)
        if (v != -1 && v != 1) throw InputError(std::string(who) + ": spins must be +-1");
}

inline void check_bits(const BinaryVector& q, std::size_t n, const char* who) {
    if (q.size() != n) throw InputError(std::string(who) + ": config length mismatch");
    for (int v : q)
        if (v != 0 && v != 1) throw InputError(std::string(who) + ": bits must be 0/1");
}

inline double ising_energy(const IsingProblem& p, const SpinConfig& s) {
    check_spins(s, p.n, "ising_energy");
    double e = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) {
        const double* row = p.J.row(i);
        double h = 0.0;
        for (std::size_t j = 0; j < p.n; ++j) h += row[j] * s[j];
        e += s[i] * h;
    }
    return e + p.offset;
}

inline double qubo_value(const QuboProblem& p, const BinaryVector& q) {
    check_bits(q, p.n, "qubo_value");
    double e = 0.0;
    for (std::size_t i = 0; i < p.n; ++i) {
        if (!q[i]) continue;
        const double* row = p.Q.row(i);
        double h = 0.0;
        for (std::size_t j = 0; j < p.n; ++j) h += row[j] * q[j];
        e += h;
    }
    return e;
}

inline BinaryVector spins_to_bits(const SpinConfig& s) {
    check_spins(s, s.size(), "spins_to_bits");
    BinaryVector q(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) q[i] = (s[i] + 1) / 2;
    return q;
}

inline SpinConfig bits_to_spins(const BinaryVector& q) {
    check_bits(q, q.size(), "bits_to_spins");
    SpinConfig s(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) s[i] = 2 * q[i] - 1;
    return s;
}

// {0,1} -> {-1,+1} compilation with one ancilla spin at index 0. Substituting
// q_i = (1 + s_{i+1})/2 (ancilla fixed at +1) into q^T Q q gives couplings
// Q_ij/4, ancilla couplings R_i/4 (R = row sums of Q, diagonal included) and
// a constant (sum Q + tr Q)/4 that lands in the offset. Maximize compiles -Q,
// so minimizing the result always optimizes the original problem.
inline IsingProblem qubo_to_ising(const QuboProblem& p) {
    validate_qubo(p);
    const double sgn = (p.direction == Direction::Maximize) ? -1.0 : 1.0;
    const std::size_t n = p.n;
    Matrix J(n + 1, n + 1, 0.0);
    double total = 0.0, trace = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double rowsum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double v = sgn * p.Q(i, j);
            rowsum += v;
            if (i != j) J(i + 1, j + 1) = v / 4.0;
        }
        J(0, i + 1) = J(i + 1, 0) = rowsum / 4.0;
        total += rowsum;
        trace += sgn * p.Q(i, i);
    }
    return IsingProblem{n + 1, std::move(J), (total + trace) / 4.0};
}

// Spin embedding used by the compilation contract: ancilla +1, then 2q-1.
inline SpinConfig qubo_embed(const BinaryVector& q) {
    SpinConfig s(q.size() + 1);
    s[0] = +1;
    for (std::size_t i = 0; i < q.size(); ++i) s[i + 1] = 2 * q[i] - 1;
    return s;
}

// Inverse of qubo_embed for solver output: normalize the global-flip gauge so
// the ancilla reads +1, drop it, convert to bits.
inline BinaryVector ising_extract(const SpinConfig& s) {
    if (s.size() < 2) throw InputError("ising_extract: need an ancilla plus one spin");
    const int flip = (s[0] == -1) ? -1 : +1;
    BinaryVector q(s.size() - 1);
    for (std::size_t i = 1; i < s.size(); ++i) q[i - 1] = (flip * s[i] + 1) / 2;
    return q;
}

struct Edge {
    std::size_t u = 0;
    std::size_t v = 0;
    double w = 1.0;
};

// J[i][j] = w_ij / 2 so that cut(s) = (W_total - E(s)) / 2 with zero offset.
inline IsingProblem maxcut_to_ising(const std::vector<Edge>& edges, std::size_t n) {
    if (n < 1) throw InputError("maxcut_to_ising: n must be >= 1");
    Matrix J(n, n, 0.0);
    std::vector<std::pair<std::size_t, std::size_t>> seen;
    seen.reserve(edges.size());
    for (const Edge& e : edges) {
        if (e.u >= n || e.v >= n) throw InputError("maxcut_to_ising: vertex out of range");
        if (e.u == e.v) throw InputError("maxcut_to_ising: self-loop");
        if (!std::isfinite(e.w)) throw InputError("maxcut_to_ising: non-finite weight");
        seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
        J(e.u, e.v) = J(e.v, e.u) = e.w / 2.0;
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw InputError("maxcut_to_ising: duplicate edge");
    return IsingProblem{n, std::move(J), 0.0};
}

inline double total_weight(const std::vector<Edge>& edges) {
    double w = 0.0;
    for (const Edge& e : edges) w += e.w;
    return w;
}

// Direct edge counting, the independent side of the cut identity.
inline double cut_value(const std::vector<Edge>& edges, const SpinConfig& s) {
    double c = 0.0;
    for (const Edge& e : edges) {
        if (e.u >= s.size() || e.v >= s.size())
            throw InputError("cut_value: vertex out of range");
        if (s[e.u] != s[e.v]) c += e.w;
    }
    return c;
}

}  // namespace qdopt
