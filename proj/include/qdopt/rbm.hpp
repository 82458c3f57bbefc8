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
#include <utility>
#include <vector>

#include "qdopt/errors.hpp"
#include "qdopt/matrix.hpp"
#include "qdopt/problem.hpp"
#include "qdopt/rng.hpp"

namespace qdopt {

// Restricted Boltzmann machine with the standard bipartite energy
//   E(v, h) = -v^T W h - b_v . v - b_h . h.
struct RbmModel {
    std::size_t n_v = 0;
    std::size_t n_h = 0;
    Matrix W;  // n_v x n_h
    std::vector<double> b_v;
    std::vector<double> b_h;
};

inline void validate_rbm(const RbmModel& m) {
    if (m.n_v < 1 || m.n_h < 1) throw InputError("rbm: n_v and n_h must be >= 1");
    if (m.W.rows() != m.n_v || m.W.cols() != m.n_h)
        throw InputError("rbm: W must be n_v x n_h");
    if (m.b_v.size() != m.n_v || m.b_h.size() != m.n_h)
        throw InputError("rbm: bias length mismatch");
    if (!all_finite(m.W)) throw InputError("rbm: W must be finite");
    for (double b : m.b_v)
        if (!std::isfinite(b)) throw InputError("rbm: b_v must be finite");
    for (double b : m.b_h)
        if (!std::isfinite(b)) throw InputError("rbm: b_h must be finite");
}

namespace detail {

inline double sigmoid(double x) {
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

inline double softplus(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

// b_h_j + sum_i v_i W_ij for all j.
inline std::vector<double> hidden_activation(const RbmModel& m, const BinaryVector& v) {
    std::vector<double> act(m.b_h);
    for (std::size_t i = 0; i < m.n_v; ++i) {
        if (!v[i]) continue;
        const double* row = m.W.row(i);
        for (std::size_t j = 0; j < m.n_h; ++j) act[j] += row[j];
    }
    return act;
}

// b_v_i + sum_j W_ij h_j for all i.
inline std::vector<double> visible_activation(const RbmModel& m, const BinaryVector& h) {
    std::vector<double> act(m.b_v);
    for (std::size_t i = 0; i < m.n_v; ++i) {
        const double* row = m.W.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < m.n_h; ++j) acc += row[j] * h[j];
        act[i] += acc;
    }
    return act;
}

}  // namespace detail

inline double rbm_energy(const RbmModel& m, const BinaryVector& v, const BinaryVector& h) {
    validate_rbm(m);
    check_bits(v, m.n_v, "rbm_energy");
    check_bits(h, m.n_h, "rbm_energy");
    double e = 0.0;
    for (std::size_t i = 0; i < m.n_v; ++i) {
        if (!v[i]) continue;
        const double* row = m.W.row(i);
        for (std::size_t j = 0; j < m.n_h; ++j) e -= row[j] * h[j];
        e -= m.b_v[i];
    }
    for (std::size_t j = 0; j < m.n_h; ++j)
        if (h[j]) e -= m.b_h[j];
    return e;
}

// One block Gibbs step: h ~ P(h|v) unit by unit, then v' ~ P(v|h).
// Returns (v', h). Draw order is fixed (h_0..h_{n_h-1}, then v'_0..).
inline std::pair<BinaryVector, BinaryVector> gibbs_step(const RbmModel& m,
                                                        const BinaryVector& v, Rng& rng) {
    check_bits(v, m.n_v, "gibbs_step");
    const std::vector<double> hact = detail::hidden_activation(m, v);
    BinaryVector h(m.n_h);
    for (std::size_t j = 0; j < m.n_h; ++j)
        h[j] = rng.bernoulli(detail::sigmoid(hact[j])) ? 1 : 0;
    const std::vector<double> vact = detail::visible_activation(m, h);
    BinaryVector vp(m.n_v);
    for (std::size_t i = 0; i < m.n_v; ++i)
        vp[i] = rng.bernoulli(detail::sigmoid(vact[i])) ? 1 : 0;
    return {std::move(vp), std::move(h)};
}

// Exact visible marginal by summing the hiddens out in log space:
//   P(v) ~ exp(b_v . v) prod_j (1 + exp(b_h_j + (W^T v)_j)).
// Index i of the table has bit i of v at position i (little-endian).
inline std::vector<double> exact_distribution(const RbmModel& m) {
    validate_rbm(m);
    if (m.n_v + m.n_h > 20)
        throw CapacityError("exact_distribution: n_v + n_h > 20");
    const std::size_t states = std::size_t(1) << m.n_v;
    std::vector<double> logp(states);
    double maxlog = -std::numeric_limits<double>::infinity();
    BinaryVector v(m.n_v);
    for (std::size_t idx = 0; idx < states; ++idx) {
        double lp = 0.0;
        for (std::size_t i = 0; i < m.n_v; ++i) {
            v[i] = static_cast<int>((idx >> i) & 1);
            if (v[i]) lp += m.b_v[i];
        }
        const std::vector<double> act = detail::hidden_activation(m, v);
        for (double a : act) lp += detail::softplus(a);
        logp[idx] = lp;
        if (lp > maxlog) maxlog = lp;
    }
    std::vector<double> p(states);
    double z = 0.0;
    for (std::size_t idx = 0; idx < states; ++idx) {
        p[idx] = std::exp(logp[idx] - maxlog);
        z += p[idx];
    }
    for (double& x : p) x /= z;
    return p;
}

// Free energy used as the plausibility score (lower = more plausible):
//   F(v) = -b_v . v - sum_j softplus(b_h_j + (W^T v)_j).
inline double free_energy(const RbmModel& m, const BinaryVector& v) {
    validate_rbm(m);
    check_bits(v, m.n_v, "free_energy");
    double f = 0.0;
    for (std::size_t i = 0; i < m.n_v; ++i)
        if (v[i]) f -= m.b_v[i];
    const std::vector<double> act = detail::hidden_activation(m, v);
    for (double a : act) f -= detail::softplus(a);
    return f;
}

// Independent chains with streams derived from (seed, chain); chain c keeps
// count/chains (+1 for the first count%chains chains) states, recorded every
// `thin` steps after `burn_in` steps, concatenated chain-major.
inline std::vector<BinaryVector> rbm_sample(const RbmModel& m, int chains,
                                            long long burn_in, long long thin,
                                            long long count, std::uint64_t seed) {
    validate_rbm(m);
    if (chains < 1) throw InputError("rbm_sample: chains must be >= 1");
    if (burn_in < 0) throw InputError("rbm_sample: burn_in must be >= 0");
    if (thin < 1) throw InputError("rbm_sample: thin must be >= 1");
    if (count < 1) throw InputError("rbm_sample: count must be >= 1");
    std::vector<BinaryVector> out;
    out.reserve(static_cast<std::size_t>(count));
    for (int c = 0; c < chains; ++c) {
        long long quota = count / chains + (c < count % chains ? 1 : 0);
        if (quota == 0) continue;
        Rng rng = Rng::derive(seed, static_cast<std::uint64_t>(c));
        BinaryVector v(m.n_v);
        for (std::size_t i = 0; i < m.n_v; ++i) v[i] = rng.bit();
        for (long long b = 0; b < burn_in; ++b) v = gibbs_step(m, v, rng).first;
        for (long long s = 0; s < quota; ++s) {
            for (long long t = 0; t < thin; ++t) v = gibbs_step(m, v, rng).first;
            out.push_back(v);
        }
    }
    return out;
}

// One CD-k update. Positive statistics use hidden probabilities against the
// data; negative statistics come from k sampled Gibbs steps started at each
// batch row against the input model. Statistics are batch means. The caller
// owns the random stream.
inline RbmModel cd_update(const RbmModel& m, const std::vector<BinaryVector>& batch,
                          int k, double lr, Rng& rng) {
    validate_rbm(m);
    if (batch.empty()) throw InputError("cd_update: empty batch");
    if (k < 1) throw InputError("cd_update: k must be >= 1");
    if (!std::isfinite(lr)) throw InputError("cd_update: lr must be finite");
    Matrix dW(m.n_v, m.n_h, 0.0);
    std::vector<double> dbv(m.n_v, 0.0), dbh(m.n_h, 0.0);
    for (const BinaryVector& v0 : batch) {
        check_bits(v0, m.n_v, "cd_update");
        std::vector<double> ph_pos(m.n_h);
        {
            const std::vector<double> act = detail::hidden_activation(m, v0);
            for (std::size_t j = 0; j < m.n_h; ++j) ph_pos[j] = detail::sigmoid(act[j]);
        }
        BinaryVector vk = v0;
        for (int t = 0; t < k; ++t) vk = gibbs_step(m, vk, rng).first;
        std::vector<double> ph_neg(m.n_h);
        {
            const std::vector<double> act = detail::hidden_activation(m, vk);
            for (std::size_t j = 0; j < m.n_h; ++j) ph_neg[j] = detail::sigmoid(act[j]);
        }
        for (std::size_t i = 0; i < m.n_v; ++i) {
            double* row = dW.row(i);
            for (std::size_t j = 0; j < m.n_h; ++j)
                row[j] += (v0[i] ? ph_pos[j] : 0.0) - (vk[i] ? ph_neg[j] : 0.0);
            dbv[i] += v0[i] - vk[i];
        }
        for (std::size_t j = 0; j < m.n_h; ++j) dbh[j] += ph_pos[j] - ph_neg[j];
    }
    const double step = lr / static_cast<double>(batch.size());
    RbmModel out = m;
    for (std::size_t i = 0; i < m.n_v; ++i) {
        double* row = out.W.row(i);
        const double* d = dW.row(i);
        for (std::size_t j = 0; j < m.n_h; ++j) row[j] += step * d[j];
        out.b_v[i] += step * dbv[i];
    }
    for (std::size_t j = 0; j < m.n_h; ++j) out.b_h[j] += step * dbh[j];
    return out;
}

}  // namespace qdopt
