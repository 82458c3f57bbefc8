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
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "qdopt/dataset.hpp"
#include "qdopt/matrix.hpp"
#include "qdopt/problem.hpp"
#include "qdopt/rng.hpp"

namespace qdopt {

// Affine map back to original target units: original = shift + scale * internal.
// Recorded whenever targets are shifted/negated to fit the model's
// non-negative range.
struct TargetTransform {
    double scale = 1.0;
    double shift = 0.0;

    double to_original(double internal) const { return shift + scale * internal; }
    double to_internal(double original) const { return (original - shift) / scale; }
};

// Build the affine map from original targets onto the model's internal scale,
// where larger is always better and every value is non-negative. The model is
// a sum of squares, so it cannot go below zero anywhere -- including at
// configurations outside the dataset whose true values extend past the
// observed extreme. Anchoring the internal zero exactly at that extreme would
// push the exact quadratic out of the representable class and bias the fit;
// `headroom` (a fraction of the observed spread) leaves room for such values.
// [lo, hi] is the observed target range.
inline TargetTransform make_target_transform(double lo, double hi, Direction direction,
                                             double headroom = 0.25) {
    if (!(hi >= lo)) throw InputError("target transform: range must satisfy hi >= lo");
    if (!(headroom >= 0.0)) throw InputError("target transform: headroom must be >= 0");
    double margin = hi > lo ? headroom * (hi - lo)
                            : 1.0;  // constant targets: any positive anchor works
    TargetTransform tf;
    if (direction == Direction::Maximize) {
        tf.scale = 1.0;
        tf.shift = lo - margin;
    } else {
        tf.scale = -1.0;
        tf.shift = hi + margin;
    }
    return tf;
}

// Rank-K factorized quadratic predictor over bits:
//   f(q) = sum_k (sum_i v_ik q_i)^2,
// a sum of squares, hence non-negative everywhere. Its coefficient products
// sum_k v_ik v_jk form a QUBO matrix directly (see fm_to_qubo). The transform
// maps predictions back to original target units.
struct FactorModel {
    std::size_t n = 0;
    std::size_t K = 1;
    Matrix V;  // n x K
    TargetTransform transform;
};

struct FmHyper {
    double lr = 1e-3;
    long long epochs = 5000;
    double init_scale = 0.01;
    double val_fraction = 0.2;
    double weight_decay = 0.0;
    std::uint64_t seed = 0;
};

inline void validate_factor_model(const FactorModel& m) {
    if (m.n < 1 || m.K < 1) throw InputError("factor model: n and K must be >= 1");
    if (m.V.rows() != m.n || m.V.cols() != m.K)
        throw InputError("factor model: V must be n x K");
    if (!all_finite(m.V)) throw InputError("factor model: entries must be finite");
}

inline double fm_predict(const FactorModel& m, const BinaryVector& q) {
    check_bits(q, m.n, "fm_predict");
    std::vector<double> d(m.K, 0.0);
    for (std::size_t i = 0; i < m.n; ++i) {
        if (!q[i]) continue;
        const double* row = m.V.row(i);
        for (std::size_t k = 0; k < m.K; ++k) d[k] += row[k];
    }
    double f = 0.0;
    for (double v : d) f += v * v;
    return f;
}

// Q_ij = sum_k v_ik v_jk = (V V^T)_ij; the diagonal stays (q_i^2 = q_i).
inline QuboProblem fm_to_qubo(const FactorModel& m, Direction direction) {
    validate_factor_model(m);
    Matrix Q(m.n, m.n, 0.0);
    for (std::size_t i = 0; i < m.n; ++i) {
        const double* ri = m.V.row(i);
        for (std::size_t j = i; j < m.n; ++j) {
            const double* rj = m.V.row(j);
            double acc = 0.0;
            for (std::size_t k = 0; k < m.K; ++k) acc += ri[k] * rj[k];
            Q(i, j) = Q(j, i) = acc;
        }
    }
    return QuboProblem{m.n, std::move(Q), direction};
}

namespace detail {

// Full-batch MSE gradient over a single-target dataset:
//   L = mean_r (f(q_r) - y_r)^2,
//   dL/dv_ik = (4/M) sum_r (f - y) q_i d_k   (from df/dv_ik = 2 q_i d_k).
// Returns (gradient, mean squared error). Row order is fixed, so the
// accumulation is deterministic.
inline std::pair<Matrix, double> fm_batch_grad(const FactorModel& m,
                                               const PropertyDataset& data) {
    const std::size_t M = data.count();
    const std::size_t K = m.K;
    Matrix grad(m.n, K, 0.0);
    std::vector<double> d(K);
    double sse = 0.0;
    for (std::size_t r = 0; r < M; ++r) {
        const std::uint8_t* q = data.row(r);
        std::fill(d.begin(), d.end(), 0.0);
        for (std::size_t i = 0; i < m.n; ++i) {
            if (!q[i]) continue;
            const double* row = m.V.row(i);
            for (std::size_t k = 0; k < K; ++k) d[k] += row[k];
        }
        double pred = 0.0;
        for (double v : d) pred += v * v;
        const double resid = pred - data.target(r);
        sse += resid * resid;
        for (std::size_t i = 0; i < m.n; ++i) {
            if (!q[i]) continue;
            double* g = grad.row(i);
            for (std::size_t k = 0; k < K; ++k) g[k] += resid * d[k];
        }
    }
    const double inv = 1.0 / static_cast<double>(M);
    for (double& g : grad.data()) g *= 4.0 * inv;
    return {std::move(grad), sse * inv};
}

inline double fm_mse(const FactorModel& m, const PropertyDataset& data) {
    const std::size_t M = data.count();
    double sse = 0.0;
    std::vector<double> d(m.K);
    for (std::size_t r = 0; r < M; ++r) {
        const std::uint8_t* q = data.row(r);
        std::fill(d.begin(), d.end(), 0.0);
        for (std::size_t i = 0; i < m.n; ++i) {
            if (!q[i]) continue;
            const double* row = m.V.row(i);
            for (std::size_t k = 0; k < m.K; ++k) d[k] += row[k];
        }
        double pred = 0.0;
        for (double v : d) pred += v * v;
        const double resid = pred - data.target(r);
        sse += resid * resid;
    }
    return sse / static_cast<double>(M);
}

}  // namespace detail

// Full-batch gradient descent on MSE. The validation split is carved from a
// seeded permutation; the returned parameters are the snapshot with the best
// validation MSE seen after any epoch (final parameters if the split is
// empty). Deterministic per seed.
inline FactorModel fm_fit(const PropertyDataset& data, std::size_t K, const FmHyper& h) {
    validate_dataset(data);
    if (data.count() < 1) throw InputError("fm_fit: empty dataset");
    if (data.target_cols() != 1)
        throw InputError("fm_fit: dataset must have a single target (scalarize first)");
    if (K < 1) throw InputError("fm_fit: K must be >= 1");
    if (!(h.lr > 0.0) || !std::isfinite(h.lr)) throw InputError("fm_fit: lr must be > 0");
    if (h.epochs < 1) throw InputError("fm_fit: epochs must be >= 1");
    if (!(h.init_scale >= 0.0) || !std::isfinite(h.init_scale))
        throw InputError("fm_fit: init_scale must be >= 0");
    if (!(h.val_fraction >= 0.0 && h.val_fraction < 1.0))
        throw InputError("fm_fit: val_fraction must be in [0, 1)");
    if (!(h.weight_decay >= 0.0) || !std::isfinite(h.weight_decay))
        throw InputError("fm_fit: weight_decay must be >= 0");

    const std::size_t M = data.count();
    const std::size_t n = data.n;
    std::vector<std::size_t> perm(M);
    std::iota(perm.begin(), perm.end(), 0);
    Rng split_rng = Rng::derive(h.seed, 1);
    for (std::size_t i = M - 1; i > 0; --i) {
        const std::size_t j = split_rng.below(i + 1);
        std::swap(perm[i], perm[j]);
    }
    const std::size_t m_val = static_cast<std::size_t>(
        static_cast<double>(M) * h.val_fraction);
    if (m_val >= M) throw InputError("fm_fit: validation split leaves no training rows");

    PropertyDataset val, train;
    val.n = train.n = n;
    for (std::size_t i = 0; i < M; ++i) {
        PropertyDataset& dst = (i < m_val) ? val : train;
        const std::uint8_t* r = data.row(perm[i]);
        dst.bits.insert(dst.bits.end(), r, r + n);
        dst.targets.push_back(data.target(perm[i]));
    }

    FactorModel m{n, K, Matrix(n, K)};
    Rng init_rng = Rng::derive(h.seed, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < K; ++k)
            m.V(i, k) = init_rng.uniform(-h.init_scale, h.init_scale);

    FactorModel best = m;
    double best_val = std::numeric_limits<double>::infinity();
    for (long long epoch = 0; epoch < h.epochs; ++epoch) {
        auto [grad, mse] = detail::fm_batch_grad(m, train);
        if (!std::isfinite(mse))
            throw NumericError("fm_fit: non-finite loss at epoch " + std::to_string(epoch));
        double* v = m.V.data().data();
        const double* g = grad.data().data();
        const double wd = 2.0 * h.weight_decay;
        for (std::size_t i = 0; i < m.V.data().size(); ++i)
            v[i] -= h.lr * (g[i] + wd * v[i]);
        if (val.count() > 0) {
            const double vm = detail::fm_mse(m, val);
            if (vm < best_val) {
                best_val = vm;
                best = m;
            }
        }
    }
    return val.count() > 0 ? best : m;
}

}  // namespace qdopt
