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
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "qdopt/bsb.hpp"
#include "qdopt/dataset.hpp"
#include "qdopt/errors.hpp"
#include "qdopt/factor_model.hpp"
#include "qdopt/problem.hpp"
#include "qdopt/rbm.hpp"

namespace qdopt {

struct RbmFilter {
    RbmModel model;
    double keep_fraction = 0.5;
};

struct PipelineConfig {
    std::size_t K = 8;
    Direction direction = Direction::Maximize;
    std::vector<double> weights;  // empty = uniform over target columns
    BsbParams solver;
    std::size_t top_k = 10;
    std::optional<RbmFilter> rbm_filter;
    std::uint64_t seed = 0;
    FmHyper fit;
    bool fit_bias = true;  // append an always-on bit so the surrogate carries an affine term
};

struct Candidate {
    BinaryVector bits;
    double predicted = 0.0;  // surrogate value in the original target scale
    double energy = 0.0;     // Ising energy of the compiled instance
    int restart = 0;
};

struct RankedCandidates {
    std::vector<Candidate> items;
    TargetTransform transform;
    FactorModel model;  // fitted surrogate (over n or n+1 bits when fit_bias)
    bool bias_bit = false;
};

namespace detail {

inline constexpr std::size_t kPipelineCap = 4096;

// Surrogate prediction on original-scale targets; appends the bias bit when present.
inline double pipeline_predict(const FactorModel& m, const TargetTransform& tf,
                               const BinaryVector& bits, bool bias_bit) {
    double value;
    if (bias_bit) {
        BinaryVector aug(bits);
        aug.push_back(1);
        value = fm_predict(m, aug);
    } else {
        value = fm_predict(m, bits);
    }
    return tf.to_original(value);
}

}  // namespace detail

// Fit an internal surrogate on the dataset, compile it, search the compiled
// instance with the bifurcation solver, and return deduplicated candidates
// ranked by surrogate value. The internal fit always maximizes a shifted
// non-negative target; `direction` controls how targets map into that scale
// and how the final ranking reads.
inline RankedCandidates optimize_property(const PropertyDataset& data,
                                          const PipelineConfig& cfg) {
    validate_dataset(data);
    if (data.n > detail::kPipelineCap)
        throw CapacityError("optimize_property: n exceeds pipeline cap of 4096");
    if (cfg.top_k < 1) throw InputError("optimize_property: top_k must be >= 1");
    if (cfg.K < 1) throw InputError("optimize_property: K must be >= 1");
    if (cfg.rbm_filter) {
        validate_rbm(cfg.rbm_filter->model);
        if (cfg.rbm_filter->model.n_v != data.n)
            throw InputError("optimize_property: rbm filter visible size must match n");
        if (!(cfg.rbm_filter->keep_fraction > 0.0) || cfg.rbm_filter->keep_fraction > 1.0)
            throw InputError("optimize_property: keep_fraction must be in (0, 1]");
    }

    std::vector<double> weights = cfg.weights;
    if (weights.empty()) weights.assign(data.target_cols(), 1.0);
    PropertyDataset scalar = scalarize(data, weights);

    // Map targets to a non-negative internal scale where larger is better.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < scalar.count(); ++r) {
        lo = std::min(lo, scalar.target(r, 0));
        hi = std::max(hi, scalar.target(r, 0));
    }
    TargetTransform tf = make_target_transform(lo, hi, cfg.direction);
    PropertyDataset internal = scalar;
    for (std::size_t r = 0; r < internal.count(); ++r)
        internal.targets[r] = tf.to_internal(internal.targets[r]);

    if (cfg.fit_bias) {
        PropertyDataset aug;
        aug.n = internal.n + 1;
        aug.target_names = internal.target_names;
        BinaryVector row(aug.n, 1);
        for (std::size_t r = 0; r < internal.count(); ++r) {
            const std::uint8_t* src = internal.row(r);
            for (std::size_t i = 0; i < internal.n; ++i) row[i] = src[i];
            aug.append(row, {internal.targets[r]});
        }
        internal = std::move(aug);
    }

    FmHyper hyper = cfg.fit;
    hyper.seed = cfg.seed;
    FactorModel model = fm_fit(internal, cfg.K, hyper);
    model.transform = tf;

    // Compile: the internal target is maximized, so the surrogate QUBO is too.
    QuboProblem qubo = fm_to_qubo(model, Direction::Maximize);
    if (cfg.fit_bias) {
        // Substitute the always-on bit: its couplings fold into the diagonal
        // and its square drops (a constant under the substitution).
        std::size_t n = data.n;
        Matrix reduced(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) reduced(i, j) = qubo.Q(i, j);
            reduced(i, i) += 2.0 * qubo.Q(i, n);
        }
        qubo = QuboProblem{n, std::move(reduced), Direction::Maximize};
    }
    IsingProblem ising = qubo_to_ising(qubo);

    BsbParams solver = cfg.solver;
    solver.seed = cfg.seed;

    // Collect every configuration the solver considered an improvement,
    // deduplicated on bits; first sighting wins.
    std::vector<Candidate> pool;
    std::map<BinaryVector, std::size_t> seen;
    BsbImproveFn improve = [&](int restart, long long /*step*/, double energy,
                               const SpinConfig& s) {
        BinaryVector bits = ising_extract(s);
        auto [it, inserted] = seen.emplace(bits, pool.size());
        if (!inserted) return;
        Candidate c;
        c.predicted = detail::pipeline_predict(model, tf, bits, cfg.fit_bias);
        c.bits = std::move(bits);
        c.energy = energy;
        c.restart = restart;
        pool.push_back(std::move(c));
    };
    bsb_solve(ising, solver, nullptr, improve);

    // Rank by surrogate value in the requested direction; stable so earlier
    // sightings win ties.
    if (cfg.direction == Direction::Maximize) {
        std::stable_sort(pool.begin(), pool.end(),
                         [](const Candidate& a, const Candidate& b) {
                             return a.predicted > b.predicted;
                         });
    } else {
        std::stable_sort(pool.begin(), pool.end(),
                         [](const Candidate& a, const Candidate& b) {
                             return a.predicted < b.predicted;
                         });
    }
    if (pool.size() > cfg.top_k) pool.resize(cfg.top_k);

    // Optional plausibility filter: keep the lowest-free-energy fraction
    // under the provided generative model, preserving rank order.
    if (cfg.rbm_filter && !pool.empty()) {
        const RbmModel& rbm = cfg.rbm_filter->model;
        std::size_t keep_n = static_cast<std::size_t>(
            std::ceil(cfg.rbm_filter->keep_fraction * static_cast<double>(pool.size())));
        keep_n = std::min(keep_n, pool.size());
        std::vector<std::pair<double, std::size_t>> scored;
        scored.reserve(pool.size());
        for (std::size_t i = 0; i < pool.size(); ++i)
            scored.emplace_back(free_energy(rbm, pool[i].bits), i);
        std::stable_sort(scored.begin(), scored.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        scored.resize(keep_n);
        std::sort(scored.begin(), scored.end(),
                  [](const auto& a, const auto& b) { return a.second < b.second; });
        std::vector<Candidate> kept;
        kept.reserve(keep_n);
        for (const auto& [fe, idx] : scored) kept.push_back(std::move(pool[idx]));
        pool = std::move(kept);
    }

    RankedCandidates out;
    out.items = std::move(pool);
    out.transform = tf;
    out.model = std::move(model);
    out.bias_bit = cfg.fit_bias;
    return out;
}

}  // namespace qdopt
