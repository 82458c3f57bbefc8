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
#include <string>
#include <vector>

#include "qdopt/errors.hpp"
#include "qdopt/problem.hpp"

namespace qdopt {

// Rows of (length-n bit vector, one or more named real targets), stored flat.
struct PropertyDataset {
    std::size_t n = 0;
    std::vector<std::string> target_names{"target"};
    std::vector<std::uint8_t> bits;  // count x n, row-major
    std::vector<double> targets;     // count x target_cols, row-major

    std::size_t count() const { return n ? bits.size() / n : 0; }
    std::size_t target_cols() const { return target_names.size(); }

    const std::uint8_t* row(std::size_t i) const { return bits.data() + i * n; }
    double target(std::size_t i, std::size_t t = 0) const {
        return targets[i * target_cols() + t];
    }

    BinaryVector row_bits(std::size_t i) const {
        BinaryVector q(n);
        const std::uint8_t* r = row(i);
        for (std::size_t j = 0; j < n; ++j) q[j] = r[j];
        return q;
    }

    void append(const BinaryVector& q, const std::vector<double>& y) {
        check_bits(q, n, "dataset append");
        if (y.size() != target_cols())
            throw InputError("dataset append: target count mismatch");
        for (int b : q) bits.push_back(static_cast<std::uint8_t>(b));
        for (double v : y) {
            if (!std::isfinite(v)) throw InputError("dataset append: non-finite target");
            targets.push_back(v);
        }
    }
};

inline void validate_dataset(const PropertyDataset& d) {
    if (d.n < 1) throw InputError("dataset: n must be >= 1");
    if (d.target_names.empty()) throw InputError("dataset: needs at least one target");
    if (d.bits.size() % d.n != 0) throw InputError("dataset: ragged bit rows");
    const std::size_t m = d.bits.size() / d.n;
    if (d.targets.size() != m * d.target_cols())
        throw InputError("dataset: target shape mismatch");
    for (std::uint8_t b : d.bits)
        if (b > 1) throw InputError("dataset: bits must be 0/1");
    for (double v : d.targets)
        if (!std::isfinite(v)) throw InputError("dataset: targets must be finite");
}

// Weighted-sum scalarization of multi-target data into a single target.
inline PropertyDataset scalarize(const PropertyDataset& d, const std::vector<double>& weights) {
    validate_dataset(d);
    if (weights.size() != d.target_cols())
        throw InputError("scalarize: weights length must match target columns");
    PropertyDataset out;
    out.n = d.n;
    out.target_names = {"target"};
    out.bits = d.bits;
    const std::size_t m = d.count();
    out.targets.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        double acc = 0.0;
        for (std::size_t t = 0; t < weights.size(); ++t) acc += weights[t] * d.target(i, t);
        out.targets[i] = acc;
    }
    return out;
}

}  // namespace qdopt
