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

#include <cstdint>
#include <string>

#include "qdopt/dataset.hpp"
#include "qdopt/problem.hpp"
#include "qdopt/rng.hpp"

namespace qdopt {

// Deterministic black-box property functions for end-to-end tests, standing
// in for an external property evaluator. Capped at n <= 20 so ground truth
// stays exhaustively checkable.
enum class OracleKind { Quadratic, SparseQuadratic, OneMax };

inline OracleKind parse_oracle_kind(const std::string& s) {
    if (s == "quadratic") return OracleKind::Quadratic;
    if (s == "sparse-quadratic") return OracleKind::SparseQuadratic;
    if (s == "onemax") return OracleKind::OneMax;
    throw InputError("synthetic_oracle: unknown kind '" + s + "'");
}

class SyntheticOracle {
  public:
    SyntheticOracle(OracleKind kind, std::size_t n, std::uint64_t seed)
        : kind_(kind), n_(n) {
        if (n < 1 || n > 20) throw InputError("synthetic_oracle: n must be in [1, 20]");
        if (kind_ == OracleKind::OneMax) return;
        Rng rng = Rng::derive(seed, 0);
        q_ = Matrix(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                if (kind_ == OracleKind::SparseQuadratic && rng.uniform() >= 0.25) continue;
                q_(i, j) = q_(j, i) = rng.uniform(-1.0, 1.0);
            }
    }

    double operator()(const BinaryVector& q) const {
        check_bits(q, n_, "synthetic_oracle");
        if (kind_ == OracleKind::OneMax) {
            double c = 0.0;
            for (int b : q) c += b;
            return c;
        }
        double e = 0.0;
        for (std::size_t i = 0; i < n_; ++i) {
            if (!q[i]) continue;
            const double* row = q_.row(i);
            for (std::size_t j = 0; j < n_; ++j) e += row[j] * q[j];
        }
        return e;
    }

    OracleKind kind() const { return kind_; }
    std::size_t n() const { return n_; }

    // The underlying quadratic as a QuboProblem, for exhaustive ground truth.
    QuboProblem as_qubo(Direction direction) const {
        if (kind_ == OracleKind::OneMax) {
            Matrix Q(n_, n_, 0.0);
            for (std::size_t i = 0; i < n_; ++i) Q(i, i) = 1.0;
            return QuboProblem{n_, std::move(Q), direction};
        }
        return QuboProblem{n_, q_, direction};
    }

  private:
    OracleKind kind_;
    std::size_t n_;
    Matrix q_;
};

// Synthetic dataset of uniform random bit rows labeled by the oracle.
inline PropertyDataset oracle_dataset(const SyntheticOracle& oracle, std::size_t rows,
                                      std::uint64_t seed) {
    PropertyDataset d;
    d.n = oracle.n();
    Rng rng = Rng::derive(seed, 1);
    BinaryVector q(d.n);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < d.n; ++i) q[i] = rng.bit();
        d.append(q, {oracle(q)});
    }
    return d;
}

}  // namespace qdopt
