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
#include <cstddef>
#include <vector>

namespace qdopt {

// Dense row-major matrix of doubles. Rows are contiguous so the solvers'
// inner loops (J row dot x) vectorize.
class Matrix {
  public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), a_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
    double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }

    const double* row(std::size_t i) const { return a_.data() + i * cols_; }
    double* row(std::size_t i) { return a_.data() + i * cols_; }

    const std::vector<double>& data() const { return a_; }
    std::vector<double>& data() { return a_; }

    bool operator==(const Matrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> a_;
};

inline bool all_finite(const Matrix& m) {
    for (double v : m.data())
        if (!std::isfinite(v)) return false;
    return true;
}

inline bool is_symmetric(const Matrix& m) {
    if (m.rows() != m.cols()) return false;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (m(i, j) != m(j, i)) return false;
    return true;
}

}  // namespace qdopt
