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

#include "qdopt/errors.hpp"

namespace qdopt {

// Spike-and-exponential relaxation of a binary latent z over zeta in [0, 1]:
// a point mass at 0 for z = 0 and the density ~ exp(beta * zeta) for z = 1.
// All expressions route through expm1/log1p so round-trips stay tight at
// large beta.
struct RelaxationParams {
    double beta = 8.0;
};

inline void validate_relaxation(const RelaxationParams& prm) {
    if (!(prm.beta > 0.0) || !std::isfinite(prm.beta))
        throw InputError("relaxation: beta must be positive and finite");
}

// CDF of the relaxed conditional. z = 0 is the point mass at zero, whose CDF
// is identically 1 on the support.
inline double spike_exp_cdf(double zeta, int z, RelaxationParams prm = {}) {
    validate_relaxation(prm);
    if (z != 0 && z != 1) throw InputError("spike_exp_cdf: z must be 0 or 1");
    if (!(zeta >= 0.0 && zeta <= 1.0)) throw InputError("spike_exp_cdf: zeta outside [0,1]");
    if (z == 0) return 1.0;
    return std::expm1(prm.beta * zeta) / std::expm1(prm.beta);
}

inline double inverse_cdf_sample(double u, int z, RelaxationParams prm = {}) {
    validate_relaxation(prm);
    if (z != 0 && z != 1) throw InputError("inverse_cdf_sample: z must be 0 or 1");
    if (!(u >= 0.0 && u <= 1.0)) throw InputError("inverse_cdf_sample: u outside [0,1]");
    if (z == 0) return 0.0;
    return std::log1p(u * std::expm1(prm.beta)) / prm.beta;
}

// Inclusive threshold: exactly q = 1 - rho binarizes to 1.
inline int binarize(double q, double rho) { return q >= 1.0 - rho ? 1 : 0; }

// Reparametrized sampler: the inverse CDF evaluated at u = (q + rho - 1)/q on
// the smooth branch, 0 below the threshold. The corner q = 0 (reachable only
// with rho = 1) is defined as 0 by the lower branch.
inline double reparam_sample(double q, double rho, RelaxationParams prm = {}) {
    validate_relaxation(prm);
    if (!(q >= 0.0 && q <= 1.0) || !(rho >= 0.0 && rho <= 1.0))
        throw InputError("reparam_sample: inputs outside [0,1]");
    if (q == 0.0 || q < 1.0 - rho) return 0.0;
    const double t = (q + rho - 1.0) / q;
    return std::log1p(t * std::expm1(prm.beta)) / prm.beta;
}

// d zeta'/dq on the smooth branch q > 1 - rho:
//   zeta' = (1/beta) log(1 + t c),  t = 1 - (1-rho)/q,  c = e^beta - 1
//   d zeta'/dq = c (1-rho) / (beta q (q + c (q + rho - 1))).
inline double reparam_grad(double q, double rho, RelaxationParams prm = {}) {
    validate_relaxation(prm);
    if (!(q >= 0.0 && q <= 1.0) || !(rho >= 0.0 && rho <= 1.0))
        throw InputError("reparam_grad: inputs outside [0,1]");
    if (!(q > 1.0 - rho) || q == 0.0)
        throw InputError("reparam_grad: undefined outside the smooth branch q > 1 - rho");
    const double c = std::expm1(prm.beta);
    return c * (1.0 - rho) / (prm.beta * q * (q + c * (q + rho - 1.0)));
}

}  // namespace qdopt
