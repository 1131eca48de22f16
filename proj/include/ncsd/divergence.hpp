// SPDX-License-Identifier: Apache-2.0
//
// ncsd - numerical laboratory for noncoherent MIMO singular detection
// Copyright (C) 2026 The ncsd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


#ifndef NCSD_DIVERGENCE_HPP
#define NCSD_DIVERGENCE_HPP

#include "ncsd/model.hpp"

namespace ncsd
{

// Jeffreys divergence J = E_a[L_ab] - E_b[L_ab] between CN(0, Sigma_a) and
// CN(0, Sigma_b), in its equivalent closed forms. All functions throw
// DimensionError on mismatched sizes. A result below zero by no more than
// 1e-9 (rounding) is clamped to 0; anything more negative throws
// std::runtime_error since it means the inputs are broken.

/// tr{(Sigma_b^-1 - Sigma_a^-1)(Sigma_a - Sigma_b)}, via Cholesky solves.
double jeffreys_trace(const ConditionalCovariance &covA, const ConditionalCovariance &covB);

/// ||Sigma_a^-1/2 (Sigma_a - Sigma_b) Sigma_b^-1/2||_F^2, via Hermitian eigen square roots.
double jeffreys_norm_form(const ConditionalCovariance &covA, const ConditionalCovariance &covB);

/// C = Sigma_b^-1/2 Sigma_a Sigma_b^-1/2 and its smallest eigenvalue.
struct NormalizedCovariance
{
    CMatrix c_ring;
    double sigma_min = 0.0;
};
NormalizedCovariance normalized_covariance(const ConditionalCovariance &covA, const ConditionalCovariance &covB);

/// ||X||_A^2 = tr{X^H A^-1 X} for Hermitian PD A.
double weighted_norm_sq(const CMatrix &X, const CMatrix &A);

/// ||C - I||_C^2, the normalized-covariance form of J.
double jeffreys_normalized_form(const ConditionalCovariance &covA, const ConditionalCovariance &covB);

/// (||C - I||_F^2, sigma_min(C)): J diverges iff the first diverges while
/// the second stays bounded away from zero.
struct EquivalentConditionStats
{
    double frobenius_discrepancy = 0.0;
    double sigma_min = 0.0;
};
EquivalentConditionStats equivalent_condition_stats(const ConditionalCovariance &covA,
                                                    const ConditionalCovariance &covB);

// ----- SIMO (K = Nt = 1) ---------------------------------------------------

/// Gamma = Cz^-1/2 Ch Cz^-1/2 with its largest eigenvalue C and tr{Gamma^2}.
struct GammaSpectrum
{
    CMatrix gamma;
    double sigma_max = 0.0;
    double trace_sq = 0.0;
};
GammaSpectrum gamma_spectrum(const ChannelModel &ch, const NoiseModel &nz);

/// Transmitted scalar symbols x = sqrt(Px) s of a pair, delta = |x_a|^2 - |x_b|^2.
struct SimoPair
{
    cplx xa;
    cplx xb;
    double delta = 0.0;

    static SimoPair from_transmitted(cplx xa, cplx xb);
    /// x = sqrt(Px) s for 1 x 1 codewords.
    static SimoPair from_codewords(const Codeword &sa, const Codeword &sb, const PowerConfig &pw);
};

/// J = delta^2 tr{Ch Sigma_b^-1 Ch Sigma_a^-1}, Sigma = |x|^2 Ch + Cz (Nr x Nr).
double simo_jeffreys(const SimoPair &pair, const ChannelModel &ch, const NoiseModel &nz);

struct SimoBounds
{
    double lower = 0.0;
    double upper = 0.0;
};

/// delta^2 tr{Gamma^2} / ((|xa|^2 C + 1)(|xb|^2 C + 1)) <= J <= delta^2 tr{Gamma^2}.
SimoBounds simo_bounds(const SimoPair &pair, const GammaSpectrum &gamma);

} // namespace ncsd

#endif
