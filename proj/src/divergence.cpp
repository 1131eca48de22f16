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


#include "ncsd/divergence.hpp"

#include <cmath>
#include <sstream>

namespace ncsd
{

namespace
{

constexpr double kInvSqrtFloor = 1e-14;
constexpr double kNegativeGuard = 1e-9;

void require_same_dim(const ConditionalCovariance &a, const ConditionalCovariance &b, const char *what)
{
    if (a.dim() != b.dim())
        throw DimensionError(std::string(what) + ": covariance dimensions differ");
}

double clamp_divergence(double J, const char *what)
{
    if (J >= 0.0)
        return J;
    if (J >= -kNegativeGuard)
        return 0.0;
    std::ostringstream msg;
    msg << what << ": divergence evaluated to " << J << " (inputs not Hermitian PD?)";
    throw std::runtime_error(msg.str());
}

} // namespace

double jeffreys_trace(const ConditionalCovariance &covA, const ConditionalCovariance &covB)
{
    require_same_dim(covA, covB, "jeffreys_trace");
    const CMatrix D = covA.sigma() - covB.sigma();
    // (Sigma_b^-1 - Sigma_a^-1) D = Sigma_b^-1 D - Sigma_a^-1 D
    const cplx tr = (covB.solve(D) - covA.solve(D)).trace();
    return clamp_divergence(tr.real(), "jeffreys_trace");
}

double jeffreys_norm_form(const ConditionalCovariance &covA, const ConditionalCovariance &covB)
{
    require_same_dim(covA, covB, "jeffreys_norm_form");
    const CMatrix a_isqrt = hermitian_power(covA.sigma(), -0.5, kInvSqrtFloor);
    const CMatrix b_isqrt = hermitian_power(covB.sigma(), -0.5, kInvSqrtFloor);
    const CMatrix W = a_isqrt * (covA.sigma() - covB.sigma()) * b_isqrt;
    return clamp_divergence(W.squaredNorm(), "jeffreys_norm_form");
}

NormalizedCovariance normalized_covariance(const ConditionalCovariance &covA, const ConditionalCovariance &covB)
{
    require_same_dim(covA, covB, "normalized_covariance");
    const CMatrix b_isqrt = hermitian_power(covB.sigma(), -0.5, kInvSqrtFloor);
    NormalizedCovariance nc;
    nc.c_ring = hermitian_part(b_isqrt * covA.sigma() * b_isqrt);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(nc.c_ring, Eigen::EigenvaluesOnly);
    nc.sigma_min = es.eigenvalues().minCoeff();
    return nc;
}

double weighted_norm_sq(const CMatrix &X, const CMatrix &A)
{
    if (A.rows() != A.cols() || A.rows() != X.rows())
        throw DimensionError("weighted_norm_sq: shape mismatch");
    Eigen::LLT<CMatrix> llt(hermitian_part(A));
    if (llt.info() != Eigen::Success)
        throw FactorizationError("weighted_norm_sq: weight matrix is not positive definite", 0.0);
    // tr{X^H A^-1 X} = ||L^-1 X||_F^2
    return CMatrix(llt.matrixL().solve(X)).squaredNorm();
}

double jeffreys_normalized_form(const ConditionalCovariance &covA, const ConditionalCovariance &covB)
{
    const NormalizedCovariance nc = normalized_covariance(covA, covB);
    const CMatrix E = nc.c_ring - CMatrix::Identity(nc.c_ring.rows(), nc.c_ring.cols());
    return clamp_divergence(weighted_norm_sq(E, nc.c_ring), "jeffreys_normalized_form");
}

EquivalentConditionStats equivalent_condition_stats(const ConditionalCovariance &covA,
                                                    const ConditionalCovariance &covB)
{
    const NormalizedCovariance nc = normalized_covariance(covA, covB);
    const CMatrix E = nc.c_ring - CMatrix::Identity(nc.c_ring.rows(), nc.c_ring.cols());
    return {E.squaredNorm(), nc.sigma_min};
}

GammaSpectrum gamma_spectrum(const ChannelModel &ch, const NoiseModel &nz)
{
    if (ch.dim() != nz.dim())
        throw DimensionError("gamma_spectrum: channel and noise covariances must have equal size (K = Nt = 1)");
    const CMatrix z_isqrt = hermitian_power(nz.matrix(), -0.5, kInvSqrtFloor);
    GammaSpectrum g;
    g.gamma = hermitian_part(z_isqrt * ch.matrix() * z_isqrt);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(g.gamma, Eigen::EigenvaluesOnly);
    g.sigma_max = es.eigenvalues().maxCoeff();
    g.trace_sq = es.eigenvalues().squaredNorm();
    return g;
}

SimoPair SimoPair::from_transmitted(cplx xa, cplx xb)
{
    return {xa, xb, std::norm(xa) - std::norm(xb)};
}

SimoPair SimoPair::from_codewords(const Codeword &sa, const Codeword &sb, const PowerConfig &pw)
{
    if (sa.K() != 1 || sa.Nt() != 1 || sb.K() != 1 || sb.Nt() != 1)
        throw DimensionError("SimoPair: codewords must be 1 x 1 (K = Nt = 1)");
    const double amp = std::sqrt(pw.Px());
    return from_transmitted(amp * sa.matrix()(0, 0), amp * sb.matrix()(0, 0));
}

double simo_jeffreys(const SimoPair &pair, const ChannelModel &ch, const NoiseModel &nz)
{
    if (ch.dim() != nz.dim())
        throw DimensionError("simo_jeffreys: requires K = Nt = 1 (Ch and Cz both Nr x Nr)");
    const CMatrix &Ch = ch.matrix();
    const auto sigma_a = ConditionalCovariance::from_matrix(std::norm(pair.xa) * Ch + nz.matrix());
    const auto sigma_b = ConditionalCovariance::from_matrix(std::norm(pair.xb) * Ch + nz.matrix());
    // tr{Ch Sigma_b^-1 Ch Sigma_a^-1}
    const cplx tr = (sigma_b.solve(Ch) * sigma_a.solve(Ch)).trace();
    return clamp_divergence(pair.delta * pair.delta * tr.real(), "simo_jeffreys");
}

SimoBounds simo_bounds(const SimoPair &pair, const GammaSpectrum &gamma)
{
    const double upper = pair.delta * pair.delta * gamma.trace_sq;
    const double C = gamma.sigma_max;
    const double denom = (std::norm(pair.xa) * C + 1.0) * (std::norm(pair.xb) * C + 1.0);
    return {upper / denom, upper};
}

} // namespace ncsd
