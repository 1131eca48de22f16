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


#ifndef NCSD_PEP_HPP
#define NCSD_PEP_HPP

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ncsd/detector.hpp"
#include "ncsd/model.hpp"

namespace ncsd
{

enum class PepMethod
{
    MonteCarlo,
    QuadformCf,
};

/// "monte-carlo" / "quadform-cf".
std::string to_string(PepMethod m);

/// Pairwise error probability P{L_ab(y) <= 0 | S = S_a} with its uncertainty.
struct PepEstimate
{
    double value = 0.0;
    /// Half-width of the 95% interval (tol for the quadrature method).
    double ci95 = 0.0;
    /// Interval endpoints. Wilson interval for Monte Carlo (not symmetric
    /// around value); value -/+ tol clamped to [0, 1] for quadrature.
    double ci_low = 0.0;
    double ci_high = 0.0;
    PepMethod method = PepMethod::MonteCarlo;
    std::uint64_t trials = 0;
    /// Quadrature result below tol: only "PEP <= tol" is meaningful.
    bool is_upper_bound = false;
};

struct ErrorBounds
{
    double lower = 0.0;
    double upper = 0.0;
};

struct WilsonInterval
{
    double low = 0.0;
    double high = 0.0;
};

/// 95% Wilson score interval for k successes out of n.
WilsonInterval wilson_interval(std::uint64_t k, std::uint64_t n, double z = 1.959963984540054);

/// True when the two covariances agree to rounding error:
/// ||Sigma_a - Sigma_b||_F <= 64 n eps max(||Sigma_a||_F, ||Sigma_b||_F).
/// Such pairs have an identically-zero LLR in exact arithmetic.
bool numerically_identical(const ConditionalCovariance &covA, const ConditionalCovariance &covB);

/// Random stream tags used by the estimators below.
inline constexpr std::uint32_t kPepTag = 0x50455000u;
inline constexpr std::uint32_t kSymbolErrorTag = 0x53455200u;

/// Fraction of y ~ CN(0, Sigma_a) with llr(y, a, b) <= 0. Trial t uses the
/// stream (seed, kPepTag, t), so the result is independent of thread count.
PepEstimate pep_monte_carlo(const ConditionalCovariance &covA, const ConditionalCovariance &covB,
                            std::uint64_t trials, std::uint64_t seed);

/// Raised when the characteristic-function quadrature cannot reach the
/// requested accuracy within its term budget.
class QuadratureError : public std::runtime_error
{
public:
    QuadratureError(const std::string &what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}
    double achieved_error() const noexcept { return achieved_; }

private:
    double achieved_;
};

/// Indefinite quadratic form Q = sum_k weights[k] * e_k with e_k i.i.d. Exp(1),
/// and the threshold such that PEP = P(Q <= threshold).
struct QuadformProblem
{
    std::vector<double> weights;
    double threshold = 0.0;
};

/// With y = L_a w: L_ab = w^H (L_a^H Sigma_b^-1 L_a - I) w - ln(|Sigma_a|/|Sigma_b|),
/// so weights are sigma_k(L_b^-1 L_a)^2 - 1 and threshold = ln|Sigma_a| - ln|Sigma_b|.
QuadformProblem quadform_problem(const ConditionalCovariance &covA, const ConditionalCovariance &covB);

struct QuadformDiagnostics
{
    double step = 0.0;           ///< integration step in the frequency domain
    std::uint64_t terms = 0;     ///< number of terms summed
    double aliasing_bound = 0.0; ///< bound on the discretization error
    double truncation_bound = 0.0;
};

/// P(sum_k weights[k] e_k <= threshold) by midpoint-rule inversion of the
/// characteristic function (Gil-Pelaez / Davies). The step is set from
/// Chernoff bounds on both tails; the number of terms doubles until the
/// truncation bound is below tol/2. Absolute error <= tol.
double quadform_cdf(std::span<const double> weights, double threshold, double tol,
                    QuadformDiagnostics *diag = nullptr);

/// PEP via quadform_cdf; ci95 = tol. Dimensions up to 512, tol in (0, 1e-3].
PepEstimate pep_quadform(const ConditionalCovariance &covA, const ConditionalCovariance &covB, double tol = 1e-6);

/// max PEP / M <= Pe <= (M - 1) max PEP, upper clamped to 1.
ErrorBounds error_prob_bounds(double max_pep, int M);

struct SymbolErrorResult
{
    std::vector<std::uint64_t> errors;  ///< per codeword
    std::vector<std::uint64_t> trials;  ///< per codeword
    std::vector<double> rates;          ///< per codeword
    double average = 0.0;
    double ci95 = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::uint64_t total_trials = 0;
};

/// ML detection error rate. Trial t transmits codeword t mod M and uses the
/// stream (seed, kSymbolErrorTag, t); floor(trials / M) trials per codeword.
SymbolErrorResult symbol_error_monte_carlo(const DetectorBank &bank, std::uint64_t trials, std::uint64_t seed);

SymbolErrorResult symbol_error_monte_carlo(const Alphabet &alphabet, const ChannelModel &ch, const NoiseModel &nz,
                                           const PowerConfig &pw, const SystemDims &dims, std::uint64_t trials,
                                           std::uint64_t seed);

} // namespace ncsd

#endif
