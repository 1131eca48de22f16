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


#include "ncsd/pep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "ncsd/parallel.hpp"
#include "ncsd/random.hpp"

namespace ncsd
{

namespace
{

constexpr std::size_t kTrialChunk = 2048;
constexpr std::uint64_t kMaxTerms = std::uint64_t{1} << 27;

// Chernoff bound on P(Q >= x) for Q = sum w_k e_k:
//   min_{0 <= s < 1/w_max} exp(-s x) prod_k 1 / (1 - s w_k).
double chernoff_upper_tail(std::span<const double> w, double x)
{
    double w_max = 0.0, mean = 0.0;
    for (double v : w)
    {
        w_max = std::max(w_max, v);
        mean += v;
    }
    if (w_max <= 0.0)
        return x > 0.0 ? 0.0 : 1.0;
    if (x <= mean)
        return 1.0;

    auto log_bound = [&](double s) {
        double acc = -s * x;
        for (double v : w)
            acc -= std::log1p(-s * v);
        return acc;
    };
    // convex in s; golden-section search
    double lo = 0.0, hi = (1.0 - 1e-12) / w_max;
    constexpr double g = 0.6180339887498949;
    double a = hi - g * (hi - lo), b = lo + g * (hi - lo);
    double fa = log_bound(a), fb = log_bound(b);
    for (int it = 0; it < 200 && hi - lo > 1e-14 * (1.0 / w_max); ++it)
    {
        if (fa < fb)
        {
            hi = b;
            b = a;
            fb = fa;
            a = hi - g * (hi - lo);
            fa = log_bound(a);
        }
        else
        {
            lo = a;
            a = b;
            fa = fb;
            b = lo + g * (hi - lo);
            fb = log_bound(b);
        }
    }
    return std::min(1.0, std::exp(std::min({fa, fb, 0.0})));
}

double chernoff_lower_tail(std::span<const double> w, double x)
{
    std::vector<double> neg(w.begin(), w.end());
    for (double &v : neg)
        v = -v;
    return chernoff_upper_tail(neg, -x);
}

// Bound on (1/pi) int_U^inf |phi(u)| / u du using |phi(u)| <= prod_{k<=m} 1/(u |w_(k)|)
// over the m largest |w|; minimized over m.
double truncation_bound(const std::vector<double> &abs_sorted_desc, double U)
{
    double best = std::numeric_limits<double>::infinity();
    double log_prod = 0.0;
    const double logU = std::log(U);
    for (std::size_t m = 1; m <= abs_sorted_desc.size(); ++m)
    {
        log_prod += std::log(abs_sorted_desc[m - 1]);
        const double lb = -std::log(std::numbers::pi * static_cast<double>(m)) - static_cast<double>(m) * logU - log_prod;
        best = std::min(best, std::exp(lb));
    }
    return best;
}

} // namespace

std::string to_string(PepMethod m)
{
    switch (m)
    {
    case PepMethod::MonteCarlo:
        return "monte-carlo";
    case PepMethod::QuadformCf:
        return "quadform-cf";
    }
    return "unknown";
}

WilsonInterval wilson_interval(std::uint64_t k, std::uint64_t n, double z)
{
    if (n == 0)
        return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn)) / denom;
    // the endpoints at k = 0 and k = n are exactly 0 and 1
    return {k == 0 ? 0.0 : std::max(0.0, center - half), k == n ? 1.0 : std::min(1.0, center + half)};
}

bool numerically_identical(const ConditionalCovariance &covA, const ConditionalCovariance &covB)
{
    if (covA.dim() != covB.dim())
        return false;
    const double scale = std::max(covA.sigma().norm(), covB.sigma().norm());
    const double tol = 64.0 * covA.dim() * std::numeric_limits<double>::epsilon() * scale;
    return (covA.sigma() - covB.sigma()).norm() <= tol;
}

PepEstimate pep_monte_carlo(const ConditionalCovariance &covA, const ConditionalCovariance &covB,
                            std::uint64_t trials, std::uint64_t seed)
{
    if (trials < 1)
        throw std::invalid_argument("pep_monte_carlo: trials must be >= 1");
    if (covA.dim() != covB.dim())
        throw DimensionError("pep_monte_carlo: dimension mismatch");

    std::uint64_t errors = 0;
    if (numerically_identical(covA, covB))
    {
        errors = trials; // L_ab == 0 everywhere and ties count as errors
    }
    else
    {
        const std::size_t n_chunks = (trials + kTrialChunk - 1) / kTrialChunk;
        std::vector<std::uint64_t> partial(n_chunks, 0);
        parallel_chunks(trials, kTrialChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
            std::uint64_t cnt = 0;
            for (std::size_t t = begin; t < end; ++t)
            {
                const CVector y = draw_received(covA, seed, kPepTag, t);
                if (llr(y, covA, covB) <= 0.0)
                    ++cnt;
            }
            partial[c] = cnt;
        });
        for (std::uint64_t c : partial)
            errors += c;
    }

    PepEstimate est;
    est.method = PepMethod::MonteCarlo;
    est.trials = trials;
    est.value = static_cast<double>(errors) / static_cast<double>(trials);
    const WilsonInterval wi = wilson_interval(errors, trials);
    est.ci_low = wi.low;
    est.ci_high = wi.high;
    est.ci95 = 0.5 * (wi.high - wi.low);
    return est;
}

QuadformProblem quadform_problem(const ConditionalCovariance &covA, const ConditionalCovariance &covB)
{
    if (covA.dim() != covB.dim())
        throw DimensionError("quadform_problem: dimension mismatch");
    const CMatrix B = covB.cholesky().triangularView<Eigen::Lower>().solve(covA.cholesky());
    Eigen::JacobiSVD<CMatrix> svd(B);
    const RVector s = svd.singularValues();
    QuadformProblem p;
    p.weights.resize(static_cast<std::size_t>(s.size()));
    for (Eigen::Index k = 0; k < s.size(); ++k)
        p.weights[static_cast<std::size_t>(k)] = (s(k) - 1.0) * (s(k) + 1.0);
    p.threshold = covA.logdet() - covB.logdet();
    return p;
}

double quadform_cdf(std::span<const double> weights, double threshold, double tol, QuadformDiagnostics *diag)
{
    if (!(tol > 0.0))
        throw std::invalid_argument("quadform_cdf: tol must be > 0");

    std::vector<double> w;
    for (double v : weights)
        if (v != 0.0)
            w.push_back(v);
    if (w.empty())
        return threshold >= 0.0 ? 1.0 : 0.0;
    // one term: a scaled exponential. Its characteristic function decays
    // only like 1/u, far too slowly for the series below.
    if (w.size() == 1)
    {
        if (diag)
            *diag = QuadformDiagnostics{};
        const double x = threshold / w[0];
        if (w[0] > 0.0)
            return threshold <= 0.0 ? 0.0 : -std::expm1(-x);
        return threshold < 0.0 ? std::exp(-x) : 1.0;
    }

    double mean = 0.0, var = 0.0;
    for (double v : w)
    {
        mean += v;
        var += v * v;
    }
    const double sd = std::sqrt(var);

    // half-period L = 2 pi / step: both tails beyond threshold -/+ L below tol/2
    double L = std::abs(threshold - mean) + 8.0 * sd;
    double alias = 1.0;
    for (int it = 0; it < 200; ++it)
    {
        alias = chernoff_upper_tail(w, threshold + L) + chernoff_lower_tail(w, threshold - L);
        if (alias < 0.5 * tol)
            break;
        L *= 2.0;
    }
    if (!(alias < 0.5 * tol))
        throw QuadratureError("quadform_cdf: could not bound the discretization error", alias);

    const double step = 2.0 * std::numbers::pi / L;

    std::vector<double> abs_sorted;
    for (double v : w)
        abs_sorted.push_back(std::abs(v));
    std::sort(abs_sorted.begin(), abs_sorted.end(), std::greater<>());

    double sum = 0.0;
    std::uint64_t done = 0;
    std::uint64_t target = 64;
    double trunc = std::numeric_limits<double>::infinity();
    for (;;)
    {
        for (; done < target; ++done)
        {
            const double jh = static_cast<double>(done) + 0.5;
            const double u = jh * step;
            cplx phi(1.0, 0.0);
            for (double v : w)
            {
                const double uv = u * v;
                phi *= cplx(1.0, uv) / (1.0 + uv * uv);
            }
            const double arg = -u * threshold;
            phi *= cplx(std::cos(arg), std::sin(arg));
            sum += phi.imag() / jh;
        }
        trunc = truncation_bound(abs_sorted, (static_cast<double>(done) - 0.5) * step);
        if (trunc < 0.5 * tol)
            break;
        if (target >= kMaxTerms)
        {
            std::ostringstream msg;
            msg << "quadform_cdf: truncation error " << trunc + alias << " still above tol " << tol << " after "
                << done << " terms";
            throw QuadratureError(msg.str(), trunc + alias);
        }
        target *= 2;
    }

    if (diag)
        *diag = {step, done, alias, trunc};
    const double p = 0.5 - sum / std::numbers::pi;
    return std::clamp(p, 0.0, 1.0);
}

PepEstimate pep_quadform(const ConditionalCovariance &covA, const ConditionalCovariance &covB, double tol)
{
    if (!(tol > 0.0 && tol <= 1e-3))
        throw std::invalid_argument("pep_quadform: tol must lie in (0, 1e-3]");
    if (covA.dim() != covB.dim())
        throw DimensionError("pep_quadform: dimension mismatch");
    if (covA.dim() > 512)
        throw DimensionError("pep_quadform: dimension above 512");

    PepEstimate est;
    est.method = PepMethod::QuadformCf;
    est.ci95 = tol;
    if (numerically_identical(covA, covB))
    {
        est.value = 1.0;
    }
    else
    {
        const QuadformProblem prob = quadform_problem(covA, covB);
        est.value = quadform_cdf(prob.weights, prob.threshold, tol);
    }
    est.ci_low = std::max(0.0, est.value - tol);
    est.ci_high = std::min(1.0, est.value + tol);
    est.is_upper_bound = est.value < tol;
    return est;
}

ErrorBounds error_prob_bounds(double max_pep, int M)
{
    if (M < 2)
        throw std::invalid_argument("error_prob_bounds: M must be >= 2");
    if (!(max_pep >= 0.0 && max_pep <= 1.0))
        throw std::invalid_argument("error_prob_bounds: max_pep must be a probability");
    return {max_pep / M, std::min(1.0, (M - 1) * max_pep)};
}

SymbolErrorResult symbol_error_monte_carlo(const DetectorBank &bank, std::uint64_t trials, std::uint64_t seed)
{
    const auto M = static_cast<std::uint64_t>(bank.M());
    if (trials < M)
        throw std::invalid_argument("symbol_error_monte_carlo: trials must be >= M");

    SymbolErrorResult r;
    const std::uint64_t per = trials / M;
    r.total_trials = per * M;
    r.errors.assign(M, 0);
    r.trials.assign(M, per);

    if (M > 1)
    {
        const std::size_t n_chunks = (r.total_trials + kTrialChunk - 1) / kTrialChunk;
        std::vector<std::vector<std::uint64_t>> partial(n_chunks);
        parallel_chunks(r.total_trials, kTrialChunk, [&](std::size_t c, std::size_t begin, std::size_t end) {
            std::vector<std::uint64_t> cnt(M, 0);
            for (std::size_t t = begin; t < end; ++t)
            {
                const std::size_t sent = t % M;
                const CVector y = draw_received(bank[sent], seed, kSymbolErrorTag, t);
                if (ml_detect(y, bank) != static_cast<int>(sent))
                    ++cnt[sent];
            }
            partial[c] = std::move(cnt);
        });
        for (const auto &cnt : partial)
            for (std::size_t i = 0; i < M; ++i)
                r.errors[i] += cnt[i];
    }

    std::uint64_t total_errors = 0;
    r.rates.resize(M);
    for (std::size_t i = 0; i < M; ++i)
    {
        r.rates[i] = static_cast<double>(r.errors[i]) / static_cast<double>(per);
        total_errors += r.errors[i];
    }
    r.average = static_cast<double>(total_errors) / static_cast<double>(r.total_trials);
    const WilsonInterval wi = wilson_interval(total_errors, r.total_trials);
    r.ci_low = wi.low;
    r.ci_high = wi.high;
    r.ci95 = 0.5 * (wi.high - wi.low);
    return r;
}

SymbolErrorResult symbol_error_monte_carlo(const Alphabet &alphabet, const ChannelModel &ch, const NoiseModel &nz,
                                           const PowerConfig &pw, const SystemDims &dims, std::uint64_t trials,
                                           std::uint64_t seed)
{
    if (alphabet.K() != dims.K || alphabet.Nt() != dims.Nt || alphabet.M() != dims.M)
        throw DimensionError("symbol_error_monte_carlo: alphabet does not match dims");
    return symbol_error_monte_carlo(DetectorBank(conditional_covariances(alphabet, ch, nz, pw, dims.Nr)), trials,
                                    seed);
}

} // namespace ncsd
