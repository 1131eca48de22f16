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


#include <catch_amalgamated.hpp>

#include <cmath>

#include "ncsd/pep.hpp"
#include "test_support.hpp"

using namespace ncsd;

namespace
{

ConditionalCovariance scalar_cov(double v)
{
    CMatrix m(1, 1);
    m(0, 0) = v;
    return ConditionalCovariance::from_matrix(m);
}

// P(sum mu_k e_k <= c) for distinct nonzero mu_k by partial fractions of
// prod 1 / (1 - i mu_k t) = sum A_k / (1 - i mu_k t).
double cdf_partial_fractions(const std::vector<double> &mu, double c)
{
    double pos = 0.0, neg = 0.0;
    for (std::size_t k = 0; k < mu.size(); ++k)
    {
        double A = 1.0;
        for (std::size_t j = 0; j < mu.size(); ++j)
            if (j != k)
                A *= mu[k] / (mu[k] - mu[j]);
        if (mu[k] > 0 && c >= 0)
            pos += A * std::exp(-c / mu[k]);
        if (mu[k] < 0 && c < 0)
            neg += A * std::exp(-c / mu[k]);
    }
    return c >= 0 ? 1.0 - pos : neg;
}

} // namespace

TEST_CASE("identical pair has PEP 1 under both methods", "[pep]")
{
    test::Gen g(61);
    const auto a = ConditionalCovariance::from_matrix(g.pd(4));
    const auto b = ConditionalCovariance::from_matrix(a.sigma());
    const PepEstimate mc = pep_monte_carlo(a, b, 1000, 1);
    REQUIRE(mc.value == 1.0);
    REQUIRE(pep_monte_carlo(b, a, 1000, 1).value == 1.0);
    const PepEstimate q = pep_quadform(a, b);
    REQUIRE(q.value == 1.0);
    REQUIRE(q.method == PepMethod::QuadformCf);
}

TEST_CASE("scalar (2, 1) pair has PEP 1/2", "[pep]")
{
    const auto a = scalar_cov(2.0), b = scalar_cov(1.0);
    const PepEstimate mc = pep_monte_carlo(a, b, 100000, 3);
    REQUIRE(mc.ci_low <= 0.5);
    REQUIRE(mc.ci_high >= 0.5);
    REQUIRE(mc.trials == 100000);
    const PepEstimate q = pep_quadform(a, b, 1e-8);
    REQUIRE(std::abs(q.value - 0.5) <= 1e-8);
    REQUIRE(q.ci95 == 1e-8);
}

TEST_CASE("quadform_cdf matches the partial-fraction CDF", "[pep][property]")
{
    test::Gen g(62);
    for (int t = 0; t < 200; ++t)
    {
        const int n = g.integer(1, 6);
        std::vector<double> mu;
        while (static_cast<int>(mu.size()) < n)
        {
            const double m = (g.uniform() < 0.5 ? -1.0 : 1.0) * std::exp(g.uniform(-2.0, 2.0));
            bool far = true;
            for (double x : mu)
                far = far && std::abs(x - m) > 0.05 * std::abs(m);
            if (far)
                mu.push_back(m);
        }
        const double c = g.uniform(-3.0, 3.0);
        const double ref = cdf_partial_fractions(mu, c);
        QuadformDiagnostics d;
        const double got = quadform_cdf(mu, c, 1e-8, &d);
        INFO("n=" << n << " c=" << c << " terms=" << d.terms);
        REQUIRE(std::abs(got - ref) <= 1e-8);
    }
}

TEST_CASE("quadform_cdf edge cases", "[pep]")
{
    const std::vector<double> none;
    REQUIRE(quadform_cdf(none, 0.0, 1e-6) == 1.0);
    REQUIRE(quadform_cdf(none, -1.0, 1e-6) == 0.0);
    const std::vector<double> pos{1.0, 2.0};
    REQUIRE(quadform_cdf(pos, -0.5, 1e-6) <= 1e-6);
    REQUIRE_THROWS_AS(quadform_cdf(pos, 0.0, 0.0), std::invalid_argument);
}

TEST_CASE("quadform_problem reproduces the LLR", "[pep][property]")
{
    test::Gen g(63);
    for (int t = 0; t < 20; ++t)
    {
        const int n = g.integer(1, 6);
        const auto a = ConditionalCovariance::from_matrix(g.pd(n));
        const auto b = ConditionalCovariance::from_matrix(g.pd(n));
        const QuadformProblem p = quadform_problem(a, b);
        REQUIRE(static_cast<int>(p.weights.size()) == n);
        // E_a[L_ab] = sum weights - threshold = KL(a || b)
        double s = 0.0;
        for (double w : p.weights)
            s += w;
        const double kl = test::kl_reference(a.sigma(), b.sigma());
        REQUIRE(std::abs(s - p.threshold - kl) <= 1e-9 * std::max(1.0, kl));
    }
}

TEST_CASE("distinct-eigenvalue 3x3 case against 1e7-sample Monte Carlo", "[pep]")
{
    RVector ea(3), eb(3);
    ea << 3.0, 1.0, 0.5;
    eb << 1.0, 2.0, 0.7;
    test::Gen g(64);
    const CMatrix U = g.unitary(3);
    const auto a = ConditionalCovariance::from_matrix(U * ea.cast<cplx>().asDiagonal() * U.adjoint());
    const auto b = ConditionalCovariance::from_matrix(eb.cast<cplx>().asDiagonal());
    const PepEstimate q = pep_quadform(a, b, 1e-6);
    const PepEstimate mc = pep_monte_carlo(a, b, 10000000, 5);
    INFO("quadform " << q.value << " mc " << mc.value << " [" << mc.ci_low << ", " << mc.ci_high << "]");
    REQUIRE(q.value + 1e-6 >= mc.ci_low);
    REQUIRE(q.value - 1e-6 <= mc.ci_high);
}

TEST_CASE("Monte Carlo and quadrature agree on random pairs", "[pep][property]")
{
    test::Gen g(65);
    int agree = 0;
    for (int t = 0; t < 100; ++t)
    {
        const int n = g.integer(1, 6);
        const auto a = ConditionalCovariance::from_matrix(g.pd(n, 0.3, 3.0));
        const auto b = ConditionalCovariance::from_matrix(g.pd(n, 0.3, 3.0));
        const PepEstimate q = pep_quadform(a, b, 1e-6);
        const PepEstimate mc = pep_monte_carlo(a, b, 20000, 100 + t);
        const double se = std::sqrt(std::max(mc.value * (1 - mc.value), 1e-12) / mc.trials);
        if (std::abs(mc.value - q.value) <= 1.96 * se + 1e-6)
            ++agree;
    }
    REQUIRE(agree >= 95);
}

TEST_CASE("Monte Carlo is reproducible for a fixed seed", "[pep]")
{
    test::Gen g(66);
    const auto a = ConditionalCovariance::from_matrix(g.pd(3));
    const auto b = ConditionalCovariance::from_matrix(g.pd(3));
    REQUIRE(pep_monte_carlo(a, b, 5000, 9).value == pep_monte_carlo(a, b, 5000, 9).value);
}

TEST_CASE("wilson_interval", "[pep]")
{
    const WilsonInterval w0 = wilson_interval(0, 100);
    REQUIRE(w0.low == 0.0);
    REQUIRE(w0.high > 0.0);
    const WilsonInterval w = wilson_interval(50, 100);
    REQUIRE(std::abs((w.low + w.high) / 2 - 0.5) < 1e-12);
    // closed form for k = n/2: half-width z sqrt(n/4 + z^2/4) / (n + z^2)
    const double z = 1.959963984540054;
    REQUIRE(std::abs((w.high - w.low) / 2 - z * std::sqrt(25.0 + z * z / 4) / (100 + z * z)) < 1e-12);
}

TEST_CASE("error_prob_bounds examples", "[pep]")
{
    auto b = error_prob_bounds(0.0, 2);
    REQUIRE(b.lower == 0.0);
    REQUIRE(b.upper == 0.0);
    b = error_prob_bounds(0.5, 2);
    REQUIRE(b.lower == 0.25);
    REQUIRE(b.upper == 0.5);
    b = error_prob_bounds(0.9, 4);
    REQUIRE(std::abs(b.lower - 0.225) < 1e-15);
    REQUIRE(b.upper == 1.0);
}

TEST_CASE("symbol_error_monte_carlo examples", "[pep]")
{
    const DetectorBank one({scalar_cov(2.0)});
    const SymbolErrorResult r1 = symbol_error_monte_carlo(one, 1000, 1);
    REQUIRE(r1.average == 0.0);

    // energy pair {0, sqrt 2} at 30 dB, SIMO Nr = 2
    const SystemDims dims{1, 1, 2, 2};
    CMatrix s0 = CMatrix::Zero(1, 1), s1 = CMatrix::Constant(1, 1, std::sqrt(2.0));
    const Alphabet alph({Codeword(s0), Codeword(s1)});
    const auto ch = ChannelModel::isotropic(1, 2);
    const auto nz = NoiseModel::white(1, 2, 1.0);
    const auto pw = PowerConfig::from_gamma(1000.0);
    const auto covs = conditional_covariances(alph, ch, nz, pw, 2);
    const PepEstimate p01 = pep_monte_carlo(covs[0], covs[1], 200000, 2);
    const PepEstimate p10 = pep_monte_carlo(covs[1], covs[0], 200000, 3);
    const SymbolErrorResult r = symbol_error_monte_carlo(alph, ch, nz, pw, dims, 200000, 4);
    const double maxLow = std::max(p01.ci_low, p10.ci_low), maxHigh = std::max(p01.ci_high, p10.ci_high);
    REQUIRE(r.ci_high >= maxLow / 2);
    REQUIRE(r.ci_low <= maxHigh);
    REQUIRE(r.total_trials == 200000);

    // duplicated codeword: codeword 1 always decodes as 0
    const Alphabet dup({Codeword(s1), Codeword(s1)});
    const SymbolErrorResult rd = symbol_error_monte_carlo(dup, ch, nz, pw, dims, 10000, 5);
    REQUIRE(rd.rates[0] == 0.0);
    REQUIRE(rd.rates[1] == 1.0);
    REQUIRE(rd.average >= 1.0 / 2);
}
