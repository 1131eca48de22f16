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

#include "ncsd/divergence.hpp"
#include "test_support.hpp"

using namespace ncsd;

namespace
{

CMatrix scalar(double v)
{
    return CMatrix::Constant(1, 1, v);
}

ConditionalCovariance cov(const CMatrix &S)
{
    return ConditionalCovariance::from_matrix(S);
}

// Sigma = |x|^2 Ch + Cz for a SIMO symbol.
ConditionalCovariance simo_sigma(cplx x, const CMatrix &Ch, const CMatrix &Cz)
{
    return cov(std::norm(x) * Ch + Cz);
}

} // namespace

TEST_CASE("Jeffreys examples", "[divergence]")
{
    const auto a = cov(scalar(2.0)), b = cov(scalar(1.0));
    REQUIRE(std::abs(jeffreys_trace(a, b) - 0.5) < 1e-15);
    REQUIRE(std::abs(jeffreys_norm_form(a, b) - 0.5) < 1e-15);
    REQUIRE(std::abs(jeffreys_normalized_form(a, b) - 0.5) < 1e-15);

    test::Gen g(71);
    const auto s = cov(g.pd(5));
    REQUIRE(jeffreys_trace(s, s) == 0.0);
    REQUIRE(jeffreys_norm_form(s, s) < 1e-12);
    REQUIRE(jeffreys_normalized_form(s, s) < 1e-12);
}

TEST_CASE("three forms agree with each other and with KL(a||b) + KL(b||a)", "[divergence][property]")
{
    test::Gen g(72);
    for (int t = 0; t < 200; ++t)
    {
        const int n = g.integer(1, 16);
        const CMatrix A = g.pd(n), B = g.pd(n);
        const auto a = cov(A), b = cov(B);
        const double jt = jeffreys_trace(a, b);
        const double jn = jeffreys_norm_form(a, b);
        const double jc = jeffreys_normalized_form(a, b);
        const double ref = test::kl_reference(A, B) + test::kl_reference(B, A);
        INFO("n=" << n << " trace=" << jt << " norm=" << jn << " normalized=" << jc << " ref=" << ref);
        REQUIRE(test::rel_diff(jt, jn) < 1e-9);
        REQUIRE(test::rel_diff(jt, jc) < 1e-9);
        REQUIRE(test::rel_diff(jt, ref) < 1e-8);
        REQUIRE(test::rel_diff(jt, jeffreys_trace(b, a)) < 1e-9);
        REQUIRE(test::rel_diff(jn, jeffreys_norm_form(b, a)) < 1e-9);
    }
}

TEST_CASE("J vanishes exactly when the covariances coincide", "[divergence][property]")
{
    test::Gen g(73);
    for (int t = 0; t < 200; ++t)
    {
        const int n = g.integer(1, 8);
        const CMatrix A = g.pd(n);
        const bool close = t % 2 == 0;
        // far perturbations stay below lambda_min(A)/2 so B remains PD
        const double lmin = hermitian_eigen(A).values(0);
        const double size = close ? std::pow(10.0, g.uniform(-12.0, -8.0)) * A.norm()
                                  : std::pow(10.0, g.uniform(-2.0, std::log10(0.5))) * lmin;
        CMatrix E = g.gaussian(n, n);
        E = (E + E.adjoint()).eval();
        E *= size / E.norm();
        const CMatrix B = A + E;
        const double J = jeffreys_trace(cov(A), cov(B));
        REQUIRE(J >= 0.0);
        const bool small = J < 1e-9;
        const bool near = (A - B).norm() < 1e-6 * A.norm();
        REQUIRE(small == near);
        REQUIRE(near == close);
    }
}

TEST_CASE("normalized covariance examples", "[divergence]")
{
    test::Gen g(74);
    const auto s = cov(g.pd(4));
    const NormalizedCovariance same = normalized_covariance(s, s);
    REQUIRE((same.c_ring - CMatrix::Identity(4, 4)).norm() < 1e-12);
    REQUIRE(std::abs(same.sigma_min - 1.0) < 1e-12);

    const NormalizedCovariance sc = normalized_covariance(cov(scalar(2.0)), cov(scalar(1.0)));
    REQUIRE(std::abs(sc.c_ring(0, 0) - 2.0) < 1e-15);
    REQUIRE(std::abs(sc.sigma_min - 2.0) < 1e-15);
}

TEST_CASE("weighted_norm_sq matches an explicit inverse", "[divergence]")
{
    test::Gen g(75);
    for (int t = 0; t < 20; ++t)
    {
        const int n = g.integer(1, 6);
        const CMatrix A = g.pd(n);
        const CMatrix X = g.gaussian(n, g.integer(1, 4));
        const double ref = (X.adjoint() * A.inverse() * X).trace().real();
        REQUIRE(test::rel_diff(weighted_norm_sq(X, A), ref) < 1e-11);
    }
}

TEST_CASE("equivalent_condition_stats examples and the two-sided weighted norm", "[divergence]")
{
    test::Gen g(76);
    const auto s = cov(g.pd(3));
    const EquivalentConditionStats same = equivalent_condition_stats(s, s);
    REQUIRE(same.frobenius_discrepancy < 1e-20);
    REQUIRE(std::abs(same.sigma_min - 1.0) < 1e-12);

    const EquivalentConditionStats sc = equivalent_condition_stats(cov(scalar(2.0)), cov(scalar(1.0)));
    REQUIRE(std::abs(sc.frobenius_discrepancy - 1.0) < 1e-15);
    REQUIRE(std::abs(sc.sigma_min - 2.0) < 1e-15);

    for (int t = 0; t < 50; ++t)
    {
        const int n = g.integer(1, 8);
        const CMatrix A = g.pd(n), B = g.pd(n);
        const CMatrix Bi = B.inverse();
        const CMatrix D = A - B;
        // ||C - I||_F^2 = tr{B^-1 D B^-1 D}
        const double ref = (Bi * D * Bi * D).trace().real();
        REQUIRE(test::rel_diff(equivalent_condition_stats(cov(A), cov(B)).frobenius_discrepancy, ref) < 1e-9);
        const double smin = hermitian_eigen(hermitian_part(hermitian_power(B, -0.5) * A * hermitian_power(B, -0.5)))
                                .values.minCoeff();
        REQUIRE(test::rel_diff(equivalent_condition_stats(cov(A), cov(B)).sigma_min, smin) < 1e-9);
    }
}

TEST_CASE("normalized form uses the one-sided weighted norm", "[divergence]")
{
    test::Gen g(77);
    for (int t = 0; t < 20; ++t)
    {
        const int n = g.integer(1, 6);
        const auto a = cov(g.pd(n)), b = cov(g.pd(n));
        const NormalizedCovariance nc = normalized_covariance(a, b);
        const CMatrix I = CMatrix::Identity(n, n);
        REQUIRE(test::rel_diff(weighted_norm_sq(nc.c_ring - I, nc.c_ring), jeffreys_trace(a, b)) < 1e-9);
    }
}

TEST_CASE("SIMO examples", "[divergence]")
{
    const ChannelModel ch(scalar(1.0));
    const NoiseModel nz(scalar(1.0), 1.0);
    const SimoPair p = SimoPair::from_transmitted(std::sqrt(2.0), 0.0);
    REQUIRE(std::abs(p.delta - 2.0) < 1e-15);
    REQUIRE(std::abs(simo_jeffreys(p, ch, nz) - 4.0 / 3.0) < 1e-14);
    const SimoBounds bd = simo_bounds(p, gamma_spectrum(ch, nz));
    REQUIRE(std::abs(bd.lower - 4.0 / 3.0) < 1e-14);
    REQUIRE(std::abs(bd.upper - 4.0) < 1e-14);

    const SimoPair phase = SimoPair::from_transmitted(1.0, std::polar(1.0, 0.7));
    REQUIRE(std::abs(phase.delta) < 1e-15);
    REQUIRE(simo_jeffreys(phase, ChannelModel::isotropic(1, 4), NoiseModel::white(1, 4, 1.0)) == 0.0);
    const SimoBounds zero = simo_bounds(SimoPair::from_transmitted(1.0, 1.0), gamma_spectrum(ch, nz));
    REQUIRE(zero.lower == 0.0);
    REQUIRE(zero.upper == 0.0);

    const SimoPair fc = SimoPair::from_codewords(Codeword(scalar(1.0)), Codeword(scalar(0.5)), PowerConfig(4.0, 1.0));
    REQUIRE(std::abs(fc.xa - cplx(2.0)) < 1e-15);
    REQUIRE(std::abs(fc.delta - 3.0) < 1e-14);
}

TEST_CASE("SIMO closed form equals the general trace form and sits inside the bracket", "[divergence][property]")
{
    test::Gen g(78);
    for (int t = 0; t < 200; ++t)
    {
        const int Nr = g.integer(1, 16);
        const CMatrix Ch = g.pd(Nr, 0.01, 1.0);
        const CMatrix Cz = g.pd(Nr, 0.1, 2.0);
        const cplx xa = g.cnormal() * g.uniform(0.0, 4.0);
        const cplx xb = g.cnormal() * g.uniform(0.0, 4.0);
        const SimoPair p = SimoPair::from_transmitted(xa, xb);
        const ChannelModel ch(Ch);
        const NoiseModel nz(Cz, 1.0);
        const double J = simo_jeffreys(p, ch, nz);
        const double ref = jeffreys_trace(simo_sigma(xa, Ch, Cz), simo_sigma(xb, Ch, Cz));
        REQUIRE(test::rel_diff(J, ref) < 1e-9);
        const GammaSpectrum gs = gamma_spectrum(ch, nz);
        const SimoBounds bd = simo_bounds(p, gs);
        REQUIRE(J - bd.lower >= -1e-12 * std::max(1.0, J));
        REQUIRE(bd.upper - J >= -1e-12 * std::max(1.0, J));
        const CMatrix Gref = hermitian_power(Cz, -0.5) * Ch * hermitian_power(Cz, -0.5);
        REQUIRE((gs.gamma - Gref).norm() < 1e-10 * Gref.norm());
        REQUIRE(test::rel_diff(gs.trace_sq, (Gref * Gref).trace().real()) < 1e-10);
    }
}

TEST_CASE("SIMO bracket tightness", "[divergence]")
{
    test::Gen g(79);
    // Gamma proportional to I (Ch proportional to Cz): lower bound is exact
    for (int t = 0; t < 20; ++t)
    {
        const int Nr = g.integer(1, 8);
        const CMatrix Cz = g.pd(Nr);
        const CMatrix Ch = g.uniform(0.1, 2.0) * Cz;
        const SimoPair p = SimoPair::from_transmitted(g.cnormal() * 2.0, g.cnormal());
        const ChannelModel ch(Ch);
        const NoiseModel nz(Cz, 1.0);
        const double J = simo_jeffreys(p, ch, nz);
        REQUIRE(test::rel_diff(simo_bounds(p, gamma_spectrum(ch, nz)).lower, J) < 1e-10);
    }
    // |x|^2 C -> 0: J / upper -> 1
    const ChannelModel ch(g.pd(4, 0.1, 1.0));
    const NoiseModel nz(g.pd(4), 1.0);
    double prev = 0.0;
    for (double s : {1.0, 1e-1, 1e-2, 1e-3})
    {
        const SimoPair p = SimoPair::from_transmitted(s, 0.5 * s);
        const double ratio = simo_jeffreys(p, ch, nz) / simo_bounds(p, gamma_spectrum(ch, nz)).upper;
        REQUIRE(ratio > prev);
        prev = ratio;
    }
    REQUIRE(prev > 1.0 - 1e-4);
}

TEST_CASE("mismatched dimensions are rejected", "[divergence]")
{
    test::Gen g(80);
    REQUIRE_THROWS_AS(jeffreys_trace(cov(g.pd(2)), cov(g.pd(3))), DimensionError);
    REQUIRE_THROWS_AS(jeffreys_norm_form(cov(g.pd(2)), cov(g.pd(3))), DimensionError);
    REQUIRE_THROWS_AS(normalized_covariance(cov(g.pd(2)), cov(g.pd(3))), DimensionError);
}
