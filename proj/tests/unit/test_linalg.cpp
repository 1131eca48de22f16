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

#include "ncsd/linalg.hpp"
#include "test_support.hpp"

using namespace ncsd;
using Catch::Matchers::WithinAbs;

namespace
{

// I_n (x) A by the four-index definition (I (x) A)[(i,k),(j,l)] = delta_ij A[k,l]
CMatrix kron_loop(int n, const CMatrix &A)
{
    const Eigen::Index r = A.rows(), c = A.cols();
    CMatrix out = CMatrix::Zero(n * r, n * c);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (Eigen::Index k = 0; k < r; ++k)
                for (Eigen::Index l = 0; l < c; ++l)
                    out(i * r + k, j * c + l) = (i == j ? 1.0 : 0.0) * A(k, l);
    return out;
}

} // namespace

TEST_CASE("kron_identity matches the four-index definition", "[linalg]")
{
    test::Gen g(11);
    for (int t = 0; t < 20; ++t)
    {
        const int n = g.integer(1, 4);
        const CMatrix A = g.gaussian(g.integer(1, 4), g.integer(1, 4));
        REQUIRE((kron_identity(n, A) - kron_loop(n, A)).norm() == 0.0);
    }
    REQUIRE_THROWS_AS(kron_identity(0, CMatrix::Identity(2, 2)), DimensionError);
}

TEST_CASE("hermitian helpers", "[linalg]")
{
    CMatrix A(2, 2);
    A << cplx(1, 0), cplx(2, 1), cplx(2, -1), cplx(3, 0);
    REQUIRE(hermitian_defect(A) == 0.0);
    REQUIRE_NOTHROW(require_hermitian(A, 1e-12, "A"));
    A(0, 1) += 1e-3;
    REQUIRE(hermitian_defect(A) > 1e-4);
    REQUIRE_THROWS_AS(require_hermitian(A, 1e-12, "A"), std::invalid_argument);
    REQUIRE_THROWS_AS(hermitian_part(CMatrix(2, 3)), DimensionError);
}

TEST_CASE("hermitian_eigen reconstructs and sorts ascending", "[linalg]")
{
    test::Gen g(12);
    const CMatrix A = g.pd(6);
    const HermitianEigen e = hermitian_eigen(A);
    for (Eigen::Index i = 1; i < e.values.size(); ++i)
        REQUIRE(e.values(i) >= e.values(i - 1));
    const CMatrix R = e.vectors * e.values.cast<cplx>().asDiagonal() * e.vectors.adjoint();
    REQUIRE((R - A).norm() < 1e-12 * A.norm());
}

TEST_CASE("hermitian_power: square root and inverse square root", "[linalg]")
{
    test::Gen g(13);
    for (int t = 0; t < 10; ++t)
    {
        const CMatrix A = g.pd(g.integer(1, 8));
        const CMatrix s = hermitian_power(A, 0.5);
        const CMatrix is = hermitian_power(A, -0.5);
        REQUIRE((s * s - A).norm() < 1e-11 * A.norm());
        const CMatrix I = CMatrix::Identity(A.rows(), A.cols());
        REQUIRE((is * A * is - I).norm() < 1e-10);
    }
}

TEST_CASE("orthonormalize gives orthonormal columns spanning the input", "[linalg]")
{
    test::Gen g(14);
    const CMatrix A = g.gaussian(5, 3);
    const CMatrix Q = orthonormalize(A);
    REQUIRE(Q.rows() == 5);
    REQUIRE(Q.cols() == 3);
    REQUIRE((Q.adjoint() * Q - CMatrix::Identity(3, 3)).norm() < 1e-14);
    // A = Q (Q^H A)
    REQUIRE((Q * (Q.adjoint() * A) - A).norm() < 1e-13 * A.norm());
}
