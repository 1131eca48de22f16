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


#ifndef NCSD_TEST_SUPPORT_HPP
#define NCSD_TEST_SUPPORT_HPP

// Random instance generators for property tests. These draw from
// std::mt19937_64 on purpose, so test inputs never depend on the library's
// own random streams.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "ncsd/linalg.hpp"
#include "ncsd/model.hpp"

namespace ncsd::test
{

class Gen
{
public:
    explicit Gen(std::uint64_t seed) : rng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0)
    {
        return std::uniform_real_distribution<double>(lo, hi)(rng_);
    }

    int integer(int lo, int hi)
    {
        return std::uniform_int_distribution<int>(lo, hi)(rng_);
    }

    cplx cnormal()
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        const double re = n(rng_);
        const double im = n(rng_);
        return {re, im};
    }

    CMatrix gaussian(Eigen::Index r, Eigen::Index c)
    {
        CMatrix A(r, c);
        for (Eigen::Index j = 0; j < c; ++j)
            for (Eigen::Index i = 0; i < r; ++i)
                A(i, j) = cnormal();
        return A;
    }

    /// Hermitian PD with eigenvalues log-uniform in [lo, hi] and a Haar-ish basis.
    CMatrix pd(Eigen::Index n, double lo = 0.1, double hi = 10.0)
    {
        const CMatrix Q = unitary(n);
        RVector ev(n);
        for (Eigen::Index i = 0; i < n; ++i)
            ev(i) = std::exp(uniform(std::log(lo), std::log(hi)));
        CMatrix A = Q * ev.cast<cplx>().asDiagonal() * Q.adjoint();
        return (A + A.adjoint()) / 2.0;
    }

    /// Unitary via QR of a Gaussian matrix with the phases of R's diagonal removed.
    CMatrix unitary(Eigen::Index n)
    {
        const CMatrix G = gaussian(n, n);
        Eigen::HouseholderQR<CMatrix> qr(G);
        CMatrix Q = qr.householderQ() * CMatrix::Identity(n, n);
        const CMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const cplx d = R(i, i);
            Q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : cplx(1.0);
        }
        return Q;
    }

    /// K x n matrix with orthonormal columns.
    CMatrix truncated_unitary(Eigen::Index K, Eigen::Index n)
    {
        return unitary(K).leftCols(n);
    }

    std::mt19937_64 &engine() { return rng_; }

private:
    std::mt19937_64 rng_;
};

/// Dense reference log-determinant via LU.
inline double logdet_lu(const CMatrix &A)
{
    return std::log(std::abs(Eigen::PartialPivLU<CMatrix>(A).determinant()));
}

/// KL(CN(0, A) || CN(0, B)) by explicit inversion.
inline double kl_reference(const CMatrix &A, const CMatrix &B)
{
    const CMatrix Binv = B.inverse();
    const double n = static_cast<double>(A.rows());
    return (Binv * A).trace().real() - n - logdet_lu(A) + logdet_lu(B);
}

inline double rel_diff(double a, double b)
{
    const double s = std::max(std::abs(a), std::abs(b));
    return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

} // namespace ncsd::test

#endif
