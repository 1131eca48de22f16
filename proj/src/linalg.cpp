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


#include "ncsd/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace ncsd
{

double hermitian_defect(const CMatrix &A)
{
    if (A.rows() != A.cols())
        throw DimensionError("hermitian_defect: matrix is not square");
    const double scale = A.cwiseAbs().maxCoeff();
    if (scale == 0.0)
        return 0.0;
    return (A - A.adjoint()).cwiseAbs().maxCoeff() / scale;
}

CMatrix hermitian_part(const CMatrix &A)
{
    if (A.rows() != A.cols())
        throw DimensionError("hermitian_part: matrix is not square");
    return 0.5 * (A + A.adjoint());
}

void require_hermitian(const CMatrix &A, double rel_tol, const char *what)
{
    if (A.rows() != A.cols() || A.rows() == 0)
        throw DimensionError(std::string(what) + ": matrix must be square and nonempty");
    if (!A.allFinite())
        throw std::invalid_argument(std::string(what) + ": matrix has non-finite entries");
    const double defect = hermitian_defect(A);
    if (defect > rel_tol)
        throw std::invalid_argument(std::string(what) + ": matrix is not Hermitian (relative defect " +
                                    std::to_string(defect) + ")");
}

CMatrix kron_identity(int n, const CMatrix &A)
{
    if (n < 1)
        throw DimensionError("kron_identity: identity size must be >= 1");
    const Eigen::Index r = A.rows(), c = A.cols();
    CMatrix out = CMatrix::Zero(n * r, n * c);
    for (int b = 0; b < n; ++b)
        out.block(b * r, b * c, r, c) = A;
    return out;
}

HermitianEigen hermitian_eigen(const CMatrix &A)
{
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(A));
    if (es.info() != Eigen::Success)
        throw std::runtime_error("hermitian_eigen: eigen-decomposition did not converge");
    return {es.eigenvalues(), es.eigenvectors()};
}

CMatrix hermitian_power(const CMatrix &A, double p, double floor_rel)
{
    const HermitianEigen ed = hermitian_eigen(A);
    const double top = std::max(ed.values.maxCoeff(), 0.0);
    const double floor = floor_rel * top;
    RVector d(ed.values.size());
    for (Eigen::Index i = 0; i < d.size(); ++i)
    {
        double v = ed.values(i);
        if (p < 0.0)
            v = std::max(v, floor);
        else
            v = std::max(v, 0.0);
        d(i) = std::pow(v, p);
    }
    return ed.vectors * d.asDiagonal() * ed.vectors.adjoint();
}

CMatrix orthonormalize(const CMatrix &A)
{
    Eigen::HouseholderQR<CMatrix> qr(A);
    CMatrix Q = qr.householderQ() * CMatrix::Identity(A.rows(), A.cols());
    // fix column phases so that R has a positive real diagonal
    const CMatrix R = qr.matrixQR().topRows(A.cols()).triangularView<Eigen::Upper>();
    for (Eigen::Index j = 0; j < A.cols(); ++j)
    {
        const double mag = std::abs(R(j, j));
        if (mag > 0.0)
            Q.col(j) *= R(j, j) / mag;
    }
    return Q;
}

} // namespace ncsd
