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

#ifndef NCSD_LINALG_HPP
#define NCSD_LINALG_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace ncsd
{

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// ----- Error types ------------------------------------------------------

/// Raised when operand shapes are incompatible.
class DimensionError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised when a matrix that must be positive definite is not (numerically).
/// Carries the offending minimum eigenvalue.
class FactorizationError : public std::runtime_error
{
public:
    FactorizationError(const std::string &what, double min_eigenvalue)
        : std::runtime_error(what), min_eigenvalue_(min_eigenvalue) {}

    double min_eigenvalue() const noexcept { return min_eigenvalue_; }

private:
    double min_eigenvalue_;
};

// ----- Helpers ----------------------------------------------------------

/// Largest absolute entry of A - A^H relative to the largest absolute entry of A.
double hermitian_defect(const CMatrix &A);

/// (A + A^H)/2; fails with DimensionError on non-square input.
CMatrix hermitian_part(const CMatrix &A);

/// Throws DimensionError unless A is square and Hermitian within rel_tol.
void require_hermitian(const CMatrix &A, double rel_tol, const char *what);

/// Kronecker product I_n (x) A, i.e. n copies of A on the block diagonal.
CMatrix kron_identity(int n, const CMatrix &A);

/// Eigen-decomposition of a Hermitian matrix with eigenvalues in ascending order.
struct HermitianEigen
{
    RVector values;
    CMatrix vectors;
};
HermitianEigen hermitian_eigen(const CMatrix &A);

/// A^p for Hermitian PSD A via its eigendecomposition.
/// Eigenvalues below floor_rel * lambda_max are raised to that floor before
/// exponentiation (only matters for negative p).
CMatrix hermitian_power(const CMatrix &A, double p, double floor_rel = 1e-14);

/// Orthonormal basis (thin Q) of the columns of a full-column-rank matrix.
CMatrix orthonormalize(const CMatrix &A);

} // namespace ncsd

#endif
