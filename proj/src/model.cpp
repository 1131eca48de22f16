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


#include "ncsd/model.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "ncsd/parallel.hpp"
#include "ncsd/random.hpp"

namespace ncsd
{

namespace
{
constexpr double kHermitianTol = 1e-12;
constexpr double kSingularRatio = 1e-12;
constexpr double kNormalizationTol = 1e-9;

ConstraintCheck make_check(std::string name, double measured, double expected)
{
    const double scale = std::max(std::abs(expected), 1e-300);
    return {std::move(name), measured, expected, std::abs(measured - expected) <= kNormalizationTol * scale};
}
} // namespace

// ----- SystemDims ---------------------------------------------------------

void SystemDims::validate() const
{
    if (K < 1 || Nt < 1 || Nr < 1 || M < 1)
        throw std::invalid_argument("SystemDims: K, Nt, Nr and M must all be >= 1");
}

// ----- Codeword / Alphabet ------------------------------------------------

Codeword::Codeword(CMatrix S) : S_(std::move(S))
{
    if (S_.rows() < 1 || S_.cols() < 1)
        throw DimensionError("Codeword: empty symbol matrix");
    if (!S_.allFinite())
        throw std::invalid_argument("Codeword: non-finite entry");
}

Alphabet::Alphabet(std::vector<Codeword> codewords) : codewords_(std::move(codewords))
{
    if (codewords_.empty())
        throw std::invalid_argument("Alphabet: needs at least one codeword");
    for (const Codeword &c : codewords_)
        if (c.K() != codewords_.front().K() || c.Nt() != codewords_.front().Nt())
            throw DimensionError("Alphabet: codewords must share one K x Nt shape");
    normalized_ = std::abs(mean_energy_per_use() - 1.0) <= 1e-12;
}

Alphabet Alphabet::normalized(std::vector<Codeword> codewords)
{
    Alphabet a(std::move(codewords));
    const double e = a.mean_energy_per_use();
    if (e <= 0.0 || a.normalized_)
        return a;
    const double scale = 1.0 / std::sqrt(e);
    std::vector<Codeword> scaled;
    scaled.reserve(a.codewords_.size());
    for (const Codeword &c : a.codewords_)
        scaled.emplace_back(c.matrix() * scale);
    Alphabet out(std::move(scaled));
    // rounding in the rescale can leave the mean a few ulps away from 1
    out.normalized_ = std::abs(out.mean_energy_per_use() - 1.0) <= 1e-12;
    return out;
}

double Alphabet::mean_energy_per_use() const
{
    double sum = 0.0;
    for (const Codeword &c : codewords_)
        sum += c.energy();
    return sum / (static_cast<double>(codewords_.size()) * K());
}

// ----- PowerConfig --------------------------------------------------------

PowerConfig::PowerConfig(double Px, double Pz) : Px_(Px), Pz_(Pz), gamma_(Px / Pz)
{
    if (!(Px >= 0.0) || !std::isfinite(Px))
        throw std::invalid_argument("PowerConfig: Px must be finite and >= 0");
    if (!(Pz > 0.0) || !std::isfinite(Pz))
        throw std::invalid_argument("PowerConfig: Pz must be finite and > 0");
}

// ----- ChannelModel -------------------------------------------------------

ChannelModel::ChannelModel(CMatrix Ch)
{
    require_hermitian(Ch, kHermitianTol, "ChannelModel");
    Ch_ = hermitian_part(Ch);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Ch_, Eigen::EigenvaluesOnly);
    eig_min_ = es.eigenvalues().minCoeff();
    eig_max_ = es.eigenvalues().maxCoeff();
    if (eig_min_ < -kHermitianTol * std::max(eig_max_, 0.0) || eig_max_ < 0.0)
    {
        std::ostringstream msg;
        msg << "ChannelModel: covariance is not positive semidefinite (min eigenvalue " << eig_min_ << ")";
        throw FactorizationError(msg.str(), eig_min_);
    }
}

ChannelModel ChannelModel::isotropic(int Nt, int Nr)
{
    const int n = Nt * Nr;
    if (Nt < 1 || Nr < 1)
        throw DimensionError("ChannelModel::isotropic: Nt, Nr must be >= 1");
    return ChannelModel(CMatrix::Identity(n, n) / static_cast<double>(n));
}

ChannelModel ChannelModel::polynomial_decay(int Nt, int Nr, double exponent)
{
    if (Nt < 1 || Nr < 1)
        throw DimensionError("ChannelModel::polynomial_decay: Nt, Nr must be >= 1");
    const int n = Nt * Nr;
    RVector spec(n);
    for (int k = 0; k < n; ++k)
        spec(k) = std::pow(static_cast<double>(k + 1), -exponent);
    spec /= spec.sum();
    return from_spectrum(spec);
}

ChannelModel ChannelModel::from_spectrum(const RVector &spectrum, const std::optional<CMatrix> &basis)
{
    const Eigen::Index n = spectrum.size();
    if (basis && (basis->rows() != n || basis->cols() != n))
        throw DimensionError("ChannelModel::from_spectrum: basis must be n x n");
    CMatrix D = spectrum.cast<cplx>().asDiagonal();
    if (!basis)
        return ChannelModel(D);
    return ChannelModel(hermitian_part(*basis * D * basis->adjoint()));
}

bool ChannelModel::full_rank() const noexcept
{
    return eig_min_ > dim() * std::numeric_limits<double>::epsilon() * eig_max_;
}

// ----- NoiseModel ---------------------------------------------------------

NoiseModel::NoiseModel(CMatrix Cz, double Pz) : Pz_(Pz)
{
    if (!(Pz > 0.0) || !std::isfinite(Pz))
        throw std::invalid_argument("NoiseModel: Pz must be finite and > 0");
    require_hermitian(Cz, kHermitianTol, "NoiseModel");
    Cz_ = hermitian_part(Cz);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(Cz_, Eigen::EigenvaluesOnly);
    eig_min_ = es.eigenvalues().minCoeff();
    if (!(eig_min_ > 0.0))
    {
        std::ostringstream msg;
        msg << "NoiseModel: covariance must be positive definite (min eigenvalue " << eig_min_ << ")";
        throw FactorizationError(msg.str(), eig_min_);
    }
}

NoiseModel NoiseModel::white(int K, int Nr, double Pz)
{
    if (K < 1 || Nr < 1)
        throw DimensionError("NoiseModel::white: K, Nr must be >= 1");
    const int n = K * Nr;
    return NoiseModel(Pz * CMatrix::Identity(n, n), Pz);
}

NoiseModel NoiseModel::polynomial_decay(int K, int Nr, double exponent, double Pz)
{
    if (K < 1 || Nr < 1)
        throw DimensionError("NoiseModel::polynomial_decay: K, Nr must be >= 1");
    const int n = K * Nr;
    RVector spec(n);
    for (int k = 0; k < n; ++k)
        spec(k) = std::pow(static_cast<double>(k + 1), -exponent);
    spec *= n * Pz / spec.sum();
    return NoiseModel(CMatrix(spec.cast<cplx>().asDiagonal()), Pz);
}

// ----- ConditionalCovariance ----------------------------------------------

ConditionalCovariance ConditionalCovariance::from_matrix(const CMatrix &sigma)
{
    require_hermitian(sigma, kHermitianTol, "ConditionalCovariance");
    ConditionalCovariance c;
    c.sigma_ = hermitian_part(sigma);

    Eigen::SelfAdjointEigenSolver<CMatrix> es(c.sigma_, Eigen::EigenvaluesOnly);
    c.eig_min_ = es.eigenvalues().minCoeff();
    c.eig_max_ = es.eigenvalues().maxCoeff();
    if (!(c.eig_max_ > 0.0) || c.eig_min_ < kSingularRatio * c.eig_max_)
    {
        std::ostringstream msg;
        msg << "ConditionalCovariance: matrix is not (numerically) positive definite: min eigenvalue "
            << c.eig_min_ << ", max eigenvalue " << c.eig_max_;
        throw FactorizationError(msg.str(), c.eig_min_);
    }

    Eigen::LLT<CMatrix> llt(c.sigma_);
    if (llt.info() != Eigen::Success)
        throw FactorizationError("ConditionalCovariance: Cholesky factorization failed", c.eig_min_);
    c.L_ = llt.matrixL();
    double ld = 0.0;
    for (Eigen::Index i = 0; i < c.L_.rows(); ++i)
        ld += std::log(c.L_(i, i).real());
    c.logdet_ = 2.0 * ld;
    return c;
}

CVector ConditionalCovariance::whiten(const CVector &y) const
{
    if (y.size() != sigma_.rows())
        throw DimensionError("ConditionalCovariance::whiten: length mismatch");
    return L_.triangularView<Eigen::Lower>().solve(y);
}

double ConditionalCovariance::quadratic_form(const CVector &y) const { return whiten(y).squaredNorm(); }

CMatrix ConditionalCovariance::solve(const CMatrix &B) const
{
    if (B.rows() != sigma_.rows())
        throw DimensionError("ConditionalCovariance::solve: row mismatch");
    const CMatrix tmp = L_.triangularView<Eigen::Lower>().solve(B);
    return L_.adjoint().triangularView<Eigen::Upper>().solve(tmp);
}

// ----- Operations ---------------------------------------------------------

CMatrix expand_codeword(const Codeword &S, int Nr)
{
    if (Nr < 1)
        throw DimensionError("expand_codeword: Nr must be >= 1");
    return kron_identity(Nr, S.matrix());
}

ConditionalCovariance conditional_covariance(const Codeword &S, const ChannelModel &ch, const NoiseModel &nz,
                                             const PowerConfig &pw, int Nr)
{
    if (ch.dim() != S.Nt() * Nr)
        throw DimensionError("conditional_covariance: channel covariance must be (Nt Nr) x (Nt Nr)");
    if (nz.dim() != S.K() * Nr)
        throw DimensionError("conditional_covariance: noise covariance must be (K Nr) x (K Nr)");
    const CMatrix Sv = expand_codeword(S, Nr);
    CMatrix sigma = pw.Px() * (Sv * ch.matrix() * Sv.adjoint()) + nz.matrix();
    return ConditionalCovariance::from_matrix(hermitian_part(sigma));
}

std::vector<ConditionalCovariance> conditional_covariances(const Alphabet &alphabet, const ChannelModel &ch,
                                                           const NoiseModel &nz, const PowerConfig &pw, int Nr)
{
    std::vector<ConditionalCovariance> out;
    out.reserve(alphabet.codewords().size());
    for (const Codeword &c : alphabet.codewords())
        out.push_back(conditional_covariance(c, ch, nz, pw, Nr));
    return out;
}

CVector draw_received(const ConditionalCovariance &cov, std::uint64_t seed, std::uint32_t tag, std::uint64_t index)
{
    RandomStream rs(seed, tag, index);
    const CVector w = rs.complex_normal_vector(cov.dim());
    return cov.cholesky().triangularView<Eigen::Lower>() * w;
}

std::vector<CVector> sample_received(const ConditionalCovariance &cov, std::size_t n, std::uint64_t seed)
{
    if (n < 1)
        throw std::invalid_argument("sample_received: n must be >= 1");
    std::vector<CVector> out(n);
    parallel_chunks(n, 1024, [&](std::size_t, std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i)
            out[i] = draw_received(cov, seed, kReceivedSampleTag, i);
    });
    return out;
}

double snr(const Alphabet &alphabet, const ChannelModel &ch, const PowerConfig &pw, const SystemDims &dims)
{
    if (ch.dim() != dims.Nt * dims.Nr || alphabet.Nt() != dims.Nt || alphabet.K() != dims.K)
        throw DimensionError("snr: alphabet / channel shape does not match dims");
    double acc = 0.0;
    for (const Codeword &c : alphabet.codewords())
    {
        const CMatrix Sv = expand_codeword(c, dims.Nr);
        acc += (Sv.adjoint() * Sv * ch.matrix()).trace().real();
    }
    return pw.gamma() * (acc / alphabet.M()) / dims.K;
}

bool NormalizationReport::all_passed() const
{
    for (const ConstraintCheck &c : checks)
        if (!c.passed)
            return false;
    return true;
}

NormalizationReport check_normalizations(const Alphabet &alphabet, const ChannelModel &ch, const NoiseModel &nz,
                                         const SystemDims &dims)
{
    NormalizationReport r;
    r.checks.push_back(make_check("channel: tr(Ch) = 1", ch.matrix().trace().real(), 1.0));
    r.checks.push_back(make_check("noise: tr(Cz) = K Nr Pz", nz.matrix().trace().real(),
                                  static_cast<double>(dims.K) * dims.Nr * nz.Pz()));
    r.checks.push_back(make_check("alphabet: (1/(M K)) sum ||S||_F^2 = 1", alphabet.mean_energy_per_use(), 1.0));
    return r;
}

} // namespace ncsd
