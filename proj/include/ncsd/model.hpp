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


#ifndef NCSD_MODEL_HPP
#define NCSD_MODEL_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ncsd/linalg.hpp"

namespace ncsd
{

/// Block-fading system dimensions: coherence length K, Nt transmit and Nr
/// receive antennas, alphabet size M.
struct SystemDims
{
    int K = 1;
    int Nt = 1;
    int Nr = 1;
    int M = 1;

    /// Throws std::invalid_argument unless every field is strictly positive.
    void validate() const;
};

/// A K x Nt symbol matrix with finite entries.
class Codeword
{
public:
    explicit Codeword(CMatrix S);

    const CMatrix &matrix() const noexcept { return S_; }
    int K() const noexcept { return static_cast<int>(S_.rows()); }
    int Nt() const noexcept { return static_cast<int>(S_.cols()); }
    double energy() const { return S_.squaredNorm(); }

private:
    CMatrix S_;
};

/// Ordered codebook of M equiprobable codewords of a common shape.
class Alphabet
{
public:
    /// Takes the codewords as given; `normalized` is set iff they already
    /// satisfy the average power constraint (1/(M K)) sum ||S_i||_F^2 = 1.
    explicit Alphabet(std::vector<Codeword> codewords);

    /// Rescales all codewords by a common factor so the power constraint holds.
    /// An all-zero alphabet cannot be normalized and is returned as-is.
    static Alphabet normalized(std::vector<Codeword> codewords);

    const std::vector<Codeword> &codewords() const noexcept { return codewords_; }
    const Codeword &operator[](std::size_t i) const { return codewords_.at(i); }
    int M() const noexcept { return static_cast<int>(codewords_.size()); }
    int K() const noexcept { return codewords_.front().K(); }
    int Nt() const noexcept { return codewords_.front().Nt(); }
    bool is_normalized() const noexcept { return normalized_; }

    /// (1/(M K)) sum_i ||S_i||_F^2.
    double mean_energy_per_use() const;

    /// Optional design claims checked by validate_codebook.
    /// unitary_scale: each S_i = scale * (truncated unitary), i.e. S^H S = scale^2 I.
    std::optional<double> unitary_scale;
    /// declared_ranks[i]: intended rank of codeword i (empty = no claim).
    std::vector<int> declared_ranks;

private:
    std::vector<Codeword> codewords_;
    bool normalized_ = false;
};

/// Transmit / noise power pair; gamma = Px / Pz always.
class PowerConfig
{
public:
    PowerConfig(double Px, double Pz);
    static PowerConfig from_gamma(double gamma, double Pz = 1.0) { return {gamma * Pz, Pz}; }

    double Px() const noexcept { return Px_; }
    double Pz() const noexcept { return Pz_; }
    double gamma() const noexcept { return gamma_; }

private:
    double Px_, Pz_, gamma_;
};

/// Covariance of vec(H), an (Nt Nr) x (Nt Nr) Hermitian PSD matrix.
class ChannelModel
{
public:
    explicit ChannelModel(CMatrix Ch);

    /// I / (Nt Nr): uncorrelated fading with E||H||_F^2 = 1.
    static ChannelModel isotropic(int Nt, int Nr);
    /// diag(lambda_k) with lambda_k proportional to k^-exponent, trace 1.
    static ChannelModel polynomial_decay(int Nt, int Nr, double exponent);
    /// U diag(spectrum) U^H (U = identity when omitted).
    static ChannelModel from_spectrum(const RVector &spectrum, const std::optional<CMatrix> &basis = {});

    const CMatrix &matrix() const noexcept { return Ch_; }
    int dim() const noexcept { return static_cast<int>(Ch_.rows()); }
    double min_eigenvalue() const noexcept { return eig_min_; }
    double max_eigenvalue() const noexcept { return eig_max_; }
    /// Rank by the rule eigenvalue > dim * eps * lambda_max.
    bool full_rank() const noexcept;

private:
    CMatrix Ch_;
    double eig_min_ = 0.0, eig_max_ = 0.0;
};

/// Covariance of vec(Z), a (K Nr) x (K Nr) Hermitian PD matrix, with its
/// nominal power Pz and the normalized covariance Cz / Pz.
class NoiseModel
{
public:
    NoiseModel(CMatrix Cz, double Pz);

    /// Pz I.
    static NoiseModel white(int K, int Nr, double Pz);
    /// diag(sigma_k), sigma_k proportional to k^-exponent, trace K Nr Pz.
    static NoiseModel polynomial_decay(int K, int Nr, double exponent, double Pz);

    const CMatrix &matrix() const noexcept { return Cz_; }
    CMatrix normalized() const { return Cz_ / Pz_; }
    double Pz() const noexcept { return Pz_; }
    int dim() const noexcept { return static_cast<int>(Cz_.rows()); }
    double min_eigenvalue() const noexcept { return eig_min_; }

private:
    CMatrix Cz_;
    double Pz_;
    double eig_min_ = 0.0;
};

/// Sigma = Xv Ch Xv^H + Cz with its Cholesky factor and log-determinant.
/// Immutable once built; safe to share across threads.
class ConditionalCovariance
{
public:
    /// Wraps an arbitrary Hermitian PD matrix. Throws FactorizationError
    /// (carrying lambda_min) when lambda_min < 1e-12 lambda_max.
    static ConditionalCovariance from_matrix(const CMatrix &sigma);

    const CMatrix &sigma() const noexcept { return sigma_; }
    /// Lower-triangular L with L L^H = Sigma.
    const CMatrix &cholesky() const noexcept { return L_; }
    double logdet() const noexcept { return logdet_; }
    int dim() const noexcept { return static_cast<int>(sigma_.rows()); }
    double min_eigenvalue() const noexcept { return eig_min_; }
    double max_eigenvalue() const noexcept { return eig_max_; }

    /// L^-1 y.
    CVector whiten(const CVector &y) const;
    /// y^H Sigma^-1 y, via a triangular solve.
    double quadratic_form(const CVector &y) const;
    /// Sigma^-1 B via two triangular solves.
    CMatrix solve(const CMatrix &B) const;

private:
    ConditionalCovariance() = default;

    CMatrix sigma_;
    CMatrix L_;
    double logdet_ = 0.0;
    double eig_min_ = 0.0, eig_max_ = 0.0;
};

/// I_Nr (x) S, shape (K Nr) x (Nt Nr).
CMatrix expand_codeword(const Codeword &S, int Nr);

/// Sigma = Px * Sv Ch Sv^H + Cz for Sv = I_Nr (x) S.
ConditionalCovariance conditional_covariance(const Codeword &S, const ChannelModel &ch, const NoiseModel &nz,
                                             const PowerConfig &pw, int Nr);

/// Sigma_i for every codeword of the alphabet, in alphabet order.
std::vector<ConditionalCovariance> conditional_covariances(const Alphabet &alphabet, const ChannelModel &ch,
                                                           const NoiseModel &nz, const PowerConfig &pw, int Nr);

/// Random stream tag reserved for sample_received.
inline constexpr std::uint32_t kReceivedSampleTag = 0x52435600u;

/// Single received sample y = L w for trial `index`; w drawn from
/// stream (seed, tag, index).
CVector draw_received(const ConditionalCovariance &cov, std::uint64_t seed, std::uint32_t tag, std::uint64_t index);

/// n samples y ~ CN(0, Sigma), sample i drawn from stream (seed, kReceivedSampleTag, i).
std::vector<CVector> sample_received(const ConditionalCovariance &cov, std::size_t n, std::uint64_t seed);

/// Receiver SNR: gamma * mean_i tr{Sv_i^H Sv_i Ch} / K.
double snr(const Alphabet &alphabet, const ChannelModel &ch, const PowerConfig &pw, const SystemDims &dims);

struct ConstraintCheck
{
    std::string name;
    double measured = 0.0;
    double expected = 0.0;
    bool passed = false;
};

struct NormalizationReport
{
    std::vector<ConstraintCheck> checks;
    bool all_passed() const;
};

/// Reports (advisory) tr(Ch) = 1, tr(Cz) = K Nr Pz, and the alphabet power
/// constraint, each at 1e-9 relative tolerance.
NormalizationReport check_normalizations(const Alphabet &alphabet, const ChannelModel &ch, const NoiseModel &nz,
                                         const SystemDims &dims);

} // namespace ncsd

#endif
