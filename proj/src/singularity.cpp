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


#include "ncsd/singularity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ncsd/divergence.hpp"
#include "ncsd/parallel.hpp"

namespace ncsd
{

namespace
{

constexpr double kXiRankRel = 1e-10;

void require_alphabet_dims(const Alphabet &alphabet, const SystemDims &dims, const char *what)
{
    dims.validate();
    if (alphabet.K() != dims.K || alphabet.Nt() != dims.Nt)
        throw DimensionError(std::string(what) + ": alphabet shape does not match (K, Nt)");
}

std::vector<std::pair<int, int>> all_pairs(int M)
{
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < M; ++a)
        for (int b = a + 1; b < M; ++b)
            out.emplace_back(a, b);
    return out;
}

} // namespace

SubspaceBasis column_space(const CMatrix &A, std::optional<double> tol)
{
    SubspaceBasis out;
    if (A.size() == 0)
    {
        out.basis = CMatrix(A.rows(), 0);
        return out;
    }
    Eigen::JacobiSVD<CMatrix> svd(A, Eigen::ComputeThinU);
    const RVector &s = svd.singularValues();
    const double smax = s(0);
    out.tol = tol ? *tol
                  : static_cast<double>(std::max(A.rows(), A.cols())) * std::numeric_limits<double>::epsilon() * smax;
    int r = 0;
    while (r < s.size() && s(r) > out.tol)
        ++r;
    out.rank = r;
    out.basis = svd.matrixU().leftCols(r);
    return out;
}

RVector principal_angles(const SubspaceBasis &A, const SubspaceBasis &B)
{
    if (A.ambient() != B.ambient())
        throw DimensionError("principal_angles: subspaces live in different ambient spaces");
    // X spans the larger subspace, Y the smaller one
    const SubspaceBasis &X = A.rank >= B.rank ? A : B;
    const SubspaceBasis &Y = A.rank >= B.rank ? B : A;
    const int r = Y.rank;
    if (r == 0)
        return RVector(0);

    Eigen::JacobiSVD<CMatrix> cos_svd(X.basis.adjoint() * Y.basis);
    RVector cosines = cos_svd.singularValues(); // descending
    const CMatrix residual = Y.basis - X.basis * (X.basis.adjoint() * Y.basis);
    Eigen::JacobiSVD<CMatrix> sin_svd(residual);
    RVector sines = sin_svd.singularValues();
    std::sort(sines.data(), sines.data() + sines.size()); // ascending

    RVector angles(r);
    for (int k = 0; k < r; ++k)
    {
        const double c = std::clamp(cosines(k), 0.0, 1.0);
        const double s = std::clamp(k < sines.size() ? sines(k) : 0.0, 0.0, 1.0);
        angles(k) = c * c <= 0.5 ? std::acos(c) : std::asin(s);
    }
    std::sort(angles.data(), angles.data() + angles.size());
    return angles;
}

double largest_principal_angle(const SubspaceBasis &A, const SubspaceBasis &B)
{
    if (A.ambient() != B.ambient())
        throw DimensionError("largest_principal_angle: subspaces live in different ambient spaces");
    if (A.rank != B.rank)
        return std::numbers::pi / 2;
    if (A.rank == 0)
        return 0.0;
    return principal_angles(A, B).maxCoeff();
}

bool subspaces_equal(const SubspaceBasis &A, const SubspaceBasis &B, double angleTol)
{
    if (A.ambient() != B.ambient())
        throw DimensionError("subspaces_equal: subspaces live in different ambient spaces");
    if (A.rank != B.rank)
        return false;
    return largest_principal_angle(A, B) < angleTol;
}

std::vector<std::pair<int, int>> unique_identifiability(const Alphabet &alphabet, const ChannelModel &ch,
                                                        const NoiseModel &nz, const PowerConfig &pw,
                                                        const SystemDims &dims, double tol)
{
    if (!(tol > 0.0 && tol <= 1e-3))
        throw std::invalid_argument("unique_identifiability: tol must lie in (0, 1e-3]");
    require_alphabet_dims(alphabet, dims, "unique_identifiability");
    const auto covs = conditional_covariances(alphabet, ch, nz, pw, dims.Nr);
    std::vector<double> norms;
    for (const auto &c : covs)
        norms.push_back(c.sigma().norm());

    std::vector<std::pair<int, int>> flagged;
    for (auto [a, b] : all_pairs(alphabet.M()))
    {
        const double diff = (covs[a].sigma() - covs[b].sigma()).norm();
        if (diff <= tol * std::max(norms[a], norms[b]))
            flagged.emplace_back(a, b);
    }
    return flagged;
}

XiMatrix xi_matrix(const Codeword &S, const ChannelModel &ch, const NoiseModel &nz, int Nr)
{
    if (Nr < 1)
        throw std::invalid_argument("xi_matrix: Nr must be >= 1");
    if (ch.dim() != S.Nt() * Nr || nz.dim() != S.K() * Nr)
        throw DimensionError("xi_matrix: covariance sizes do not match (K, Nt, Nr)");
    if (nz.min_eigenvalue() <= 0.0)
        throw FactorizationError("xi_matrix: noise covariance is not positive definite", nz.min_eigenvalue());
    const CMatrix w = hermitian_power(nz.normalized(), -0.5);
    const CMatrix Sv = expand_codeword(S, Nr);
    return {hermitian_part(w * Sv * ch.matrix() * Sv.adjoint() * w)};
}

SubspaceBasis xi_column_space(const XiMatrix &xi)
{
    if (xi.xi.size() == 0)
        return column_space(xi.xi);
    const double smax = Eigen::JacobiSVD<CMatrix>(xi.xi).singularValues()(0);
    return column_space(xi.xi, kXiRankRel * smax);
}

bool xi_subspaces_equal(const Codeword &Sa, const Codeword &Sb, const ChannelModel &ch, const NoiseModel &nz,
                        int Nr, double angleTol)
{
    if (!ch.full_rank())
        throw std::invalid_argument(
            "xi_subspaces_equal: channel covariance is rank deficient; project the model onto the "
            "channel's support (lower-dimensional equivalent model) before the high-SNR analysis");
    return subspaces_equal(xi_column_space(xi_matrix(Sa, ch, nz, Nr)), xi_column_space(xi_matrix(Sb, ch, nz, Nr)),
                           angleTol);
}

std::string to_string(CurveVerdict v)
{
    switch (v)
    {
    case CurveVerdict::DivergentEvidence:
        return "divergent-evidence";
    case CurveVerdict::BoundedEvidence:
        return "bounded-evidence";
    case CurveVerdict::Inconclusive:
        return "inconclusive";
    }
    return "inconclusive";
}

DivergenceCurve classify_curve(std::vector<int> nr_values, std::vector<double> j_values)
{
    if (nr_values.size() < 4)
        throw std::invalid_argument("classify_curve: need at least 4 Nr values");
    if (nr_values.size() != j_values.size())
        throw DimensionError("classify_curve: Nr and J lists differ in length");
    for (std::size_t i = 0; i < nr_values.size(); ++i)
    {
        if (nr_values[i] < 1 || (i > 0 && nr_values[i] <= nr_values[i - 1]))
            throw std::invalid_argument("classify_curve: Nr values must be positive and strictly increasing");
        if (!std::isfinite(j_values[i]) || j_values[i] < 0.0)
            throw std::invalid_argument("classify_curve: J values must be finite and nonnegative");
    }

    DivergenceCurve c;
    c.nr_values = std::move(nr_values);
    c.j_values = std::move(j_values);

    if (std::all_of(c.j_values.begin(), c.j_values.end(), [](double j) { return j < kZeroDivergence; }))
    {
        c.slope = 0.0;
        c.verdict = CurveVerdict::BoundedEvidence;
        return c;
    }

    const std::size_t n = c.nr_values.size();
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    double cnt = 0.0;
    for (std::size_t i = n / 2; i < n; ++i)
    {
        const double x = std::log(static_cast<double>(c.nr_values[i]));
        const double y = std::log(std::max(c.j_values[i], std::numeric_limits<double>::min()));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        cnt += 1.0;
    }
    c.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);

    if (c.slope > kDivergentSlope && c.j_values.back() > kDivergentGrowth * c.j_values.front())
        c.verdict = CurveVerdict::DivergentEvidence;
    else if (c.slope < kBoundedSlope)
        c.verdict = CurveVerdict::BoundedEvidence;
    else
        c.verdict = CurveVerdict::Inconclusive;
    return c;
}

DivergenceCurve large_array_curve(const ModelFamily &family, std::pair<int, int> pair,
                                  const std::vector<int> &nr_values)
{
    if (nr_values.size() < 4)
        throw std::invalid_argument("large_array_curve: need at least 4 Nr values");
    for (std::size_t i = 1; i < nr_values.size(); ++i)
        if (nr_values[i] <= nr_values[i - 1])
            throw std::invalid_argument("large_array_curve: Nr values must be strictly increasing");

    std::vector<double> J(nr_values.size());
    for (std::size_t i = 0; i < nr_values.size(); ++i)
    {
        const int nr = nr_values[i];
        const ModelInstance m = family(nr);
        if (m.dims.Nr != nr)
            throw DimensionError("large_array_curve: generator returned Nr = " + std::to_string(m.dims.Nr) +
                                 " when asked for " + std::to_string(nr));
        require_alphabet_dims(m.alphabet, m.dims, "large_array_curve");
        if (m.ch.dim() != m.dims.Nt * nr || m.nz.dim() != m.dims.K * nr)
            throw DimensionError("large_array_curve: generator covariance sizes inconsistent at Nr = " +
                                 std::to_string(nr));
        if (pair.first < 0 || pair.second < 0 || pair.first >= m.alphabet.M() || pair.second >= m.alphabet.M())
            throw std::out_of_range("large_array_curve: pair index outside the alphabet");
        const auto ca = conditional_covariance(m.alphabet[pair.first], m.ch, m.nz, m.pw, nr);
        const auto cb = conditional_covariance(m.alphabet[pair.second], m.ch, m.nz, m.pw, nr);
        J[i] = jeffreys_trace(ca, cb);
    }
    return classify_curve(nr_values, std::move(J));
}

double SingularityReport::min_separation() const
{
    double m = std::numeric_limits<double>::infinity();
    for (const auto &p : pairs)
        m = std::min(m, p.largest_angle);
    return m;
}

SingularityReport high_snr_singularity(const Alphabet &alphabet, double angleTol)
{
    if (!(angleTol > 0.0))
        throw std::invalid_argument("high_snr_singularity: angleTol must be positive");
    std::vector<SubspaceBasis> spaces;
    spaces.reserve(alphabet.codewords().size());
    for (const Codeword &c : alphabet.codewords())
        spaces.push_back(column_space(c));

    const auto pairs = all_pairs(alphabet.M());
    SingularityReport rep;
    rep.angle_tol = angleTol;
    rep.pairs.resize(pairs.size());
    parallel_for(pairs.size(), [&](std::size_t i) {
        const auto [a, b] = pairs[i];
        PairRecord &r = rep.pairs[i];
        r.a = a;
        r.b = b;
        r.rank_a = spaces[a].rank;
        r.rank_b = spaces[b].rank;
        r.largest_angle = largest_principal_angle(spaces[a], spaces[b]);
        const RVector ang = principal_angles(spaces[a], spaces[b]);
        r.smallest_angle = ang.size() > 0 ? ang.minCoeff() : 0.0;
        r.colsp_distinct = !subspaces_equal(spaces[a], spaces[b], angleTol);
    });
    rep.asd_high_snr = std::all_of(rep.pairs.begin(), rep.pairs.end(), [](const PairRecord &r) {
        return r.colsp_distinct;
    });
    return rep;
}

SingularityReport singularity_report(const Alphabet &alphabet, const ChannelModel &ch, const NoiseModel &nz,
                                     const PowerConfig &pw, const SystemDims &dims, double identTol,
                                     double angleTol)
{
    if (!ch.full_rank())
        throw std::invalid_argument(
            "singularity_report: channel covariance is rank deficient; the column-space criterion assumes "
            "full rank (project the model onto the channel's support first)");
    SingularityReport rep = high_snr_singularity(alphabet, angleTol);
    const auto flagged = unique_identifiability(alphabet, ch, nz, pw, dims, identTol);
    for (PairRecord &r : rep.pairs)
        r.uniquely_identifiable =
            std::find(flagged.begin(), flagged.end(), std::make_pair(r.a, r.b)) == flagged.end();
    rep.identifiable = flagged.empty();
    return rep;
}

} // namespace ncsd
