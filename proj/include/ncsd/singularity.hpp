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


#ifndef NCSD_SINGULARITY_HPP
#define NCSD_SINGULARITY_HPP

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ncsd/model.hpp"

namespace ncsd
{

/// Orthonormal basis of a column space together with the rank decision.
struct SubspaceBasis
{
    CMatrix basis; ///< ambient x rank, orthonormal columns
    int rank = 0;
    double tol = 0.0; ///< singular-value threshold used for the rank decision

    Eigen::Index ambient() const noexcept { return basis.rows(); }
    /// P = basis basis^H; the basis-independent description of the subspace.
    CMatrix projector() const { return basis * basis.adjoint(); }
};

/// SVD rank decision: rank = #{sigma_k > tol}, default tol = max(rows, cols) * eps * sigma_max.
SubspaceBasis column_space(const CMatrix &A, std::optional<double> tol = {});
inline SubspaceBasis column_space(const Codeword &S, std::optional<double> tol = {})
{
    return column_space(S.matrix(), tol);
}

/// Principal angles in ascending order, min(rank A, rank B) of them.
/// Small angles come from the sines (||(I - P_A) B||), large ones from
/// the cosines (sigma(A^H B)), so both ends keep full relative accuracy.
RVector principal_angles(const SubspaceBasis &A, const SubspaceBasis &B);

/// pi/2 on rank mismatch, 0 for two rank-0 subspaces, else the largest principal angle.
double largest_principal_angle(const SubspaceBasis &A, const SubspaceBasis &B);

inline constexpr double kDefaultAngleTol = 1e-8;

/// Equal ranks and largest principal angle below angleTol. Throws
/// DimensionError when the ambient dimensions differ.
bool subspaces_equal(const SubspaceBasis &A, const SubspaceBasis &B, double angleTol = kDefaultAngleTol);

/// Pairs (a < b) whose conditional covariances coincide:
/// ||Sigma_a - Sigma_b||_F <= tol * max(||Sigma_a||_F, ||Sigma_b||_F). tol in (0, 1e-3].
std::vector<std::pair<int, int>> unique_identifiability(const Alphabet &alphabet, const ChannelModel &ch,
                                                        const NoiseModel &nz, const PowerConfig &pw,
                                                        const SystemDims &dims, double tol = 1e-9);

/// Xi = Cz_bar^-1/2 Sv Ch Sv^H Cz_bar^-1/2 with Cz_bar = Cz / Pz.
struct XiMatrix
{
    CMatrix xi;
};
XiMatrix xi_matrix(const Codeword &S, const ChannelModel &ch, const NoiseModel &nz, int Nr);

/// Column space of Xi with rank threshold 1e-10 * sigma_max (Xi is formed
/// from products, so its null directions carry rounding noise well above eps).
SubspaceBasis xi_column_space(const XiMatrix &xi);

/// colsp(Xi_a) == colsp(Xi_b). Rejects a rank-deficient channel covariance
/// with std::invalid_argument: the equivalence with colsp(S_a) == colsp(S_b)
/// needs full rank, and reduced-rank models must first be projected onto
/// the channel's support.
bool xi_subspaces_equal(const Codeword &Sa, const Codeword &Sb, const ChannelModel &ch, const NoiseModel &nz,
                        int Nr, double angleTol = kDefaultAngleTol);

// ----- Large-array evidence -------------------------------------------------

enum class CurveVerdict
{
    DivergentEvidence,
    BoundedEvidence,
    Inconclusive,
};

/// "divergent-evidence" / "bounded-evidence" / "inconclusive".
std::string to_string(CurveVerdict v);

/// One model of a family indexed by Nr.
struct ModelInstance
{
    Alphabet alphabet;
    ChannelModel ch;
    NoiseModel nz;
    PowerConfig pw;
    SystemDims dims;
};
using ModelFamily = std::function<ModelInstance(int nr)>;

struct DivergenceCurve
{
    std::vector<int> nr_values;
    std::vector<double> j_values;
    double slope = 0.0;
    CurveVerdict verdict = CurveVerdict::Inconclusive;
};

// Heuristic thresholds for the log-log slope of J(Nr). A finite grid cannot
// prove divergence; these only separate clearly growing from clearly flat
// or decaying curves.
inline constexpr double kDivergentSlope = 0.2;
inline constexpr double kDivergentGrowth = 2.0;
inline constexpr double kBoundedSlope = 0.05;
/// Curves with every J below this are treated as identically zero.
inline constexpr double kZeroDivergence = 1e-12;

/// Least-squares slope of ln J against ln Nr over the upper half of the grid
/// (indices n/2 .. n-1) and the resulting verdict. Requires >= 4 strictly
/// increasing Nr values and matching lengths.
DivergenceCurve classify_curve(std::vector<int> nr_values, std::vector<double> j_values);

/// J_Nr = jeffreys_trace(Sigma_a(Nr), Sigma_b(Nr)) over the grid, then classify_curve.
/// Throws DimensionError when a generated instance is inconsistent with its Nr.
DivergenceCurve large_array_curve(const ModelFamily &family, std::pair<int, int> pair,
                                  const std::vector<int> &nr_values);

// ----- High-SNR verdict -----------------------------------------------------

struct PairRecord
{
    int a = 0;
    int b = 0;
    int rank_a = 0;
    int rank_b = 0;
    /// Filled only when a channel/noise model was supplied.
    std::optional<bool> uniquely_identifiable;
    bool colsp_distinct = false;
    /// Largest principal angle (pi/2 on rank mismatch): the separation statistic.
    double largest_angle = 0.0;
    /// Smallest principal angle (0 when either subspace is trivial).
    double smallest_angle = 0.0;
};

struct SingularityReport
{
    std::vector<PairRecord> pairs;
    double angle_tol = kDefaultAngleTol;
    /// Every distinct pair has distinct column spaces.
    bool asd_high_snr = true;
    /// No pair shares a conditional covariance (only when a model was supplied).
    std::optional<bool> identifiable;

    /// Smallest largest-principal-angle over all pairs (+inf for M = 1).
    double min_separation() const;
};

/// Pairwise column-space comparison over the alphabet.
SingularityReport high_snr_singularity(const Alphabet &alphabet, double angleTol = kDefaultAngleTol);

/// As above plus the identifiability check at the given operating point.
/// Rejects a rank-deficient channel covariance (std::invalid_argument).
SingularityReport singularity_report(const Alphabet &alphabet, const ChannelModel &ch, const NoiseModel &nz,
                                     const PowerConfig &pw, const SystemDims &dims, double identTol = 1e-9,
                                     double angleTol = kDefaultAngleTol);

} // namespace ncsd

#endif
