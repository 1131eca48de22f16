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


#ifndef NCSD_CODEBOOKS_HPP
#define NCSD_CODEBOOKS_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "ncsd/model.hpp"

namespace ncsd
{

/// Scalar energy constellation: codeword i is sqrt(levels[i]) * 1_K (K x 1),
/// then rescaled to the power constraint (an all-zero alphabet is left as is).
/// Requires Nt = 1, nonnegative finite and pairwise distinct levels.
Alphabet energy_constellation(const std::vector<double> &levels, int K, int Nt = 1);

/// d(A, B) = sqrt(n - ||A^H B||_F^2) for K x n orthonormal bases.
double chordal_distance(const CMatrix &A, const CMatrix &B);

/// Minimum pairwise chordal distance; +inf when fewer than two bases.
double min_chordal_distance(const std::vector<CMatrix> &bases);

struct DesignLogEntry
{
    int iteration = 0;
    double objective = 0.0; ///< min chordal distance after this iteration
    double step = 0.0;      ///< step size tried in this iteration
    bool accepted = false;
};

/// Packing of M points of the Grassmann manifold G(Nt, C^K).
struct GrassmannCodebook
{
    /// K x Nt orthonormal bases (S^H S = I).
    std::vector<CMatrix> bases;
    /// bases scaled by sqrt(K / Nt) so the power constraint holds;
    /// alphabet.unitary_scale records that factor.
    Alphabet alphabet;
    double min_chordal_distance = 0.0;
    std::vector<DesignLogEntry> design_log;
};

/// Builds the codebook object (alphabet, distance) from orthonormal bases.
GrassmannCodebook make_grassmann_codebook(std::vector<CMatrix> bases);

inline constexpr std::uint32_t kGrassmannTag = 0x47524100u;

/// M orthonormalized Gaussian K x Nt draws from streams (seed, kGrassmannTag, i).
/// A draw closer than chordal distance 1e-3 to an earlier point is redrawn.
/// Rejects K < Nt, Nt < 1, M < 1, and M > 1 with Nt = K (G(K, C^K) is a point).
GrassmannCodebook random_grassmannian(int M, int K, int Nt, std::uint64_t seed);

/// Projected gradient ascent on the minimum pairwise chordal distance.
/// Each iteration moves every point of the near-worst pairs along the
/// tangent-projected gradient of d^2, retracts by QR and accepts the move
/// only if the minimum distance does not decrease (step * 1.2 on accept,
/// step / 2 on reject). The design log gets one entry per iteration.
GrassmannCodebook refine_packing(const GrassmannCodebook &cb, int iterations, double stepSize = 0.1);

struct SubspaceUnionCodebook
{
    /// per_dimension[n]: the K x n orthonormal bases of rank-n codewords
    /// (n = 0 holds at most one empty basis for the zero codeword).
    std::vector<std::vector<CMatrix>> per_dimension;
    /// Flattened union in order n = 0, 1, ..., Nt; declared_ranks filled.
    Alphabet alphabet;
    /// design_logs[n]: refinement trace of the rank-n sub-codebook (may be empty).
    std::vector<std::vector<DesignLogEntry>> design_logs;
};

/// Union of Grassmannian sub-codebooks over ranks 0..Nt. A rank-n codeword is
/// sqrt(w_n / n) [U_n | 0] with U_n a K x n orthonormal basis, so every rank-n
/// codeword has energy w_n before the common power rescaling. weights
/// defaults to all ones. sizes must have length Nt + 1 with sizes[0] <= 1,
/// sizes[Nt] <= 1 when Nt = K, and a positive total. refineIterations > 0
/// runs refine_packing on every rank with two or more points.
SubspaceUnionCodebook subspace_union_codebook(const std::vector<int> &sizes, int K, int Nt, std::uint64_t seed,
                                              const std::optional<std::vector<double>> &weights = {},
                                              int refineIterations = 0);

struct CodebookCheck
{
    std::string name;
    bool claimed = true; ///< false: not applicable to this codebook, always passes
    double measured = 0.0;
    double threshold = 0.0;
    bool passed = true;
};

struct CodebookReport
{
    std::vector<CodebookCheck> checks;
    std::vector<int> ranks;
    /// Minimum chordal distance over pairs of equal nonzero rank (+inf if none).
    double min_chordal_distance = 0.0;
    bool all_passed() const;
};

/// Power normalization (|mean energy - 1| <= 1e-9), unitary property when
/// alphabet.unitary_scale is set (max ||S^H S / s^2 - I||_F < 1e-10),
/// declared ranks when alphabet.declared_ranks is set, and a positive
/// minimum chordal distance (> 1e-6) among equal-rank codewords.
CodebookReport validate_codebook(const Alphabet &alphabet);

} // namespace ncsd

#endif
