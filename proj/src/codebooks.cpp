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


#include "ncsd/codebooks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

#include "ncsd/random.hpp"
#include "ncsd/singularity.hpp"

namespace ncsd
{

namespace
{

constexpr double kCollisionDistance = 1e-3;
constexpr double kUnitaryTol = 1e-10;
constexpr double kPowerTol = 1e-9;
constexpr double kMinDistanceFloor = 1e-6;

double min_pair_d2(const std::vector<CMatrix> &bases)
{
    double m = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < bases.size(); ++i)
        for (std::size_t j = i + 1; j < bases.size(); ++j)
        {
            const double d = chordal_distance(bases[i], bases[j]);
            m = std::min(m, d * d);
        }
    return m;
}

} // namespace

Alphabet energy_constellation(const std::vector<double> &levels, int K, int Nt)
{
    if (Nt != 1)
        throw std::invalid_argument("energy_constellation: energy constellations are scalar per use (Nt = 1)");
    if (K < 1)
        throw std::invalid_argument("energy_constellation: K must be >= 1");
    if (levels.empty())
        throw std::invalid_argument("energy_constellation: no levels given");
    std::set<double> seen;
    std::vector<Codeword> cw;
    for (double l : levels)
    {
        if (!std::isfinite(l) || l < 0.0)
            throw std::invalid_argument("energy_constellation: levels must be finite and nonnegative");
        if (!seen.insert(l).second)
            throw std::invalid_argument("energy_constellation: duplicate level " + std::to_string(l));
        cw.emplace_back(CMatrix::Constant(K, 1, cplx(std::sqrt(l), 0.0)));
    }
    return Alphabet::normalized(std::move(cw));
}

double chordal_distance(const CMatrix &A, const CMatrix &B)
{
    if (A.rows() != B.rows() || A.cols() != B.cols())
        throw DimensionError("chordal_distance: bases must have equal shape");
    const double overlap = (A.adjoint() * B).squaredNorm();
    return std::sqrt(std::max(0.0, static_cast<double>(A.cols()) - overlap));
}

double min_chordal_distance(const std::vector<CMatrix> &bases)
{
    return std::sqrt(min_pair_d2(bases));
}

GrassmannCodebook make_grassmann_codebook(std::vector<CMatrix> bases)
{
    if (bases.empty())
        throw std::invalid_argument("make_grassmann_codebook: empty codebook");
    const Eigen::Index K = bases.front().rows();
    const Eigen::Index Nt = bases.front().cols();
    if (Nt < 1 || K < Nt)
        throw DimensionError("make_grassmann_codebook: bases must be K x Nt with K >= Nt >= 1");
    const double scale = std::sqrt(static_cast<double>(K) / static_cast<double>(Nt));
    std::vector<Codeword> cw;
    for (const CMatrix &U : bases)
    {
        if (U.rows() != K || U.cols() != Nt)
            throw DimensionError("make_grassmann_codebook: bases differ in shape");
        cw.emplace_back(scale * U);
    }
    Alphabet alphabet(std::move(cw));
    alphabet.unitary_scale = scale;
    alphabet.declared_ranks.assign(bases.size(), static_cast<int>(Nt));
    const double dmin = min_chordal_distance(bases);
    return {std::move(bases), std::move(alphabet), dmin, {}};
}

GrassmannCodebook random_grassmannian(int M, int K, int Nt, std::uint64_t seed)
{
    if (Nt < 1 || K < Nt)
        throw std::invalid_argument("random_grassmannian: need K >= Nt >= 1");
    if (M < 1)
        throw std::invalid_argument("random_grassmannian: need M >= 1");
    if (M > 1 && Nt == K)
        throw std::invalid_argument("random_grassmannian: G(K, C^K) is a single point, cannot place M = " +
                                    std::to_string(M) + " distinct subspaces");

    std::vector<CMatrix> bases;
    const std::uint64_t max_draws = 1000ull * static_cast<std::uint64_t>(M);
    for (std::uint64_t draw = 0; bases.size() < static_cast<std::size_t>(M); ++draw)
    {
        if (draw >= max_draws)
            throw std::runtime_error("random_grassmannian: could not draw well-separated points");
        RandomStream rs(seed, kGrassmannTag, draw);
        CMatrix U = orthonormalize(rs.complex_normal_matrix(K, Nt));
        const bool collides = std::any_of(bases.begin(), bases.end(), [&](const CMatrix &V) {
            return chordal_distance(U, V) < kCollisionDistance;
        });
        if (!collides)
            bases.push_back(std::move(U));
    }
    return make_grassmann_codebook(std::move(bases));
}

GrassmannCodebook refine_packing(const GrassmannCodebook &cb, int iterations, double stepSize)
{
    if (iterations < 0)
        throw std::invalid_argument("refine_packing: iterations must be >= 0");
    if (!(stepSize > 0.0))
        throw std::invalid_argument("refine_packing: stepSize must be positive");
    if (iterations == 0 || cb.bases.size() < 2)
        return cb;

    std::vector<CMatrix> cur = cb.bases;
    const std::size_t M = cur.size();
    const Eigen::Index K = cur.front().rows();
    double obj = min_pair_d2(cur);
    double step = stepSize;
    std::vector<DesignLogEntry> log = cb.design_log;
    const int first_iter = log.empty() ? 0 : log.back().iteration + 1;

    for (int it = 0; it < iterations; ++it)
    {
        // pairs within a small margin of the worst one all get pushed apart
        const double margin = 0.05 * obj + 1e-12;
        std::vector<CMatrix> grad(M, CMatrix::Zero(K, cur.front().cols()));
        for (std::size_t i = 0; i < M; ++i)
            for (std::size_t j = i + 1; j < M; ++j)
            {
                const double d = chordal_distance(cur[i], cur[j]);
                if (d * d > obj + margin)
                    continue;
                // d^2 = n - ||A^H B||^2; ascent direction for A is -B B^H A
                grad[i] -= cur[j] * (cur[j].adjoint() * cur[i]);
                grad[j] -= cur[i] * (cur[i].adjoint() * cur[j]);
            }
        double gmax = 0.0;
        for (std::size_t i = 0; i < M; ++i)
        {
            grad[i] -= cur[i] * (cur[i].adjoint() * grad[i]);
            gmax = std::max(gmax, grad[i].norm());
        }

        DesignLogEntry entry;
        entry.iteration = first_iter + it;
        entry.step = step;
        if (gmax > 0.0)
        {
            std::vector<CMatrix> cand(M);
            for (std::size_t i = 0; i < M; ++i)
                cand[i] = orthonormalize(cur[i] + (step / gmax) * grad[i]);
            const double cand_obj = min_pair_d2(cand);
            if (cand_obj >= obj)
            {
                cur = std::move(cand);
                obj = cand_obj;
                entry.accepted = true;
                step *= 1.2;
            }
            else
            {
                step *= 0.5;
            }
        }
        entry.objective = std::sqrt(obj);
        log.push_back(entry);
    }

    GrassmannCodebook out = make_grassmann_codebook(std::move(cur));
    out.design_log = std::move(log);
    return out;
}

SubspaceUnionCodebook subspace_union_codebook(const std::vector<int> &sizes, int K, int Nt, std::uint64_t seed,
                                              const std::optional<std::vector<double>> &weights,
                                              int refineIterations)
{
    if (Nt < 1 || K < Nt)
        throw std::invalid_argument("subspace_union_codebook: need K >= Nt >= 1");
    if (sizes.size() != static_cast<std::size_t>(Nt) + 1)
        throw std::invalid_argument("subspace_union_codebook: sizes must have Nt + 1 entries (ranks 0..Nt)");
    if (std::any_of(sizes.begin(), sizes.end(), [](int s) { return s < 0; }))
        throw std::invalid_argument("subspace_union_codebook: negative size");
    if (sizes[0] > 1)
        throw std::invalid_argument("subspace_union_codebook: rank 0 holds only the zero codeword (size <= 1)");
    if (Nt == K && sizes[Nt] > 1)
        throw std::invalid_argument("subspace_union_codebook: rank K holds only the full space (size <= 1)");
    int total = 0;
    for (int s : sizes)
        total += s;
    if (total < 1)
        throw std::invalid_argument("subspace_union_codebook: empty codebook");
    std::vector<double> w(sizes.size(), 1.0);
    if (weights)
    {
        if (weights->size() != sizes.size())
            throw std::invalid_argument("subspace_union_codebook: weights must have Nt + 1 entries");
        w = *weights;
        for (std::size_t n = 1; n < w.size(); ++n)
            if (sizes[n] > 0 && !(std::isfinite(w[n]) && w[n] > 0.0))
                throw std::invalid_argument("subspace_union_codebook: weights of used ranks must be positive");
    }

    SubspaceUnionCodebook out{std::vector<std::vector<CMatrix>>(sizes.size()), Alphabet({Codeword(CMatrix(1, 1))}),
                              std::vector<std::vector<DesignLogEntry>>(sizes.size())};
    std::vector<Codeword> cw;
    std::vector<int> ranks;
    if (sizes[0] == 1)
    {
        out.per_dimension[0].push_back(CMatrix(K, 0));
        cw.emplace_back(CMatrix::Zero(K, Nt));
        ranks.push_back(0);
    }
    for (int n = 1; n <= Nt; ++n)
    {
        if (sizes[n] == 0)
            continue;
        const std::uint64_t sub_seed = seed ^ (0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(n));
        GrassmannCodebook g = random_grassmannian(sizes[n], K, n, sub_seed);
        if (refineIterations > 0)
            g = refine_packing(g, refineIterations);
        const double amp = std::sqrt(w[n] / n);
        for (const CMatrix &U : g.bases)
        {
            CMatrix S = CMatrix::Zero(K, Nt);
            S.leftCols(n) = amp * U;
            cw.emplace_back(std::move(S));
            ranks.push_back(n);
        }
        out.per_dimension[n] = std::move(g.bases);
        out.design_logs[n] = std::move(g.design_log);
    }
    out.alphabet = Alphabet::normalized(std::move(cw));
    out.alphabet.declared_ranks = std::move(ranks);
    return out;
}

bool CodebookReport::all_passed() const
{
    return std::all_of(checks.begin(), checks.end(), [](const CodebookCheck &c) { return c.passed; });
}

CodebookReport validate_codebook(const Alphabet &alphabet)
{
    CodebookReport rep;

    CodebookCheck power{"power_normalization"};
    power.measured = alphabet.mean_energy_per_use();
    power.threshold = kPowerTol;
    power.passed = std::abs(power.measured - 1.0) <= kPowerTol;
    rep.checks.push_back(power);

    CodebookCheck unitary{"unitary"};
    unitary.threshold = kUnitaryTol;
    if (alphabet.unitary_scale)
    {
        const double s2 = *alphabet.unitary_scale * *alphabet.unitary_scale;
        for (const Codeword &c : alphabet.codewords())
        {
            const CMatrix G = c.matrix().adjoint() * c.matrix() / s2;
            unitary.measured =
                std::max(unitary.measured, (G - CMatrix::Identity(G.rows(), G.cols())).norm());
        }
        unitary.passed = unitary.measured < kUnitaryTol;
    }
    else
    {
        unitary.claimed = false;
    }
    rep.checks.push_back(unitary);

    std::vector<SubspaceBasis> spaces;
    for (const Codeword &c : alphabet.codewords())
    {
        spaces.push_back(column_space(c));
        rep.ranks.push_back(spaces.back().rank);
    }

    CodebookCheck ranks{"declared_ranks"};
    if (!alphabet.declared_ranks.empty())
    {
        if (alphabet.declared_ranks.size() != rep.ranks.size())
            ranks.measured = static_cast<double>(rep.ranks.size());
        else
            for (std::size_t i = 0; i < rep.ranks.size(); ++i)
                if (rep.ranks[i] != alphabet.declared_ranks[i])
                    ranks.measured += 1.0;
        ranks.passed = ranks.measured == 0.0;
    }
    else
    {
        ranks.claimed = false;
    }
    rep.checks.push_back(ranks);

    rep.min_chordal_distance = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spaces.size(); ++i)
        for (std::size_t j = i + 1; j < spaces.size(); ++j)
            if (spaces[i].rank == spaces[j].rank && spaces[i].rank > 0)
                rep.min_chordal_distance =
                    std::min(rep.min_chordal_distance, chordal_distance(spaces[i].basis, spaces[j].basis));
    // only subspace designs promise separated points; energy constellations
    // put several codewords on the same line by construction
    CodebookCheck dist{"min_chordal_distance"};
    dist.measured = rep.min_chordal_distance;
    dist.threshold = kMinDistanceFloor;
    dist.claimed = alphabet.unitary_scale.has_value() || !alphabet.declared_ranks.empty();
    dist.passed = !dist.claimed || rep.min_chordal_distance > kMinDistanceFloor;
    rep.checks.push_back(dist);
    return rep;
}

} // namespace ncsd
