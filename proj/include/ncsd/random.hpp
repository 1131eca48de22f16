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


#ifndef NCSD_RANDOM_HPP
#define NCSD_RANDOM_HPP

#include <array>
#include <cstdint>

#include "ncsd/linalg.hpp"

namespace ncsd
{

/// Philox4x32-10 block function (Salmon et al., SC'11). Stateless: the same
/// (counter, key) always maps to the same 128 output bits.
struct Philox4x32
{
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter block(Counter ctr, Key key);
};

/// Identifies one independent random substream.
///
/// Every Monte Carlo trial draws from its own stream keyed by
/// (seed, tag, index), so results do not depend on how trials are
/// distributed across threads. `tag` separates unrelated experiments that
/// share a seed (e.g. different codewords or pairs).
struct StreamId
{
    std::uint64_t seed = 0;
    std::uint32_t tag = 0;
    std::uint64_t index = 0;
};

/// Sequential reader over a Philox substream. Cheap to construct; one per trial.
class RandomStream
{
public:
    explicit RandomStream(StreamId id);
    RandomStream(std::uint64_t seed, std::uint32_t tag, std::uint64_t index)
        : RandomStream(StreamId{seed, tag, index}) {}

    /// Next raw 128-bit block.
    Philox4x32::Counter next_block();

    /// Uniform double in (0, 1): 53 random bits, never exactly 0 or 1.
    double uniform();

    /// Standard circularly-symmetric complex normal CN(0, 1): E|w|^2 = 1.
    cplx complex_normal();

    /// Standard real normal N(0, 1).
    double normal();

    /// Vector of n i.i.d. CN(0, 1) entries.
    CVector complex_normal_vector(Eigen::Index n);

    /// rows x cols matrix of i.i.d. CN(0, 1) entries.
    CMatrix complex_normal_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    Philox4x32::Key key_;
    Philox4x32::Counter ctr_;
    Philox4x32::Counter buf_{};
    int buf_pos_ = 4;
    bool has_spare_normal_ = false;
    double spare_normal_ = 0.0;
};

/// Haar-distributed n x n unitary from the given stream.
CMatrix random_unitary(Eigen::Index n, RandomStream &rs);

} // namespace ncsd

#endif
