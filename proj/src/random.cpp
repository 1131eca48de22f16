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


#include "ncsd/random.hpp"

#include <cmath>
#include <numbers>

namespace ncsd
{

namespace
{
constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t &hi, std::uint32_t &lo)
{
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

inline double to_unit_open(std::uint32_t hi, std::uint32_t lo)
{
    // 53 bits -> (0, 1), offset by half an ulp so 0 cannot occur
    const std::uint64_t bits = ((static_cast<std::uint64_t>(hi) << 32) | lo) >> 11;
    return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}
} // namespace

Philox4x32::Counter Philox4x32::block(Counter ctr, Key key)
{
    for (int round = 0; round < 10; ++round)
    {
        if (round > 0)
        {
            key[0] += kWeyl0;
            key[1] += kWeyl1;
        }
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    }
    return ctr;
}

RandomStream::RandomStream(StreamId id)
    : key_{static_cast<std::uint32_t>(id.seed), static_cast<std::uint32_t>(id.seed >> 32)},
      ctr_{0u, id.tag, static_cast<std::uint32_t>(id.index), static_cast<std::uint32_t>(id.index >> 32)}
{
}

Philox4x32::Counter RandomStream::next_block()
{
    const Philox4x32::Counter out = Philox4x32::block(ctr_, key_);
    ++ctr_[0];
    return out;
}

double RandomStream::uniform()
{
    if (buf_pos_ > 2)
    {
        buf_ = next_block();
        buf_pos_ = 0;
    }
    const double u = to_unit_open(buf_[buf_pos_], buf_[buf_pos_ + 1]);
    buf_pos_ += 2;
    return u;
}

cplx RandomStream::complex_normal()
{
    // Box-Muller: |w|^2 = -ln(u1) ~ Exp(1), arg uniform.
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

double RandomStream::normal()
{
    if (has_spare_normal_)
    {
        has_spare_normal_ = false;
        return spare_normal_;
    }
    const cplx w = complex_normal() * std::numbers::sqrt2;
    has_spare_normal_ = true;
    spare_normal_ = w.imag();
    return w.real();
}

CVector RandomStream::complex_normal_vector(Eigen::Index n)
{
    CVector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = complex_normal();
    return v;
}

CMatrix RandomStream::complex_normal_matrix(Eigen::Index rows, Eigen::Index cols)
{
    CMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = complex_normal();
    return m;
}

CMatrix random_unitary(Eigen::Index n, RandomStream &rs)
{
    return orthonormalize(rs.complex_normal_matrix(n, n));
}

} // namespace ncsd
