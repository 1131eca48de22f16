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


#include "ncsd/detector.hpp"

#include <cmath>
#include <numbers>

namespace ncsd
{

double log_likelihood(const CVector &y, const ConditionalCovariance &cov)
{
    if (y.size() != cov.dim())
        throw DimensionError("log_likelihood: y length does not match covariance");
    return -static_cast<double>(y.size()) * std::log(std::numbers::pi) - cov.logdet() - cov.quadratic_form(y);
}

double llr(const CVector &y, const ConditionalCovariance &covA, const ConditionalCovariance &covB)
{
    if (covA.dim() != covB.dim() || y.size() != covA.dim())
        throw DimensionError("llr: dimension mismatch");
    return (covB.quadratic_form(y) - covA.quadratic_form(y)) - (covA.logdet() - covB.logdet());
}

DetectorBank::DetectorBank(std::vector<ConditionalCovariance> covariances) : covs_(std::move(covariances))
{
    if (covs_.empty())
        throw std::invalid_argument("DetectorBank: needs at least one hypothesis");
    for (const auto &c : covs_)
        if (c.dim() != covs_.front().dim())
            throw DimensionError("DetectorBank: covariances differ in dimension");
}

RVector DetectorBank::log_likelihoods(const CVector &y) const
{
    RVector out(covs_.size());
    for (std::size_t i = 0; i < covs_.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = log_likelihood(y, covs_[i]);
    return out;
}

int argmax_lowest(const RVector &scores)
{
    int best = 0;
    for (Eigen::Index i = 1; i < scores.size(); ++i)
        if (scores(i) > scores(best))
            best = static_cast<int>(i);
    return best;
}

int ml_detect(const CVector &y, const DetectorBank &bank)
{
    if (bank.M() == 1)
        return 0;
    // the common -n ln(pi) term cannot change the decision; drop it
    int best = 0;
    double best_score = 0.0;
    for (int i = 0; i < bank.M(); ++i)
    {
        const double s = -bank[i].logdet() - bank[i].quadratic_form(y);
        if (i == 0 || s > best_score)
        {
            best = i;
            best_score = s;
        }
    }
    return best;
}

} // namespace ncsd
