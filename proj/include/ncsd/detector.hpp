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


#ifndef NCSD_DETECTOR_HPP
#define NCSD_DETECTOR_HPP

#include <vector>

#include "ncsd/model.hpp"

namespace ncsd
{

/// ln f(y | S_i) = -n ln(pi) - ln|Sigma| - y^H Sigma^-1 y, with n = dim(y).
double log_likelihood(const CVector &y, const ConditionalCovariance &cov);

/// L_{a,b}(y) = y^H (Sigma_b^-1 - Sigma_a^-1) y - ln(|Sigma_a| / |Sigma_b|).
double llr(const CVector &y, const ConditionalCovariance &covA, const ConditionalCovariance &covB);

/// The M conditional covariances of an alphabet, in alphabet order.
class DetectorBank
{
public:
    explicit DetectorBank(std::vector<ConditionalCovariance> covariances);

    int M() const noexcept { return static_cast<int>(covs_.size()); }
    int dim() const noexcept { return covs_.front().dim(); }
    const ConditionalCovariance &operator[](std::size_t i) const { return covs_.at(i); }
    const std::vector<ConditionalCovariance> &covariances() const noexcept { return covs_; }

    /// log_likelihood(y, Sigma_i) for all i.
    RVector log_likelihoods(const CVector &y) const;

private:
    std::vector<ConditionalCovariance> covs_;
};

/// argmax_i ln f(y | S_i); ties go to the lowest index.
int ml_detect(const CVector &y, const DetectorBank &bank);

/// Same decision rule over precomputed scores (exposed for testing).
int argmax_lowest(const RVector &scores);

} // namespace ncsd

#endif
