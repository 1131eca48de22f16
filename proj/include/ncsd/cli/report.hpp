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


#ifndef NCSD_CLI_REPORT_HPP
#define NCSD_CLI_REPORT_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncsd/codebooks.hpp"
#include "ncsd/model.hpp"
#include "ncsd/singularity.hpp"

namespace ncsd::cli
{

/// Probabilities: scientific notation, 6 significant digits, locale independent.
std::string format_probability(double p);
/// Other reals: shortest form with up to 10 significant digits.
std::string format_real(double v);

/// Comma-separated table with a fixed header; rendered only on save.
class CsvTable
{
public:
    explicit CsvTable(std::vector<std::string> header);
    /// Throws std::invalid_argument on a column-count mismatch.
    void add_row(std::vector<std::string> cells);
    std::size_t rows() const noexcept { return rows_.size(); }
    std::string str() const;

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

/// Writes the whole content or throws std::runtime_error.
void write_file(const std::filesystem::path &path, const std::string &content);

nlohmann::json to_json(const SingularityReport &rep);
nlohmann::json to_json(const CodebookReport &rep);
nlohmann::json to_json(const NormalizationReport &rep);

/// Fixed-width human-readable pair table.
std::string singularity_table(const SingularityReport &rep);

} // namespace ncsd::cli

#endif
