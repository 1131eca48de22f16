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


#include "ncsd/cli/report.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>

namespace ncsd::cli
{

std::string format_probability(double p)
{
    return fmt::format("{:.5e}", p);
}

std::string format_real(double v)
{
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    return fmt::format("{:.10g}", v);
}

CsvTable::CsvTable(std::vector<std::string> header) : header_(std::move(header))
{
}

void CsvTable::add_row(std::vector<std::string> cells)
{
    if (cells.size() != header_.size())
        throw std::invalid_argument("CsvTable: row has " + std::to_string(cells.size()) + " cells, header has " +
                                    std::to_string(header_.size()));
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i)
        {
            if (i)
                out += ',';
            out += cells[i];
        }
        out += '\n';
    };
    line(header_);
    for (const auto &r : rows_)
        line(r);
    return out;
}

void write_file(const std::filesystem::path &path, const std::string &content)
{
    if (path.has_parent_path())
        std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    os << content;
    os.flush();
    if (!os)
        throw std::runtime_error("cannot write " + path.string());
}

namespace
{

nlohmann::json number_or_null(double v)
{
    if (std::isfinite(v))
        return v;
    return nullptr;
}

} // namespace

nlohmann::json to_json(const SingularityReport &rep)
{
    nlohmann::json j;
    j["angle_tol"] = rep.angle_tol;
    j["asd_high_snr"] = rep.asd_high_snr;
    if (rep.identifiable)
        j["uniquely_identifiable"] = *rep.identifiable;
    j["min_separation"] = number_or_null(rep.min_separation());
    nlohmann::json pairs = nlohmann::json::array();
    for (const PairRecord &p : rep.pairs)
    {
        nlohmann::json r;
        r["a"] = p.a;
        r["b"] = p.b;
        r["rank_a"] = p.rank_a;
        r["rank_b"] = p.rank_b;
        r["colsp_distinct"] = p.colsp_distinct;
        r["largest_angle"] = p.largest_angle;
        r["smallest_angle"] = p.smallest_angle;
        if (p.uniquely_identifiable)
            r["uniquely_identifiable"] = *p.uniquely_identifiable;
        pairs.push_back(std::move(r));
    }
    j["pairs"] = std::move(pairs);
    return j;
}

nlohmann::json to_json(const CodebookReport &rep)
{
    nlohmann::json j;
    j["all_passed"] = rep.all_passed();
    j["ranks"] = rep.ranks;
    j["min_chordal_distance"] = number_or_null(rep.min_chordal_distance);
    nlohmann::json checks = nlohmann::json::array();
    for (const CodebookCheck &c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"claimed", c.claimed},
                          {"measured", number_or_null(c.measured)},
                          {"threshold", c.threshold},
                          {"passed", c.passed}});
    j["checks"] = std::move(checks);
    return j;
}

nlohmann::json to_json(const NormalizationReport &rep)
{
    nlohmann::json j;
    j["all_passed"] = rep.all_passed();
    nlohmann::json checks = nlohmann::json::array();
    for (const ConstraintCheck &c : rep.checks)
        checks.push_back(
            {{"name", c.name}, {"measured", c.measured}, {"expected", c.expected}, {"passed", c.passed}});
    j["checks"] = std::move(checks);
    return j;
}

std::string singularity_table(const SingularityReport &rep)
{
    std::string out = fmt::format("{:>4} {:>4} {:>6} {:>6} {:>14} {:>14} {:>9} {:>12}\n", "a", "b", "rank_a",
                                  "rank_b", "largest_angle", "smallest_angle", "distinct", "identifiable");
    for (const PairRecord &p : rep.pairs)
        out += fmt::format("{:>4} {:>4} {:>6} {:>6} {:>14.6e} {:>14.6e} {:>9} {:>12}\n", p.a, p.b, p.rank_a,
                           p.rank_b, p.largest_angle, p.smallest_angle, p.colsp_distinct ? "yes" : "NO",
                           p.uniquely_identifiable ? (*p.uniquely_identifiable ? "yes" : "NO") : "-");
    out += fmt::format("high-SNR verdict: {}\n", rep.asd_high_snr ? "ASD" : "error floor (not ASD)");
    if (rep.identifiable)
        out += fmt::format("unique identifiability: {}\n", *rep.identifiable ? "holds" : "violated");
    return out;
}

} // namespace ncsd::cli
