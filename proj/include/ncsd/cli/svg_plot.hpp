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


#ifndef NCSD_CLI_SVG_PLOT_HPP
#define NCSD_CLI_SVG_PLOT_HPP

#include <filesystem>
#include <string>
#include <vector>

namespace ncsd::cli
{

struct PlotSeries
{
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotSpec
{
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool log_x = false;
    bool log_y = false;
    std::vector<PlotSeries> series;
};

/// Static line plot. Points that cannot be placed (nonpositive on a log
/// axis, non-finite) are skipped.
std::string render_svg(const PlotSpec &spec);

/// Best effort: returns false instead of throwing on any failure.
bool write_svg(const std::filesystem::path &path, const PlotSpec &spec) noexcept;

} // namespace ncsd::cli

#endif
