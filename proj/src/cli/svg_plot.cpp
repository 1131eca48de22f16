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


#include "ncsd/cli/svg_plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>

#include <fmt/format.h>

namespace ncsd::cli
{

namespace
{

constexpr double kWidth = 640, kHeight = 420;
constexpr double kLeft = 70, kRight = 20, kTop = 40, kBottom = 50;

constexpr std::array<const char *, 8> kColors = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string &s)
{
    std::string out;
    for (char c : s)
    {
        switch (c)
        {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

struct Axis
{
    bool log = false;
    double lo = 0.0, hi = 1.0;

    bool usable(double v) const { return std::isfinite(v) && (!log || v > 0.0); }
    double t(double v) const { return log ? std::log10(v) : v; }
    double frac(double v) const { return (t(v) - lo) / (hi - lo); }
};

Axis fit_axis(bool log, const std::vector<double> &vals)
{
    Axis a;
    a.log = log;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (double v : vals)
        if (a.usable(v))
        {
            lo = std::min(lo, a.t(v));
            hi = std::max(hi, a.t(v));
        }
    if (!std::isfinite(lo))
    {
        lo = 0.0;
        hi = 1.0;
    }
    if (hi - lo < 1e-12)
    {
        lo -= 0.5;
        hi += 0.5;
    }
    if (log)
    {
        lo = std::floor(lo);
        hi = std::ceil(hi);
    }
    a.lo = lo;
    a.hi = hi;
    return a;
}

std::string tick_label(const Axis &a, double t)
{
    if (a.log)
        return fmt::format("1e{}", static_cast<int>(std::lround(t)));
    return fmt::format("{:.4g}", t);
}

} // namespace

std::string render_svg(const PlotSpec &spec)
{
    std::vector<double> xs, ys;
    for (const auto &s : spec.series)
    {
        xs.insert(xs.end(), s.x.begin(), s.x.end());
        ys.insert(ys.end(), s.y.begin(), s.y.end());
    }
    const Axis ax = fit_axis(spec.log_x, xs);
    const Axis ay = fit_axis(spec.log_y, ys);
    const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
    auto px = [&](double v) { return kLeft + ax.frac(v) * pw; };
    auto py = [&](double v) { return kTop + (1.0 - ay.frac(v)) * ph; };

    std::string out = fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n", kWidth,
        kHeight, kWidth, kHeight);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out += fmt::format("<text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"15\">{}</text>\n",
                       kWidth / 2, escape(spec.title));
    out += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", kLeft,
                       kTop, pw, ph);

    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i)
    {
        const double fx = static_cast<double>(i) / nticks;
        const double x = kLeft + fx * pw;
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>\n", x,
                           kTop, kTop + ph);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                           "font-size=\"11\">{}</text>\n",
                           x, kTop + ph + 16, escape(tick_label(ax, ax.lo + fx * (ax.hi - ax.lo))));
        const double y = kTop + (1.0 - fx) * ph;
        out += fmt::format("<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" stroke=\"#ddd\"/>\n",
                           kLeft, y, kLeft + pw);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"end\" font-family=\"sans-serif\" "
                           "font-size=\"11\">{}</text>\n",
                           kLeft - 6, y + 4, escape(tick_label(ay, ay.lo + fx * (ay.hi - ay.lo))));
    }
    out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"12\">{}</text>\n",
                       kLeft + pw / 2, kHeight - 12, escape(spec.xlabel));
    out += fmt::format("<text x=\"16\" y=\"{:.1f}\" text-anchor=\"middle\" font-family=\"sans-serif\" "
                       "font-size=\"12\" transform=\"rotate(-90 16 {:.1f})\">{}</text>\n",
                       kTop + ph / 2, kTop + ph / 2, escape(spec.ylabel));

    for (std::size_t si = 0; si < spec.series.size(); ++si)
    {
        const PlotSeries &s = spec.series[si];
        const char *color = kColors[si % kColors.size()];
        std::string pts;
        for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i)
            if (ax.usable(s.x[i]) && ay.usable(s.y[i]))
                pts += fmt::format("{:.2f},{:.2f} ", px(s.x[i]), py(s.y[i]));
        if (!pts.empty())
            out += fmt::format("<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" points=\"{}\"/>\n", color,
                               pts);
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"11\" "
                           "fill=\"{}\">{}</text>\n",
                           kLeft + 8, kTop + 14 + 14.0 * static_cast<double>(si), color, escape(s.name));
    }
    out += "</svg>\n";
    return out;
}

bool write_svg(const std::filesystem::path &path, const PlotSpec &spec) noexcept
{
    try
    {
        const std::string svg = render_svg(spec);
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        os << svg;
        return static_cast<bool>(os);
    }
    catch (...)
    {
        return false;
    }
}

} // namespace ncsd::cli
