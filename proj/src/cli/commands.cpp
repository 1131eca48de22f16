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


#include "ncsd/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>

#include <fmt/format.h>

#include "ncsd/cli/report.hpp"
#include "ncsd/cli/svg_plot.hpp"
#include "ncsd/codebooks.hpp"
#include "ncsd/divergence.hpp"
#include "ncsd/matrix_io.hpp"
#include "ncsd/parallel.hpp"
#include "ncsd/pep.hpp"

namespace ncsd::cli
{

namespace
{

double to_db(double lin)
{
    return 10.0 * std::log10(lin);
}

/// snr_db column value for grid point g: the value as written for an SNR
/// grid, the resulting receiver SNR for a gamma grid.
double snr_db_at(const ExperimentConfig &cfg, const ModelInstance &m, std::size_t g)
{
    if (cfg.power_is_snr)
        return cfg.power_db[g];
    return to_db(snr(m.alphabet, m.ch, m.pw, m.dims));
}

std::string pair_label(int a, int b)
{
    return fmt::format("{}-{}", a, b);
}

void require_power_grid(const ExperimentConfig &cfg)
{
    if (cfg.gamma.empty())
        throw ConfigError("power", "empty power grid (set snr_db or gamma_db)");
}

void warn_svg(bool ok, const std::filesystem::path &p, std::ostream &out)
{
    if (!ok)
        out << "warning: could not write plot " << p.string() << "\n";
}

std::vector<std::pair<int, int>> unordered_pairs(const ExperimentConfig &cfg)
{
    if (!cfg.pairs.empty())
        return cfg.pairs;
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < cfg.dims.M; ++a)
        for (int b = a + 1; b < cfg.dims.M; ++b)
            out.emplace_back(a, b);
    return out;
}

} // namespace

int cmd_check_singularity(const ExperimentConfig &cfg, std::ostream &out)
{
    const std::vector<double> gammas = cfg.gamma.empty() ? std::vector<double>{1.0} : cfg.gamma;
    SingularityReport rep;
    for (std::size_t g = 0; g < gammas.size(); ++g)
    {
        const ModelInstance m = build_instance(cfg, cfg.dims.Nr, gammas[g]);
        SingularityReport r = singularity_report(m.alphabet, m.ch, m.nz, m.pw, m.dims, cfg.ident_tol, cfg.angle_tol);
        if (g == 0)
        {
            rep = std::move(r);
            continue;
        }
        // identifiability must hold at every grid power
        for (std::size_t i = 0; i < rep.pairs.size(); ++i)
            rep.pairs[i].uniquely_identifiable =
                *rep.pairs[i].uniquely_identifiable && *r.pairs[i].uniquely_identifiable;
        rep.identifiable = *rep.identifiable && *r.identifiable;
    }

    nlohmann::json j = to_json(rep);
    j["M"] = cfg.dims.M;
    j["K"] = cfg.dims.K;
    j["Nt"] = cfg.dims.Nt;
    j["Nr"] = cfg.dims.Nr;
    j["gamma"] = gammas;
    const bool pass = rep.asd_high_snr && rep.identifiable.value_or(true);
    j["verdict"] = pass ? "ASD" : "not-ASD";

    const std::string table = singularity_table(rep);
    write_file(cfg.out_dir / "singularity.json", j.dump(2) + "\n");
    write_file(cfg.out_dir / "singularity.txt", table);
    out << table;
    return pass ? kExitOk : kExitNegative;
}

int cmd_sweep_snr(const ExperimentConfig &cfg, std::ostream &out)
{
    require_power_grid(cfg);
    const auto pairs = selected_pairs(cfg);
    const int nr = cfg.dims.Nr;

    struct Task
    {
        std::size_t g;
        int a, b;
        PepEstimate est;
        bool done = false;
    };
    std::vector<ModelInstance> models;
    std::vector<std::vector<ConditionalCovariance>> covs;
    for (double gamma : cfg.gamma)
    {
        models.push_back(build_instance(cfg, nr, gamma));
        const ModelInstance &m = models.back();
        covs.push_back(conditional_covariances(m.alphabet, m.ch, m.nz, m.pw, nr));
    }
    std::vector<Task> tasks;
    for (std::size_t g = 0; g < cfg.gamma.size(); ++g)
        for (auto [a, b] : pairs)
            tasks.push_back({g, a, b, {}, false});

    // quadrature tasks are independent and single-threaded: spread them out
    if (cfg.method != SweepMethod::MonteCarlo)
    {
        parallel_for(tasks.size(), [&](std::size_t i) {
            Task &t = tasks[i];
            try
            {
                t.est = pep_quadform(covs[t.g][t.a], covs[t.g][t.b], cfg.tol);
                t.done = true;
            }
            catch (const QuadratureError &)
            {
                if (cfg.method == SweepMethod::QuadformCf)
                    throw;
            }
        });
    }
    // Monte Carlo parallelizes internally over trials
    for (Task &t : tasks)
        if (!t.done)
            t.est = pep_monte_carlo(covs[t.g][t.a], covs[t.g][t.b], cfg.trials, cfg.seed);

    CsvTable pep_csv({"snr_db", "pair_a", "pair_b", "pep", "ci95", "method"});
    std::vector<double> snr_db(cfg.gamma.size());
    for (std::size_t g = 0; g < cfg.gamma.size(); ++g)
        snr_db[g] = snr_db_at(cfg, models[g], g);
    std::vector<double> max_pep(cfg.gamma.size(), 0.0);
    std::map<std::pair<int, int>, PlotSeries> series;
    for (const Task &t : tasks)
    {
        pep_csv.add_row({format_real(snr_db[t.g]), std::to_string(t.a), std::to_string(t.b),
                         format_probability(t.est.value), format_probability(t.est.ci95),
                         to_string(t.est.method)});
        max_pep[t.g] = std::max(max_pep[t.g], t.est.value);
        PlotSeries &s = series[{t.a, t.b}];
        s.name = "PEP " + pair_label(t.a, t.b);
        s.x.push_back(snr_db[t.g]);
        s.y.push_back(t.est.value);
    }

    CsvTable sym_csv({"snr_db", "sym_err", "ci95", "pe_lower", "pe_upper", "trials"});
    PlotSeries sym_series{"symbol error", {}, {}};
    if (cfg.symbol_trials > 0 && cfg.dims.M > 1)
    {
        for (std::size_t g = 0; g < cfg.gamma.size(); ++g)
        {
            const SymbolErrorResult r =
                symbol_error_monte_carlo(DetectorBank(covs[g]), cfg.symbol_trials, cfg.seed);
            const ErrorBounds eb = error_prob_bounds(max_pep[g], cfg.dims.M);
            sym_csv.add_row({format_real(snr_db[g]), format_probability(r.average), format_probability(r.ci95),
                             format_probability(eb.lower), format_probability(eb.upper),
                             std::to_string(r.total_trials)});
            sym_series.x.push_back(snr_db[g]);
            sym_series.y.push_back(r.average);
        }
    }

    write_file(cfg.out_dir / "sweep_snr_pep.csv", pep_csv.str());
    write_file(cfg.out_dir / "sweep_snr_symbol_error.csv", sym_csv.str());
    PlotSpec plot{"Error probability vs SNR", "SNR [dB]", "probability", false, true, {}};
    for (auto &[k, s] : series)
        plot.series.push_back(std::move(s));
    if (!sym_series.x.empty())
        plot.series.push_back(std::move(sym_series));
    warn_svg(write_svg(cfg.out_dir / "sweep_snr.svg", plot), cfg.out_dir / "sweep_snr.svg", out);

    out << fmt::format("sweep-snr: {} grid points, {} pairs, {} PEP rows\n", cfg.gamma.size(), pairs.size(),
                       pep_csv.rows());
    return kExitOk;
}

int cmd_sweep_nr(const ExperimentConfig &cfg, std::ostream &out)
{
    if (cfg.nr_grid.size() < 4)
        throw ConfigError("sweep.nr", "need at least 4 Nr values");
    require_power_grid(cfg);
    if (cfg.gamma.size() != 1)
        throw ConfigError("power", "sweep-nr uses a single power point; the grid has " +
                                       std::to_string(cfg.gamma.size()));
    const double gamma = cfg.gamma.front();
    const auto pairs = unordered_pairs(cfg);

    CsvTable csv({"nr", "pair", "jeffreys", "frob_stat", "sigma_min_cring", "sym_err"});
    std::vector<std::vector<double>> J(pairs.size());
    PlotSeries sym_series{"symbol error", {}, {}};
    for (int nr : cfg.nr_grid)
    {
        const ModelInstance m = build_instance(cfg, nr, gamma);
        const auto covs = conditional_covariances(m.alphabet, m.ch, m.nz, m.pw, nr);
        std::string sym = "nan";
        if (cfg.symbol_trials > 0 && cfg.dims.M > 1)
        {
            const double rate = symbol_error_monte_carlo(DetectorBank(covs), cfg.symbol_trials, cfg.seed).average;
            sym = format_probability(rate);
            sym_series.x.push_back(nr);
            sym_series.y.push_back(rate);
        }
        for (std::size_t p = 0; p < pairs.size(); ++p)
        {
            const auto [a, b] = pairs[p];
            const double j = jeffreys_trace(covs[a], covs[b]);
            const EquivalentConditionStats st = equivalent_condition_stats(covs[a], covs[b]);
            J[p].push_back(j);
            csv.add_row({std::to_string(nr), pair_label(a, b), format_real(j), format_real(st.frobenius_discrepancy),
                         format_real(st.sigma_min), sym});
        }
    }

    CsvTable verdicts({"pair", "slope", "verdict"});
    PlotSpec plot{"Jeffreys divergence vs Nr", "Nr", "J", true, true, {}};
    for (std::size_t p = 0; p < pairs.size(); ++p)
    {
        const DivergenceCurve c = classify_curve(cfg.nr_grid, J[p]);
        const std::string label = pair_label(pairs[p].first, pairs[p].second);
        verdicts.add_row({label, format_real(c.slope), to_string(c.verdict)});
        out << fmt::format("pair {}: slope {:.4f}, {}\n", label, c.slope, to_string(c.verdict));
        std::vector<double> xs(cfg.nr_grid.begin(), cfg.nr_grid.end());
        plot.series.push_back({"J " + label, std::move(xs), J[p]});
    }

    write_file(cfg.out_dir / "sweep_nr.csv", csv.str());
    write_file(cfg.out_dir / "sweep_nr_verdicts.csv", verdicts.str());
    warn_svg(write_svg(cfg.out_dir / "sweep_nr.svg", plot), cfg.out_dir / "sweep_nr.svg", out);
    if (!sym_series.x.empty())
    {
        PlotSpec sp{"Symbol error vs Nr", "Nr", "symbol error rate", true, true, {std::move(sym_series)}};
        warn_svg(write_svg(cfg.out_dir / "sweep_nr_symbol_error.svg", sp),
                 cfg.out_dir / "sweep_nr_symbol_error.svg", out);
    }
    return kExitOk;
}

int cmd_design_codebook(const ExperimentConfig &cfg, std::ostream &out)
{
    const AlphabetSpec &as = cfg.alphabet_spec;
    std::optional<Alphabet> alphabet;
    CsvTable log_csv({"rank", "iteration", "objective", "step", "accepted"});
    auto add_log = [&](int rank, const std::vector<DesignLogEntry> &log) {
        for (const DesignLogEntry &e : log)
            log_csv.add_row({std::to_string(rank), std::to_string(e.iteration), format_real(e.objective),
                             format_real(e.step), e.accepted ? "1" : "0"});
    };
    if (as.kind == "grassmannian")
    {
        GrassmannCodebook cb = random_grassmannian(as.M, cfg.dims.K, cfg.dims.Nt, cfg.seed);
        if (as.refine_iterations > 0)
            cb = refine_packing(cb, as.refine_iterations, as.step);
        add_log(cfg.dims.Nt, cb.design_log);
        alphabet = cb.alphabet;
    }
    else if (as.kind == "union")
    {
        SubspaceUnionCodebook cb =
            subspace_union_codebook(as.sizes, cfg.dims.K, cfg.dims.Nt, cfg.seed, as.weights, as.refine_iterations);
        for (std::size_t n = 0; n < cb.design_logs.size(); ++n)
            add_log(static_cast<int>(n), cb.design_logs[n]);
        alphabet = cb.alphabet;
    }
    else
    {
        throw ConfigError("alphabet.kind", "design-codebook needs kind 'grassmannian' or 'union', got '" + as.kind +
                                               "'");
    }

    const CodebookReport rep = validate_codebook(*alphabet);
    const SingularityReport sing = high_snr_singularity(*alphabet, cfg.angle_tol);
    nlohmann::json j;
    j["validation"] = to_json(rep);
    j["singularity"] = to_json(sing);
    j["M"] = alphabet->M();
    j["K"] = alphabet->K();
    j["Nt"] = alphabet->Nt();

    std::filesystem::create_directories(cfg.out_dir);
    save_codebook(cfg.out_dir / "codebook.txt", *alphabet);
    write_file(cfg.out_dir / "codebook_validation.json", j.dump(2) + "\n");
    write_file(cfg.out_dir / "design_log.csv", log_csv.str());

    out << fmt::format("design-codebook: M = {}, min chordal distance = {}, validation {}, column spaces {}\n",
                       alphabet->M(), format_real(rep.min_chordal_distance), rep.all_passed() ? "passed" : "FAILED",
                       sing.asd_high_snr ? "distinct" : "NOT distinct");
    return rep.all_passed() && sing.asd_high_snr ? kExitOk : kExitNegative;
}

int cmd_validate(const ExperimentConfig &cfg, std::ostream &out)
{
    const Alphabet &alphabet = *cfg.alphabet;
    const CodebookReport rep = validate_codebook(alphabet);
    const SingularityReport sing = high_snr_singularity(alphabet, cfg.angle_tol);
    nlohmann::json j;
    j["validation"] = to_json(rep);
    j["singularity"] = to_json(sing);
    try
    {
        j["normalizations"] =
            to_json(check_normalizations(alphabet, build_channel(cfg, cfg.dims.Nr), build_noise(cfg, cfg.dims.Nr),
                                         cfg.dims));
    }
    catch (const std::exception &e)
    {
        j["normalizations"] = {{"error", e.what()}};
    }
    write_file(cfg.out_dir / "validation.json", j.dump(2) + "\n");

    for (const CodebookCheck &c : rep.checks)
        out << fmt::format("{:<22} {:>10} measured {:<14} threshold {:<10} {}\n", c.name,
                           c.claimed ? "claimed" : "not claimed", format_real(c.measured), format_real(c.threshold),
                           c.passed ? "PASS" : "FAIL");
    if (alphabet.M() == 1 || alphabet.mean_energy_per_use() == 0.0)
        out << "warning: degenerate alphabet\n";
    return rep.all_passed() ? kExitOk : kExitNegative;
}

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names = {"check-singularity", "sweep-snr", "sweep-nr", "design-codebook",
                                                   "validate"};
    return names;
}

int run_command(const std::string &name, const std::filesystem::path &config, const ConfigOverrides &overrides,
                std::ostream &out, std::ostream &err)
{
    try
    {
        const ExperimentConfig cfg = load_config(config, overrides);
        if (name == "check-singularity")
            return cmd_check_singularity(cfg, out);
        if (name == "sweep-snr")
            return cmd_sweep_snr(cfg, out);
        if (name == "sweep-nr")
            return cmd_sweep_nr(cfg, out);
        if (name == "design-codebook")
            return cmd_design_codebook(cfg, out);
        if (name == "validate")
            return cmd_validate(cfg, out);
        err << "error: unknown command '" << name << "'\n";
        return kExitError;
    }
    catch (const ConfigError &e)
    {
        err << "config error: " << config.string() << ": " << e.what() << "\n";
        return kExitError;
    }
    catch (const std::exception &e)
    {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

} // namespace ncsd::cli
