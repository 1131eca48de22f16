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


#include <catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ncsd/cli/commands.hpp"
#include "ncsd/cli/config.hpp"
#include "ncsd/cli/report.hpp"
#include "ncsd/matrix_io.hpp"
#include "ncsd/parallel.hpp"
#include "test_support.hpp"

using namespace ncsd;
using namespace ncsd::cli;
namespace fs = std::filesystem;

namespace
{

const fs::path kConfigs = NCSD_CONFIG_DIR;

fs::path scratch(const std::string &name)
{
    const fs::path p = fs::temp_directory_path() / "ncsd_cli_tests" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

struct Run
{
    int code;
    std::string out, err;
};

Run run(const std::string &cmd, const fs::path &config, const fs::path &out_dir, std::optional<std::uint64_t> seed = {})
{
    std::ostringstream o, e;
    ConfigOverrides ov;
    ov.out_dir = out_dir;
    ov.seed = seed;
    const int code = run_command(cmd, config, ov, o, e);
    return {code, o.str(), e.str()};
}

fs::path write_config(const fs::path &dir, const std::string &text)
{
    const fs::path p = dir / "config.toml";
    std::ofstream(p) << text;
    return p;
}

std::vector<std::vector<std::string>> read_csv(const fs::path &p)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    std::string line;
    while (std::getline(in, line))
    {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        std::string c;
        while (std::getline(ls, c, ','))
            cells.push_back(c);
        rows.push_back(cells);
    }
    return rows;
}

const std::string kEnergySweep = R"(
[system]
K = 1
Nt = 1
Nr = 2

[alphabet]
kind = "energy"
levels = [0.0, 2.0]

[channel]
profile = "isotropic"

[noise]
profile = "white"

[power]
snr_db = [0, 10, 20, 30, 40]

[sweep]
trials = 20000
symbol_trials = 20000
method = "monte-carlo"
seed = 3
)";

} // namespace

TEST_CASE("number formatting", "[cli]")
{
    REQUIRE(format_probability(1.234567e-3) == "1.23457e-03");
    REQUIRE(format_probability(1.0) == "1.00000e+00");
    REQUIRE(format_probability(0.0) == "0.00000e+00");
    REQUIRE(format_real(0.1) == "0.1");
    REQUIRE(format_real(1.0 / 3.0) == "0.3333333333");
    CsvTable t({"a", "b"});
    t.add_row({"1", "2"});
    REQUIRE(t.str() == "a,b\n1,2\n");
    REQUIRE_THROWS(t.add_row({"1"}));
}

TEST_CASE("config parsing", "[cli][config]")
{
    const ExperimentConfig cfg = parse_config(kEnergySweep, "inline.toml");
    REQUIRE(cfg.dims.K == 1);
    REQUIRE(cfg.dims.Nr == 2);
    REQUIRE(cfg.dims.M == 2);
    REQUIRE(cfg.power_db.size() == 5);
    REQUIRE(cfg.method == SweepMethod::MonteCarlo);
    REQUIRE(cfg.trials == 20000);
    // snr_db is converted through the receiver SNR: snr = gamma * Nr * mean|x|^2 tr(Ch) / (Nt Nr) = gamma here
    REQUIRE(std::abs(cfg.gamma[1] - 10.0) < 1e-12);
    REQUIRE(selected_pairs(cfg).size() == 2);

    const ExperimentConfig ov = parse_config(kEnergySweep, "inline.toml", ConfigOverrides{99, fs::path("elsewhere")});
    REQUIRE(ov.seed == 99);
    REQUIRE(ov.out_dir == fs::path("elsewhere"));

    auto error_of = [](const std::string &text) -> std::pair<std::string, int> {
        try
        {
            parse_config(text, "inline.toml");
        }
        catch (const ConfigError &e)
        {
            return {e.field(), e.line()};
        }
        return {"", -1};
    };
    std::string bad = kEnergySweep;
    bad.replace(bad.find("trials = 20000"), 14, "trials = 0");
    REQUIRE(error_of(bad).first == "sweep.trials");

    bad = kEnergySweep;
    bad.replace(bad.find("seed = 3"), 8, "sead = 3");
    REQUIRE(error_of(bad).first == "sweep.sead");

    bad = kEnergySweep;
    bad.replace(bad.find("Nt = 1"), 6, "Nt = \"x\"");
    const auto e = error_of(bad);
    REQUIRE(e.first == "system.Nt");
    REQUIRE(e.second == 4);

    bad = kEnergySweep;
    bad.replace(bad.find("snr_db = [0, 10, 20, 30, 40]"), 28, "snr_db = []");
    REQUIRE(error_of(bad).first == "power.snr_db");
}

TEST_CASE("check-singularity exit codes", "[cli]")
{
    const fs::path out = scratch("check");
    const Run ok = run("check-singularity", kConfigs / "energy_asd.toml", out / "asd");
    REQUIRE(ok.code == kExitOk);
    REQUIRE(fs::exists(out / "asd" / "singularity.json"));
    REQUIRE(fs::exists(out / "asd" / "singularity.txt"));
    const auto j = nlohmann::json::parse(slurp(out / "asd" / "singularity.json"));
    REQUIRE(j["asd_high_snr"].get<bool>());

    REQUIRE(run("check-singularity", kConfigs / "energy_floor.toml", out / "floor").code == kExitNegative);

    const Run bad = run("check-singularity", kConfigs / "malformed.toml", out / "bad");
    REQUIRE(bad.code == kExitError);
    REQUIRE(bad.err.find("line") != std::string::npos);

    REQUIRE(run("no-such-command", kConfigs / "energy_asd.toml", out / "x").code == kExitError);
    REQUIRE(run("check-singularity", out / "missing.toml", out / "x").code == kExitError);
}

TEST_CASE("sweep-snr outputs", "[cli]")
{
    const fs::path dir = scratch("sweep_snr");
    const fs::path cfg = write_config(dir, kEnergySweep);
    const Run r = run("sweep-snr", cfg, dir / "out");
    REQUIRE(r.code == kExitOk);
    const auto pep = read_csv(dir / "out" / "sweep_snr_pep.csv");
    REQUIRE(pep[0] == std::vector<std::string>{"snr_db", "pair_a", "pair_b", "pep", "ci95", "method"});
    REQUIRE(pep.size() == 1 + 5 * 2);
    for (std::size_t i = 1; i < pep.size(); ++i)
        REQUIRE(pep[i][5] == "monte-carlo");
    const auto sym = read_csv(dir / "out" / "sweep_snr_symbol_error.csv");
    REQUIRE(sym[0] == std::vector<std::string>{"snr_db", "sym_err", "ci95", "pe_lower", "pe_upper", "trials"});
    REQUIRE(sym.size() == 6);
    REQUIRE(fs::exists(dir / "out" / "sweep_snr.svg"));

    // ASD alphabet: every PEP column non-increasing in SNR up to CI noise
    for (const auto &[a, b] : std::vector<std::pair<std::string, std::string>>{{"0", "1"}, {"1", "0"}})
    {
        double prev = 2.0, prev_ci = 0.0;
        for (std::size_t i = 1; i < pep.size(); ++i)
            if (pep[i][1] == a && pep[i][2] == b)
            {
                const double v = std::stod(pep[i][3]), ci = std::stod(pep[i][4]);
                REQUIRE(v <= prev + ci + prev_ci);
                prev = v;
                prev_ci = ci;
            }
    }
}

TEST_CASE("sweep-snr: empty grid and quadrature method", "[cli]")
{
    const fs::path dir = scratch("sweep_snr_q");
    std::string text = kEnergySweep;
    text.replace(text.find("snr_db = [0, 10, 20, 30, 40]"), 28, "snr_db = []");
    REQUIRE(run("sweep-snr", write_config(dir, text), dir / "out").code == kExitError);

    text = kEnergySweep;
    text.replace(text.find("\"monte-carlo\""), 13, "\"quadform-cf\"");
    REQUIRE(run("sweep-snr", write_config(dir, text), dir / "out").code == kExitOk);
    const auto pep = read_csv(dir / "out" / "sweep_snr_pep.csv");
    for (std::size_t i = 1; i < pep.size(); ++i)
        REQUIRE(pep[i][5] == "quadform-cf");
    // 10 dB: Sigma_0 = I, Sigma_1 = 11 I (Nr = 2), so L_01 <= 0 <=> |y|^2 >= t = 2 ln 11 / (1 - 1/11).
    // Under S_0 |y|^2 ~ Gamma(2, 1): P(0 -> 1) = e^-t (1 + t); under S_1 |y|^2 / 11 ~ Gamma(2, 1).
    const double t = 2 * std::log(11.0) / (1 - 1 / 11.0);
    const double ref01 = std::exp(-t) * (1 + t);
    const double ref10 = 1 - std::exp(-t / 11) * (1 + t / 11);
    int found = 0;
    for (std::size_t i = 1; i < pep.size(); ++i)
        if (pep[i][0] == "10")
        {
            ++found;
            const double ref = pep[i][1] == "0" ? ref01 : ref10;
            REQUIRE(std::abs(std::stod(pep[i][3]) - ref) < 1e-5);
        }
    REQUIRE(found == 2);
}

TEST_CASE("sweep-snr: rotated codeword pair keeps a flat PEP", "[cli]")
{
    const fs::path dir = scratch("rotated");
    test::Gen g(101);
    const CMatrix S = g.truncated_unitary(4, 2) * std::sqrt(2.0);
    Alphabet a({Codeword(S), Codeword(S * g.unitary(2))});
    save_codebook(dir / "rotated.txt", a);
    const std::string text = R"(
[system]
K = 4
Nt = 2
Nr = 2

[alphabet]
kind = "file"
path = "rotated.txt"

[channel]
profile = "isotropic"

[noise]
profile = "white"

[power]
snr_db = [20, 30, 40, 50]

[sweep]
trials = 20000
method = "monte-carlo"
seed = 5
)";
    REQUIRE(run("sweep-snr", write_config(dir, text), dir / "out").code == kExitOk);
    const auto pep = read_csv(dir / "out" / "sweep_snr_pep.csv");
    REQUIRE(pep.size() == 1 + 4 * 2);
    for (std::size_t i = 1; i < pep.size(); ++i)
        REQUIRE(std::stod(pep[i][3]) == 1.0);
}

TEST_CASE("CSV output does not depend on the thread count", "[cli][parallel]")
{
    const fs::path dir = scratch("threads");
    const fs::path cfg = write_config(dir, kEnergySweep);
    set_thread_count(1);
    REQUIRE(run("sweep-snr", cfg, dir / "t1").code == kExitOk);
    set_thread_count(5);
    REQUIRE(run("sweep-snr", cfg, dir / "t5").code == kExitOk);
    set_thread_count(0);
    for (const char *f : {"sweep_snr_pep.csv", "sweep_snr_symbol_error.csv"})
    {
        const std::string a = slurp(dir / "t1" / f), b = slurp(dir / "t5" / f);
        REQUIRE(!a.empty());
        REQUIRE(a == b);
    }
    REQUIRE(run("sweep-snr", cfg, dir / "s9", 9).code == kExitOk);
    REQUIRE(slurp(dir / "s9" / "sweep_snr_pep.csv") != slurp(dir / "t1" / "sweep_snr_pep.csv"));
}

TEST_CASE("sweep-nr outputs and the phase-only pair", "[cli]")
{
    const fs::path dir = scratch("sweep_nr");
    Alphabet a({Codeword(CMatrix::Constant(1, 1, 1.0)), Codeword(CMatrix::Constant(1, 1, std::polar(1.0, 2.0)))});
    save_codebook(dir / "phase.txt", a);
    const std::string text = R"(
[system]
K = 1
Nt = 1
Nr = 4

[alphabet]
kind = "file"
path = "phase.txt"

[channel]
profile = "polynomial-decay"
exponent = 1.0

[noise]
profile = "polynomial-decay"
exponent = 2.0

[power]
gamma_db = [0.0]

[sweep]
nr = [4, 8, 16, 32]
symbol_trials = 2000
seed = 2
)";
    REQUIRE(run("sweep-nr", write_config(dir, text), dir / "out").code == kExitOk);
    const auto rows = read_csv(dir / "out" / "sweep_nr.csv");
    REQUIRE(rows[0] == std::vector<std::string>{"nr", "pair", "jeffreys", "frob_stat", "sigma_min_cring", "sym_err"});
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 1; i < rows.size(); ++i)
    {
        REQUIRE(rows[i][1] == "0-1");
        REQUIRE(std::abs(std::stod(rows[i][2])) < 1e-12);
    }
    const auto v = read_csv(dir / "out" / "sweep_nr_verdicts.csv");
    REQUIRE(v[0] == std::vector<std::string>{"pair", "slope", "verdict"});
    REQUIRE(v[1][2] == "bounded-evidence");

    std::string few = text;
    few.replace(few.find("nr = [4, 8, 16, 32]"), 19, "nr = [4, 8, 16]");
    REQUIRE(run("sweep-nr", write_config(dir, few), dir / "out2").code == kExitError);
}

TEST_CASE("design-codebook", "[cli]")
{
    const fs::path out = scratch("design");
    const Run u = run("design-codebook", kConfigs / "union_design.toml", out / "union");
    REQUIRE(u.code == kExitOk);
    const Alphabet a = load_codebook(out / "union" / "codebook.txt");
    REQUIRE(a.M() == 5);
    REQUIRE(a.declared_ranks == std::vector<int>{0, 1, 1, 1, 2});
    const auto j = nlohmann::json::parse(slurp(out / "union" / "codebook_validation.json"));
    REQUIRE(j["validation"]["all_passed"].get<bool>());
    REQUIRE(j["singularity"]["asd_high_snr"].get<bool>());
    REQUIRE(read_csv(out / "union" / "design_log.csv")[0] ==
            std::vector<std::string>{"rank", "iteration", "objective", "step", "accepted"});

    const Run gr = run("design-codebook", kConfigs / "grassmann_design.toml", out / "grass");
    REQUIRE(gr.code == kExitOk);
    REQUIRE(gr.out.find("min chordal distance") != std::string::npos);
    const auto jg = nlohmann::json::parse(slurp(out / "grass" / "codebook_validation.json"));
    REQUIRE(jg["validation"]["min_chordal_distance"].get<double>() > 0.0);
    REQUIRE(jg["M"].get<int>() == 8);

    const Run inf = run("design-codebook", kConfigs / "grassmann_infeasible.toml", out / "inf");
    REQUIRE(inf.code == kExitError);
    REQUIRE(inf.err.find("single point") != std::string::npos);

    REQUIRE(run("design-codebook", kConfigs / "energy_asd.toml", out / "energy").code == kExitError);

    // the designed file feeds back into check-singularity and validate
    const fs::path dir = scratch("design_check");
    fs::copy_file(out / "union" / "codebook.txt", dir / "cb.txt");
    const std::string text = R"(
[system]
K = 2
Nt = 2
Nr = 1

[alphabet]
kind = "file"
path = "cb.txt"

[channel]
profile = "isotropic"

[noise]
profile = "white"

[power]
snr_db = [10]
)";
    const fs::path cfg = write_config(dir, text);
    REQUIRE(run("check-singularity", cfg, dir / "out").code == kExitOk);
    REQUIRE(run("validate", cfg, dir / "out").code == kExitOk);
    REQUIRE(fs::exists(dir / "out" / "validation.json"));
}

TEST_CASE("validate", "[cli]")
{
    const fs::path out = scratch("validate");
    REQUIRE(run("validate", kConfigs / "energy_floor.toml", out).code == kExitOk);
    const auto j = nlohmann::json::parse(slurp(out / "validation.json"));
    REQUIRE(j["validation"]["all_passed"].get<bool>());
    REQUIRE_FALSE(j["singularity"]["asd_high_snr"].get<bool>());
}

TEST_CASE("command names", "[cli]")
{
    REQUIRE(command_names() ==
            std::vector<std::string>{"check-singularity", "sweep-snr", "sweep-nr", "design-codebook", "validate"});
}
