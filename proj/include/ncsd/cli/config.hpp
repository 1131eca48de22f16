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


#ifndef NCSD_CLI_CONFIG_HPP
#define NCSD_CLI_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ncsd/model.hpp"
#include "ncsd/pep.hpp"
#include "ncsd/singularity.hpp"

namespace ncsd::cli
{

/// Config problem with the offending location (line 0 when unknown).
class ConfigError : public std::runtime_error
{
public:
    ConfigError(const std::string &field, const std::string &what, int line = 0);
    const std::string &field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

struct AlphabetSpec
{
    std::string kind = "energy"; ///< energy | grassmannian | union | file
    std::vector<double> levels;  ///< energy
    int M = 0;                   ///< grassmannian
    std::vector<int> sizes;      ///< union, ranks 0..Nt
    std::optional<std::vector<double>> weights;
    int refine_iterations = 0;
    double step = 0.1;
    std::filesystem::path path; ///< file
};

struct SpectrumSpec
{
    std::string profile; ///< isotropic | white | polynomial-decay | file
    double exponent = 1.0;
    std::filesystem::path path;
};

enum class SweepMethod
{
    Auto,        ///< quadrature, Monte Carlo when the quadrature cannot reach tol
    MonteCarlo,
    QuadformCf,
};

struct ExperimentConfig
{
    std::filesystem::path source; ///< config file (relative paths resolve against its directory)
    SystemDims dims;              ///< M filled from the built alphabet
    AlphabetSpec alphabet_spec;
    SpectrumSpec channel;
    SpectrumSpec noise;
    double Pz = 1.0;

    /// Power grid. `power_db` holds the values as written, `power_is_snr`
    /// records which key was used, and `gamma` the linear Px / Pz values
    /// (converted once, at load).
    std::vector<double> power_db;
    bool power_is_snr = true;
    std::vector<double> gamma;

    std::vector<int> nr_grid;
    std::uint64_t trials = 100000;
    std::uint64_t symbol_trials = 0; ///< 0 disables the symbol-error sweep
    double tol = 1e-6;
    double ident_tol = 1e-9;
    double angle_tol = kDefaultAngleTol;
    SweepMethod method = SweepMethod::Auto;
    std::uint64_t seed = 1;
    std::vector<std::pair<int, int>> pairs; ///< empty: all ordered pairs
    std::filesystem::path out_dir = "out";

    /// Alphabet built from alphabet_spec (seeded by `seed`).
    std::optional<Alphabet> alphabet;
};

struct ConfigOverrides
{
    std::optional<std::uint64_t> seed;
    std::optional<std::filesystem::path> out_dir;
};

/// Parses a TOML config, applies the overrides, builds the alphabet and
/// converts the power grid to linear gamma. Throws ConfigError.
ExperimentConfig load_config(const std::filesystem::path &path, const ConfigOverrides &overrides = {});

/// Same from in-memory text (`source` used for messages and relative paths).
ExperimentConfig parse_config(const std::string &text, const std::filesystem::path &source,
                              const ConfigOverrides &overrides = {});

/// Channel and noise models at a given Nr.
ChannelModel build_channel(const ExperimentConfig &cfg, int nr);
NoiseModel build_noise(const ExperimentConfig &cfg, int nr);

/// Full model at (nr, gamma).
ModelInstance build_instance(const ExperimentConfig &cfg, int nr, double gamma);

/// Alphabet from a spec. Relative file paths resolve against base_dir.
Alphabet build_alphabet(const AlphabetSpec &spec, const SystemDims &dims, std::uint64_t seed,
                        const std::filesystem::path &base_dir);

/// Pairs to evaluate: cfg.pairs or every ordered pair (a != b).
std::vector<std::pair<int, int>> selected_pairs(const ExperimentConfig &cfg);

} // namespace ncsd::cli

#endif
