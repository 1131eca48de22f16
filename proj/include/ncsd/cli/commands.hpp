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


#ifndef NCSD_CLI_COMMANDS_HPP
#define NCSD_CLI_COMMANDS_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ncsd/cli/config.hpp"

namespace ncsd::cli
{

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitNegative = 2;

// Each command writes its files under cfg.out_dir (created if missing) and
// a short summary to `out`. Library and config errors propagate as
// exceptions; run_command maps them to kExitError.

/// singularity.json + singularity.txt. 0 when every pair has distinct column
/// spaces and distinct covariances at every grid power, 2 otherwise.
int cmd_check_singularity(const ExperimentConfig &cfg, std::ostream &out);

/// sweep_snr_pep.csv (snr_db, pair_a, pair_b, pep, ci95, method),
/// sweep_snr_symbol_error.csv and sweep_snr.svg.
int cmd_sweep_snr(const ExperimentConfig &cfg, std::ostream &out);

/// sweep_nr.csv (nr, pair, jeffreys, frob_stat, sigma_min_cring, sym_err),
/// sweep_nr_verdicts.csv (pair, slope, verdict) and sweep_nr.svg. Needs a
/// grid of at least 4 Nr values and exactly one power point.
int cmd_sweep_nr(const ExperimentConfig &cfg, std::ostream &out);

/// codebook.txt, codebook_validation.json, design_log.csv. Alphabet kind
/// must be grassmannian or union. 0 when the codebook validates and has
/// distinct column spaces, 2 otherwise.
int cmd_design_codebook(const ExperimentConfig &cfg, std::ostream &out);

/// validation.json for any alphabet: codebook checks, model normalizations
/// and the column-space verdict. 0 when the codebook checks pass.
int cmd_validate(const ExperimentConfig &cfg, std::ostream &out);

/// Names accepted by run_command.
const std::vector<std::string> &command_names();

/// Loads the config, dispatches, and maps any exception to kExitError with
/// a message on `err`.
int run_command(const std::string &name, const std::filesystem::path &config, const ConfigOverrides &overrides,
                std::ostream &out, std::ostream &err);

} // namespace ncsd::cli

#endif
