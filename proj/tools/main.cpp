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


#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ncsd/cli/commands.hpp"
#include "ncsd/parallel.hpp"

int main(int argc, char **argv)
{
    CLI::App app{"ncsd: noncoherent MIMO detection experiments"};
    app.require_subcommand(1);

    std::string config;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    std::string out_dir;

    const auto &names = ncsd::cli::command_names();
    const char *help[] = {
        "column-space and identifiability verdict (exit 0 ASD, 2 not ASD)",
        "pairwise and symbol error probability over an SNR grid",
        "Jeffreys divergence and error rate over an Nr grid",
        "build a Grassmannian or union codebook and validate it",
        "validate an alphabet against its declared properties",
    };
    std::vector<CLI::Option *> seed_opts;
    for (std::size_t i = 0; i < names.size(); ++i)
    {
        CLI::App *sub = app.add_subcommand(names[i], help[i]);
        sub->add_option("--config,-c", config, "experiment config (TOML)")->required()->check(CLI::ExistingFile);
        seed_opts.push_back(sub->add_option("--seed", seed, "override the config seed"));
        sub->add_option("--threads", threads, "worker threads (0 = all cores)");
        sub->add_option("--out", out_dir, "override the output directory");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : ncsd::cli::kExitError;
    }

    ncsd::set_thread_count(threads);
    ncsd::cli::ConfigOverrides ov;
    for (CLI::Option *o : seed_opts)
        if (o->count() > 0)
            ov.seed = seed;
    if (!out_dir.empty())
        ov.out_dir = out_dir;

    const std::string name = app.get_subcommands().front()->get_name();
    return ncsd::cli::run_command(name, config, ov, std::cout, std::cerr);
}
