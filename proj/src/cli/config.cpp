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


#include "ncsd/cli/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <toml.hpp>

#include "ncsd/codebooks.hpp"
#include "ncsd/matrix_io.hpp"

namespace ncsd::cli
{

namespace
{

std::string located(const std::string &field, const std::string &what, int line)
{
    std::ostringstream os;
    if (line > 0)
        os << "line " << line << ": ";
    os << field << ": " << what;
    return os.str();
}

int line_of(const toml::node *n)
{
    return n ? static_cast<int>(n->source().begin.line) : 0;
}

/// Typed accessors over one [section] with unknown-key detection.
class Section
{
public:
    Section(const toml::table &root, std::string name, std::set<std::string> allowed)
        : name_(std::move(name))
    {
        const toml::node *n = root.get(name_);
        if (!n)
            return;
        tbl_ = n->as_table();
        if (!tbl_)
            throw ConfigError(name_, "expected a [" + name_ + "] table", line_of(n));
        for (const auto &[k, v] : *tbl_)
            if (!allowed.count(std::string(k.str())))
                throw ConfigError(field(std::string(k.str())), "unknown key", line_of(&v));
    }

    bool present() const noexcept { return tbl_ != nullptr; }
    bool has(const std::string &key) const { return tbl_ && tbl_->get(key); }
    std::string field(const std::string &key) const { return name_ + "." + key; }
    int line(const std::string &key) const { return tbl_ ? line_of(tbl_->get(key)) : 0; }

    std::optional<std::int64_t> integer(const std::string &key) const
    {
        const toml::node *n = node(key);
        if (!n)
            return std::nullopt;
        if (auto v = n->value_exact<std::int64_t>())
            return v;
        throw ConfigError(field(key), "expected an integer", line_of(n));
    }

    std::optional<double> real(const std::string &key) const
    {
        const toml::node *n = node(key);
        if (!n)
            return std::nullopt;
        if (n->is_integer() || n->is_floating_point())
            return n->value<double>();
        throw ConfigError(field(key), "expected a number", line_of(n));
    }

    std::optional<std::string> string(const std::string &key) const
    {
        const toml::node *n = node(key);
        if (!n)
            return std::nullopt;
        if (auto v = n->value_exact<std::string>())
            return v;
        throw ConfigError(field(key), "expected a string", line_of(n));
    }

    std::optional<std::vector<double>> reals(const std::string &key) const
    {
        const toml::array *a = array(key);
        if (!a)
            return std::nullopt;
        std::vector<double> out;
        for (const auto &e : *a)
        {
            if (!(e.is_integer() || e.is_floating_point()))
                throw ConfigError(field(key), "array entries must be numbers", line_of(&e));
            out.push_back(*e.value<double>());
        }
        return out;
    }

    std::optional<std::vector<std::int64_t>> integers(const std::string &key) const
    {
        const toml::array *a = array(key);
        if (!a)
            return std::nullopt;
        std::vector<std::int64_t> out;
        for (const auto &e : *a)
        {
            auto v = e.value_exact<std::int64_t>();
            if (!v)
                throw ConfigError(field(key), "array entries must be integers", line_of(&e));
            out.push_back(*v);
        }
        return out;
    }

    std::optional<std::vector<std::pair<int, int>>> int_pairs(const std::string &key) const
    {
        const toml::array *a = array(key);
        if (!a)
            return std::nullopt;
        std::vector<std::pair<int, int>> out;
        for (const auto &e : *a)
        {
            const toml::array *p = e.as_array();
            if (!p || p->size() != 2 || !p->get(0)->is_integer() || !p->get(1)->is_integer())
                throw ConfigError(field(key), "entries must be [a, b] integer pairs", line_of(&e));
            out.emplace_back(static_cast<int>(*p->get(0)->value<std::int64_t>()),
                             static_cast<int>(*p->get(1)->value<std::int64_t>()));
        }
        return out;
    }

private:
    const toml::node *node(const std::string &key) const { return tbl_ ? tbl_->get(key) : nullptr; }

    const toml::array *array(const std::string &key) const
    {
        const toml::node *n = node(key);
        if (!n)
            return nullptr;
        if (const toml::array *a = n->as_array())
            return a;
        throw ConfigError(field(key), "expected an array", line_of(n));
    }

    std::string name_;
    const toml::table *tbl_ = nullptr;
};

int checked_int(std::int64_t v, const Section &s, const std::string &key, std::int64_t lo)
{
    if (v < lo || v > 1'000'000'000)
        throw ConfigError(s.field(key), "must be an integer >= " + std::to_string(lo), s.line(key));
    return static_cast<int>(v);
}

std::filesystem::path resolve(const std::filesystem::path &p, const std::filesystem::path &base)
{
    return p.is_absolute() || base.empty() ? p : base / p;
}

std::filesystem::path base_dir_of(const ExperimentConfig &cfg)
{
    return cfg.source.has_parent_path() ? cfg.source.parent_path() : std::filesystem::path{};
}

SpectrumSpec read_spectrum(const Section &s, const char *default_profile, const std::filesystem::path &base)
{
    SpectrumSpec spec;
    spec.profile = s.string("profile").value_or(default_profile);
    static const std::set<std::string> known = {"isotropic", "white", "polynomial-decay", "file"};
    if (!known.count(spec.profile))
        throw ConfigError(s.field("profile"),
                          "unknown profile '" + spec.profile + "' (isotropic, white, polynomial-decay, file)",
                          s.line("profile"));
    if (auto e = s.real("exponent"))
    {
        if (!std::isfinite(*e) || *e < 0.0)
            throw ConfigError(s.field("exponent"), "must be finite and >= 0", s.line("exponent"));
        spec.exponent = *e;
    }
    if (spec.profile == "file")
    {
        auto p = s.string("path");
        if (!p)
            throw ConfigError(s.field("path"), "required for profile 'file'", s.line("profile"));
        spec.path = resolve(*p, base);
        if (!std::filesystem::exists(spec.path))
            throw ConfigError(s.field("path"), "file not found: " + spec.path.string(), s.line("path"));
    }
    return spec;
}

} // namespace

ConfigError::ConfigError(const std::string &field, const std::string &what, int line)
    : std::runtime_error(located(field, what, line)), field_(field), line_(line)
{
}

ChannelModel build_channel(const ExperimentConfig &cfg, int nr)
{
    const SpectrumSpec &s = cfg.channel;
    const int Nt = cfg.dims.Nt;
    if (s.profile == "isotropic" || s.profile == "white")
        return ChannelModel::isotropic(Nt, nr);
    if (s.profile == "polynomial-decay")
        return ChannelModel::polynomial_decay(Nt, nr, s.exponent);
    ChannelModel ch(load_matrix(s.path));
    if (ch.dim() != Nt * nr)
        throw ConfigError("channel.path", "matrix is " + std::to_string(ch.dim()) + " x " + std::to_string(ch.dim()) +
                                              ", expected Nt*Nr = " + std::to_string(Nt * nr));
    return ch;
}

NoiseModel build_noise(const ExperimentConfig &cfg, int nr)
{
    const SpectrumSpec &s = cfg.noise;
    const int K = cfg.dims.K;
    if (s.profile == "isotropic" || s.profile == "white")
        return NoiseModel::white(K, nr, cfg.Pz);
    if (s.profile == "polynomial-decay")
        return NoiseModel::polynomial_decay(K, nr, s.exponent, cfg.Pz);
    NoiseModel nz(load_matrix(s.path), cfg.Pz);
    if (nz.dim() != K * nr)
        throw ConfigError("noise.path", "matrix is " + std::to_string(nz.dim()) + " x " + std::to_string(nz.dim()) +
                                            ", expected K*Nr = " + std::to_string(K * nr));
    return nz;
}

ModelInstance build_instance(const ExperimentConfig &cfg, int nr, double gamma)
{
    SystemDims d = cfg.dims;
    d.Nr = nr;
    return {*cfg.alphabet, build_channel(cfg, nr), build_noise(cfg, nr), PowerConfig::from_gamma(gamma, cfg.Pz), d};
}

Alphabet build_alphabet(const AlphabetSpec &spec, const SystemDims &dims, std::uint64_t seed,
                        const std::filesystem::path &base_dir)
{
    if (spec.kind == "energy")
        return energy_constellation(spec.levels, dims.K, dims.Nt);
    if (spec.kind == "grassmannian")
    {
        GrassmannCodebook cb = random_grassmannian(spec.M, dims.K, dims.Nt, seed);
        if (spec.refine_iterations > 0)
            cb = refine_packing(cb, spec.refine_iterations, spec.step);
        return cb.alphabet;
    }
    if (spec.kind == "union")
        return subspace_union_codebook(spec.sizes, dims.K, dims.Nt, seed, spec.weights, spec.refine_iterations)
            .alphabet;
    Alphabet a = load_codebook(resolve(spec.path, base_dir));
    if (a.K() != dims.K || a.Nt() != dims.Nt)
        throw ConfigError("alphabet.path", "codewords are " + std::to_string(a.K()) + " x " + std::to_string(a.Nt()) +
                                               ", expected K x Nt = " + std::to_string(dims.K) + " x " +
                                               std::to_string(dims.Nt));
    return a;
}

std::vector<std::pair<int, int>> selected_pairs(const ExperimentConfig &cfg)
{
    if (!cfg.pairs.empty())
        return cfg.pairs;
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < cfg.dims.M; ++a)
        for (int b = 0; b < cfg.dims.M; ++b)
            if (a != b)
                out.emplace_back(a, b);
    return out;
}

ExperimentConfig parse_config(const std::string &text, const std::filesystem::path &source,
                              const ConfigOverrides &overrides)
{
    toml::table root;
    try
    {
        root = toml::parse(text, source.string());
    }
    catch (const toml::parse_error &e)
    {
        throw ConfigError("syntax", std::string(e.description()), static_cast<int>(e.source().begin.line));
    }
    for (const auto &[k, v] : root)
    {
        static const std::set<std::string> sections = {"system", "alphabet", "channel", "noise",
                                                       "power",  "sweep",    "output"};
        if (!sections.count(std::string(k.str())))
            throw ConfigError(std::string(k.str()), "unknown section", line_of(&v));
    }

    ExperimentConfig cfg;
    cfg.source = source;
    const std::filesystem::path base = base_dir_of(cfg);

    const Section sys(root, "system", {"K", "Nt", "Nr"});
    if (!sys.present())
        throw ConfigError("system", "missing [system] section");
    if (auto v = sys.integer("K"))
        cfg.dims.K = checked_int(*v, sys, "K", 1);
    else
        throw ConfigError("system.K", "required");
    if (auto v = sys.integer("Nt"))
        cfg.dims.Nt = checked_int(*v, sys, "Nt", 1);
    if (auto v = sys.integer("Nr"))
        cfg.dims.Nr = checked_int(*v, sys, "Nr", 1);

    const Section alpha(root, "alphabet", {"kind", "levels", "M", "sizes", "weights", "refine_iterations", "step",
                                           "path"});
    if (!alpha.present())
        throw ConfigError("alphabet", "missing [alphabet] section");
    AlphabetSpec &as = cfg.alphabet_spec;
    as.kind = alpha.string("kind").value_or("energy");
    if (as.kind == "energy")
    {
        auto lv = alpha.reals("levels");
        if (!lv || lv->empty())
            throw ConfigError(alpha.field("levels"), "required (nonempty) for kind 'energy'", alpha.line("kind"));
        as.levels = *lv;
    }
    else if (as.kind == "grassmannian")
    {
        auto m = alpha.integer("M");
        if (!m)
            throw ConfigError(alpha.field("M"), "required for kind 'grassmannian'", alpha.line("kind"));
        as.M = checked_int(*m, alpha, "M", 1);
    }
    else if (as.kind == "union")
    {
        auto sz = alpha.integers("sizes");
        if (!sz)
            throw ConfigError(alpha.field("sizes"), "required for kind 'union'", alpha.line("kind"));
        for (auto v : *sz)
            as.sizes.push_back(checked_int(v, alpha, "sizes", 0));
        as.weights = alpha.reals("weights");
    }
    else if (as.kind == "file")
    {
        auto p = alpha.string("path");
        if (!p)
            throw ConfigError(alpha.field("path"), "required for kind 'file'", alpha.line("kind"));
        as.path = resolve(*p, base);
        if (!std::filesystem::exists(as.path))
            throw ConfigError(alpha.field("path"), "file not found: " + as.path.string(), alpha.line("path"));
    }
    else
    {
        throw ConfigError(alpha.field("kind"),
                          "unknown kind '" + as.kind + "' (energy, grassmannian, union, file)", alpha.line("kind"));
    }
    if (auto v = alpha.integer("refine_iterations"))
        as.refine_iterations = checked_int(*v, alpha, "refine_iterations", 0);
    if (auto v = alpha.real("step"))
    {
        if (!(*v > 0.0))
            throw ConfigError(alpha.field("step"), "must be positive", alpha.line("step"));
        as.step = *v;
    }

    cfg.channel = read_spectrum(Section(root, "channel", {"profile", "exponent", "path"}), "isotropic", base);
    const Section noise(root, "noise", {"profile", "exponent", "path", "power"});
    cfg.noise = read_spectrum(noise, "white", base);
    if (auto p = noise.real("power"))
    {
        if (!(*p > 0.0) || !std::isfinite(*p))
            throw ConfigError(noise.field("power"), "must be positive", noise.line("power"));
        cfg.Pz = *p;
    }

    const Section sweep(root, "sweep", {"nr", "trials", "symbol_trials", "tol", "ident_tol", "angle_tol", "method",
                                        "seed", "pairs"});
    if (auto v = sweep.integers("nr"))
    {
        for (std::size_t i = 0; i < v->size(); ++i)
        {
            const int nr = checked_int((*v)[i], sweep, "nr", 1);
            if (!cfg.nr_grid.empty() && nr <= cfg.nr_grid.back())
                throw ConfigError(sweep.field("nr"), "values must be strictly increasing", sweep.line("nr"));
            cfg.nr_grid.push_back(nr);
        }
    }
    if (auto v = sweep.integer("trials"))
    {
        if (*v < 1)
            throw ConfigError(sweep.field("trials"), "must be >= 1", sweep.line("trials"));
        cfg.trials = static_cast<std::uint64_t>(*v);
    }
    cfg.symbol_trials = cfg.trials;
    if (auto v = sweep.integer("symbol_trials"))
    {
        if (*v < 0)
            throw ConfigError(sweep.field("symbol_trials"), "must be >= 0", sweep.line("symbol_trials"));
        cfg.symbol_trials = static_cast<std::uint64_t>(*v);
    }
    if (auto v = sweep.real("tol"))
    {
        if (!(*v > 0.0 && *v <= 1e-3))
            throw ConfigError(sweep.field("tol"), "must lie in (0, 1e-3]", sweep.line("tol"));
        cfg.tol = *v;
    }
    if (auto v = sweep.real("ident_tol"))
    {
        if (!(*v > 0.0 && *v <= 1e-3))
            throw ConfigError(sweep.field("ident_tol"), "must lie in (0, 1e-3]", sweep.line("ident_tol"));
        cfg.ident_tol = *v;
    }
    if (auto v = sweep.real("angle_tol"))
    {
        if (!(*v > 0.0))
            throw ConfigError(sweep.field("angle_tol"), "must be positive", sweep.line("angle_tol"));
        cfg.angle_tol = *v;
    }
    if (auto m = sweep.string("method"))
    {
        if (*m == "auto")
            cfg.method = SweepMethod::Auto;
        else if (*m == "monte-carlo")
            cfg.method = SweepMethod::MonteCarlo;
        else if (*m == "quadform-cf")
            cfg.method = SweepMethod::QuadformCf;
        else
            throw ConfigError(sweep.field("method"), "unknown method '" + *m + "' (auto, monte-carlo, quadform-cf)",
                              sweep.line("method"));
    }
    if (auto v = sweep.integer("seed"))
    {
        if (*v < 0)
            throw ConfigError(sweep.field("seed"), "must be >= 0", sweep.line("seed"));
        cfg.seed = static_cast<std::uint64_t>(*v);
    }
    if (auto v = sweep.int_pairs("pairs"))
        cfg.pairs = *v;

    const Section out(root, "output", {"dir"});
    if (auto d = out.string("dir"))
        cfg.out_dir = resolve(*d, base);

    const Section power(root, "power", {"snr_db", "gamma_db"});
    if (power.has("snr_db") && power.has("gamma_db"))
        throw ConfigError("power", "give either snr_db or gamma_db, not both", power.line("gamma_db"));
    for (const char *key : {"snr_db", "gamma_db"})
        if (power.has(key) && power.reals(key)->empty())
            throw ConfigError(power.field(key), "grid must not be empty", power.line(key));
    if (auto v = power.reals("gamma_db"))
    {
        cfg.power_db = *v;
        cfg.power_is_snr = false;
    }
    else if (auto s = power.reals("snr_db"))
    {
        cfg.power_db = *s;
        cfg.power_is_snr = true;
    }
    for (double db : cfg.power_db)
        if (!std::isfinite(db))
            throw ConfigError("power", "grid values must be finite");

    if (overrides.seed)
        cfg.seed = *overrides.seed;
    if (overrides.out_dir)
        cfg.out_dir = *overrides.out_dir;

    try
    {
        cfg.alphabet = build_alphabet(as, cfg.dims, cfg.seed, base);
    }
    catch (const ConfigError &)
    {
        throw;
    }
    catch (const std::exception &e)
    {
        throw ConfigError("alphabet", e.what(), alpha.line("kind"));
    }
    cfg.dims.M = cfg.alphabet->M();

    for (const auto &[a, b] : cfg.pairs)
        if (a < 0 || b < 0 || a >= cfg.dims.M || b >= cfg.dims.M || a == b)
            throw ConfigError(sweep.field("pairs"),
                              "pair (" + std::to_string(a) + ", " + std::to_string(b) +
                                  ") must index two distinct codewords of the alphabet (M = " +
                                  std::to_string(cfg.dims.M) + ")",
                              sweep.line("pairs"));

    // dB -> linear, once. An SNR value is mapped through the receiver SNR of
    // the model at the nominal Nr, which is linear in gamma.
    double snr_per_gamma = 1.0;
    if (cfg.power_is_snr && !cfg.power_db.empty())
    {
        try
        {
            snr_per_gamma = snr(*cfg.alphabet, build_channel(cfg, cfg.dims.Nr), PowerConfig::from_gamma(1.0, cfg.Pz),
                                cfg.dims);
        }
        catch (const ConfigError &)
        {
            throw;
        }
        catch (const std::exception &e)
        {
            throw ConfigError("power.snr_db", e.what(), power.line("snr_db"));
        }
        if (!(snr_per_gamma > 0.0))
            throw ConfigError("power.snr_db", "receiver SNR is identically zero for this alphabet; use gamma_db",
                              power.line("snr_db"));
    }
    for (double db : cfg.power_db)
        cfg.gamma.push_back(std::pow(10.0, db / 10.0) / snr_per_gamma);
    return cfg;
}

ExperimentConfig load_config(const std::filesystem::path &path, const ConfigOverrides &overrides)
{
    std::ifstream is(path);
    if (!is)
        throw ConfigError("config", "cannot open " + path.string());
    std::ostringstream buf;
    buf << is.rdbuf();
    return parse_config(buf.str(), path, overrides);
}

} // namespace ncsd::cli
