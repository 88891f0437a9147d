// Command-line front end: rate-region computation, Monte Carlo scheme
// verification, and parameter sweeps, with deterministic CSV/JSON artifacts.

#include "dirtymac/kernels.hpp"
#include "dirtymac/mac_sim.hpp"
#include "dirtymac/rate_regions.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include "dirtymac/strfmt.hpp"
#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using dirtymac::ChannelParams;
using json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

// write-then-rename so a crashed run never leaves a truncated artifact
void atomic_write(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw IoError(dirtymac::strfmt::format_msg("cannot open '{}' for writing", tmp));
        f << content;
        if (!f.good())
            throw IoError(dirtymac::strfmt::format_msg("write to '{}' failed", tmp));
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw IoError(dirtymac::strfmt::format_msg("cannot rename '{}' to '{}'", tmp, path));
}

void emit(const std::string& out_path, const std::string& content) {
    if (out_path.empty())
        std::cout << content;
    else
        atomic_write(out_path, content);
}

struct RunConfig {
    ChannelParams params;
    std::string preset;
    std::size_t n = 1000000;
    std::uint64_t seed = 0xD1A7;
    int grid_points = 1025;
    std::string axis;
    double from = 0.0, to = 0.0, step = 0.0;
    std::string format = "csv";
    std::string out;
    bool break_nesting = false;
    bool with_sweep = false;
    std::string config_path;
};

json params_to_json(const ChannelParams& p) {
    return {{"p1", p.p1},
            {"p2", p.p2},
            {"noise", p.noise},
            {"e1", p.e1},
            {"e2", p.e2},
            {"q", p.interference_power}};
}

void add_channel_flags(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--p1", cfg.params.p1, "transmit power of user 1")->required();
    cmd->add_option("--p2", cfg.params.p2, "transmit power of user 2")->required();
    cmd->add_option("--noise", cfg.params.noise, "channel noise power N")->required();
    cmd->add_option("--e1", cfg.params.e1, "estimation error power of user 1");
    cmd->add_option("--e2", cfg.params.e2, "estimation error power of user 2");
    cmd->add_option("--q", cfg.params.interference_power,
                    "interference power (0 = auto, simulation only)");
    cmd->add_option("--seed", cfg.seed, "master RNG seed");
    cmd->add_option("--format", cfg.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.out, "output path (default: stdout)");
    cmd->add_option("--config", cfg.config_path,
                    "key = value config file; flags override");
}

// Expands "--config FILE" in place: each "key = value" line becomes "--key value"
// appended to the argument list, unless the flag already appears explicitly.
void expand_config_args(std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
            break;
        }
        if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
            break;
        }
    }
    if (path.empty())
        return;
    std::ifstream f(path);
    if (!f.good())
        throw IoError("cannot read config file: " + path);
    std::string line;
    while (std::getline(f, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        auto trim = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            continue;
        std::string flag = "--" + key;
        bool present = false;
        for (const auto& a : args)
            if (a == flag || a.rfind(flag + "=", 0) == 0)
                present = true;
        if (!present) {
            args.push_back(flag);
            args.push_back(value);
        }
    }
}

// ---------------------------------------------------------------- region ---

int cmd_region(const RunConfig& cfg) {
    dirtymac::GridSpec grid;
    grid.points = cfg.grid_points;
    auto region = dirtymac::region_boundary(cfg.params, grid);
    double full = dirtymac::baseline_full_si(cfg.params, grid);

    double alpha = 0.0;
    switch (region.regime) {
    case dirtymac::Regime::Imbalanced:
        alpha = dirtymac::mmse_alpha(cfg.params.p1 <= cfg.params.p2
                                             ? dirtymac::MmseKind::ImbalancedUser1
                                             : dirtymac::MmseKind::ImbalancedUser2,
                                     cfg.params);
        break;
    case dirtymac::Regime::ExactlyBalanced:
        alpha = dirtymac::mmse_alpha(dirtymac::MmseKind::Balanced, cfg.params);
        break;
    case dirtymac::Regime::NearlyBalanced:
        alpha = dirtymac::mmse_alpha(dirtymac::MmseKind::GeneralNearly, cfg.params);
        break;
    }

    double gap = full - region.sum_rate;
    if (cfg.format == "csv") {
        std::string s = "regime,sum_rate_partial,sum_rate_full_si,gap,alpha_mmse,"
                        "r1_corner,r2_corner\n";
        s += dirtymac::strfmt::format_msg("{},{},{},{},{},{},{}\n", dirtymac::regime_name(region.regime),
                         fmt12(region.sum_rate), fmt12(full), fmt12(gap), fmt12(alpha),
                         fmt12(region.sum_rate), fmt12(region.sum_rate));
        emit(cfg.out, s);
        return 0;
    }

    json j;
    j["command"] = "region";
    j["config"] = {{"params", params_to_json(cfg.params)},
                   {"grid_points", cfg.grid_points},
                   {"format", cfg.format}};
    j["regime"] = dirtymac::regime_name(region.regime);
    j["sum_rate_partial"] = region.sum_rate;
    j["sum_rate_full_si"] = full;
    j["gap"] = gap;
    j["alpha_mmse"] = alpha;
    json verts = json::array();
    for (auto [r1, r2] : region.vertices)
        verts.push_back({{"r1", r1}, {"r2", r2}});
    j["vertices"] = verts;
    if (region.regime != dirtymac::Regime::Imbalanced) {
        dirtymac::EnvelopeResult env =
                region.regime == dirtymac::Regime::ExactlyBalanced
                        ? dirtymac::sum_rate_exactly_balanced(
                                  0.5 * (cfg.params.p1 + cfg.params.p2),
                                  cfg.params.residual(), grid)
                        : dirtymac::sum_rate_nearly_balanced(cfg.params, grid);
        json pts = json::array();
        for (const auto& p : env.points)
            pts.push_back({{"x", p.x}, {"raw", p.raw}, {"enveloped", p.enveloped}});
        j["envelope"] = pts;
    }
    emit(cfg.out, j.dump(2) + "\n");
    return 0;
}

// -------------------------------------------------------------- simulate ---

json report_to_json(const dirtymac::SimReport& rep, const RunConfig& cfg) {
    json j;
    j["command"] = "simulate";
    j["config"] = {{"params", params_to_json(cfg.params)},
                   {"preset", dirtymac::preset_name(rep.preset)},
                   {"n", rep.n},
                   {"seed", rep.seed},
                   {"break_nesting", cfg.break_nesting},
                   {"with_sweep", cfg.with_sweep}};
    j["simd_level"] = dirtymac::kernels::level_name(dirtymac::kernels::active_level());
    j["measured_noise"] = rep.measured_noise;
    j["analytic_noise"] = rep.analytic_noise;
    j["noise_std_error"] = rep.noise_std_error;
    j["equivalence_max_residual"] = rep.equivalence_max_residual;
    j["empirical_sinr"] = rep.empirical_sinr;
    j["analytic_sinr"] = rep.analytic_sinr;
    j["scalar_rate_bound"] = rep.scalar_rate_bound;
    j["uniformity_pvalue"] = rep.uniformity_pvalue;
    j["independence_stat"] = rep.independence_stat;
    j["var_x1"] = rep.var_x1;
    j["var_x2"] = rep.var_x2;
    json checks = json::array();
    for (const auto& c : rep.checks)
        checks.push_back({{"name", c.name},
                          {"passed", c.passed},
                          {"value", c.value},
                          {"threshold", c.threshold}});
    j["checks"] = checks;
    if (!rep.interference_sweep.empty()) {
        json sweep = json::array();
        for (const auto& p : rep.interference_sweep)
            sweep.push_back({{"q", p.q},
                             {"measured_noise", p.measured_noise},
                             {"std_error", p.std_error},
                             {"rate_bound", p.rate_bound}});
        j["interference_sweep"] = sweep;
    }
    j["all_passed"] = rep.all_passed();
    return j;
}

std::string report_csv(const dirtymac::SimReport& rep) {
    std::string s = "preset,n,seed,measured_noise,analytic_noise,equivalence_max_residual,"
                    "empirical_sinr,analytic_sinr,scalar_rate_bound,all_passed\n";
    s += dirtymac::strfmt::format_msg("{},{},{},{},{},{},{},{},{},{}\n", dirtymac::preset_name(rep.preset),
                     rep.n, rep.seed, fmt12(rep.measured_noise), fmt12(rep.analytic_noise),
                     fmt12(rep.equivalence_max_residual), fmt12(rep.empirical_sinr),
                     fmt12(rep.analytic_sinr), fmt12(rep.scalar_rate_bound),
                     rep.all_passed() ? 1 : 0);
    return s;
}

int cmd_simulate(const RunConfig& cfg) {
    if (cfg.n < 1000)
        throw std::invalid_argument("simulate: n must be >= 1000");
    dirtymac::PresetId id = dirtymac::preset_from_name(cfg.preset);
    dirtymac::ExperimentOptions opts;
    opts.break_nesting = cfg.break_nesting;
    opts.with_sweep = cfg.with_sweep;
    auto rep = dirtymac::run_experiment(id, cfg.params, cfg.n, cfg.seed, opts);

    // JSON report to --out (or stdout); when a file is written the one-line
    // CSV summary additionally goes to <out>.csv
    std::string jtext = report_to_json(rep, cfg).dump(2) + "\n";
    if (cfg.format == "csv" && cfg.out.empty()) {
        std::cout << report_csv(rep);
    } else {
        emit(cfg.out, jtext);
        if (!cfg.out.empty())
            atomic_write(cfg.out + ".csv", report_csv(rep));
    }
    for (const auto& c : rep.checks)
        if (!c.passed)
            std::cerr << dirtymac::strfmt::format_msg("check failed: {} (value {}, threshold {})\n", c.name,
                                     fmt12(c.value), fmt12(c.threshold));
    return rep.all_passed() ? 0 : 1;
}

// ----------------------------------------------------------------- sweep ---

int cmd_sweep(const RunConfig& cfg) {
    if (!(cfg.step > 0.0))
        throw std::invalid_argument("sweep: step must be positive");
    if (cfg.to < cfg.from)
        throw std::invalid_argument("sweep: to must be >= from");
    std::vector<double> xs;
    for (int i = 0;; ++i) {
        double x = cfg.from + cfg.step * i;
        if (x > cfg.to + 1e-12 * cfg.step)
            break;
        xs.push_back(x);
    }
    if (xs.empty())
        throw std::invalid_argument("sweep: empty range");

    dirtymac::GridSpec grid;
    grid.points = cfg.grid_points;
    bool with_sim = !cfg.preset.empty();
    std::optional<dirtymac::PresetId> id;
    if (with_sim)
        id = dirtymac::preset_from_name(cfg.preset);

    struct Row {
        double x;
        std::string regime;
        double rate_partial, rate_full;
        bool sim_ok = false;
        double measured_noise = 0.0, analytic_noise = 0.0, std_error = 0.0;
    };
    std::vector<Row> rows;
    rows.reserve(xs.size());
    for (double x : xs) {
        ChannelParams p = cfg.params;
        if (cfg.axis == "e1e2") {
            p.e1 = p.e2 = 0.5 * x;
        } else if (cfg.axis == "p1") {
            p.p1 = x;
        } else if (cfg.axis == "p2") {
            p.p2 = x;
        } else if (cfg.axis == "q") {
            p.interference_power = x;
        } else {
            throw std::invalid_argument(
                    dirtymac::strfmt::format_msg("sweep: unknown axis '{}' (e1e2|p1|p2|q)", cfg.axis));
        }
        auto region = dirtymac::region_boundary(p, grid);
        Row row{x, dirtymac::regime_name(region.regime), region.sum_rate,
                dirtymac::baseline_full_si(p, grid)};
        if (with_sim) {
            // points outside a preset's constructive case leave blank columns
            try {
                auto c = dirtymac::build_preset(*id, p);
                auto batch = dirtymac::generate_batch(c, p, cfg.n, cfg.seed);
                dirtymac::encode(c, batch);
                auto np = dirtymac::effective_noise_power(c, p, batch);
                row.sim_ok = true;
                row.measured_noise = np.measured;
                row.analytic_noise = np.analytic;
                row.std_error = np.std_error;
            } catch (const std::runtime_error&) {
            }
        }
        rows.push_back(row);
    }

    if (cfg.format == "csv") {
        std::string s = "x,regime,rate_partial,rate_full_si";
        if (with_sim)
            s += ",measured_noise,analytic_noise,noise_std_error";
        s += "\n";
        for (const auto& r : rows) {
            s += dirtymac::strfmt::format_msg("{},{},{},{}", fmt12(r.x), r.regime, fmt12(r.rate_partial),
                             fmt12(r.rate_full));
            if (with_sim) {
                if (r.sim_ok)
                    s += dirtymac::strfmt::format_msg(",{},{},{}", fmt12(r.measured_noise),
                                     fmt12(r.analytic_noise), fmt12(r.std_error));
                else
                    s += ",,,";
            }
            s += "\n";
        }
        emit(cfg.out, s);
        return 0;
    }

    json j;
    j["command"] = "sweep";
    j["config"] = {{"params", params_to_json(cfg.params)},
                   {"axis", cfg.axis},
                   {"from", cfg.from},
                   {"to", cfg.to},
                   {"step", cfg.step},
                   {"grid_points", cfg.grid_points},
                   {"preset", cfg.preset},
                   {"n", cfg.n},
                   {"seed", cfg.seed}};
    json jrows = json::array();
    for (const auto& r : rows) {
        json row = {{"x", r.x},
                    {"regime", r.regime},
                    {"rate_partial", r.rate_partial},
                    {"rate_full_si", r.rate_full}};
        if (with_sim && r.sim_ok) {
            row["measured_noise"] = r.measured_noise;
            row["analytic_noise"] = r.analytic_noise;
            row["noise_std_error"] = r.std_error;
        }
        jrows.push_back(row);
    }
    j["rows"] = jrows;
    emit(cfg.out, j.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"achievable rate regions and lattice-scheme Monte Carlo checks for the "
                 "doubly dirty two-user MAC with estimated transmitter side information"};
    app.require_subcommand(1);

    RunConfig cfg;

    auto* region = app.add_subcommand("region", "compute the achievable rate region");
    add_channel_flags(region, cfg);
    region->add_option("--grid-points", cfg.grid_points, "envelope grid resolution")
            ->check(CLI::Range(16, 1 << 24));

    auto* simulate = app.add_subcommand("simulate", "run one scheme preset end to end");
    add_channel_flags(simulate, cfg);
    simulate->add_option("--preset", cfg.preset,
                         "T1-Case1|T1-Case2|T2-Balanced|T3-Case1|T3-Case2")
            ->required();
    simulate->add_option("--n", cfg.n, "Monte Carlo sample count");
    simulate->add_flag("--break-nesting", cfg.break_nesting,
                       "negative control: misalign the lattices by 1%");
    simulate->add_flag("--with-sweep", cfg.with_sweep,
                       "append the 3-point interference-power sweep");

    auto* sweep = app.add_subcommand("sweep", "sweep one parameter axis");
    add_channel_flags(sweep, cfg);
    sweep->add_option("--grid-points", cfg.grid_points, "envelope grid resolution")
            ->check(CLI::Range(16, 1 << 24));
    sweep->add_option("--axis", cfg.axis, "e1e2|p1|p2|q")->required();
    sweep->add_option("--from", cfg.from, "first axis value")->required();
    sweep->add_option("--to", cfg.to, "last axis value (inclusive)")->required();
    sweep->add_option("--step", cfg.step, "axis increment")->required();
    sweep->add_option("--preset", cfg.preset, "also simulate this preset per point");
    sweep->add_option("--n", cfg.n, "Monte Carlo sample count per point");

    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        expand_config_args(args);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    }
    std::reverse(args.begin(), args.end());

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (region->parsed())
            return cmd_region(cfg);
        if (simulate->parsed())
            return cmd_simulate(cfg);
        return cmd_sweep(cfg);
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const dirtymac::RegimeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const dirtymac::ConditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
