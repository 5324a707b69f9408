#include <unistd.h>

#include <cstdlib>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "anderson/errors.hpp"
#include "anderson/figures.hpp"
#include "anderson/fock_oracle.hpp"
#include "anderson/presets.hpp"
#include "anderson/result_bundle.hpp"
#include "anderson/run_config.hpp"
#include "anderson/version.hpp"

namespace {

using namespace anderson;

unsigned workers_from_env() {
    const char* env = std::getenv("ANDERSON_PAIRS_WORKERS");
    if (!env) return 0;
    const long v = std::strtol(env, nullptr, 10);
    return v > 0 ? static_cast<unsigned>(v) : 0;
}

ProgressFn make_progress() {
    if (!isatty(fileno(stderr))) return {};
    return [](std::uint64_t done, std::uint64_t total) {
        const std::uint64_t stride = total >= 100 ? total / 100 : 1;
        if (done % stride == 0 || done == total) {
            std::cerr << "\r" << done << "/" << total << " realizations";
            if (done == total) std::cerr << "\n";
            std::cerr.flush();
        }
    };
}

struct RunFlags {
    std::string config_path;
    std::string out_dir;
    unsigned workers = 0;
    std::uint64_t seed = 0;
    bool seed_set = false;
};

int run_bundle_command(const RunFlags& flags, bool expect_two_particle) {
    RunConfig rc = load_run_config(flags.config_path);
    if (rc.ensemble.two_particle() != expect_two_particle)
        throw ConfigError(expect_two_particle
                              ? "correlation: config must describe a two-particle input"
                              : "density: config must describe a single_particle input");
    // command-line overrides are runtime choices; the bundle echoes the file
    EnsembleConfig effective = rc.ensemble;
    if (flags.seed_set) {
        effective.master_seed = flags.seed;
        rc.ensemble.master_seed = flags.seed;  // seed is part of provenance
    }
    if (flags.workers > 0)
        effective.workers = flags.workers;
    else if (workers_from_env() > 0)
        effective.workers = workers_from_env();

    std::string out = !flags.out_dir.empty() ? flags.out_dir : rc.output_directory;
    if (out.empty())
        throw ConfigError("no output directory (set output.directory or --out)");

    DirectoryLock lock(out);
    const EnsembleResult result = run_ensemble(effective, make_progress());
    const auto files = write_bundle(result, rc, out);
    std::cout << "wrote " << files.size() << " files to " << out << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Disordered tight-binding quantum walks and two-particle "
                 "correlation ensembles"};
    app.set_version_flag("--version", std::string(kVersionTag));
    app.require_subcommand(1);

    RunFlags flags;

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--config", flags.config_path, "run config (JSON)")
            ->required();
        cmd->add_option("--out", flags.out_dir, "output directory");
        cmd->add_option("--workers", flags.workers, "worker thread count");
        cmd->add_option("--seed", flags.seed, "override master seed")
            ->each([&](const std::string&) { flags.seed_set = true; });
    };

    CLI::App* density =
        app.add_subcommand("density", "single-particle density ensemble");
    add_run_flags(density);
    CLI::App* correlation =
        app.add_subcommand("correlation", "two-particle correlation ensemble");
    add_run_flags(correlation);

    CLI::App* figures =
        app.add_subcommand("figures", "run a figure preset and emit panel data");
    std::string preset_name;
    std::string fig_out;
    unsigned fig_workers = 0;
    figures->add_option("--preset", preset_name, "preset name")->required();
    figures->add_option("--out", fig_out, "output directory")->required();
    figures->add_option("--workers", fig_workers, "worker thread count");

    CLI::App* oracle =
        app.add_subcommand("oracle-check", "formula vs Fock-evolution equivalence");
    int oracle_size = 7;
    int oracle_trials = 100;
    std::uint64_t oracle_seed = 1;
    oracle->add_option("--size", oracle_size, "lattice sites (2..8)");
    oracle->add_option("--trials", oracle_trials, "random instances");
    oracle->add_option("--seed", oracle_seed, "rng seed");

    CLI::App* validate_cmd =
        app.add_subcommand("validate", "re-check an emitted bundle's invariants");
    std::string bundle_dir;
    validate_cmd->add_option("--out", bundle_dir, "bundle directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (density->parsed()) return run_bundle_command(flags, false);
        if (correlation->parsed()) return run_bundle_command(flags, true);
        if (figures->parsed()) {
            if (fig_workers == 0) fig_workers = workers_from_env();
            DirectoryLock lock(fig_out);
            emit_figure(preset_name, fig_out, fig_workers, make_progress());
            std::cout << "wrote " << preset_name << " panels to " << fig_out << "\n";
            return 0;
        }
        if (oracle->parsed()) {
            const OracleCheckReport report =
                run_oracle_check(oracle_size, oracle_trials, oracle_seed);
            std::cout << report.summary() << "\n";
            return report.passed ? 0 : 1;
        }
        if (validate_cmd->parsed()) {
            validate_bundle(bundle_dir);
            std::cout << "bundle ok: " << bundle_dir << "\n";
            return 0;
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        std::cerr << "resource error: " << e.what() << "\n";
        return 3;
    } catch (const CheckError& e) {
        std::cerr << "check failed: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
