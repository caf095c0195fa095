#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "xlsim/config.hpp"
#include "xlsim/report.hpp"
#include "xlsim/scenario.hpp"

namespace {

// Exit codes: 0 success, 1 config error, 2 invariant violation, 3 I/O error.
enum ExitCode { kOk = 0, kConfigError = 1, kInvariantError = 2, kIoError = 3 };

struct Options {
    std::string config_path;
    std::string out_dir = "out";
    std::optional<std::uint64_t> seed;
    std::optional<std::string> mode;
};

xlsim::ScenarioConfig resolve_config(const Options& opt) {
    xlsim::ScenarioConfig cfg;
    if (!opt.config_path.empty()) cfg = xlsim::load_config(opt.config_path);
    if (opt.seed) cfg.seed = *opt.seed;
    if (opt.mode) {
        const auto m = xlsim::mode_from_name(*opt.mode);
        if (!m) throw xlsim::ConfigError("--mode must be 'cross-layer' or 'ra-only'");
        cfg.mode = *m;
    }
    cfg.validate();
    return cfg;
}

void print_summary(const std::vector<xlsim::RunReport>& reports) {
    for (const auto& rep : reports) {
        std::printf("%-18s admitted=%2d rejected=%2d drop=%5.2f%% util=%6.2f%% events=%llu (%.1f ms)\n",
                    rep.run_id.c_str(), rep.metrics.admitted, rep.metrics.rejected,
                    rep.metrics.drop_ratio * 100.0, rep.metrics.utilization * 100.0,
                    static_cast<unsigned long long>(rep.events_dispatched), rep.wall_ms);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cross-layer video delivery simulator: ECN-driven rate adaptation "
                 "with measurement-based session admission on a shared bottleneck"};
    app.require_subcommand(1);

    Options opt;

    auto add_common = [&](CLI::App* sub, bool with_mode) {
        sub->add_option("--config", opt.config_path, "Scenario config file (key = value)");
        sub->add_option("--out", opt.out_dir, "Output directory for CSV/plot data");
        sub->add_option("--seed", opt.seed, "Override the config RNG seed");
        if (with_mode) {
            sub->add_option("--mode", opt.mode,
                            "Override the config mode (cross-layer | ra-only)");
        }
    };

    auto* run_cmd = app.add_subcommand("run", "Run the scenario in its configured mode");
    add_common(run_cmd, true);
    auto* sweep_cmd =
        app.add_subcommand("sweep", "Run the capacity sweep under both architectures");
    add_common(sweep_cmd, false);
    auto* validate_cmd = app.add_subcommand("validate", "Check a config file and exit");
    validate_cmd->add_option("--config", opt.config_path, "Scenario config file");
    validate_cmd->add_option("--mode", opt.mode, "Mode override to lint");
    validate_cmd->add_option("--seed", opt.seed, "Seed override to lint");

    CLI11_PARSE(app, argc, argv);

    try {
        const xlsim::ScenarioConfig cfg = resolve_config(opt);
        if (validate_cmd->parsed()) {
            std::printf("config ok: %d capacities, %d requests over %.0f s, mode %s\n",
                        static_cast<int>(cfg.capacity_list.size()), cfg.max_requests,
                        cfg.duration, xlsim::mode_name(cfg.mode).c_str());
            return kOk;
        }

        const auto reports =
            run_cmd->parsed() ? xlsim::run_scenario(cfg) : xlsim::run_sweep(cfg);
        xlsim::emit_reports(reports, opt.out_dir);
        print_summary(reports);
        std::printf("reports written to %s\n", opt.out_dir.c_str());
        return kOk;
    } catch (const xlsim::ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kConfigError;
    } catch (const xlsim::IoFailure& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kIoError;
    } catch (const xlsim::InvariantViolation& e) {
        std::fprintf(stderr, "invariant violation: %s\n", e.what());
        return kInvariantError;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kInvariantError;
    }
}
