// lsmi_sim: run loading-factor Monte-Carlo experiments from a YAML config.
//
//   lsmi_sim run <config> [--out-dir DIR] [--seed S] [--format csv|csv+svg]
//   lsmi_sim validate <config>
//   lsmi_sim demo [--out-dir DIR]
//
// Exit status: 0 success, 1 usage or config error, 2 runtime failure.
// Diagnostics go to stderr; data goes to files only.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "lsmi/bundled_configs.hpp"
#include "lsmi/config.hpp"
#include "lsmi/errors.hpp"
#include "lsmi/experiment.hpp"
#include "lsmi/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;
constexpr std::size_t kDemoTrials = 50;

struct RuntimeFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_file(const fs::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary);
    out << contents;
    if (!out) throw RuntimeFailure("cannot write '" + path.string() + "'");
}

// Runs one experiment and writes its artifacts; returns the exit status.
int execute(const lsmi::ExperimentConfig& cfg, const fs::path& out_dir, bool with_svg) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw RuntimeFailure("cannot create output directory '" + out_dir.string() + "': " + ec.message());

    const auto result = lsmi::run_experiment(cfg);

    std::ostringstream csv;
    lsmi::write_csv(csv, cfg, result);
    write_file(out_dir / "results.csv", csv.str());

    if (with_svg) {
        for (const auto& panel : lsmi::build_plot_panels(result, cfg.scenario.contaminated)) {
            write_file(out_dir / lsmi::panel_file_name(panel.input_sinr_db), lsmi::render_svg(panel));
        }
    }

    if (!result.ok()) {
        for (const auto& f : result.failures) {
            std::cerr << "error: cell n=" << f.n << " input_sinr_db=" << lsmi::format_short(f.input_sinr_db)
                      << " failed at trial " << f.trial << ": " << f.message << '\n';
        }
        return kExitRuntime;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Loaded sample matrix inversion: adaptive loading-factor Monte-Carlo simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::string format = "csv";

    auto* run = app.add_subcommand("run", "Run an experiment and write results.csv (and SVG panels)");
    run->add_option("config", config_path, "YAML experiment config")->required();
    run->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
    run->add_option("--seed", seed, "Override the config seed");
    run->add_option("--format", format, "Artifacts to write")
        ->check(CLI::IsMember({"csv", "csv+svg"}))
        ->capture_default_str();

    auto* validate = app.add_subcommand("validate", "Check a config without running it");
    validate->add_option("config", config_path, "YAML experiment config")->required();

    std::string demo_dir = "lsmi_demo";
    auto* demo = app.add_subcommand("demo", "Write the bundled configs and run them with 50 trials");
    demo->add_option("--out-dir", demo_dir, "Output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, std::cerr, std::cerr);
        return code == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (*validate) {
            (void)lsmi::load_experiment_config(config_path);
            return kExitOk;
        }
        if (*run) {
            auto cfg = lsmi::load_experiment_config(config_path);
            if (seed) cfg.seed = *seed;
            return execute(cfg, out_dir, format == "csv+svg");
        }
        if (*demo) {
            int status = kExitOk;
            const std::pair<std::string_view, std::string_view> bundled[] = {
                {"uncontaminated", lsmi::bundled::kUncontaminatedConfig},
                {"contaminated", lsmi::bundled::kContaminatedConfig},
            };
            for (const auto& [name, text] : bundled) {
                const fs::path dir = fs::path(demo_dir) / std::string(name);
                std::error_code ec;
                fs::create_directories(dir, ec);
                if (ec) throw RuntimeFailure("cannot create output directory '" + dir.string() + "'");
                write_file(dir / "config.yaml", text);
                auto cfg = lsmi::parse_experiment_config(text);
                cfg.trials = kDemoTrials;
                std::cerr << "demo: running " << name << " (" << cfg.trials << " trials) into " << dir.string()
                          << '\n';
                status = std::max(status, execute(cfg, dir, true));
            }
            return status;
        }
    } catch (const lsmi::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitConfig;
}
