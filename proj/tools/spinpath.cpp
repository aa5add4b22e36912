#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "spinpath/runner.hpp"

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw spinpath::ParseError("cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spinpath: spin-1/2 coherent-state path-integral laboratory"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int jobs = 1;

    auto* run_cmd = app.add_subcommand("run", "run an experiment from a JSON config");
    run_cmd->add_option("config", config_path, "JSON config file")->required();
    run_cmd->add_option("--out", out_dir, "override output directory");
    run_cmd->add_option("--seed", seed, "override master seed")
        ->each([&](const std::string&) { seed_set = true; });
    run_cmd->add_option("--jobs", jobs, "worker threads for sweeps");

    auto* validate_cmd = app.add_subcommand("validate", "parse and echo a JSON config");
    validate_cmd->add_option("config", config_path, "JSON config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        spinpath::ExperimentConfig cfg = spinpath::parse_config(read_file(config_path));
        if (!out_dir.empty()) cfg.output_dir = out_dir;
        if (const char* env = std::getenv("SPINPATH_OUT"); env && out_dir.empty()) {
            cfg.output_dir = env;
        }
        if (seed_set) cfg.seed = seed;

        if (app.got_subcommand(validate_cmd)) {
            std::cout << cfg.echo_json() << "\n";
            return 0;
        }

        const spinpath::RunReport report = spinpath::run(cfg, jobs);
        std::cout << "experiment: " << report.experiment << "\n";
        for (const auto& [name, value] : report.metrics) {
            std::cout << "  " << name << " = " << value << "\n";
        }
        std::cout << "summary: " << report.summary_path << "\n"
                  << (report.pass ? "PASS" : "FAIL") << " (" << report.wall_seconds << " s)\n";
        return report.pass ? 0 : 1;
    } catch (const spinpath::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const spinpath::UnknownKey& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const spinpath::RangeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
