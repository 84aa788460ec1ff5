/// slitflow <mode> --config <path> [--out <dir>] [--check <name>] [--seed <n>]
///
/// Modes: probe-map | field | advect | sweep-eps | check. The config file is
/// line-oriented `key = value` with `#` comments; its `mode` must match the
/// subcommand. Exit codes: 0 success, 1 check failure, 2 usage/infrastructure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "slitflow/commands.hpp"

namespace {

void print_usage() {
    std::cout <<
        "usage: slitflow <mode> --config <path> [--out <dir>] [--check <name>] [--seed <n>]\n"
        "\n"
        "modes:\n"
        "  probe-map   emit map jets on the configured grid (map.csv)\n"
        "  field       emit the assembled velocity field (field.csv)\n"
        "  advect      run the particle transport (snap_<k>.csv, conservation.csv)\n"
        "  sweep-eps   emit kernel/harmonic sweep data over eps (sweep.csv)\n"
        "  check       run verification checks (per-check CSVs, summary.csv)\n"
        "\n"
        "config keys and defaults:\n"
        "  mode (required)            one of the modes above; must match the subcommand\n"
        "  epsilon = 0.1              slit half-length; 0 selects the full-plane limit model\n"
        "  gamma = 0                  circulation around the slit\n"
        "  eta = 0                    thickening parameter (probe-map only)\n"
        "  vorticity_preset = gaussian   gaussian | dipole | zero | tracer\n"
        "  grid_origin_x = -2, grid_origin_y = -2, grid_h = 0.0625, grid_nx = 64, grid_ny = 64\n"
        "  dt = 0.002, t_final = 1   advect time stepping\n"
        "  blob_delta = auto          mapped-plane blob size; auto = 2 x median neighbor\n"
        "  output_dir = out, seed = 12345, snap_cadence = 0\n";
}

}  // namespace

int main(int argc, char** argv) {
    using namespace slitflow;
    if (argc < 2) {
        print_usage();
        return 2;
    }
    const std::string mode_arg = argv[1];
    if (mode_arg == "--help" || mode_arg == "-h" || mode_arg == "help") {
        print_usage();
        return 0;
    }
    const auto mode = mode_from_name(mode_arg);
    if (!mode) {
        std::cerr << "slitflow: unknown mode '" << mode_arg << "'\n";
        return 2;
    }

    std::string config_path;
    std::optional<std::string> out_dir, check_name, seed_str;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&](const char* flag) -> std::string {
            if (i + 1 >= argc) {
                std::cerr << "slitflow: " << flag << " expects a value\n";
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--config") config_path = next("--config");
        else if (arg == "--out") out_dir = next("--out");
        else if (arg == "--check") check_name = next("--check");
        else if (arg == "--seed") seed_str = next("--seed");
        else {
            std::cerr << "slitflow: unknown argument '" << arg << "'\n";
            return 2;
        }
    }
    if (config_path.empty()) {
        std::cerr << "slitflow: --config <path> is required\n";
        return 2;
    }

    std::ifstream in(config_path, std::ios::binary);
    if (!in) {
        std::cerr << "slitflow: cannot read config file '" << config_path << "'\n";
        return 2;
    }
    std::ostringstream text;
    text << in.rdbuf();

    RunConfig config;
    try {
        config = parse_config(text.str());
    } catch (const ConfigError& e) {
        std::cerr << "slitflow: " << e.what() << "\n";
        return 2;
    }
    if (config.mode != *mode) {
        std::cerr << "slitflow: config mode '" << mode_name(config.mode)
                  << "' does not match subcommand '" << mode_arg << "'\n";
        return 2;
    }
    if (out_dir) config.output_dir = *out_dir;
    if (check_name) config.check_filter = check_name;
    if (seed_str) {
        try {
            config.seed = std::stoull(*seed_str);
        } catch (const std::exception&) {
            std::cerr << "slitflow: --seed expects a nonnegative integer\n";
            return 2;
        }
    }

    try {
        return run_command(config);
    } catch (const std::exception& e) {
        std::cerr << "slitflow: " << e.what() << "\n";
        return 2;
    }
}
