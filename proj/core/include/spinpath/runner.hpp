#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "spinpath/field.hpp"
#include "spinpath/su2.hpp"
#include "spinpath/trotter.hpp"

namespace spinpath {

enum class Experiment {
    identity_check,
    trotter_convergence,
    wiener_study,
    classical_demo,
    overspec_scan,
    residual_scan,
    dspa_exactness,
};

std::string experiment_name(Experiment e);

struct ExperimentConfig {
    Experiment experiment = Experiment::identity_check;
    FieldProtocol field = FieldProtocol::constant({0, 0, 1}, 1.0);
    int n_theta = 16;
    int n_phi = 16;
    std::vector<int> n_list;
    int n = 64;
    std::vector<double> nu_list;
    long n_samples = 100000;
    int n_seeds = 10;
    std::uint64_t seed = 1;
    int steps = 10000;
    int pairs = 100;
    int triples = 1000;
    CoherentLabel bra{0.5 * kPi, 0.0, 0.0};
    CoherentLabel ket{0.5 * kPi, 0.0, 0.0};
    FieldSampling sampling = FieldSampling::midpoint;
    std::string output_dir = "out";

    std::string echo_json() const;  // canonical echo used in the summary
};

// Strict JSON parsing: unknown keys and out-of-range knobs are hard errors
// (ParseError / UnknownKey / RangeError).
ExperimentConfig parse_config(const std::string& text);

struct RunReport {
    std::string experiment;
    std::vector<std::string> csv_paths;
    std::string summary_path;
    std::map<std::string, double> metrics;
    bool pass = false;
    double wall_seconds = 0.0;
};

RunReport run(const ExperimentConfig& config, int jobs = 1);

}  // namespace spinpath
