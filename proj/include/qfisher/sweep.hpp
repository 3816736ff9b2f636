// sweep.hpp — deterministic parameter sweeps with CSV output.

#pragma once

#include "qfisher/models.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace qfisher {

struct Axis {
    std::string name;
    double start = 0.0, stop = 0.0;
    int points = 2;
    bool log_scale = false;
    std::vector<double> explicit_values;  // used when non-empty
    std::vector<double> values() const;
    // parses "start:stop:points", "a,b,c" or a single number
    static Axis parse(const std::string& name, const std::string& text);
};

struct SweepSpec {
    std::string model;
    Params base;
    std::string estimated;          // parameter label under estimation
    Axis param_axis;                // swept model parameter
    std::optional<Axis> time_axis;  // defaults to the fixed time below
    double t = 1.0;
    std::string state = "";        // named reference state; empty = first available
    std::vector<double> temperatures;  // thermal sweep when non-empty
    bool thermal = false;
    bool optimal_points = false;   // emit the optimal-state loci instead
    bool longtime = false;         // evaluate loci at the long-time limit
    bool altqfi = false;
    bool charop_deviation = false;
    unsigned seed = 1;
    std::string command_line;      // reproduced in the metadata header
};

struct ReportCell {
    std::string value;  // formatted %.12e, or empty when unavailable
};

// One pass/fail-free grid evaluation; failures become flagged rows.
void run_sweep(const SweepSpec& spec, std::ostream& out);

// worker count: QFISHER_WORKERS env var, 0 or 1 means serial
int worker_count();

std::string format_double(double v);  // %.12e

}  // namespace qfisher
