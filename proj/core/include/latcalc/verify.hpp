#pragma once

#include "latcalc/lattice.hpp"
#include "latcalc/report.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace latcalc {

// Configuration shared by the suites and the command line. Identical configs
// produce byte-identical reports.
struct RunConfig {
    int n = 2;
    int N = 1;
    Mode mode = Mode::periodic;
    int window_radius = 6;
    int k_max = 4;
    int degree = 3;
    int samples = 5;
    std::uint64_t seed = 2024;
    std::vector<int> levels = {3, 4, 5, 6};
    std::string out;

    nlohmann::json to_json() const;
};

Report run_scalar_suite(const RunConfig& cfg);
Report run_coalgebra_suite(const RunConfig& cfg);
Report run_lattice_suite(const RunConfig& cfg);
Report run_bracket_suite(const RunConfig& cfg);
Report run_multiscale_suite(const RunConfig& cfg);

// Deliberately corrupted inputs. These checks pass when the validators catch
// the corruption, proving the positive suites are not vacuous.
Report run_negative_controls(const RunConfig& cfg);

// All suites, dispatched concurrently, merged in fixed order.
Report run_verify(const RunConfig& cfg);

} // namespace latcalc
