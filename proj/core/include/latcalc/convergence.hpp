#pragma once

#include "latcalc/lattice.hpp"

#include <nlohmann/json_fwd.hpp>

#include <optional>
#include <string>
#include <vector>

namespace latcalc {

// One numeric refinement study: the sup-norm of an error element per level
// over a fixed physical region, and the log2 ratios between consecutive
// levels. Norms are exact rationals; only the reported rates are floating.
struct ConvergenceStudy {
    std::string id;
    std::string kind; // "rate" or "exact"
    std::vector<int> levels;
    std::vector<Rational> sup_norms;
    // rates[i] compares levels[i] and levels[i+1]; empty when either norm is 0.
    std::vector<std::optional<double>> rates;
    bool pass = false;
};

// Runs the fixed-field studies at the given numeric levels (ascending,
// at least three): the two-argument bracket of the normalized coboundary,
// the three-argument bracket of the normalized boundary, the normalized
// coboundary against the symbolically differentiated field, the
// two-argument chain bracket against the symbolic Schouten bracket, and the
// two exactness controls (quadratic gradient, constant fields).
std::vector<ConvergenceStudy> run_convergence(const std::vector<int>& levels);

nlohmann::json convergence_to_json(const std::vector<ConvergenceStudy>& studies);

} // namespace latcalc
