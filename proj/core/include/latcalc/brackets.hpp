#pragma once

#include "latcalc/coalgebra.hpp"
#include "latcalc/lattice.hpp"

#include <nlohmann/json_fwd.hpp>

namespace latcalc {

// Closed-form k-brackets of the normalized coboundary on cochains:
// step^{k-1} m_k sum_i (-bwd o inv)^{(i-1)} (x) cob_u/(2 step) (x) fwd^{(k-i)}.
// u is a 0-based axis; the overload without u sums over all axes.
LatticeElement delta_bracket_closed(const std::vector<LatticeElement>& v, int u);
LatticeElement delta_bracket_closed(const std::vector<LatticeElement>& v);

// Closed-form k-brackets of the normalized boundary on chains:
// -1/2 step^{k-2} sum_i [ (fwd inv)^{(i-1)} (x) shift_back contract_u (x) fwd^{(k-i)}
//                 + (-1)^k (bwd inv)^{(i-1)} (x) shift_fwd contract_u (x) bwd^{(k-i)} ].
LatticeElement partial_bracket_closed(const std::vector<LatticeElement>& v, int u);
LatticeElement partial_bracket_closed(const std::vector<LatticeElement>& v);

// Case-table evaluation of the chain brackets for n = 3 and k in {2, 3},
// on single-type monomial inputs. Must agree with partial_bracket_closed.
LatticeElement bracket_table_n3(const std::vector<LatticeElement>& v, int u);

// Taylor-coefficient bracket of an arbitrary differential on lattice
// elements, through the generic symmetric-coalgebra machinery. Inputs of
// mixed cell dimension are expanded multilinearly over homogeneous parts.
enum class BracketRoute { conjugation, direct, recursive };

LatticeElement lattice_taylor_bracket(BracketRoute route, const std::vector<LatticeElement>& v,
                                      const std::function<LatticeElement(const LatticeElement&)>& diff,
                                      int diff_degree);

// Scale-order sweep: samples each field on the window, evaluates the closed
// k-brackets for k <= k_max per axis and in total, and compares the observed
// h-valuations against the divisibility bounds:
//   cochains, coboundary/(2 step):  k-bracket valuation >= k-1
//   chains,   boundary/(2 step):    k-bracket valuation >= k-2
//   chains,   boundary/step:        same valuations as boundary/(2 step)
//   chains,   boundary unscaled:    k-bracket valuation >= k-1
// Requires a formal-scale window lattice.
nlohmann::json binary_qft_check(const LatticeSpec& spec, Role role, int k_max,
                                const std::vector<PolynomialField>& samples,
                                const WindowBounds& window);

} // namespace latcalc
