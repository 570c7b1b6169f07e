#pragma once

#include "latcalc/algebra.hpp"
#include "latcalc/polynomial.hpp"

#include <nlohmann/json_fwd.hpp>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace latcalc {

// Stencil application left the window of definition, or two elements have no
// common window. Window mode never wraps; this is a hard error.
struct WindowOverflow : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Mode { periodic, window };
enum class Role { chain, cochain };

// Lattice step as a scalar: 2^log2 * h when formal, the dyadic number
// 2^log2 when numeric. A numeric lattice at refinement level i has
// log2 = -i. Coarsening adds one to log2 in either representation.
struct Scale {
    bool formal = true;
    int log2 = 0;

    friend bool operator==(const Scale&, const Scale&) = default;
};

struct LatticeSpec {
    int n = 1;
    Mode mode = Mode::periodic;
    int N = 1; // periodic torus has 4N points per axis; ignored in window mode
    Scale scale;

    int period() const { return 4 * N; }
    friend bool operator==(const LatticeSpec&, const LatticeSpec&) = default;
};

LaurentH step_scalar(const LatticeSpec& spec);
LaurentH inv_step_scalar(const LatticeSpec& spec);

// Axis-aligned cubical cell: type = bitmask of spanned axes, center in
// lattice-step units. A cell spans center +- step along each spanned axis.
struct Cell {
    std::uint32_t type = 0;
    std::vector<int> center;

    int dim() const;
    auto operator<=>(const Cell&) const = default;
};

// Orientation sign (-1)^{#{i in I : i < u}}.
int axis_sign(std::uint32_t type, int u);
// Sign merging the ordered axis lists of two disjoint types: pairs (j, k)
// with j in J, k in K, j > k each contribute -1. Returns 0 on overlap.
int type_merge_sign(std::uint32_t j, std::uint32_t k);

using WindowBounds = std::vector<std::array<int, 2>>; // inclusive per-axis ranges

// Sparse chain or cochain with Laurent coefficients. Window-mode elements
// carry their domain of definition; stencils shift it and binary operations
// intersect it, so repeated applications shrink the domain instead of ever
// reading outside it.
class LatticeElement {
public:
    LatticeElement() = default;
    LatticeElement(LatticeSpec spec, Role role, WindowBounds window = {});

    const LatticeSpec& spec() const { return spec_; }
    Role role() const { return role_; }
    const WindowBounds& window() const { return window_; }
    const std::map<Cell, LaurentH>& entries() const { return entries_; }
    bool is_zero() const { return entries_.empty(); }

    // Adds c on the cell, canonicalizing the center (periodic reduction) and
    // rejecting centers outside the window.
    void add_entry(Cell cell, const LaurentH& c);
    LaurentH entry(const Cell& cell) const;

    friend bool operator==(const LatticeElement&, const LatticeElement&) = default;

private:
    LatticeSpec spec_;
    Role role_ = Role::cochain;
    WindowBounds window_;
    std::map<Cell, LaurentH> entries_;

    friend LatticeElement translate(const LatticeElement&, int, int);
    friend LatticeElement restrict_window(const LatticeElement&, const WindowBounds&);
};

// --- linear structure -------------------------------------------------------

LatticeElement add(const LatticeElement& x, const LatticeElement& y);
LatticeElement sub(const LatticeElement& x, const LatticeElement& y);
LatticeElement scale(const LatticeElement& x, const LaurentH& c);
LatticeElement reinterpret_role(const LatticeElement& x, Role role);
LatticeElement restrict_window(const LatticeElement& x, const WindowBounds& w);
// Entries on cells of dimension k.
LatticeElement homogeneous_part(const LatticeElement& x, int k);
// True when the two elements agree on the intersection of their windows.
bool equal_on_common_window(const LatticeElement& x, const LatticeElement& y);

// --- algebra and calculus ---------------------------------------------------

// Pointwise graded product: (x y)(I_a) = sum over disjoint J u K = I of
// sign * x(J_a) y(K_a).
LatticeElement wedge(const LatticeElement& x, const LatticeElement& y);

// Entries move by `offset` steps along axis u (+1 realizes T_u, -1 realizes
// the inverse shift T'_u); the window moves along.
LatticeElement translate(const LatticeElement& x, int u, int offset);

// Forward (T'_u - id)/step or backward (id - T_u)/step divided difference.
LatticeElement divided_difference(const LatticeElement& x, int u, bool forward);

// Per-axis boundary of a chain: drop axis u from the type, transport the
// coefficient to the two facing cells with opposite signs.
LatticeElement boundary_u(const LatticeElement& x, int u);
LatticeElement boundary(const LatticeElement& x);

// Per-axis coboundary of a cochain: raise the type by axis u with the
// symmetric two-point stencil.
LatticeElement coboundary_u(const LatticeElement& x, int u);
LatticeElement coboundary(const LatticeElement& x);

// Type complement with the merge sign; involutive up to (-1)^{k(n-k)}.
LatticeElement star(const LatticeElement& x);

// Sign involution (-1)^{dim}.
LatticeElement grade_involution(const LatticeElement& x);

// Contraction with axis u; companion of the wedge on the chain side.
LatticeElement interior_product(const LatticeElement& x, int u);

// Integration pairing of a cochain against a chain on the same lattice:
// each cell of dimension k carries measure (2 step)^k.
LaurentH pairing(const LatticeElement& cochain, const LatticeElement& chain);

// Minimum coefficient valuation over all entries; infinity for zero.
Valuation element_valuation(const LatticeElement& x);

// Substitutes h = 2^{-level} in every coefficient; spec becomes numeric.
LatticeElement evaluate_at_scale(const LatticeElement& x, int level);

// --- sampling and homology --------------------------------------------------

// Evaluates the field at physical points (center * step) on every cell of
// the window whose type has a component. Window mode only.
LatticeElement sample_polynomial(const LatticeSpec& spec, Role role,
                                 const PolynomialField& field, const WindowBounds& window);

// Rank of degree-0 homology of the periodic chain complex; equals 2^n.
int homology_rank_degree0(int n, int N);

// --- JSON -------------------------------------------------------------------

nlohmann::json lattice_element_to_json(const LatticeElement& x);
LatticeElement lattice_element_from_json(const nlohmann::json& j);

// --- bridges to the coalgebra machinery -------------------------------------

// Pool-algebra view: wedge as product, a configurable linear operator as the
// differential. Lets the generic Taylor machinery run on lattice elements.
struct LatticeOps {
    using Element = LatticeElement;

    std::function<LatticeElement(const LatticeElement&)> diff;
    int diff_deg = 1;

    LatticeElement product(const LatticeElement& x, const LatticeElement& y) const { return wedge(x, y); }
    LatticeElement differential(const LatticeElement& x) const { return diff(x); }
    int differential_degree() const { return diff_deg; }
    bool is_zero(const LatticeElement& x) const { return x.is_zero(); }
    LatticeElement scaled(const LatticeElement& x, const LaurentH& c) const { return scale(x, c); }
    LatticeElement sum(const LatticeElement& x, const LatticeElement& y) const;
    std::vector<std::pair<int, LatticeElement>> homogeneous_parts(const LatticeElement& x) const;
};

// Normalized differentials used throughout: coboundary / (2 step) on
// cochains, boundary / (2 step) and boundary / step on chains.
LatticeElement coboundary_half_step(const LatticeElement& x);
LatticeElement boundary_half_step(const LatticeElement& x);
LatticeElement boundary_over_step(const LatticeElement& x);

// Dense basis of a periodic lattice, cells in map order.
struct LatticeBasis {
    LatticeSpec spec;
    Role role;
    std::vector<Cell> cells;
    std::map<Cell, int> index;
};

LatticeBasis enumerate_basis(const LatticeSpec& spec, Role role);

// Flattens the periodic lattice into an explicit GradedBasisAlgebra with the
// given normalized differential.
GradedBasisAlgebra lattice_algebra(const LatticeBasis& basis,
                                   const std::function<LatticeElement(const LatticeElement&)>& diff,
                                   int diff_degree);

LinComb to_lincomb(const LatticeElement& x, const LatticeBasis& basis);
LatticeElement from_lincomb(const LinComb& x, const LatticeBasis& basis);

} // namespace latcalc
