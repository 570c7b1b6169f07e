#pragma once

#include "latcalc/coalgebra.hpp"
#include "latcalc/lattice.hpp"
#include "latcalc/random_gen.hpp"

#include <nlohmann/json_fwd.hpp>

namespace latcalc {

// Adjacent pair of scales. The coarse lattice has twice the fine step; on
// periodic lattices the fine cells-per-axis count must halve evenly.
struct ScalePair {
    LatticeSpec fine;
    LatticeSpec coarse;

    static ScalePair from_fine(const LatticeSpec& fine);
};

// Largest fine window on which a crumbled chain is fully determined: a fine
// cell needs both coarse cells meeting it inside the coarse window.
WindowBounds crumble_window(const WindowBounds& coarse);
// Largest coarse window whose cells read only fine cells inside the given
// fine window under integration.
WindowBounds integrate_window(const WindowBounds& fine);

// Chain map from the coarse lattice into the fine one: each coarse cell
// splits into the fine cells subdividing its shifted copy. The shift fixes
// even vertices and moves odd vertices one fine step down, so in 1-D a point
// at even a goes to the point at 2a, at odd a to 2a-1; an edge at even a goes
// to the edge pair {2a, 2a-2}, at odd a to {2a-1, 2a+1}. Axes tensor.
LatticeElement crumble(const ScalePair& pair, const LatticeElement& coarse_chain);

// Cochain map dual to crumble: vertex values restrict to the shifted coarse
// vertices, edge values average the two fine cells under each coarse cell.
// Satisfies (1/2) coboundary(integrate f) = integrate(coboundary f) and
// pairing(integrate f, c) = pairing(f, crumble c).
LatticeElement integrate(const ScalePair& pair, const LatticeElement& fine_cochain);

// --- cumulants of a grade-preserving map between letter systems ------------
//
// For a degree-0 linear map bar : V -> W of graded algebras, sigma_k is the
// k-th Taylor coefficient of the coalgebra map tau_W^{-1} o S(bar) o tau_V.
// It measures the k-th deviation of bar from being an algebra map: sigma_1 =
// bar, sigma_2(u^v) = bar(uv) - bar(u)bar(v), and so on. Three evaluation
// routes are provided and must agree.

// bar applied to every letter, multilinearly re-expanded into canonical
// words of the destination system.
SymElement symmetric_extension(const SymElement& x, BarMap& bar, const LetterSystem& dst);

// tau_dst^{-1} o S(bar) o tau_src. Length-1 part on a k-letter word is
// sigma_k; the whole element feeds coalgebra-map and intertwining checks.
SymElement sigma_composed(const SymElement& x, BarMap& bar, LetterSystem& src, LetterSystem& dst);

// Partition sum: over ordered partitions of the word into r blocks,
// (-1)^{r-1}/r times the product of the barred block products, with the
// Koszul sign of the block reordering.
LinComb sigma_direct(const Word& w, BarMap& bar, LetterSystem& src, LetterSystem& dst);

// Two-letter merge recursion: sigma_k(u^v^rest) = sigma_{k-1}(uv^rest) -
// sum over subsets J of rest of +- sigma(u^rest_J) sigma(v^rest_{J^c}).
LinComb sigma_recursive(const Word& w, BarMap& bar, LetterSystem& src, LetterSystem& dst);

// sigma o D - D_bar o sigma on x. bar must be a chain map for the two
// conjugated coderivations; the defect is identically zero exactly when the
// graded intertwining relations hold through length parts of x.
SymElement intertwine_full_defect(const SymElement& x, BarMap& bar, LetterSystem& src, LetterSystem& dst);

// Length-1 part of the defect on a single k-letter word: the order-k
// relation sum_j [sigma_j, d'_{k+1-j}] evaluated on the word.
LinComb intertwine_defect(const Word& w, BarMap& bar, LetterSystem& src, LetterSystem& dst);

// Explicit matrix of a grade-preserving linear map between basis algebras.
class MatrixBarMap final : public BarMap {
public:
    // image[i] is the destination combination of source basis element i;
    // throws if any entry changes degree.
    MatrixBarMap(const GradedBasisAlgebra& src, const GradedBasisAlgebra& dst,
                 std::vector<LinComb> image);

    LinComb apply(int source_letter) override;

private:
    std::vector<LinComb> image_;
};

// Arbitrary grade-preserving matrix; the route-agreement identities hold for
// any linear map.
MatrixBarMap random_grade_map(Rng& rng, const GradedBasisAlgebra& src,
                              const GradedBasisAlgebra& dst);

// Multiplication by 1 + (a closed random degree-0 element): a chain map that
// is not an algebra map, so higher cumulants are nonzero while the
// intertwining relations still hold. The algebra's basis element 0 must be
// its unit.
MatrixBarMap random_closed_multiplier_map(Rng& rng, const GradedBasisAlgebra& alg);

// Cumulant of a tensor product of maps, assembled from the factor cumulants:
// sum over ordered partitions of 1/r! times the Koszul-signed pairing of
// sigma^V on each block with sigma^W_r on the wedge of block products.
// src/dst are the prebuilt tensor algebras; w_src_dim/w_dst_dim give the
// index split i = v * dim + w.
LinComb tensor_cumulant(const Word& w,
                        const GradedBasisAlgebra& v_src, const GradedBasisAlgebra& w_src,
                        const GradedBasisAlgebra& v_dst, const GradedBasisAlgebra& w_dst,
                        BarMap& bar_v, BarMap& bar_w);

// The tensor product map itself, for the direct-route oracle.
MatrixBarMap tensor_bar_map(const GradedBasisAlgebra& src_tensor, const GradedBasisAlgebra& dst_tensor,
                            int w_src_dim, int w_dst_dim, BarMap& bar_v, BarMap& bar_w);

// --- lattice-level cumulants ------------------------------------------------

enum class SigmaRoute { direct, recursive, composed };

// sigma_k of the inter-scale map on concrete elements, multilinear over
// homogeneous parts. Cochain role: args live on pair.fine, bar = integrate,
// result on pair.coarse. Chain role: args on pair.coarse, bar = crumble,
// result on pair.fine.
LatticeElement lattice_sigma(SigmaRoute route, const ScalePair& pair, Role role,
                             const std::vector<LatticeElement>& args);

// Length-1 intertwining defect on concrete elements. Cochain role uses
// coboundary/(2 step) on each side with its own step; chain role uses the
// unnormalized boundary, for which crumble is a chain map.
LatticeElement lattice_intertwine_defect(const ScalePair& pair, Role role,
                                         const std::vector<LatticeElement>& args);

// Explicit second-order relation on homogeneous cochains v, w:
//   integrate([v,w]) - [integrate v, integrate w]
//     = d'(sigma_2(v^w)) - sigma_2(d'v ^ w) - (-1)^{|v|} sigma_2(v ^ d'w)
// with [.,.] the 2-bracket of coboundary/(2 step) and d' that differential.
// Returns the difference of the two sides.
LatticeElement intertwine_order2_longhand(const ScalePair& pair, const LatticeElement& v,
                                          const LatticeElement& w);

// Valuation table of sigma_k on polynomial-sampled elements, 2 <= k <=
// k_max. Cochain rows assert valuation >= k-1 and that the point components
// vanish; chain rows record the observed valuation without asserting.
// Requires formal scale and window mode.
nlohmann::json sigma_divisibility_check(const ScalePair& pair, int k_max,
                                        const std::vector<PolynomialField>& samples,
                                        const WindowBounds& fine_window,
                                        Role role = Role::cochain);

// Intertwining relations on sampled cochains through order_max: order 1 is
// the cochain-map identity, higher orders the Taylor-coderivation defect;
// order 2 also in the explicit long-hand form. Residues are reported with
// their valuation when nonzero.
nlohmann::json intertwine_check(const ScalePair& pair, int order_max,
                                const std::vector<PolynomialField>& samples,
                                const WindowBounds& fine_window);

// Tower of scales below a periodic formal lattice: per adjacent pair the
// exact full-basis map identity and duality, sampled sigma valuations and
// intertwining orders; with three or more levels also the composed-map
// checks. finest.N must be divisible by 2^(levels-1).
nlohmann::json scale_tower(const LatticeSpec& finest, int levels, Role role, int k_max,
                           const std::vector<PolynomialField>& samples, int window_radius);

} // namespace latcalc
