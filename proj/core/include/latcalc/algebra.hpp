#pragma once

#include "latcalc/laurent.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace latcalc {

// Sparse linear combination of letters (basis elements or pool entries) with
// Laurent coefficients. Zero coefficients are never stored.
using LinComb = std::map<int, LaurentH>;

void add_scaled(LinComb& acc, const LinComb& x, const LaurentH& c);
LinComb scaled(const LinComb& x, const LaurentH& c);
LinComb operator+(const LinComb& a, const LinComb& b);
LinComb operator-(const LinComb& a, const LinComb& b);

// Finite-dimensional graded commutative associative algebra with a declared
// square-zero differential of degree +1 or -1. The degree shift is declared,
// never inferred from the data; check_axioms verifies the declaration.
class GradedBasisAlgebra {
public:
    GradedBasisAlgebra(std::vector<int> degrees, int diff_degree);

    int basis_size() const { return static_cast<int>(degrees_.size()); }
    int degree(int i) const { return degrees_.at(i); }
    const std::vector<int>& degrees() const { return degrees_; }
    int differential_degree() const { return diff_degree_; }

    void set_product(int i, int j, LinComb value);
    void set_differential(int i, LinComb value);

    const LinComb& product(int i, int j) const;
    const LinComb& differential(int i) const;

    LinComb product(const LinComb& x, const LinComb& y) const;
    LinComb differential(const LinComb& x) const;

    // Degree of a homogeneous combination; throws on mixed degrees.
    // Zero reports true through the bool and leaves the degree at 0.
    std::pair<int, bool> homogeneous_degree(const LinComb& x) const;

    struct Violation {
        std::string axiom;       // "commutativity" | "associativity" | "product-grading"
                                 // | "differential-grading" | "differential-square"
        std::vector<int> witness; // offending basis indices
    };
    // Empty result means every axiom holds on the whole basis.
    std::vector<Violation> check_axioms() const;

    nlohmann::json to_json() const;
    static GradedBasisAlgebra from_json(const nlohmann::json& j);

private:
    std::vector<int> degrees_;
    int diff_degree_;
    std::map<std::pair<int, int>, LinComb> products_;
    std::map<int, LinComb> differential_;
};

class Rng; // random_gen.hpp

// Exterior algebra on the generator degrees: basis indexed by generator
// subsets (bitmask order), products vanish on shared generators. The
// returned algebra has no differential set.
GradedBasisAlgebra exterior_algebra(const std::vector<int>& generator_degrees);

// Index arithmetic for the exterior basis.
int exterior_rank(std::uint32_t subset);

// Random exterior algebra with <= max_generators generators and a random
// square-zero differential of the requested degree. The differential is a
// conjugated multiplication by an odd element, so it squares to zero by
// construction and is strictly triangular in monomial length.
GradedBasisAlgebra random_graded_algebra(Rng& rng, int max_generators, int diff_degree);

// Exterior algebra whose differential is a square-zero derivation pairing
// the generators; all Taylor coefficients of order >= 2 vanish for it.
GradedBasisAlgebra random_derivation_algebra(Rng& rng, int generator_pairs, int diff_degree);

// Graded tensor product with the standard sign rule
// (x (x) y)(x' (x) y') = (-1)^{|y||x'|} xx' (x) yy' and differential
// d(x(x)y) = dx(x)y + (-1)^{|x|} x(x)dy. Basis index of (i, j) is i*dim(B)+j.
GradedBasisAlgebra tensor_product_algebra(const GradedBasisAlgebra& a, const GradedBasisAlgebra& b);

} // namespace latcalc
