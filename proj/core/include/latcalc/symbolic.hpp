#pragma once

#include "latcalc/lattice.hpp"
#include "latcalc/polynomial.hpp"

namespace latcalc {

// Exterior calculus on polynomial coefficient fields, by symbolic
// differentiation. This is the continuum side of the convergence studies,
// deliberately sharing no code with the lattice stencils.

// Graded product with the same disjoint-type merge sign as the lattice wedge.
PolynomialField field_wedge(const PolynomialField& x, const PolynomialField& y);

// Exterior derivative: f e_I -> sum over u not in I of the signed partial
// derivative on e_{I+u}. The limit of coboundary/(2 step).
PolynomialField field_d(const PolynomialField& x);

// Limit of boundary/(2 step): f e_I -> -sum over u in I of the signed
// partial derivative on e_{I-u}.
PolynomialField field_boundary(const PolynomialField& x);

// Deviation of field_boundary from Leibniz on homogeneous parts:
// b(x^y) - b(x)^y - (-1)^{|x|} x^b(y). The classical multivector bracket the
// chain 2-bracket converges to.
PolynomialField schouten_bracket(const PolynomialField& x, const PolynomialField& y);

} // namespace latcalc
