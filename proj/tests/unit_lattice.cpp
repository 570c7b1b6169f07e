#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <latcalc/lattice.hpp>

#include <nlohmann/json.hpp>

#include <stdexcept>
#include <vector>

using namespace latcalc;
using namespace latcalc::testutil;

namespace {

// Element with the given coefficient on every cell of one type.
LatticeElement constant_type(const LatticeSpec& spec, Role role, std::uint32_t type,
                             const LaurentH& c) {
    LatticeElement x(spec, role);
    std::vector<int> center(spec.n, 0);
    const auto visit = [&](auto&& self, int axis) -> void {
        if (axis == spec.n) {
            x.add_entry(Cell{type, center}, c);
            return;
        }
        for (center[axis] = 0; center[axis] < spec.period(); ++center[axis]) self(self, axis + 1);
    };
    visit(visit, 0);
    return x;
}

PolynomialField scalar_field(int n, Polynomial p) {
    PolynomialField f;
    f.n = n;
    f.set(0, std::move(p));
    return f;
}

} // namespace

TEST_CASE("boundary of an edge is its endpoint difference") {
    const LatticeSpec spec = make_spec(1, Mode::periodic, 2); // 8 sites per axis
    LatticeElement edge(spec, Role::chain);
    edge.add_entry(Cell{1, {0}}, LaurentH(1));

    const LatticeElement b = boundary(edge);
    CHECK(b.entries().size() == 2);
    CHECK(b.entry(Cell{0, {1}}) == LaurentH(1));
    CHECK(b.entry(Cell{0, {7}}) == LaurentH(-1)); // -1 wrapped mod 8
    CHECK(boundary(b).is_zero());

    // scaled variants divide by the (doubled) step
    CHECK(boundary_half_step(edge) == scale(b, LaurentH::monomial(-1, Rational(1, 2))));
    CHECK(boundary_over_step(edge) == scale(b, LaurentH::monomial(-1)));
}

TEST_CASE("coboundary of a sampled function takes centered differences") {
    const LatticeSpec spec = make_spec(1, Mode::window, 1);
    const WindowBounds win = make_window(1, 4);
    const Polynomial x = Polynomial::variable(1, 0);
    const LatticeElement f = sample_polynomial(spec, Role::cochain, scalar_field(1, x * x), win);

    CHECK(f.entry(Cell{0, {3}}) == LaurentH::monomial(2, 9));
    CHECK(element_valuation(f) == Valuation(2));

    const LatticeElement df = coboundary(f);
    CHECK(df.window() == WindowBounds{{-3, 3}});
    for (int a = -3; a <= 3; ++a)
        CHECK(df.entry(Cell{1, {a}}) == LaurentH::monomial(2, 4 * a));
    CHECK(coboundary(df).is_zero());
    CHECK(coboundary_half_step(f).entry(Cell{1, {2}}) == LaurentH::monomial(1, 4));
}

TEST_CASE("divided differences of the coordinate sample are constant") {
    const LatticeSpec spec = make_spec(1, Mode::window, 1);
    const WindowBounds win = make_window(1, 4);
    const LatticeElement f =
        sample_polynomial(spec, Role::cochain, scalar_field(1, Polynomial::variable(1, 0)), win);

    const LatticeElement fwd = divided_difference(f, 0, true);
    CHECK(fwd.window() == WindowBounds{{-4, 3}});
    CHECK(fwd.entries().size() == 8);
    for (const auto& [cell, c] : fwd.entries()) CHECK(c == LaurentH(1));

    const LatticeElement bwd = divided_difference(f, 0, false);
    for (const auto& [cell, c] : bwd.entries()) CHECK(c == LaurentH(1));
}

TEST_CASE("wedge of the coordinate one-forms is the volume form") {
    const LatticeSpec spec = make_spec(3, Mode::periodic, 1); // 4 sites per axis
    const LatticeElement d0 = constant_type(spec, Role::cochain, 1, LaurentH(1));
    const LatticeElement d1 = constant_type(spec, Role::cochain, 2, LaurentH(1));
    const LatticeElement d2 = constant_type(spec, Role::cochain, 4, LaurentH(1));

    const LatticeElement vol = wedge(d0, wedge(d1, d2));
    CHECK(vol.entries().size() == 64);
    for (const auto& [cell, c] : vol.entries()) {
        CHECK(cell.type == 7u);
        CHECK(c == LaurentH(1));
    }
    CHECK(wedge(d1, d0) == scale(wedge(d0, d1), LaurentH(-1)));
    CHECK(wedge(d0, d0).is_zero());
}

TEST_CASE("star and contraction on the coordinate forms") {
    const LatticeSpec spec = make_spec(2, Mode::periodic, 1);
    LatticeElement dx0(spec, Role::cochain), dx1(spec, Role::cochain), pt(spec, Role::cochain),
        area(spec, Role::cochain);
    dx0.add_entry(Cell{1, {0, 0}}, LaurentH(1));
    dx1.add_entry(Cell{2, {0, 0}}, LaurentH(1));
    pt.add_entry(Cell{0, {0, 0}}, LaurentH(1));
    area.add_entry(Cell{3, {0, 0}}, LaurentH(1));

    CHECK(star(pt) == area);
    CHECK(star(area) == pt);
    CHECK(star(dx0) == dx1);
    CHECK(star(dx1) == scale(dx0, LaurentH(-1)));

    CHECK(interior_product(area, 0) == dx1);
    CHECK(interior_product(area, 1) == scale(dx0, LaurentH(-1)));
    CHECK(interior_product(interior_product(area, 0), 0).is_zero());
    CHECK(interior_product(pt, 0).is_zero());
}

TEST_CASE("randomized graded identities for the operators") {
    Rng rng(709);
    for (int n = 1; n <= 2; ++n) {
        const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
        for (int t = 0; t < 8; ++t) {
            const int u = rng.uniform(0, n - 1);

            // star conjugates the boundary into the coboundary
            const LatticeElement x = random_element(rng, spec, Role::chain, 3);
            CHECK(coboundary_u(reinterpret_role(star(grade_involution(x)), Role::cochain), u) ==
                  reinterpret_role(star(boundary_u(x, u)), Role::cochain));

            // shifted product rule for the coboundary, both shift orders
            const LatticeElement f = random_element(rng, spec, Role::cochain, 3);
            const LatticeElement g = random_element(rng, spec, Role::cochain, 3);
            const LatticeElement lhs = coboundary_u(wedge(f, g), u);
            CHECK(lhs == add(wedge(coboundary_u(f, u), translate(g, u, -1)),
                             wedge(translate(grade_involution(f), u, 1), coboundary_u(g, u))));
            CHECK(lhs == add(wedge(coboundary_u(f, u), translate(g, u, 1)),
                             wedge(translate(grade_involution(f), u, -1), coboundary_u(g, u))));

            // contraction product rule rides along a one-step shift
            const LatticeElement y = random_element(rng, spec, Role::chain, 3);
            const auto shift = [&](const LatticeElement& z) { return translate(z, u, 1); };
            CHECK(shift(interior_product(wedge(x, y), u)) ==
                  add(wedge(shift(interior_product(x, u)), shift(y)),
                      wedge(shift(grade_involution(x)), shift(interior_product(y, u)))));

            // Koszul commutativity on homogeneous parts, associativity in general
            const int j = rng.uniform(0, n), k = rng.uniform(0, n);
            const LatticeElement hj = random_homogeneous(rng, spec, Role::cochain, j, 3);
            const LatticeElement hk = random_homogeneous(rng, spec, Role::cochain, k, 3);
            CHECK(wedge(hj, hk) == scale(wedge(hk, hj), sign_of(j * k)));
            CHECK(wedge(wedge(hj, hk), f) == wedge(hj, wedge(hk, f)));
            CHECK(star(star(hj)) == scale(hj, sign_of(j * (n - j))));

            CHECK(boundary(boundary(x)).is_zero());
            CHECK(coboundary(coboundary(f)).is_zero());
        }
    }
}

TEST_CASE("translation round trips and windows shift with the element") {
    Rng rng(719);
    const LatticeSpec spec = make_spec(2, Mode::window, 1);
    const WindowBounds win = make_window(2, 3);
    const LatticeElement x = random_element(rng, spec, Role::cochain, 4, win);

    const LatticeElement moved = translate(x, 0, 2);
    CHECK(moved.window() == WindowBounds{{-1, 5}, {-3, 3}});
    CHECK(translate(moved, 0, -2) == x);

    LatticeElement y(spec, Role::cochain, win);
    CHECK_THROWS_AS(y.add_entry(Cell{0, {4, 0}}, LaurentH(1)), WindowOverflow);
    CHECK_THROWS_AS(y.add_entry(Cell{0, {0}}, LaurentH(1)), std::invalid_argument);
    CHECK_THROWS_AS(y.add_entry(Cell{4, {0, 0}}, LaurentH(1)), std::invalid_argument);
    CHECK_THROWS_AS(restrict_window(translate(x, 0, 7), WindowBounds{{-3, 3}, {-3, 3}}),
                    WindowOverflow);

    const LatticeElement narrowed = restrict_window(x, WindowBounds{{0, 3}, {-3, 3}});
    for (const auto& [cell, c] : narrowed.entries()) {
        CHECK(cell.center[0] >= 0);
        CHECK(x.entry(cell) == c);
    }
    CHECK(equal_on_common_window(narrowed, x));
}

TEST_CASE("pairing weights each cell by the doubled step") {
    const LatticeSpec spec = make_spec(1, Mode::window, 1);
    const WindowBounds win = make_window(1, 4);
    const LatticeElement f =
        sample_polynomial(spec, Role::cochain, scalar_field(1, Polynomial::variable(1, 0)), win);

    LatticeElement vertex(spec, Role::chain, win);
    vertex.add_entry(Cell{0, {3}}, LaurentH(1));
    CHECK(pairing(f, vertex) == LaurentH::monomial(1, 3)); // f(3h) = 3h, measure 1

    LatticeElement dx(spec, Role::cochain, win), edge(spec, Role::chain, win);
    dx.add_entry(Cell{1, {2}}, LaurentH(1));
    edge.add_entry(Cell{1, {2}}, LaurentH(1));
    CHECK(pairing(dx, edge) == LaurentH::monomial(1, 2)); // unit density, measure 2h

    LatticeElement other(spec, Role::chain, win);
    other.add_entry(Cell{1, {1}}, LaurentH(1));
    CHECK(pairing(dx, other).is_zero());
    CHECK_THROWS_AS(pairing(edge, edge), std::invalid_argument); // chain in the cochain slot
}

TEST_CASE("numeric scale substitution on whole elements") {
    const LatticeSpec spec = make_spec(1, Mode::periodic, 1);
    LatticeElement x(spec, Role::cochain);
    x.add_entry(Cell{0, {0}}, LaurentH::h());
    x.add_entry(Cell{1, {1}}, LaurentH(1) + LaurentH::monomial(2, 2));

    const LatticeElement at1 = evaluate_at_scale(x, 1);
    CHECK_FALSE(at1.spec().scale.formal);
    CHECK(at1.spec().scale.log2 == -1);
    CHECK(at1.entry(Cell{0, {0}}) == LaurentH(Rational(1, 2)));
    CHECK(at1.entry(Cell{1, {1}}) == LaurentH(Rational(3, 2)));
    CHECK_THROWS_AS(evaluate_at_scale(at1, 1), std::invalid_argument);
}

TEST_CASE("degree zero homology counts the overlap components") {
    CHECK(homology_rank_degree0(1, 1) == 2);
    CHECK(homology_rank_degree0(2, 1) == 4);
    CHECK(homology_rank_degree0(3, 1) == 8);
}

TEST_CASE("full basis enumeration matches the algebra view") {
    const LatticeSpec spec = make_spec(1, Mode::periodic, 1);
    const LatticeBasis basis = enumerate_basis(spec, Role::cochain);
    CHECK(basis.cells.size() == 8); // 4 sites, 2 types

    GradedBasisAlgebra alg = lattice_algebra(
        basis, [](const LatticeElement& y) { return coboundary_half_step(y); }, 1);
    CHECK(alg.basis_size() == 8);
    CHECK(alg.check_axioms().empty());

    Rng rng(727);
    const LatticeElement x = random_element(rng, spec, Role::cochain, 4);
    CHECK(from_lincomb(to_lincomb(x, basis), basis) == x);

    // products in the algebra mirror the wedge
    const LatticeElement y = random_element(rng, spec, Role::cochain, 4);
    CHECK(from_lincomb(alg.product(to_lincomb(x, basis), to_lincomb(y, basis)), basis) ==
          wedge(x, y));
    CHECK(from_lincomb(alg.differential(to_lincomb(x, basis)), basis) ==
          coboundary_half_step(x));
}

TEST_CASE("lattice element json round trips") {
    Rng rng(733);
    const LatticeSpec periodic = make_spec(2, Mode::periodic, 1);
    const LatticeElement x = random_element(rng, periodic, Role::chain, 5);
    CHECK(lattice_element_from_json(lattice_element_to_json(x)) == x);

    const LatticeSpec window = make_spec(2, Mode::window, 1);
    const LatticeElement y = random_element(rng, window, Role::cochain, 5, make_window(2, 3));
    CHECK(lattice_element_from_json(lattice_element_to_json(y)) == y);

    const LatticeElement z = evaluate_at_scale(y, 2);
    CHECK(lattice_element_from_json(lattice_element_to_json(z)) == z);
}
