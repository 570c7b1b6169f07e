#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

#include <latcalc/brackets.hpp>

#include <nlohmann/json.hpp>

#include <functional>
#include <vector>

using namespace latcalc;
using namespace latcalc::testutil;

namespace {

const std::function<LatticeElement(const LatticeElement&)> cobh =
    [](const LatticeElement& y) { return coboundary_half_step(y); };
const std::function<LatticeElement(const LatticeElement&)> bndh =
    [](const LatticeElement& y) { return boundary_half_step(y); };

// Vertex element with the same coefficient on every site.
LatticeElement constant_vertex(const LatticeSpec& spec, Role role, const LaurentH& c) {
    LatticeElement x(spec, role);
    std::vector<int> center(spec.n, 0);
    const auto visit = [&](auto&& self, int axis) -> void {
        if (axis == spec.n) {
            x.add_entry(Cell{0, center}, c);
            return;
        }
        for (center[axis] = 0; center[axis] < spec.period(); ++center[axis]) self(self, axis + 1);
    };
    visit(visit, 0);
    return x;
}

LatticeElement monomial_chain(const LatticeSpec& spec, std::uint32_t type, std::vector<int> center,
                              const LaurentH& c) {
    LatticeElement x(spec, Role::chain);
    x.add_entry(Cell{type, std::move(center)}, c);
    return x;
}

} // namespace

TEST_CASE("arity-one brackets are the normalized differentials") {
    Rng rng(1009);
    for (int n = 1; n <= 2; ++n) {
        const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
        const LatticeElement f = random_element(rng, spec, Role::cochain, 4);
        const LatticeElement x = random_element(rng, spec, Role::chain, 4);
        CHECK(delta_bracket_closed({f}) == coboundary_half_step(f));
        CHECK(partial_bracket_closed({x}) == boundary_half_step(x));

        const LaurentH inv_two_step = LaurentH::monomial(-1, Rational(1, 2));
        for (int u = 0; u < n; ++u)
            CHECK(delta_bracket_closed({f}, u) == scale(coboundary_u(f, u), inv_two_step));
    }
}

TEST_CASE("per-axis brackets sum to the full bracket") {
    Rng rng(1013);
    const LatticeSpec spec = make_spec(2, Mode::periodic, 1);
    for (int k = 2; k <= 3; ++k) {
        std::vector<LatticeElement> fs, xs;
        for (int i = 0; i < k; ++i) {
            fs.push_back(random_element(rng, spec, Role::cochain, 3));
            xs.push_back(random_element(rng, spec, Role::chain, 3));
        }
        CHECK(delta_bracket_closed(fs) ==
              add(delta_bracket_closed(fs, 0), delta_bracket_closed(fs, 1)));
        CHECK(partial_bracket_closed(xs) ==
              add(partial_bracket_closed(xs, 0), partial_bracket_closed(xs, 1)));
    }
}

TEST_CASE("two-bracket is the product-rule defect of the differential") {
    Rng rng(1019);
    for (int n = 1; n <= 2; ++n) {
        const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
        for (int t = 0; t < 6; ++t) {
            const LatticeElement f = random_element(rng, spec, Role::cochain, 3);
            const LatticeElement g = random_element(rng, spec, Role::cochain, 3);
            CHECK(delta_bracket_closed({f, g}) ==
                  sub(sub(coboundary_half_step(wedge(f, g)),
                          wedge(coboundary_half_step(f), g)),
                      wedge(grade_involution(f), coboundary_half_step(g))));

            const LatticeElement x = random_element(rng, spec, Role::chain, 3);
            const LatticeElement y = random_element(rng, spec, Role::chain, 3);
            CHECK(partial_bracket_closed({x, y}) ==
                  sub(sub(boundary_half_step(wedge(x, y)),
                          wedge(boundary_half_step(x), y)),
                      wedge(grade_involution(x), boundary_half_step(y))));
        }
    }
}

TEST_CASE("brackets of constant terms vanish") {
    Rng rng(1021);
    const LatticeSpec spec = make_spec(2, Mode::periodic, 1);
    const LatticeElement c1 = constant_vertex(spec, Role::cochain, LaurentH(rng.nonzero_rational()));
    const LatticeElement c2 = constant_vertex(spec, Role::cochain, LaurentH(rng.nonzero_rational()));
    const LatticeElement c3 = constant_vertex(spec, Role::cochain, LaurentH(rng.nonzero_rational()));
    CHECK(coboundary(c1).is_zero());
    CHECK(delta_bracket_closed({c1, c2}).is_zero());
    CHECK(delta_bracket_closed({c1, c2, c3}).is_zero());

    const LatticeElement z1 = constant_vertex(spec, Role::chain, LaurentH(rng.nonzero_rational()));
    const LatticeElement z2 = constant_vertex(spec, Role::chain, LaurentH(rng.nonzero_rational()));
    CHECK(partial_bracket_closed({z1, z2}).is_zero());
}

TEST_CASE("chain brackets vanish along axes the cells do not span") {
    Rng rng(1031);
    const LatticeSpec spec = make_spec(3, Mode::periodic, 1);
    const auto cell = [&](std::uint32_t type) {
        return monomial_chain(spec, type,
                              {rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3)},
                              rng.nonzero_laurent());
    };
    // axis 2 appears in no argument type
    CHECK(partial_bracket_closed({cell(1), cell(2)}, 2).is_zero());
    CHECK(partial_bracket_closed({cell(3), cell(1), cell(2)}, 2).is_zero());

    // control: the bracket itself is not identically zero
    bool saw_nonzero = false;
    for (int t = 0; t < 10 && !saw_nonzero; ++t) {
        const LatticeElement x = random_element(rng, spec, Role::chain, 4);
        const LatticeElement y = random_element(rng, spec, Role::chain, 4);
        saw_nonzero = !partial_bracket_closed({x, y}).is_zero();
    }
    CHECK(saw_nonzero);
}

TEST_CASE("case table matches the closed chain brackets") {
    Rng rng(1033);
    const LatticeSpec spec = make_spec(3, Mode::periodic, 1);
    for (int t = 0; t < 40; ++t) {
        const int k = 2 + t % 2;
        std::vector<LatticeElement> v;
        for (int i = 0; i < k; ++i)
            v.push_back(monomial_chain(spec, static_cast<std::uint32_t>(rng.uniform(0, 7)),
                                       {rng.uniform(0, 3), rng.uniform(0, 3), rng.uniform(0, 3)},
                                       rng.nonzero_laurent()));
        for (int u = 0; u < 3; ++u) CHECK(bracket_table_n3(v, u) == partial_bracket_closed(v, u));
    }
}

TEST_CASE("closed brackets match the generic machinery on all routes") {
    Rng rng(1039);
    const BracketRoute routes[] = {BracketRoute::conjugation, BracketRoute::direct,
                                   BracketRoute::recursive};
    for (int n = 1; n <= 2; ++n) {
        const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
        const int k_max = n == 1 ? 3 : 2;
        for (int k = 1; k <= k_max; ++k) {
            std::vector<LatticeElement> fs, xs;
            for (int i = 0; i < k; ++i) {
                fs.push_back(random_element(rng, spec, Role::cochain, 2));
                xs.push_back(random_element(rng, spec, Role::chain, 2));
            }
            const LatticeElement want_f = delta_bracket_closed(fs);
            const LatticeElement want_x = partial_bracket_closed(xs);
            for (const BracketRoute route : routes) {
                CHECK(lattice_taylor_bracket(route, fs, cobh, 1) == want_f);
                CHECK(lattice_taylor_bracket(route, xs, bndh, -1) == want_x);
            }
        }
    }

    // the routes also agree for a differential with no closed form
    const LatticeSpec spec = make_spec(1, Mode::periodic, 1);
    const std::function<LatticeElement(const LatticeElement&)> raw =
        [](const LatticeElement& y) { return coboundary(y); };
    const std::vector<LatticeElement> v = {random_element(rng, spec, Role::cochain, 2),
                                           random_element(rng, spec, Role::cochain, 2)};
    const LatticeElement base = lattice_taylor_bracket(BracketRoute::conjugation, v, raw, 1);
    CHECK(lattice_taylor_bracket(BracketRoute::direct, v, raw, 1) == base);
    CHECK(lattice_taylor_bracket(BracketRoute::recursive, v, raw, 1) == base);
}

TEST_CASE("two-brackets are graded symmetric") {
    Rng rng(1049);
    const LatticeSpec spec = make_spec(2, Mode::periodic, 1);
    for (int j = 0; j <= 2; ++j)
        for (int k = 0; k <= 2; ++k) {
            const LatticeElement f = random_homogeneous(rng, spec, Role::cochain, j, 3);
            const LatticeElement g = random_homogeneous(rng, spec, Role::cochain, k, 3);
            CHECK(delta_bracket_closed({f, g}) ==
                  scale(delta_bracket_closed({g, f}), sign_of(j * k)));

            const LatticeElement x = random_homogeneous(rng, spec, Role::chain, j, 3);
            const LatticeElement y = random_homogeneous(rng, spec, Role::chain, k, 3);
            CHECK(partial_bracket_closed({x, y}) ==
                  scale(partial_bracket_closed({y, x}), sign_of(j * k)));
        }
}

TEST_CASE("scale-order sweep reports the divisibility bounds") {
    Rng rng(1051);
    const LatticeSpec spec = make_spec(1, Mode::window, 1);
    const WindowBounds window = make_window(1, 5);
    std::vector<PolynomialField> samples;
    for (int i = 0; i < 3; ++i) samples.push_back(rng.field(1, all_types(1), 3));

    const nlohmann::json cochain = binary_qft_check(spec, Role::cochain, 3, samples, window);
    CHECK(cochain.at("pass").get<bool>());
    CHECK_FALSE(cochain.at("rows").empty());
    for (const auto& row : cochain.at("rows")) {
        CHECK(row.at("role").get<std::string>() == "cochain");
        CHECK(row.at("normalization").get<std::string>() == "coboundary/(2 step)");
        CHECK(row.at("bound").get<int>() == row.at("k").get<int>() - 1);
        const bool ok = row.at("min_valuation").is_null() ||
                        row.at("min_valuation").get<int>() >= row.at("bound").get<int>();
        CHECK(row.at("pass").get<bool>() == ok);
    }

    const nlohmann::json chain = binary_qft_check(spec, Role::chain, 3, samples, window);
    CHECK(chain.at("pass").get<bool>());
    bool saw_half = false, saw_step = false, saw_raw = false;
    for (const auto& row : chain.at("rows")) {
        CHECK(row.at("role").get<std::string>() == "chain");
        const std::string norm = row.at("normalization").get<std::string>();
        const int k = row.at("k").get<int>();
        if (norm == "boundary/(2 step)") {
            saw_half = true;
            CHECK(row.at("bound").get<int>() == k - 2);
        } else if (norm == "boundary/step") {
            saw_step = true;
            CHECK(row.at("bound").get<int>() == k - 2);
        } else {
            saw_raw = true;
            CHECK(norm == "boundary");
            CHECK(row.at("bound").get<int>() == k - 1);
        }
        CHECK(row.at("pass").get<bool>());
    }
    CHECK(saw_half);
    CHECK(saw_step);
    CHECK(saw_raw);
}
