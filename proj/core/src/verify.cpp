#include "latcalc/verify.hpp"

#include "latcalc/brackets.hpp"
#include "latcalc/multiscale.hpp"
#include "latcalc/random_gen.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <future>
#include <utility>

namespace latcalc {

namespace {

using CheckBody = std::function<std::pair<bool, std::string>(nlohmann::json& witness)>;

// Exceptions become failing checks so a window overflow or a bad config
// surfaces as a named entry instead of aborting the whole report.
void run_check(Report& rep, const std::string& id, const std::string& anchor, const CheckBody& body) {
    CheckResult c;
    c.id = id;
    c.anchor = anchor;
    try {
        auto [ok, detail] = body(c.witness);
        c.pass = ok;
        c.detail = detail;
    } catch (const std::exception& e) {
        c.pass = false;
        c.detail = std::string("exception: ") + e.what();
    }
    rep.add(std::move(c));
}

std::pair<bool, std::string> ok(const std::string& detail) { return {true, detail}; }
std::pair<bool, std::string> fail(const std::string& detail) { return {false, detail}; }

Word random_word(Rng& rng, const LetterSystem& ls, int max_letter, int len) {
    for (;;) {
        std::vector<int> letters;
        for (int i = 0; i < len; ++i) letters.push_back(rng.uniform(0, max_letter));
        if (auto cw = canonicalize(std::move(letters), ls)) return cw->word;
    }
}

SymElement random_sym(Rng& rng, const LetterSystem& ls, int max_letter, int max_len, int terms) {
    SymElement x;
    for (int t = 0; t < terms; ++t)
        x += SymElement::single(random_word(rng, ls, max_letter, rng.uniform(1, max_len)),
                                rng.nonzero_laurent(0, 1, 2));
    return x;
}

std::vector<std::uint32_t> types_of_dim(int n, int dim) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < (1u << n); ++t)
        if (std::popcount(t) == dim) out.push_back(t);
    return out;
}

std::vector<std::uint32_t> all_types(int n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < (1u << n); ++t) out.push_back(t);
    return out;
}

Cell random_cell(Rng& rng, const LatticeSpec& spec, std::uint32_t type, const WindowBounds& window) {
    Cell c;
    c.type = type;
    for (int a = 0; a < spec.n; ++a)
        c.center.push_back(spec.mode == Mode::periodic ? rng.uniform(0, spec.period() - 1)
                                                       : rng.uniform(window[a][0], window[a][1]));
    return c;
}

LatticeElement random_element(Rng& rng, const LatticeSpec& spec, Role role, int terms,
                              const WindowBounds& window = {}) {
    LatticeElement x(spec, role, window);
    for (int t = 0; t < terms; ++t) {
        auto type = static_cast<std::uint32_t>(rng.uniform(0, (1 << spec.n) - 1));
        x.add_entry(random_cell(rng, spec, type, window), rng.nonzero_laurent(0, 1, 2));
    }
    return x;
}

LatticeElement random_homogeneous(Rng& rng, const LatticeSpec& spec, Role role, int dim, int terms,
                                  const WindowBounds& window = {}) {
    const auto types = types_of_dim(spec.n, dim);
    LatticeElement x(spec, role, window);
    for (int t = 0; t < terms; ++t) {
        auto type = types[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(types.size()) - 1))];
        x.add_entry(random_cell(rng, spec, type, window), rng.nonzero_laurent(0, 1, 2));
    }
    return x;
}

WindowBounds make_window(int n, int radius) {
    return WindowBounds(static_cast<std::size_t>(n), {-radius, radius});
}

LatticeSpec make_spec(int n, Mode mode, int N) {
    LatticeSpec spec;
    spec.n = n;
    spec.mode = mode;
    spec.N = N;
    return spec;
}

// Koszul flip of an arity-2 tensor; equality with the original is the
// cocommutativity of the reduced coproduct.
SymTensor flip_tensor(const SymTensor& t, const LetterSystem& ls) {
    SymTensor out(2);
    for (const auto& [slots, c] : t.terms()) {
        const bool both_odd = word_degree(slots[0], ls) % 2 && word_degree(slots[1], ls) % 2;
        out.add_term({slots[1], slots[0]}, both_odd ? -c : c);
    }
    return out;
}

// (f (x) g) applied slotwise to an arity-2 tensor, f and g valued in SymElements.
SymTensor map_slots(const SymTensor& t,
                    const std::function<SymElement(const Word&)>& f,
                    const std::function<SymElement(const Word&)>& g) {
    SymTensor out(2);
    for (const auto& [slots, c] : t.terms()) {
        const SymElement fa = f(slots[0]);
        const SymElement gb = g(slots[1]);
        for (const auto& [wa, ca] : fa.terms())
            for (const auto& [wb, cb] : gb.terms())
                out.add_term({wa, wb}, c * ca * cb);
    }
    return out;
}

nlohmann::json mode_json(Mode mode) { return mode == Mode::periodic ? "periodic" : "window"; }

} // namespace

nlohmann::json RunConfig::to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["N"] = N;
    j["mode"] = mode_json(mode);
    j["window_radius"] = window_radius;
    j["k_max"] = k_max;
    j["degree"] = degree;
    j["samples"] = samples;
    j["seed"] = seed;
    j["levels"] = levels;
    // The output path stays out of the config echo so reports written to
    // different locations from the same run configuration are byte-identical.
    return j;
}

Report run_scalar_suite(const RunConfig& cfg) {
    Report rep;
    rep.config = cfg.to_json();
    rep.config["suite"] = "scalar";
    Rng rng(cfg.seed + 11);

    run_check(rep, "scalar/ring-axioms", "laurent-ring-axioms",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        for (int t = 0; t < 100; ++t) {
            const LaurentH a = rng.laurent(-2, 3, 3), b = rng.laurent(-2, 3, 3), c = rng.laurent(-2, 3, 3);
            const bool okay = (a * b) * c == a * (b * c) && a * (b + c) == a * b + a * c && a * b == b * a;
            if (!okay) {
                w = {{"a", a.to_json()}, {"b", b.to_json()}, {"c", c.to_json()}};
                return fail("ring axiom violated at trial " + std::to_string(t));
            }
        }
        return ok("associativity, distributivity, commutativity on 100 random triples");
    });

    run_check(rep, "scalar/valuation-subadditive", "valuation-ultrametric",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        for (int t = 0; t < 100; ++t) {
            const LaurentH a = rng.laurent(-2, 3, 2), b = rng.laurent(-2, 3, 2);
            const Valuation va = a.valuation(), vb = b.valuation(), vs = (a + b).valuation();
            const Valuation lo = va < vb ? va : vb;
            bool okay = vs >= lo || !lo.is_finite();
            if (okay && va != vb) okay = vs == lo;
            if (!okay) {
                w = {{"a", a.to_json()}, {"b", b.to_json()}};
                return fail("valuation bound violated at trial " + std::to_string(t));
            }
        }
        return ok("valuation(x+y) >= min, equality on distinct valuations, 100 trials");
    });

    run_check(rep, "scalar/eval-ring-hom", "scale-substitution-hom",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        for (int t = 0; t < 100; ++t) {
            const LaurentH a = rng.laurent(-2, 3, 3), b = rng.laurent(-2, 3, 3);
            const int level = rng.uniform(0, 6);
            const bool okay =
                (a * b).evaluate_at_scale(level) == a.evaluate_at_scale(level) * b.evaluate_at_scale(level) &&
                (a + b).evaluate_at_scale(level) == a.evaluate_at_scale(level) + b.evaluate_at_scale(level);
            if (!okay) {
                w = {{"a", a.to_json()}, {"b", b.to_json()}, {"level", level}};
                return fail("substitution is not a homomorphism at trial " + std::to_string(t));
            }
        }
        return ok("evaluate_at_scale respects + and * on 100 random pairs");
    });

    return rep;
}

Report run_coalgebra_suite(const RunConfig& cfg) {
    Report rep;
    rep.config = cfg.to_json();
    rep.config["suite"] = "coalgebra";
    Rng rng(cfg.seed + 23);

    GradedBasisAlgebra alg = random_graded_algebra(rng, 4, 1);
    BasisLetters ls(alg);
    const int top = alg.basis_size() - 1;

    run_check(rep, "coalgebra/coproduct-coassoc", "reduced-coproduct-coassociative",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int t = 0; t < 20; ++t) {
            const SymElement x = random_sym(rng, ls, top, 5, 2);
            const SymTensor d = reduced_coproduct(x, ls);
            SymTensor left(3), right(3);
            for (const auto& [slots, c] : d.terms()) {
                const SymTensor d0 = reduced_coproduct(SymElement::single(slots[0]), ls);
                for (const auto& [s2, c2] : d0.terms())
                    left.add_term({s2[0], s2[1], slots[1]}, c * c2);
                const SymTensor d1 = reduced_coproduct(SymElement::single(slots[1]), ls);
                for (const auto& [s2, c2] : d1.terms())
                    right.add_term({slots[0], s2[0], s2[1]}, c * c2);
            }
            if (!(left == right)) return fail("coassociativity fails: " + x.to_string());
            if (!(flip_tensor(d, ls) == d)) return fail("cocommutativity fails: " + x.to_string());
        }
        return ok("coassociative and cocommutative on 20 random elements, words up to length 5");
    });

    run_check(rep, "coalgebra/lift-coalgebra-map", "cumulant-lift-comultiplicative",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int t = 0; t < 15; ++t) {
            const SymElement x = random_sym(rng, ls, top, 4, 2);
            const SymTensor lhs = reduced_coproduct(tau(x, ls), ls);
            const auto lift = [&](const Word& w) { return tau(SymElement::single(w), ls); };
            if (!(lhs == map_slots(reduced_coproduct(x, ls), lift, lift)))
                return fail("coalgebra-map identity fails: " + x.to_string());
        }
        return ok("coproduct commutes with the lift on 15 random elements, length up to 4");
    });

    run_check(rep, "coalgebra/lift-roundtrip", "cumulant-lift-bijection",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int t = 0; t < 20; ++t) {
            const SymElement x = random_sym(rng, ls, top, 5, 2);
            if (!(tau_inv(tau(x, ls), ls) == x)) return fail("tau_inv o tau != id: " + x.to_string());
            if (!(tau(tau_inv(x, ls), ls) == x)) return fail("tau o tau_inv != id: " + x.to_string());
        }
        return ok("both roundtrips are the identity on 20 random elements, length up to 5");
    });

    run_check(rep, "coalgebra/inverse-length1", "inverse-lift-leading-term",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int k = 1; k <= 5; ++k)
            for (int t = 0; t < 8; ++t) {
                const Word w = random_word(rng, ls, top, k);
                const int sign = k % 2 == 1 ? 1 : -1;
                const LinComb expect = scaled(tau1(w, ls), LaurentH(Rational(sign * factorial(k - 1))));
                if (project_length1(tau_inv(SymElement::single(w), ls)) != expect)
                    return fail("length-1 part of the inverse lift is off at k=" + std::to_string(k));
            }
        return ok("p1 o tau_inv = (-1)^{k-1}(k-1)! tau1 for k <= 5");
    });

    run_check(rep, "coalgebra/conjugated-square-zero", "conjugated-coderivation-squares-to-zero",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int len = 1; len <= 4; ++len)
            for (int t = 0; t < 4; ++t) {
                const SymElement x = SymElement::single(random_word(rng, ls, top, len));
                if (!taylor_coderivation(taylor_coderivation(x, ls), ls).is_zero())
                    return fail("D o D != 0 on " + x.to_string());
            }
        return ok("D o D = 0 on random words of length up to 4");
    });

    run_check(rep, "coalgebra/taylor-sum", "coderivation-taylor-decomposition",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        const KBracket bracket = [&ls](const Word& w) { return taylor_bracket_direct(w, ls); };
        for (int len = 1; len <= 4; ++len)
            for (int t = 0; t < 4; ++t) {
                const SymElement x = SymElement::single(random_word(rng, ls, top, len));
                SymElement sum;
                for (int k = 1; k <= len; ++k) sum += coderivation_extend(bracket, k, x, ls);
                if (!(sum == taylor_coderivation(x, ls)))
                    return fail("taylor parts do not sum to D on " + x.to_string());
            }
        return ok("sum of extended k-brackets equals D on words of length up to 4");
    });

    run_check(rep, "coalgebra/bracket-routes", "bracket-route-agreement",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int k = 1; k <= std::min(cfg.k_max, 4); ++k)
            for (int t = 0; t < 8; ++t) {
                const Word w = random_word(rng, ls, top, k);
                const LinComb a = taylor_bracket_conjugation(w, ls);
                if (a != taylor_bracket_direct(w, ls) || a != taylor_bracket_recursive(w, ls))
                    return fail("bracket routes disagree at k=" + std::to_string(k));
            }
        return ok("conjugation, direct and recursive brackets agree, k up to 4");
    });

    run_check(rep, "coalgebra/dwedge-coderivation", "differential-extension-coleibniz",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int len = 2; len <= 4; ++len)
            for (int t = 0; t < 6; ++t) {
                const SymElement x = SymElement::single(random_word(rng, ls, top, len));
                const SymTensor lhs = reduced_coproduct(dwedge(x, ls), ls);
                const auto d = [&](const Word& w) { return dwedge(SymElement::single(w), ls); };
                const auto id = [](const Word& w) { return SymElement::single(w); };
                SymTensor rhs = map_slots(reduced_coproduct(x, ls), d, id);
                const SymTensor second = map_slots(reduced_coproduct(x, ls), id, d);
                for (const auto& [slots, c] : second.terms())
                    rhs.add_term(slots, word_degree(slots[0], ls) % 2 ? -c : c);
                if (!(lhs == rhs)) return fail("co-Leibniz fails on " + x.to_string());
            }
        return ok("coproduct of the extended differential splits with the sign map, length up to 4");
    });

    run_check(rep, "coalgebra/derivation-brackets-vanish", "derivation-higher-brackets-vanish",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        GradedBasisAlgebra der = random_derivation_algebra(rng, 2, 1);
        BasisLetters dls(der);
        for (int k = 2; k <= std::min(cfg.k_max, 4); ++k)
            for (int t = 0; t < 6; ++t) {
                const Word w = random_word(rng, dls, der.basis_size() - 1, k);
                if (!taylor_bracket_direct(w, dls).empty())
                    return fail("higher bracket of a derivation differential is nonzero at k=" + std::to_string(k));
            }
        return ok("k-brackets vanish for k >= 2 when the differential is a derivation");
    });

    run_check(rep, "coalgebra/surjection-sum", "surjection-alternating-sum",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        for (int s = 1; s <= 10; ++s)
            if (surjection_alternating_sum(s) != 1) {
                w = {{"s", s}};
                return fail("alternating surjection sum != 1 at s=" + std::to_string(s));
            }
        return ok("alternating surjection-count sum equals 1 for s up to 10");
    });

    return rep;
}

Report run_lattice_suite(const RunConfig& cfg) {
    Report rep;
    rep.config = cfg.to_json();
    rep.config["suite"] = "lattice";
    Rng rng(cfg.seed + 37);

    const int n_max = std::min(cfg.n, 3) < 1 ? 1 : std::min(std::max(cfg.n, 1), 3);
    const auto spec_for = [&](int n) { return make_spec(n, cfg.mode, cfg.N); };
    const auto window_for = [&](int n) {
        return cfg.mode == Mode::window ? make_window(n, cfg.window_radius) : WindowBounds{};
    };

    run_check(rep, "lattice/star-boundary-conjugation", "star-conjugates-boundary",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= n_max; ++n) {
            const LatticeSpec spec = spec_for(n);
            const WindowBounds win = window_for(n);
            for (int t = 0; t < 20; ++t) {
                const int u = rng.uniform(0, n - 1);
                const LatticeElement x = random_element(rng, spec, Role::chain, 3, win);
                const auto lhs = coboundary_u(
                    reinterpret_role(star(grade_involution(x)), Role::cochain), u);
                const auto rhs = reinterpret_role(star(boundary_u(x, u)), Role::cochain);
                if (!equal_on_common_window(lhs, rhs))
                    return fail("first conjugation identity fails at n=" + std::to_string(n));

                const LatticeElement f = random_element(rng, spec, Role::cochain, 3, win);
                const auto lhs2 = boundary_u(reinterpret_role(star(f), Role::chain), u);
                const auto rhs2 = reinterpret_role(star(grade_involution(coboundary_u(f, u))), Role::chain);
                if (!equal_on_common_window(lhs2, rhs2))
                    return fail("second conjugation identity fails at n=" + std::to_string(n));
            }
        }
        return ok("both star conjugation identities, 20 random elements per n <= " + std::to_string(n_max));
    });

    run_check(rep, "lattice/shifted-leibniz", "coboundary-shifted-leibniz",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= n_max; ++n) {
            const LatticeSpec spec = spec_for(n);
            const WindowBounds win = window_for(n);
            for (int t = 0; t < 20; ++t) {
                const int u = rng.uniform(0, n - 1);
                const LatticeElement x = random_element(rng, spec, Role::cochain, 3, win);
                const LatticeElement y = random_element(rng, spec, Role::cochain, 3, win);
                const auto lhs = coboundary_u(wedge(x, y), u);
                const auto rhs = add(wedge(coboundary_u(x, u), translate(y, u, -1)),
                                     wedge(translate(grade_involution(x), u, 1), coboundary_u(y, u)));
                if (!equal_on_common_window(lhs, rhs))
                    return fail("shifted Leibniz fails at n=" + std::to_string(n));
                const auto rhs2 = add(wedge(coboundary_u(x, u), translate(y, u, 1)),
                                      wedge(translate(grade_involution(x), u, -1), coboundary_u(y, u)));
                if (!equal_on_common_window(lhs, rhs2))
                    return fail("opposite-shift Leibniz fails at n=" + std::to_string(n));
            }
        }
        return ok("both shift orderings of the Leibniz rule, 20 random pairs per n <= " + std::to_string(n_max));
    });

    run_check(rep, "lattice/interior-shift-leibniz", "interior-product-shifted-leibniz",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= n_max; ++n) {
            const LatticeSpec spec = spec_for(n);
            const WindowBounds win = window_for(n);
            for (int t = 0; t < 20; ++t) {
                const int u = rng.uniform(0, n - 1);
                const LatticeElement x = random_element(rng, spec, Role::chain, 3, win);
                const LatticeElement y = random_element(rng, spec, Role::chain, 3, win);
                for (int dir : {1, -1}) {
                    const auto shift = [&](const LatticeElement& z) { return translate(z, u, dir); };
                    const auto lhs = shift(interior_product(wedge(x, y), u));
                    const auto rhs = add(wedge(shift(interior_product(x, u)), shift(y)),
                                         wedge(shift(grade_involution(x)), shift(interior_product(y, u))));
                    if (!equal_on_common_window(lhs, rhs))
                        return fail("interior-product Leibniz fails at n=" + std::to_string(n));
                }
            }
        }
        return ok("contraction Leibniz for both shift directions, 20 random pairs per n <= " + std::to_string(n_max));
    });

    run_check(rep, "lattice/wedge-graded-commutative", "wedge-commutativity-associativity",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= n_max; ++n) {
            const LatticeSpec spec = spec_for(n);
            const WindowBounds win = window_for(n);
            for (int t = 0; t < 20; ++t) {
                const int j = rng.uniform(0, n), k = rng.uniform(0, n);
                const LatticeElement x = random_homogeneous(rng, spec, Role::cochain, j, 3, win);
                const LatticeElement y = random_homogeneous(rng, spec, Role::cochain, k, 3, win);
                const LaurentH sign((j * k) % 2 ? -1 : 1);
                if (!equal_on_common_window(wedge(x, y), scale(wedge(y, x), sign)))
                    return fail("graded commutativity fails at n=" + std::to_string(n));
                const LatticeElement z = random_element(rng, spec, Role::cochain, 3, win);
                if (!equal_on_common_window(wedge(wedge(x, y), z), wedge(x, wedge(y, z))))
                    return fail("associativity fails at n=" + std::to_string(n));
            }
        }
        return ok("Koszul commutativity on homogeneous pairs and associativity on triples, n <= " + std::to_string(n_max));
    });

    run_check(rep, "lattice/star-square", "star-involution-sign",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= n_max; ++n) {
            const LatticeSpec spec = spec_for(n);
            const WindowBounds win = window_for(n);
            for (int k = 0; k <= n; ++k)
                for (int t = 0; t < 8; ++t) {
                    const LatticeElement x = random_homogeneous(rng, spec, Role::cochain, k, 3, win);
                    const LaurentH sign((k * (n - k)) % 2 ? -1 : 1);
                    if (!equal_on_common_window(star(star(x)), scale(x, sign)))
                        return fail("star square sign fails at n=" + std::to_string(n) + ", k=" + std::to_string(k));
                }
        }
        return ok("star o star = (-1)^{k(n-k)} per degree, n <= " + std::to_string(n_max));
    });

    run_check(rep, "lattice/complex-squares-zero", "boundary-coboundary-square-zero",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= n_max; ++n) {
            const LatticeSpec spec = spec_for(n);
            const WindowBounds win = window_for(n);
            for (int t = 0; t < 20; ++t) {
                if (!boundary(boundary(random_element(rng, spec, Role::chain, 4, win))).is_zero())
                    return fail("boundary square is nonzero at n=" + std::to_string(n));
                if (!coboundary(coboundary(random_element(rng, spec, Role::cochain, 4, win))).is_zero())
                    return fail("coboundary square is nonzero at n=" + std::to_string(n));
            }
        }
        return ok("boundary and coboundary square to zero, 20 random elements per n <= " + std::to_string(n_max));
    });

    run_check(rep, "lattice/homology-rank", "degree-zero-homology-rank",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        for (int n = 1; n <= 3; ++n) {
            const int rank = homology_rank_degree0(n, 1);
            if (rank != (1 << n)) {
                w = {{"n", n}, {"rank", rank}};
                return fail("degree-zero homology rank is off at n=" + std::to_string(n));
            }
        }
        return ok("rank 2, 4, 8 for n = 1, 2, 3 at N = 1");
    });

    return rep;
}

Report run_bracket_suite(const RunConfig& cfg) {
    Report rep;
    rep.config = cfg.to_json();
    rep.config["suite"] = "brackets";
    Rng rng(cfg.seed + 53);

    const int k_max = std::min(cfg.k_max, 4);
    const auto cob = [](const LatticeElement& x) { return coboundary_half_step(x); };
    const auto bnd = [](const LatticeElement& x) { return boundary_half_step(x); };

    run_check(rep, "brackets/normalized-k1", "one-bracket-is-the-differential",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= 2; ++n) {
            const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
            for (int t = 0; t < 10; ++t) {
                const LatticeElement f = random_element(rng, spec, Role::cochain, 3);
                if (!(delta_bracket_closed({f}) == coboundary_half_step(f)))
                    return fail("cochain 1-bracket is not the normalized coboundary at n=" + std::to_string(n));
                const LatticeElement x = random_element(rng, spec, Role::chain, 3);
                if (!(partial_bracket_closed({x}) == boundary_half_step(x)))
                    return fail("chain 1-bracket is not the normalized boundary at n=" + std::to_string(n));
            }
        }
        return ok("closed 1-brackets reproduce the normalized differentials, n <= 2");
    });

    run_check(rep, "brackets/closed-vs-generic-cochain", "closed-coboundary-brackets-oracle",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= 2; ++n) {
            const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
            for (int k = 2; k <= k_max; ++k)
                for (int t = 0; t < cfg.samples; ++t) {
                    std::vector<LatticeElement> args;
                    for (int i = 0; i < k; ++i) args.push_back(random_element(rng, spec, Role::cochain, 2));
                    const LatticeElement closed = delta_bracket_closed(args);
                    for (auto route : {BracketRoute::conjugation, BracketRoute::direct, BracketRoute::recursive})
                        if (!(closed == lattice_taylor_bracket(route, args, cob, 1)))
                            return fail("closed and generic cochain brackets differ at n=" +
                                        std::to_string(n) + ", k=" + std::to_string(k));
                }
        }
        return ok("per-axis sum of closed brackets equals all three generic routes, k <= " + std::to_string(k_max));
    });

    run_check(rep, "brackets/closed-vs-generic-chain", "closed-boundary-brackets-oracle",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= 2; ++n) {
            const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
            for (int k = 2; k <= k_max; ++k)
                for (int t = 0; t < cfg.samples; ++t) {
                    std::vector<LatticeElement> args;
                    for (int i = 0; i < k; ++i) args.push_back(random_element(rng, spec, Role::chain, 2));
                    const LatticeElement closed = partial_bracket_closed(args);
                    for (auto route : {BracketRoute::conjugation, BracketRoute::direct, BracketRoute::recursive})
                        if (!(closed == lattice_taylor_bracket(route, args, bnd, -1)))
                            return fail("closed and generic chain brackets differ at n=" +
                                        std::to_string(n) + ", k=" + std::to_string(k));
                }
        }
        return ok("chain analogue of the oracle equivalence, k <= " + std::to_string(k_max));
    });

    run_check(rep, "brackets/case-table-n3", "three-axis-case-table",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        const LatticeSpec spec = make_spec(3, Mode::periodic, 1);
        for (int k = 2; k <= 3; ++k)
            for (int t = 0; t < 12; ++t) {
                std::vector<LatticeElement> args;
                for (int i = 0; i < k; ++i)
                    args.push_back(random_element(rng, spec, Role::chain, 1));
                const int u = rng.uniform(0, 2);
                if (!(bracket_table_n3(args, u) == partial_bracket_closed(args, u)))
                    return fail("case table disagrees with the closed form at k=" + std::to_string(k));
            }
        return ok("case-table chain brackets match the closed form for k = 2, 3 at n = 3");
    });

    run_check(rep, "brackets/two-bracket-koszul", "two-bracket-koszul-symmetry",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= 2; ++n) {
            const LatticeSpec spec = make_spec(n, Mode::periodic, 1);
            for (int t = 0; t < 15; ++t) {
                const int j = rng.uniform(0, n), k = rng.uniform(0, n), u = rng.uniform(0, n - 1);
                const LatticeElement a = random_homogeneous(rng, spec, Role::chain, j, 2);
                const LatticeElement b = random_homogeneous(rng, spec, Role::chain, k, 2);
                const LaurentH sign((j * k) % 2 ? -1 : 1);
                if (!(partial_bracket_closed({a, b}, u) == scale(partial_bracket_closed({b, a}, u), sign)))
                    return fail("Koszul swap of the 2-bracket fails at n=" + std::to_string(n));
            }
        }
        return ok("2-bracket obeys the Koszul swap sign on homogeneous pairs, n <= 2");
    });

    run_check(rep, "brackets/scale-order-bounds", "scale-order-divisibility",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        bool all = true;
        w = nlohmann::json::array();
        for (int n = 1; n <= 2; ++n) {
            LatticeSpec spec = make_spec(n, Mode::window, 1);
            const WindowBounds win = make_window(n, cfg.window_radius);
            std::vector<PolynomialField> fields;
            for (int s = 0; s < std::max(cfg.samples, 3); ++s)
                fields.push_back(rng.field(n, all_types(n), cfg.degree));
            for (Role role : {Role::cochain, Role::chain}) {
                nlohmann::json j = binary_qft_check(spec, role, k_max, fields, win);
                all = all && j.at("pass").get<bool>();
                w.push_back({{"n", n},
                             {"role", role == Role::chain ? "chain" : "cochain"},
                             {"pass", j.at("pass")}});
            }
        }
        return {all, all ? "valuation bounds hold for every sampled field, n <= 2, k <= " + std::to_string(k_max)
                         : "a valuation bound failed; see witness"};
    });

    return rep;
}

Report run_multiscale_suite(const RunConfig& cfg) {
    Report rep;
    rep.config = cfg.to_json();
    rep.config["suite"] = "multiscale";
    Rng rng(cfg.seed + 71);

    run_check(rep, "multiscale/coarse-maps", "inter-scale-chain-and-cochain-maps",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        const LaurentH half(Rational(1, 2));
        for (const auto& [n, coarse_N] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 1}}) {
            const ScalePair pair = ScalePair::from_fine(make_spec(n, Mode::periodic, 2 * coarse_N));
            const LatticeBasis chains = enumerate_basis(pair.coarse, Role::chain);
            for (const Cell& cell : chains.cells) {
                LatticeElement e(pair.coarse, Role::chain);
                e.add_entry(cell, LaurentH(1));
                if (!(boundary(crumble(pair, e)) == crumble(pair, boundary(e))))
                    return fail("crumbling fails to commute with the boundary at n=" + std::to_string(n));
            }
            const LatticeBasis cochains = enumerate_basis(pair.fine, Role::cochain);
            for (const Cell& cell : cochains.cells) {
                LatticeElement f(pair.fine, Role::cochain);
                f.add_entry(cell, LaurentH(1));
                if (!(scale(coboundary(integrate(pair, f)), half) == integrate(pair, coboundary(f))))
                    return fail("integration fails the half-coboundary identity at n=" + std::to_string(n));
            }
        }
        return ok("chain-map and half-coboundary identities on full bases, n <= 3");
    });

    run_check(rep, "multiscale/duality", "integration-crumbling-duality",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int n = 1; n <= 2; ++n) {
            const ScalePair pair = ScalePair::from_fine(make_spec(n, Mode::periodic, 4));
            const LatticeBasis coarse = enumerate_basis(pair.coarse, Role::chain);
            std::vector<LatticeElement> crumbled;
            for (const Cell& cell : coarse.cells) {
                LatticeElement c(pair.coarse, Role::chain);
                c.add_entry(cell, LaurentH(1));
                crumbled.push_back(crumble(pair, c));
            }
            const LatticeBasis fine = enumerate_basis(pair.fine, Role::cochain);
            for (const Cell& cell : fine.cells) {
                LatticeElement f(pair.fine, Role::cochain);
                f.add_entry(cell, LaurentH(1));
                const LatticeElement bar = integrate(pair, f);
                for (std::size_t i = 0; i < coarse.cells.size(); ++i) {
                    LatticeElement c(pair.coarse, Role::chain);
                    c.add_entry(coarse.cells[i], LaurentH(1));
                    if (!(pairing(bar, c) == pairing(f, crumbled[i])))
                        return fail("duality pairing mismatch at n=" + std::to_string(n));
                }
            }
        }
        return ok("coarse pairing of the integral equals fine pairing against the crumbling, n <= 2, N = 2");
    });

    run_check(rep, "multiscale/cumulant-coalgebra-map", "cumulant-composite-comultiplicative",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        GradedBasisAlgebra src = random_graded_algebra(rng, 3, 1);
        GradedBasisAlgebra dst = random_graded_algebra(rng, 3, 1);
        BasisLetters sls(src), dls(dst);
        MatrixBarMap bar = random_grade_map(rng, src, dst);
        for (int t = 0; t < 10; ++t) {
            const SymElement x = random_sym(rng, sls, src.basis_size() - 1, 4, 2);
            const SymTensor lhs = reduced_coproduct(sigma_composed(x, bar, sls, dls), dls);
            const auto s = [&](const Word& w) { return sigma_composed(SymElement::single(w), bar, sls, dls); };
            if (!(lhs == map_slots(reduced_coproduct(x, sls), s, s)))
                return fail("composite cumulant is not comultiplicative on " + x.to_string());
        }
        return ok("coproduct commutes with the composite cumulant map, words up to length 4");
    });

    run_check(rep, "multiscale/cumulant-intertwines", "chain-map-cumulant-intertwines-coderivations",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        GradedBasisAlgebra alg = random_graded_algebra(rng, 3, 1);
        BasisLetters ls(alg);
        MatrixBarMap bar = random_closed_multiplier_map(rng, alg);
        for (int t = 0; t < 10; ++t) {
            const SymElement x = random_sym(rng, ls, alg.basis_size() - 1, 4, 2);
            if (!intertwine_full_defect(x, bar, ls, ls).is_zero())
                return fail("conjugated coderivations disagree on " + x.to_string());
        }
        return ok("sigma o D = D o sigma for a chain-map multiplier, words up to length 4");
    });

    run_check(rep, "multiscale/cumulant-routes", "cumulant-route-agreement",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        GradedBasisAlgebra src = random_graded_algebra(rng, 3, 1);
        GradedBasisAlgebra dst = random_graded_algebra(rng, 3, 1);
        BasisLetters sls(src), dls(dst);
        MatrixBarMap bar = random_grade_map(rng, src, dst);
        for (int k = 1; k <= std::min(cfg.k_max, 4); ++k)
            for (int t = 0; t < 6; ++t) {
                const Word w = random_word(rng, sls, src.basis_size() - 1, k);
                const LinComb direct = sigma_direct(w, bar, sls, dls);
                if (direct != sigma_recursive(w, bar, sls, dls))
                    return fail("recursion route disagrees at k=" + std::to_string(k));
                if (direct != project_length1(sigma_composed(SymElement::single(w), bar, sls, dls)))
                    return fail("composed route disagrees at k=" + std::to_string(k));
            }
        return ok("partition sum, recursion and composed definitions agree, k <= 4");
    });

    run_check(rep, "multiscale/tensor-cumulant", "tensor-product-cumulant-formula",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        GradedBasisAlgebra v_src = random_graded_algebra(rng, 2, 1);
        GradedBasisAlgebra v_dst = random_graded_algebra(rng, 2, 1);
        GradedBasisAlgebra w_src = random_graded_algebra(rng, 2, 1);
        GradedBasisAlgebra w_dst = random_graded_algebra(rng, 2, 1);
        MatrixBarMap bar_v = random_grade_map(rng, v_src, v_dst);
        MatrixBarMap bar_w = random_grade_map(rng, w_src, w_dst);
        GradedBasisAlgebra src = tensor_product_algebra(v_src, w_src);
        GradedBasisAlgebra dst = tensor_product_algebra(v_dst, w_dst);
        BasisLetters sls(src), dls(dst);
        MatrixBarMap bar = tensor_bar_map(src, dst, w_src.basis_size(), w_dst.basis_size(), bar_v, bar_w);
        for (int k = 1; k <= 3; ++k)
            for (int t = 0; t < 5; ++t) {
                const Word w = random_word(rng, sls, src.basis_size() - 1, k);
                const LinComb assembled = tensor_cumulant(w, v_src, w_src, v_dst, w_dst, bar_v, bar_w);
                if (assembled != sigma_direct(w, bar, sls, dls))
                    return fail("assembled tensor cumulant disagrees at k=" + std::to_string(k));
            }
        return ok("factor-wise assembly matches the cumulant of the tensor map, k <= 3");
    });

    run_check(rep, "multiscale/point-weight-sum", "point-component-weight-cancellation",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        for (int k = 2; k <= 6; ++k) {
            Rational sum = 0;
            for (int r = 1; r <= k; ++r) {
                const Rational weight(BigInt(r % 2 == 1 ? 1 : -1), BigInt(r));
                sum += weight * Rational(surjection_count(k, r));
            }
            if (sum != 0) return fail("partition weights fail to cancel at k=" + std::to_string(k));
        }
        return ok("weighted surjection counts cancel for 2 <= k <= 6");
    });

    run_check(rep, "multiscale/cumulant-valuations", "inter-scale-cumulant-divisibility",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        bool all = true;
        w = nlohmann::json::array();
        for (int n = 1; n <= 2; ++n) {
            const ScalePair pair = ScalePair::from_fine(make_spec(n, Mode::window, 1));
            const WindowBounds win = make_window(n, cfg.window_radius);
            std::vector<PolynomialField> fields;
            for (int s = 0; s < std::max(cfg.samples, 3); ++s)
                fields.push_back(rng.field(n, all_types(n), cfg.degree));
            for (Role role : {Role::cochain, Role::chain}) {
                nlohmann::json j = sigma_divisibility_check(pair, std::min(cfg.k_max, 4), fields, win, role);
                all = all && j.at("pass").get<bool>();
                w.push_back({{"n", n},
                             {"role", role == Role::chain ? "chain" : "cochain"},
                             {"rows", j.at("rows")}});
            }
        }
        return {all, all ? "cochain cumulant valuations meet the bound and point components vanish, n <= 2"
                         : "a cumulant valuation bound failed; see witness"};
    });

    run_check(rep, "multiscale/intertwining-orders", "inter-scale-intertwining-relations",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        bool all = true;
        w = nlohmann::json::array();
        for (int n = 1; n <= 2; ++n) {
            const ScalePair pair = ScalePair::from_fine(make_spec(n, Mode::window, 1));
            const WindowBounds win = make_window(n, cfg.window_radius);
            std::vector<PolynomialField> fields;
            for (int s = 0; s < std::max(cfg.samples, 3); ++s)
                fields.push_back(rng.field(n, all_types(n), cfg.degree));
            nlohmann::json j = intertwine_check(pair, 3, fields, win);
            all = all && j.at("pass").get<bool>();
            w.push_back({{"n", n}, {"rows", j.at("rows")}});
        }
        return {all, all ? "intertwining holds through order 3 including the long-hand order 2, n <= 2"
                         : "an intertwining relation failed; see witness"};
    });

    run_check(rep, "multiscale/tower", "scale-tower-consistency",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        bool all = true;
        w = nlohmann::json::array();
        std::vector<PolynomialField> fields;
        for (int s = 0; s < std::max(cfg.samples, 3); ++s)
            fields.push_back(rng.field(1, all_types(1), cfg.degree));
        for (Role role : {Role::cochain, Role::chain}) {
            nlohmann::json j = scale_tower(make_spec(1, Mode::periodic, 4), 3, role, std::min(cfg.k_max, 3),
                                           fields, cfg.window_radius);
            all = all && j.at("pass").get<bool>();
            w.push_back(j);
        }
        std::vector<PolynomialField> fields2;
        for (int s = 0; s < std::max(cfg.samples, 3); ++s)
            fields2.push_back(rng.field(2, all_types(2), cfg.degree));
        nlohmann::json j2 = scale_tower(make_spec(2, Mode::periodic, 2), 2, Role::cochain,
                                        std::min(cfg.k_max, 3), fields2, cfg.window_radius);
        all = all && j2.at("pass").get<bool>();
        w.push_back(j2);
        return {all, all ? "three-level tower at n = 1 for both roles and a two-level tower at n = 2"
                         : "a tower check failed; see witness"};
    });

    return rep;
}

Report run_negative_controls(const RunConfig& cfg) {
    Report rep;
    rep.config = cfg.to_json();
    rep.config["suite"] = "negative";
    Rng rng(cfg.seed + 97);

    run_check(rep, "negative/corrupt-product", "axiom-checker-catches-corruption",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        GradedBasisAlgebra alg = random_graded_algebra(rng, 3, 1);
        if (!alg.check_axioms().empty()) return fail("generator produced an invalid algebra");
        LinComb tampered = alg.product(1, 2);
        add_scaled(tampered, LinComb{{0, LaurentH(1)}}, LaurentH(1));
        alg.set_product(1, 2, tampered);
        const auto violations = alg.check_axioms();
        if (violations.empty()) return fail("corrupted product constants slipped past the checker");
        w = nlohmann::json::array();
        for (const auto& v : violations) w.push_back({{"axiom", v.axiom}, {"witness", v.witness}});
        return ok("corrupted product reported as " + violations.front().axiom);
    });

    run_check(rep, "negative/corrupt-differential", "axiom-checker-catches-bad-differential",
              [&](nlohmann::json& w) -> std::pair<bool, std::string> {
        GradedBasisAlgebra alg = random_graded_algebra(rng, 3, 1);
        alg.set_differential(alg.basis_size() - 1, LinComb{{0, LaurentH(1)}});
        const auto violations = alg.check_axioms();
        if (violations.empty()) return fail("corrupted differential slipped past the checker");
        w = nlohmann::json::array();
        for (const auto& v : violations) w.push_back({{"axiom", v.axiom}, {"witness", v.witness}});
        return ok("corrupted differential reported as " + violations.front().axiom);
    });

    run_check(rep, "negative/report-conflict", "merge-rejects-conflicting-ids",
              [&](nlohmann::json&) -> std::pair<bool, std::string> {
        Report a, b;
        a.add(CheckResult{"dup", "anchor", true, "first", nlohmann::json()});
        b.add(CheckResult{"dup", "anchor", false, "second", nlohmann::json()});
        try {
            merge_reports({{"a", a}, {"b", b}});
        } catch (const std::exception& e) {
            return ok(std::string("merge rejected the conflict: ") + e.what());
        }
        return fail("conflicting duplicate ids merged silently");
    });

    return rep;
}

Report run_verify(const RunConfig& cfg) {
    std::vector<std::pair<std::string, std::future<Report>>> jobs;
    jobs.emplace_back("scalar", std::async(std::launch::async, run_scalar_suite, cfg));
    jobs.emplace_back("coalgebra", std::async(std::launch::async, run_coalgebra_suite, cfg));
    jobs.emplace_back("lattice", std::async(std::launch::async, run_lattice_suite, cfg));
    jobs.emplace_back("brackets", std::async(std::launch::async, run_bracket_suite, cfg));
    jobs.emplace_back("multiscale", std::async(std::launch::async, run_multiscale_suite, cfg));
    jobs.emplace_back("negative", std::async(std::launch::async, run_negative_controls, cfg));

    std::vector<std::pair<std::string, Report>> parts;
    for (auto& [name, fut] : jobs) parts.emplace_back(name, fut.get());

    Report merged = merge_reports(parts);
    merged.config["run"] = cfg.to_json();
    return merged;
}

} // namespace latcalc
