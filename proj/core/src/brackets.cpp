#include "latcalc/brackets.hpp"

#include "latcalc/letters.hpp"
#include "latcalc/sym.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <optional>
#include <stdexcept>

namespace latcalc {

namespace {

LaurentH step_power(const LatticeSpec& spec, int e) {
    LaurentH unit = e >= 0 ? step_scalar(spec) : inv_step_scalar(spec);
    LaurentH out(1);
    for (int i = 0; i < (e >= 0 ? e : -e); ++i) out = out * unit;
    return out;
}

LatticeElement delta_1u(const LatticeElement& x, int u) {
    return scale(coboundary_u(x, u), inv_step_scalar(x.spec()) * LaurentH(Rational(1, 2)));
}

LatticeElement wedge_fold(const std::vector<LatticeElement>& factors) {
    LatticeElement out = factors.front();
    for (std::size_t i = 1; i < factors.size(); ++i) out = wedge(out, factors[i]);
    return out;
}

void check_uniform(const std::vector<LatticeElement>& v, Role role) {
    if (v.empty()) throw std::invalid_argument("bracket needs at least one element");
    for (const LatticeElement& x : v) {
        if (!(x.spec() == v.front().spec()))
            throw std::invalid_argument("bracket inputs live on different lattices");
        if (x.role() != role)
            throw std::invalid_argument("bracket inputs have the wrong role");
    }
}

} // namespace

LatticeElement delta_bracket_closed(const std::vector<LatticeElement>& v, int u) {
    check_uniform(v, Role::cochain);
    int k = static_cast<int>(v.size());
    std::optional<LatticeElement> acc;
    for (int i = 0; i < k; ++i) {
        std::vector<LatticeElement> factors;
        factors.reserve(v.size());
        for (int j = 0; j < i; ++j)
            factors.push_back(scale(divided_difference(grade_involution(v[j]), u, false), LaurentH(-1)));
        factors.push_back(delta_1u(v[i], u));
        for (int j = i + 1; j < k; ++j)
            factors.push_back(divided_difference(v[j], u, true));
        LatticeElement term = wedge_fold(factors);
        acc = acc ? add(*acc, term) : term;
    }
    return scale(*acc, step_power(v.front().spec(), k - 1));
}

LatticeElement delta_bracket_closed(const std::vector<LatticeElement>& v) {
    LatticeElement out = delta_bracket_closed(v, 0);
    for (int u = 1; u < v.front().spec().n; ++u) out = add(out, delta_bracket_closed(v, u));
    return out;
}

LatticeElement partial_bracket_closed(const std::vector<LatticeElement>& v, int u) {
    check_uniform(v, Role::chain);
    int k = static_cast<int>(v.size());
    std::optional<LatticeElement> acc;
    for (int i = 0; i < k; ++i) {
        std::vector<LatticeElement> first, second;
        for (int j = 0; j < i; ++j) {
            first.push_back(divided_difference(grade_involution(v[j]), u, true));
            second.push_back(divided_difference(grade_involution(v[j]), u, false));
        }
        first.push_back(translate(interior_product(v[i], u), u, -1));
        second.push_back(translate(interior_product(v[i], u), u, +1));
        for (int j = i + 1; j < k; ++j) {
            first.push_back(divided_difference(v[j], u, true));
            second.push_back(divided_difference(v[j], u, false));
        }
        LatticeElement term = add(wedge_fold(first),
                                  scale(wedge_fold(second), LaurentH(k % 2 ? -1 : 1)));
        acc = acc ? add(*acc, term) : term;
    }
    return scale(*acc, step_power(v.front().spec(), k - 2) * LaurentH(Rational(-1, 2)));
}

LatticeElement partial_bracket_closed(const std::vector<LatticeElement>& v) {
    LatticeElement out = partial_bracket_closed(v, 0);
    for (int u = 1; u < v.front().spec().n; ++u) out = add(out, partial_bracket_closed(v, u));
    return out;
}

namespace {

// The coefficient function of a single-type monomial, as a 0-type element.
std::pair<std::uint32_t, LatticeElement> split_monomial(const LatticeElement& x) {
    std::uint32_t type = 0;
    bool seen = false;
    LatticeElement f(x.spec(), x.role(), x.window());
    for (const auto& [cell, c] : x.entries()) {
        if (seen && cell.type != type)
            throw std::invalid_argument("case table takes single-type monomial inputs");
        type = cell.type;
        seen = true;
        f.add_entry(Cell{0, cell.center}, c);
    }
    return {type, f};
}

LatticeElement with_type(const LatticeElement& s, std::uint32_t type, int sign) {
    LatticeElement out(s.spec(), s.role(), s.window());
    if (sign == 0) return out;
    for (const auto& [cell, c] : s.entries())
        out.add_entry(Cell{type, cell.center}, sign < 0 ? c * LaurentH(-1) : c);
    return out;
}

LaurentH half() { return LaurentH(Rational(1, 2)); }

} // namespace

LatticeElement bracket_table_n3(const std::vector<LatticeElement>& v, int u) {
    check_uniform(v, Role::chain);
    if (v.front().spec().n != 3)
        throw std::invalid_argument("case table is stated for three dimensions");
    int k = static_cast<int>(v.size());
    if (k != 2 && k != 3)
        throw std::invalid_argument("case table covers the 2- and 3-bracket only");

    auto fwd = [&](const LatticeElement& s) { return divided_difference(s, u, true); };
    auto bwd = [&](const LatticeElement& s) { return divided_difference(s, u, false); };
    auto shf = [&](const LatticeElement& s) { return translate(s, u, +1); }; // T_u
    auto shb = [&](const LatticeElement& s) { return translate(s, u, -1); }; // T'_u
    std::uint32_t bit = std::uint32_t{1} << u;

    if (k == 2) {
        auto [I, f] = split_monomial(v[0]);
        auto [J, g] = split_monomial(v[1]);
        bool uI = I & bit, uJ = J & bit;
        if (uI && uJ) {
            LatticeElement sym_f = add(fwd(f), bwd(f)), sym_g = add(fwd(g), bwd(g));
            LatticeElement s = scale(sub(wedge(sym_f, g), wedge(f, sym_g)), half());
            int sign = axis_sign(I, u) * type_merge_sign(I & ~bit, J);
            return with_type(s, (I & ~bit) | J, sign);
        }
        if (uI || uJ) {
            LatticeElement s = uI ? add(wedge(shf(f), bwd(g)), wedge(shb(f), fwd(g)))
                                  : add(wedge(bwd(f), shf(g)), wedge(fwd(f), shb(g)));
            std::uint32_t merged = I | J;
            int sign = type_merge_sign(I, J) * axis_sign(merged, u);
            return with_type(scale(s, half() * LaurentH(-1)), merged & ~bit, sign);
        }
        return with_type(scale(wedge(f, g), LaurentH(0)), 0, 1);
    }

    auto [I, f] = split_monomial(v[0]);
    auto [J, g] = split_monomial(v[1]);
    auto [K, w] = split_monomial(v[2]);
    bool uI = I & bit, uJ = J & bit, uK = K & bit;
    LaurentH pre = step_scalar(v.front().spec()) * half();
    int in_count = int(uI) + int(uJ) + int(uK);

    if (in_count == 3 || in_count == 0)
        return with_type(scale(wedge(wedge(f, g), w), LaurentH(0)), 0, 1);

    if (in_count == 2) {
        // One argument misses u; the table names it by its slot.
        auto two_row = [&](const LatticeElement& a, const LatticeElement& b, const LatticeElement& c) {
            // [(a fwd b - b fwd a) fwd c + (b bwd a - a bwd b) bwd c]
            LatticeElement t1 = wedge(sub(wedge(a, fwd(b)), wedge(b, fwd(a))), fwd(c));
            LatticeElement t2 = wedge(sub(wedge(b, bwd(a)), wedge(a, bwd(b))), bwd(c));
            return add(t1, t2);
        };
        if (!uK) {
            LatticeElement s = two_row(f, g, w);
            int sign = (std::popcount(I) % 2 ? -1 : 1) * axis_sign(J, u)
                     * type_merge_sign(I, J & ~bit) * type_merge_sign(I | (J & ~bit), K);
            return with_type(scale(s, pre), I | (J & ~bit) | K, sign);
        }
        if (!uJ) {
            LatticeElement s = two_row(f, w, g);
            int sign = ((std::popcount(I) + std::popcount(J)) % 2 ? -1 : 1) * axis_sign(K, u)
                     * type_merge_sign(I, J) * type_merge_sign(I | J, K & ~bit);
            return with_type(scale(s, pre), I | J | (K & ~bit), sign);
        }
        LatticeElement s = two_row(w, g, f);
        int sign = (std::popcount(I) % 2 ? -1 : 1) * axis_sign(J, u)
                 * type_merge_sign(I, J & ~bit) * type_merge_sign(I | (J & ~bit), K);
        return with_type(scale(s, pre), I | (J & ~bit) | K, sign);
    }

    // Exactly one argument carries u.
    LatticeElement s = uI ? sub(wedge(wedge(shf(f), bwd(g)), bwd(w)), wedge(wedge(shb(f), fwd(g)), fwd(w)))
                     : uJ ? sub(wedge(wedge(bwd(f), shf(g)), bwd(w)), wedge(wedge(fwd(f), shb(g)), fwd(w)))
                          : sub(wedge(wedge(bwd(f), bwd(g)), shf(w)), wedge(wedge(fwd(f), fwd(g)), shb(w)));
    std::uint32_t merged = I | J | K;
    int sign = type_merge_sign(I, J) * type_merge_sign(I | J, K) * axis_sign(merged, u);
    return with_type(scale(s, pre), merged & ~bit, sign);
}

LatticeElement lattice_taylor_bracket(BracketRoute route, const std::vector<LatticeElement>& v,
                                      const std::function<LatticeElement(const LatticeElement&)>& diff,
                                      int diff_degree) {
    if (v.empty()) throw std::invalid_argument("bracket needs at least one element");
    LatticeOps ops{diff, diff_degree};
    PoolLetters<LatticeOps> pool(ops);
    std::vector<LinComb> interned;
    interned.reserve(v.size());
    for (const LatticeElement& x : v) interned.push_back(pool.intern(x));

    // Zero with the arguments' common window, so comparisons line up.
    LatticeElement acc = scale(v.front(), LaurentH(0));
    for (std::size_t j = 1; j < v.size(); ++j) acc = add(acc, scale(v[j], LaurentH(0)));

    std::vector<LinComb::const_iterator> pick;
    for (const LinComb& lc : interned) {
        if (lc.empty()) return acc;
        pick.push_back(lc.begin());
    }
    while (true) {
        LaurentH coeff(1);
        std::vector<int> letters;
        for (std::size_t j = 0; j < pick.size(); ++j) {
            letters.push_back(pick[j]->first);
            coeff = coeff * pick[j]->second;
        }
        if (auto canon = canonicalize(letters, pool)) {
            if (canon->sign < 0) coeff = coeff * LaurentH(-1);
            LinComb out;
            switch (route) {
            case BracketRoute::conjugation: out = taylor_bracket_conjugation(canon->word, pool); break;
            case BracketRoute::direct: out = taylor_bracket_direct(canon->word, pool); break;
            case BracketRoute::recursive: out = taylor_bracket_recursive(canon->word, pool); break;
            }
            if (!out.empty()) acc = add(acc, scale(pool.resolve(out), coeff));
        }
        // Odometer over the homogeneous parts of every slot.
        std::size_t j = 0;
        for (; j < pick.size(); ++j) {
            if (++pick[j] != interned[j].end()) break;
            pick[j] = interned[j].begin();
        }
        if (j == pick.size()) break;
    }
    return acc;
}

nlohmann::json binary_qft_check(const LatticeSpec& spec, Role role, int k_max,
                                const std::vector<PolynomialField>& samples,
                                const WindowBounds& window) {
    if (!spec.scale.formal)
        throw std::invalid_argument("scale-order sweep needs the formal scale");
    if (samples.empty())
        throw std::invalid_argument("scale-order sweep needs at least one sample");

    std::vector<LatticeElement> sampled;
    sampled.reserve(samples.size());
    for (const PolynomialField& field : samples)
        sampled.push_back(sample_polynomial(spec, role, field, window));

    struct Family {
        std::string name;
        int extra_valuation; // added to the boundary/(2 step) bracket
        int bound_offset;    // bound = k + offset
    };
    std::vector<Family> families;
    if (role == Role::cochain) {
        families.push_back({"coboundary/(2 step)", 0, -1});
    } else {
        families.push_back({"boundary/(2 step)", 0, -2});
        families.push_back({"boundary/step", 0, -2});
        families.push_back({"boundary", 1, -1});
    }

    nlohmann::json rows = nlohmann::json::array();
    int m = static_cast<int>(sampled.size());
    for (int k = 1; k <= k_max; ++k) {
        // u = -1 encodes the sum over axes.
        for (int u = -1; u < spec.n; ++u) {
            Valuation observed;
            int witness = 0;
            for (int s = 0; s < m; ++s) {
                std::vector<LatticeElement> args;
                for (int j = 0; j < k; ++j) args.push_back(sampled[(s + j) % m]);
                LatticeElement b = role == Role::cochain
                    ? (u < 0 ? delta_bracket_closed(args) : delta_bracket_closed(args, u))
                    : (u < 0 ? partial_bracket_closed(args) : partial_bracket_closed(args, u));
                Valuation val = element_valuation(b);
                if (val < observed) {
                    observed = val;
                    witness = s;
                }
            }
            for (const Family& fam : families) {
                Valuation val = observed + fam.extra_valuation;
                int bound = k + fam.bound_offset;
                nlohmann::json row;
                row["role"] = role == Role::cochain ? "cochain" : "chain";
                row["normalization"] = fam.name;
                row["k"] = k;
                row["u"] = u < 0 ? nlohmann::json("sum") : nlohmann::json(u + 1);
                row["min_valuation"] = val.is_finite() ? nlohmann::json(val.value())
                                                       : nlohmann::json(nullptr);
                row["bound"] = bound;
                row["pass"] = val >= bound;
                row["witness"] = {{"sample", witness}};
                rows.push_back(row);
            }
        }
    }
    bool all = true;
    for (const auto& row : rows) all = all && row.at("pass").get<bool>();
    return nlohmann::json{{"rows", rows}, {"pass", all}};
}

} // namespace latcalc
