#include "latcalc/convergence.hpp"

#include "latcalc/brackets.hpp"
#include "latcalc/symbolic.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace latcalc {

namespace {

// Observed log2 ratios must clear first-order decay with 0.1 fitting slack.
constexpr double kRateFloor = 0.9;

LatticeSpec numeric_spec(int level) {
    LatticeSpec spec;
    spec.n = 2;
    spec.mode = Mode::window;
    spec.scale = Scale{false, -level};
    return spec;
}

// Sampling window covers the physical box [-1, 1]^2; norms are taken over
// [-1/2, 1/2]^2 so stencil shrinkage never reaches the measured region.
WindowBounds level_window(int level) {
    const int r = 1 << level;
    return WindowBounds(2, {-r, r});
}

Rational sup_norm(const LatticeElement& x, int region_radius) {
    Rational best = 0;
    for (const auto& [cell, c] : x.entries()) {
        bool inside = true;
        for (int a : cell.center)
            if (a < -region_radius || a > region_radius) {
                inside = false;
                break;
            }
        if (!inside) continue;
        const Rational v = rational_abs(c.coefficient(0));
        if (v > best) best = v;
    }
    return best;
}

void finish_study(ConvergenceStudy& st) {
    bool okay = true;
    for (std::size_t i = 0; i + 1 < st.sup_norms.size(); ++i) {
        if (st.sup_norms[i].is_zero() || st.sup_norms[i + 1].is_zero()) {
            // An error reappearing after an exact level would be spurious.
            if (st.sup_norms[i].is_zero() && !st.sup_norms[i + 1].is_zero()) okay = false;
            st.rates.emplace_back(std::nullopt);
            continue;
        }
        const Rational ratio = st.sup_norms[i] / st.sup_norms[i + 1];
        const double rate = std::log2(ratio.convert_to<double>());
        st.rates.emplace_back(rate);
        if (st.kind == "rate" && rate < kRateFloor) okay = false;
    }
    if (st.kind == "exact")
        for (const Rational& norm : st.sup_norms)
            if (!norm.is_zero()) okay = false;
    st.pass = okay;
}

using ErrorFn = std::function<LatticeElement(const LatticeSpec&, const WindowBounds&)>;

ConvergenceStudy make_study(const std::string& id, const std::string& kind,
                            const std::vector<int>& levels, const ErrorFn& error) {
    ConvergenceStudy st;
    st.id = id;
    st.kind = kind;
    st.levels = levels;
    for (int level : levels)
        st.sup_norms.push_back(sup_norm(error(numeric_spec(level), level_window(level)),
                                        1 << (level - 1)));
    finish_study(st);
    return st;
}

Polynomial mono(std::vector<int> e, int num, int den = 1) {
    return Polynomial::monomial(std::move(e), Rational(num, den));
}

} // namespace

std::vector<ConvergenceStudy> run_convergence(const std::vector<int>& levels) {
    if (levels.size() < 3) throw std::invalid_argument("convergence needs at least 3 levels");
    for (std::size_t i = 0; i + 1 < levels.size(); ++i)
        if (levels[i] >= levels[i + 1]) throw std::invalid_argument("levels must be ascending");
    for (int level : levels)
        if (level < 1 || level > 16) throw std::invalid_argument("level out of range");

    // Fixed degree <= 3 fields on two axes; type bit 0 is the first axis.
    PolynomialField fa;
    fa.n = 2;
    fa.set(0u, mono({2, 0}, 1) + mono({1, 1}, 1));
    fa.set(1u, mono({0, 2}, 1));
    PolynomialField ga;
    ga.n = 2;
    ga.set(0u, mono({0, 1}, 1));
    ga.set(2u, mono({2, 0}, 1));

    PolynomialField ab;
    ab.n = 2;
    ab.set(1u, mono({1, 1}, 1));
    ab.set(3u, mono({2, 0}, 1));
    PolynomialField bb;
    bb.n = 2;
    bb.set(0u, mono({1, 0}, 1));
    bb.set(2u, mono({0, 2}, 1));
    PolynomialField cb;
    cb.n = 2;
    cb.set(1u, mono({0, 2}, 1));
    cb.set(2u, mono({1, 1}, 1));

    PolynomialField fc;
    fc.n = 2;
    fc.set(0u, mono({3, 0}, 1));
    fc.set(1u, mono({2, 1}, 1));
    fc.set(2u, mono({0, 3}, 1));

    PolynomialField ad;
    ad.n = 2;
    ad.set(1u, mono({2, 1}, 1));
    ad.set(3u, mono({1, 1}, 1));
    PolynomialField bd;
    bd.n = 2;
    bd.set(0u, mono({1, 2}, 1));
    bd.set(2u, mono({2, 0}, 1));

    PolynomialField fq;
    fq.n = 2;
    fq.set(0u, mono({2, 0}, 1));

    PolynomialField const_cochain;
    const_cochain.n = 2;
    const_cochain.set(0u, Polynomial::constant(2, Rational(3)));
    const_cochain.set(1u, Polynomial::constant(2, Rational(2)));
    PolynomialField const_chain;
    const_chain.n = 2;
    const_chain.set(2u, Polynomial::constant(2, Rational(5, 2)));
    const_chain.set(3u, Polynomial::constant(2, Rational(-1)));

    std::vector<ConvergenceStudy> out;

    out.push_back(make_study("wedge-two-bracket", "rate", levels,
                             [&](const LatticeSpec& spec, const WindowBounds& win) {
        const LatticeElement f = sample_polynomial(spec, Role::cochain, fa, win);
        const LatticeElement g = sample_polynomial(spec, Role::cochain, ga, win);
        return delta_bracket_closed({f, g});
    }));

    out.push_back(make_study("chain-three-bracket", "rate", levels,
                             [&](const LatticeSpec& spec, const WindowBounds& win) {
        const LatticeElement a = sample_polynomial(spec, Role::chain, ab, win);
        const LatticeElement b = sample_polynomial(spec, Role::chain, bb, win);
        const LatticeElement c = sample_polynomial(spec, Role::chain, cb, win);
        return partial_bracket_closed({a, b, c});
    }));

    out.push_back(make_study("coboundary-vs-gradient", "rate", levels,
                             [&](const LatticeSpec& spec, const WindowBounds& win) {
        const LatticeElement f = sample_polynomial(spec, Role::cochain, fc, win);
        return sub(coboundary_half_step(f),
                   sample_polynomial(spec, Role::cochain, field_d(fc), win));
    }));

    out.push_back(make_study("two-bracket-vs-schouten", "rate", levels,
                             [&](const LatticeSpec& spec, const WindowBounds& win) {
        const LatticeElement a = sample_polynomial(spec, Role::chain, ad, win);
        const LatticeElement b = sample_polynomial(spec, Role::chain, bd, win);
        return sub(partial_bracket_closed({a, b}),
                   sample_polynomial(spec, Role::chain, schouten_bracket(ad, bd), win));
    }));

    out.push_back(make_study("quadratic-gradient-exact", "exact", levels,
                             [&](const LatticeSpec& spec, const WindowBounds& win) {
        const LatticeElement f = sample_polynomial(spec, Role::cochain, fq, win);
        return sub(coboundary_half_step(f),
                   sample_polynomial(spec, Role::cochain, field_d(fq), win));
    }));

    {
        ConvergenceStudy st;
        st.id = "constant-fields-exact";
        st.kind = "exact";
        st.levels = levels;
        for (int level : levels) {
            const LatticeSpec spec = numeric_spec(level);
            const WindowBounds win = level_window(level);
            const int reg = 1 << (level - 1);
            const LatticeElement f = sample_polynomial(spec, Role::cochain, const_cochain, win);
            const LatticeElement a = sample_polynomial(spec, Role::chain, const_chain, win);
            Rational norm = sup_norm(delta_bracket_closed({f, f}), reg);
            norm = std::max(norm, sup_norm(partial_bracket_closed({a, a, a}), reg));
            norm = std::max(norm, sup_norm(sub(coboundary_half_step(f),
                                               sample_polynomial(spec, Role::cochain,
                                                                 field_d(const_cochain), win)), reg));
            norm = std::max(norm, sup_norm(sub(partial_bracket_closed({a, a}),
                                               sample_polynomial(spec, Role::chain,
                                                                 schouten_bracket(const_chain, const_chain), win)), reg));
            st.sup_norms.push_back(norm);
        }
        finish_study(st);
        out.push_back(std::move(st));
    }

    return out;
}

nlohmann::json convergence_to_json(const std::vector<ConvergenceStudy>& studies) {
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto& st : studies) {
        nlohmann::json j;
        j["id"] = st.id;
        j["kind"] = st.kind;
        j["levels"] = st.levels;
        nlohmann::json norms = nlohmann::json::array();
        for (const Rational& q : st.sup_norms) norms.push_back(rational_to_string(q));
        j["sup_norms"] = norms;
        nlohmann::json rates = nlohmann::json::array();
        for (const auto& r : st.rates) {
            if (r) rates.push_back(*r);
            else rates.push_back(nullptr);
        }
        j["rates"] = rates;
        j["pass"] = st.pass;
        arr.push_back(j);
        all = all && st.pass;
    }
    return nlohmann::json{{"studies", arr}, {"pass", all}};
}

} // namespace latcalc
