#pragma once

// Shared random fixtures for the test binaries. Deterministic: everything
// draws through Rng so a failing seed reproduces exactly.

#include <latcalc/algebra.hpp>
#include <latcalc/lattice.hpp>
#include <latcalc/letters.hpp>
#include <latcalc/random_gen.hpp>
#include <latcalc/sym.hpp>

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

namespace latcalc::testutil {

inline LinComb lc(int letter) { return LinComb{{letter, LaurentH(1)}}; }

inline LaurentH sign_of(int exponent) { return LaurentH(exponent % 2 ? -1 : 1); }

inline Word random_word(Rng& rng, const LetterSystem& ls, int max_letter, int len) {
    for (;;) {
        std::vector<int> letters;
        for (int i = 0; i < len; ++i) letters.push_back(rng.uniform(0, max_letter));
        if (auto cw = canonicalize(std::move(letters), ls)) return cw->word;
    }
}

inline SymElement random_sym(Rng& rng, const LetterSystem& ls, int max_letter, int max_len,
                             int terms) {
    SymElement x;
    for (int t = 0; t < terms; ++t)
        x += SymElement::single(random_word(rng, ls, max_letter, rng.uniform(1, max_len)),
                                rng.nonzero_laurent(0, 1, 2));
    return x;
}

// Ascending distinct letters; needs top + 1 >= count.
inline std::vector<int> distinct_letters(Rng& rng, int top, int count) {
    std::vector<int> out;
    while (static_cast<int>(out.size()) < count) {
        const int x = rng.uniform(0, top);
        if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    std::sort(out.begin(), out.end());
    return out;
}

// Random algebra with enough basis elements for multi-letter fixtures.
inline GradedBasisAlgebra sizable_algebra(Rng& rng, int min_basis, int max_generators,
                                          int diff_degree) {
    for (;;) {
        GradedBasisAlgebra alg = random_graded_algebra(rng, max_generators, diff_degree);
        if (alg.basis_size() >= min_basis) return alg;
    }
}

inline std::vector<std::uint32_t> types_of_dim(int n, int dim) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < (1u << n); ++t)
        if (std::popcount(t) == dim) out.push_back(t);
    return out;
}

inline std::vector<std::uint32_t> all_types(int n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t t = 0; t < (1u << n); ++t) out.push_back(t);
    return out;
}

inline LatticeSpec make_spec(int n, Mode mode, int N) {
    LatticeSpec spec;
    spec.n = n;
    spec.mode = mode;
    spec.N = N;
    return spec;
}

inline WindowBounds make_window(int n, int radius) {
    return WindowBounds(static_cast<std::size_t>(n), {-radius, radius});
}

inline Cell random_cell(Rng& rng, const LatticeSpec& spec, std::uint32_t type,
                        const WindowBounds& window) {
    Cell c;
    c.type = type;
    for (int a = 0; a < spec.n; ++a)
        c.center.push_back(spec.mode == Mode::periodic ? rng.uniform(0, spec.period() - 1)
                                                       : rng.uniform(window[a][0], window[a][1]));
    return c;
}

inline LatticeElement random_element(Rng& rng, const LatticeSpec& spec, Role role, int terms,
                                     const WindowBounds& window = {}) {
    LatticeElement x(spec, role, window);
    for (int t = 0; t < terms; ++t) {
        const auto type = static_cast<std::uint32_t>(rng.uniform(0, (1 << spec.n) - 1));
        x.add_entry(random_cell(rng, spec, type, window), rng.nonzero_laurent(0, 1, 2));
    }
    return x;
}

inline LatticeElement random_homogeneous(Rng& rng, const LatticeSpec& spec, Role role, int dim,
                                         int terms, const WindowBounds& window = {}) {
    const auto types = types_of_dim(spec.n, dim);
    LatticeElement x(spec, role, window);
    for (int t = 0; t < terms; ++t) {
        const auto type =
            types[static_cast<std::size_t>(rng.uniform(0, static_cast<int>(types.size()) - 1))];
        x.add_entry(random_cell(rng, spec, type, window), rng.nonzero_laurent(0, 1, 2));
    }
    return x;
}

// (f (x) g) applied slotwise to an arity-2 tensor.
inline SymTensor map_tensor_slots(const SymTensor& t,
                                  const std::function<SymElement(const Word&)>& f,
                                  const std::function<SymElement(const Word&)>& g) {
    SymTensor out(2);
    for (const auto& [slots, c] : t.terms()) {
        const SymElement fa = f(slots[0]);
        const SymElement gb = g(slots[1]);
        for (const auto& [wa, ca] : fa.terms())
            for (const auto& [wb, cb] : gb.terms()) out.add_term({wa, wb}, c * ca * cb);
    }
    return out;
}

} // namespace latcalc::testutil
