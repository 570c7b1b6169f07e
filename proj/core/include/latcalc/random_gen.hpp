#pragma once

#include "latcalc/laurent.hpp"
#include "latcalc/polynomial.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace latcalc {

// Deterministic random source. Draws avoid std::*_distribution on purpose:
// those are implementation-defined, and reports must be byte-identical for
// identical seeds on any platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t raw() { return eng_(); }

    // Uniform on [lo, hi], inclusive.
    int uniform(int lo, int hi) {
        if (hi < lo) throw std::invalid_argument("empty range");
        return lo + static_cast<int>(raw() % static_cast<std::uint64_t>(hi - lo + 1));
    }

    bool flip() { return raw() & 1u; }

    // Small exact scalar, numerator in [-max_num, max_num], denominator in [1, max_den].
    Rational rational(int max_num = 3, int max_den = 2) {
        return Rational(uniform(-max_num, max_num), uniform(1, max_den));
    }

    Rational nonzero_rational(int max_num = 3, int max_den = 2) {
        Rational q = rational(max_num, max_den);
        return q == 0 ? Rational(1) : q;
    }

    // Sparse Laurent scalar with exponents in [min_exp, max_exp].
    LaurentH laurent(int min_exp = 0, int max_exp = 2, int max_terms = 2) {
        LaurentH x;
        int terms = uniform(1, max_terms);
        for (int t = 0; t < terms; ++t)
            x += LaurentH::monomial(uniform(min_exp, max_exp), rational());
        return x;
    }

    LaurentH nonzero_laurent(int min_exp = 0, int max_exp = 2, int max_terms = 2) {
        LaurentH x = laurent(min_exp, max_exp, max_terms);
        return x.is_zero() ? LaurentH(1) : x;
    }

    // Dense-ish polynomial of total degree <= degree in nvars variables.
    Polynomial polynomial(int nvars, int degree, int max_num = 3, int max_den = 2);

    // Random field with components on the requested cell types.
    PolynomialField field(int n, const std::vector<std::uint32_t>& types, int degree);

private:
    std::mt19937_64 eng_;
};

} // namespace latcalc
