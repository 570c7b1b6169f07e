#pragma once

#include "latcalc/rational.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <string>

namespace latcalc {

// Laurent polynomial in the formal scale parameter h, with rational
// coefficients. Zero coefficients are never stored, so the zero element is
// the empty term map and equality is plain map equality.
class LaurentH {
public:
    LaurentH() = default;
    LaurentH(const Rational& c) { if (c != 0) terms_[0] = c; }
    LaurentH(int c) : LaurentH(Rational(c)) {}

    // c * h^e
    static LaurentH monomial(int exponent, const Rational& c = Rational(1));
    static LaurentH h() { return monomial(1); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<int, Rational>& terms() const { return terms_; }
    Rational coefficient(int exponent) const;

    // True when the element is a degree-0 scalar (or zero).
    bool is_constant() const;

    LaurentH& operator+=(const LaurentH& o);
    LaurentH& operator-=(const LaurentH& o);
    friend LaurentH operator+(LaurentH a, const LaurentH& b) { a += b; return a; }
    friend LaurentH operator-(LaurentH a, const LaurentH& b) { a -= b; return a; }
    friend LaurentH operator*(const LaurentH& a, const LaurentH& b);
    LaurentH& operator*=(const LaurentH& o) { *this = *this * o; return *this; }
    LaurentH operator-() const;
    friend bool operator==(const LaurentH& a, const LaurentH& b) { return a.terms_ == b.terms_; }

    // Smallest exponent with nonzero coefficient; +infinity for zero.
    Valuation valuation() const;

    // Multiplication by h^k (k may be negative). divide_by_h_power(x, k)
    // satisfies result * h^k == x exactly; it never truncates.
    LaurentH shifted(int k) const;

    // Substitutes h = 2^{-level}.
    Rational evaluate_at_scale(int level) const;

    std::string to_string() const;

    // {"terms": [[exponent, "num/den"], ...]}, exponents ascending.
    nlohmann::json to_json() const;
    static LaurentH from_json(const nlohmann::json& j);

private:
    std::map<int, Rational> terms_;
};

inline LaurentH divide_by_h_power(const LaurentH& x, int k) { return x.shifted(-k); }

} // namespace latcalc
