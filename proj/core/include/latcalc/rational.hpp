#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>

namespace latcalc {

// Exact scalar layer. Coefficients such as (r-1)! partition weights overflow
// fixed-width integers quickly, so everything sits on arbitrary precision.
using BigInt = boost::multiprecision::cpp_int;

// Canonical form (lowest terms, positive denominator) is maintained by
// cpp_rational itself; code below may rely on it.
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rational_num(const Rational& q) { return numerator(q); }
inline BigInt rational_den(const Rational& q) { return denominator(q); }

// Parses "a/b" or "a". Rejects zero denominators and malformed input.
Rational rational_from_string(const std::string& s);

// Renders "a/b", or just "a" when the denominator is 1.
std::string rational_to_string(const Rational& q);

inline Rational rational_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

// 2^e for possibly negative e.
inline Rational pow2(int e) {
    BigInt p = BigInt(1) << (e < 0 ? -e : e);
    return e < 0 ? Rational(BigInt(1), p) : Rational(p);
}

inline BigInt factorial(int k) {
    BigInt f = 1;
    for (int i = 2; i <= k; ++i) f *= i;
    return f;
}

inline BigInt binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    BigInt b = 1;
    for (int i = 0; i < k; ++i) { b *= (n - i); b /= (i + 1); }
    return b;
}

// h-adic order of a scalar; +infinity for zero. Infinity compares above every
// finite valuation, so "valuation >= bound" holds vacuously for zero.
class Valuation {
public:
    Valuation() : finite_(false), v_(0) {}
    explicit Valuation(int v) : finite_(true), v_(v) {}
    static Valuation infinity() { return Valuation(); }

    bool is_finite() const { return finite_; }
    int value() const {
        if (!finite_) throw std::logic_error("Valuation::value on infinity");
        return v_;
    }

    friend bool operator==(const Valuation& a, const Valuation& b) {
        return a.finite_ == b.finite_ && (!a.finite_ || a.v_ == b.v_);
    }
    friend std::strong_ordering operator<=>(const Valuation& a, const Valuation& b) {
        if (a.finite_ && b.finite_) return a.v_ <=> b.v_;
        if (a.finite_) return std::strong_ordering::less;     // finite < infinity
        if (b.finite_) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
    friend bool operator>=(const Valuation& a, int b) {
        return !a.finite_ || a.v_ >= b;
    }

    Valuation operator+(int shift) const {
        return finite_ ? Valuation(v_ + shift) : infinity();
    }

    std::string to_string() const { return finite_ ? std::to_string(v_) : "inf"; }

private:
    bool finite_;
    int v_;
};

inline Valuation min(const Valuation& a, const Valuation& b) { return a < b ? a : b; }

} // namespace latcalc
