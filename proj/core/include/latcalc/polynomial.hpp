#pragma once

#include "latcalc/laurent.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cstdint>
#include <map>
#include <vector>

namespace latcalc {

// Polynomial in n commuting variables over the rationals, sparse monomial
// map. Exponent vectors always have length n; zero coefficients are dropped.
class Polynomial {
public:
    explicit Polynomial(int nvars = 0) : nvars_(nvars) {}
    static Polynomial constant(int nvars, const Rational& c);
    static Polynomial variable(int nvars, int var);
    static Polynomial monomial(std::vector<int> exponents, const Rational& c);

    int nvars() const { return nvars_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<int>, Rational>& terms() const { return terms_; }
    int total_degree() const; // -1 for the zero polynomial

    Polynomial& operator+=(const Polynomial& o);
    Polynomial& operator-=(const Polynomial& o);
    friend Polynomial operator+(Polynomial a, const Polynomial& b) { a += b; return a; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { a -= b; return a; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    Polynomial operator-() const;
    Polynomial scaled(const Rational& c) const;
    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
    }

    Polynomial derivative(int var) const;
    Rational evaluate(const std::vector<Rational>& x) const;

    // Evaluates at the point (a_1 h, ..., a_n h): each monomial of total
    // degree d contributes coeff * prod a_i^{e_i} * h^d.
    LaurentH evaluate_at_h_multiple(const std::vector<int>& a) const;

    nlohmann::json to_json() const;
    static Polynomial from_json(const nlohmann::json& j);

private:
    void add_term(const std::vector<int>& e, const Rational& c);

    int nvars_;
    std::map<std::vector<int>, Rational> terms_;
};

// Collection of polynomial coefficient functions indexed by cell type
// (bitmask over axes). Doubles as the symbolic multivector/form data the
// convergence oracle differentiates.
struct PolynomialField {
    int n = 0;
    std::map<std::uint32_t, Polynomial> components;

    bool is_zero() const { return components.empty(); }
    void set(std::uint32_t type, Polynomial p);
    const Polynomial* find(std::uint32_t type) const;

    nlohmann::json to_json() const;
    static PolynomialField from_json(const nlohmann::json& j);
};

} // namespace latcalc
