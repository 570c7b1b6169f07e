#include "latcalc/polynomial.hpp"

#include <nlohmann/json.hpp>

#include <numeric>

namespace latcalc {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
    Polynomial p(nvars);
    p.add_term(std::vector<int>(nvars, 0), c);
    return p;
}

Polynomial Polynomial::variable(int nvars, int var) {
    if (var < 0 || var >= nvars) throw std::invalid_argument("variable index out of range");
    std::vector<int> e(nvars, 0);
    e[var] = 1;
    Polynomial p(nvars);
    p.add_term(e, 1);
    return p;
}

Polynomial Polynomial::monomial(std::vector<int> exponents, const Rational& c) {
    Polynomial p(static_cast<int>(exponents.size()));
    for (int e : exponents)
        if (e < 0) throw std::invalid_argument("negative exponent");
    p.add_term(exponents, c);
    return p;
}

int Polynomial::total_degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_)
        d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
    return d;
}

void Polynomial::add_term(const std::vector<int>& e, const Rational& c) {
    if (c == 0) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
    if (nvars_ != o.nvars_) throw std::invalid_argument("variable count mismatch");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.nvars_ != b.nvars_) throw std::invalid_argument("variable count mismatch");
    Polynomial r(a.nvars_);
    std::vector<int> e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            for (int i = 0; i < a.nvars_; ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, ca * cb);
        }
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Polynomial Polynomial::scaled(const Rational& c) const {
    Polynomial r(nvars_);
    if (c == 0) return r;
    for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
    return r;
}

Polynomial Polynomial::derivative(int var) const {
    if (var < 0 || var >= nvars_) throw std::invalid_argument("variable index out of range");
    Polynomial r(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        std::vector<int> d = e;
        d[var] -= 1;
        r.add_term(d, c * e[var]);
    }
    return r;
}

Rational Polynomial::evaluate(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != nvars_) throw std::invalid_argument("point dimension mismatch");
    Rational v = 0;
    for (const auto& [e, c] : terms_) {
        Rational m = c;
        for (int i = 0; i < nvars_; ++i)
            for (int k = 0; k < e[i]; ++k) m *= x[i];
        v += m;
    }
    return v;
}

LaurentH Polynomial::evaluate_at_h_multiple(const std::vector<int>& a) const {
    if (static_cast<int>(a.size()) != nvars_) throw std::invalid_argument("point dimension mismatch");
    LaurentH v;
    for (const auto& [e, c] : terms_) {
        Rational m = c;
        int d = 0;
        for (int i = 0; i < nvars_; ++i) {
            d += e[i];
            for (int k = 0; k < e[i]; ++k) m *= a[i];
        }
        v += LaurentH::monomial(d, m);
    }
    return v;
}

nlohmann::json Polynomial::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_)
        arr.push_back({{"exponents", e}, {"coeff", rational_to_string(c)}});
    return nlohmann::json{{"nvars", nvars_}, {"terms", arr}};
}

Polynomial Polynomial::from_json(const nlohmann::json& j) {
    Polynomial p(j.at("nvars").get<int>());
    for (const auto& t : j.at("terms")) {
        auto e = t.at("exponents").get<std::vector<int>>();
        if (static_cast<int>(e.size()) != p.nvars_)
            throw std::invalid_argument("exponent vector length mismatch");
        p.add_term(e, rational_from_string(t.at("coeff").get<std::string>()));
    }
    return p;
}

void PolynomialField::set(std::uint32_t type, Polynomial p) {
    if (p.nvars() != n) throw std::invalid_argument("field component has wrong variable count");
    if (p.is_zero()) components.erase(type);
    else components[type] = std::move(p);
}

const Polynomial* PolynomialField::find(std::uint32_t type) const {
    auto it = components.find(type);
    return it == components.end() ? nullptr : &it->second;
}

nlohmann::json PolynomialField::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [type, poly] : components) {
        nlohmann::json axes = nlohmann::json::array();
        for (int u = 0; u < n; ++u)
            if (type >> u & 1u) axes.push_back(u + 1);
        arr.push_back({{"type", axes}, {"poly", poly.to_json()}});
    }
    return nlohmann::json{{"n", n}, {"fields", arr}};
}

PolynomialField PolynomialField::from_json(const nlohmann::json& j) {
    PolynomialField f;
    f.n = j.at("n").get<int>();
    for (const auto& entry : j.at("fields")) {
        std::uint32_t type = 0;
        for (int axis : entry.at("type").get<std::vector<int>>()) {
            if (axis < 1 || axis > f.n) throw std::invalid_argument("axis out of range");
            type |= 1u << (axis - 1);
        }
        f.set(type, Polynomial::from_json(entry.at("poly")));
    }
    return f;
}

} // namespace latcalc
