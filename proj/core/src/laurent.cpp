#include "latcalc/laurent.hpp"

#include <nlohmann/json.hpp>

#include <sstream>

namespace latcalc {

Rational rational_from_string(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    } catch (const std::exception&) {
        throw std::invalid_argument("bad rational literal: " + s);
    }
}

std::string rational_to_string(const Rational& q) {
    std::ostringstream os;
    os << numerator(q);
    if (denominator(q) != 1) os << '/' << denominator(q);
    return os.str();
}

LaurentH LaurentH::monomial(int exponent, const Rational& c) {
    LaurentH x;
    if (c != 0) x.terms_[exponent] = c;
    return x;
}

Rational LaurentH::coefficient(int exponent) const {
    auto it = terms_.find(exponent);
    return it == terms_.end() ? Rational(0) : it->second;
}

bool LaurentH::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first == 0);
}

LaurentH& LaurentH::operator+=(const LaurentH& o) {
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

LaurentH& LaurentH::operator-=(const LaurentH& o) {
    for (const auto& [e, c] : o.terms_) {
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, -c);
        } else {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

LaurentH operator*(const LaurentH& a, const LaurentH& b) {
    LaurentH r;
    for (const auto& [ea, ca] : a.terms_)
        for (const auto& [eb, cb] : b.terms_) {
            int e = ea + eb;
            auto it = r.terms_.find(e);
            if (it == r.terms_.end()) {
                Rational c = ca * cb;
                if (c != 0) r.terms_.emplace(e, std::move(c));
            } else {
                it->second += ca * cb;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    return r;
}

LaurentH LaurentH::operator-() const {
    LaurentH r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
    return r;
}

Valuation LaurentH::valuation() const {
    if (terms_.empty()) return Valuation::infinity();
    return Valuation(terms_.begin()->first);
}

LaurentH LaurentH::shifted(int k) const {
    LaurentH r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e + k, c);
    return r;
}

Rational LaurentH::evaluate_at_scale(int level) const {
    Rational v = 0;
    for (const auto& [e, c] : terms_) v += c * pow2(-level * e);
    return v;
}

std::string LaurentH::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << rational_to_string(c) << ")";
        if (e != 0) os << "h^" << e;
    }
    return os.str();
}

nlohmann::json LaurentH::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : terms_) arr.push_back({e, rational_to_string(c)});
    return nlohmann::json{{"terms", arr}};
}

LaurentH LaurentH::from_json(const nlohmann::json& j) {
    LaurentH x;
    for (const auto& t : j.at("terms")) {
        int e = t.at(0).get<int>();
        Rational c = rational_from_string(t.at(1).get<std::string>());
        if (c != 0) {
            auto [it, fresh] = x.terms_.emplace(e, c);
            if (!fresh) throw std::invalid_argument("duplicate exponent in Laurent terms");
        }
    }
    return x;
}

} // namespace latcalc
