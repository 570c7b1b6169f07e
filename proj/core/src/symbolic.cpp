#include "latcalc/symbolic.hpp"

#include <bit>
#include <stdexcept>

namespace latcalc {

namespace {

void field_add(PolynomialField& acc, std::uint32_t type, const Polynomial& p) {
    if (p.is_zero()) return;
    auto it = acc.components.find(type);
    if (it == acc.components.end()) {
        acc.components.emplace(type, p);
        return;
    }
    it->second += p;
    if (it->second.is_zero()) acc.components.erase(it);
}

} // namespace

PolynomialField field_wedge(const PolynomialField& x, const PolynomialField& y) {
    if (x.n != y.n) throw std::invalid_argument("field dimension mismatch");
    PolynomialField out;
    out.n = x.n;
    for (const auto& [tx, px] : x.components)
        for (const auto& [ty, py] : y.components) {
            const int sign = type_merge_sign(tx, ty);
            if (sign == 0) continue;
            field_add(out, tx | ty, (px * py).scaled(Rational(sign)));
        }
    return out;
}

PolynomialField field_d(const PolynomialField& x) {
    PolynomialField out;
    out.n = x.n;
    for (const auto& [type, p] : x.components)
        for (int u = 0; u < x.n; ++u) {
            if ((type >> u) & 1u) continue;
            const Polynomial dp = p.derivative(u);
            if (dp.is_zero()) continue;
            const std::uint32_t raised = type | (std::uint32_t{1} << u);
            field_add(out, raised, dp.scaled(Rational(axis_sign(raised, u))));
        }
    return out;
}

PolynomialField field_boundary(const PolynomialField& x) {
    PolynomialField out;
    out.n = x.n;
    for (const auto& [type, p] : x.components)
        for (int u = 0; u < x.n; ++u) {
            if (!((type >> u) & 1u)) continue;
            const Polynomial dp = p.derivative(u);
            if (dp.is_zero()) continue;
            field_add(out, type & ~(std::uint32_t{1} << u), dp.scaled(Rational(-axis_sign(type, u))));
        }
    return out;
}

PolynomialField schouten_bracket(const PolynomialField& x, const PolynomialField& y) {
    if (x.n != y.n) throw std::invalid_argument("field dimension mismatch");
    PolynomialField out;
    out.n = x.n;
    for (int deg = 0; deg <= x.n; ++deg) {
        PolynomialField part;
        part.n = x.n;
        for (const auto& [type, poly] : x.components)
            if (std::popcount(type) == deg) part.components.emplace(type, poly);
        if (part.is_zero()) continue;
        const PolynomialField t1 = field_boundary(field_wedge(part, y));
        const PolynomialField t2 = field_wedge(field_boundary(part), y);
        const PolynomialField t3 = field_wedge(part, field_boundary(y));
        const Rational s3(deg % 2 == 0 ? -1 : 1);
        for (const auto& [type, poly] : t1.components) field_add(out, type, poly);
        for (const auto& [type, poly] : t2.components) field_add(out, type, -poly);
        for (const auto& [type, poly] : t3.components) field_add(out, type, poly.scaled(s3));
    }
    return out;
}

} // namespace latcalc
