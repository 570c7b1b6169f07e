#include "latcalc/random_gen.hpp"

namespace latcalc {

Polynomial Rng::polynomial(int nvars, int degree, int max_num, int max_den) {
    // Walk all exponent vectors of total degree <= degree, keep each with
    // probability ~1/2 so samples vary in support.
    Polynomial p(nvars);
    std::vector<int> e(nvars, 0);
    while (true) {
        int total = 0;
        for (int v : e) total += v;
        if (total <= degree && flip())
            p += Polynomial::monomial(e, rational(max_num, max_den));
        int i = 0;
        while (i < nvars) {
            if (++e[i] <= degree) break;
            e[i] = 0;
            ++i;
        }
        if (i == nvars) break;
    }
    return p;
}

PolynomialField Rng::field(int n, const std::vector<std::uint32_t>& types, int degree) {
    PolynomialField f;
    f.n = n;
    for (std::uint32_t type : types) {
        Polynomial p = polynomial(n, degree);
        if (p.is_zero()) p = Polynomial::constant(n, 1);
        f.set(type, p);
    }
    return f;
}

} // namespace latcalc
