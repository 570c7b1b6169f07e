#include "latcalc/coalgebra.hpp"

namespace latcalc {

namespace {

std::vector<int> letter_degrees(const Word& w, const LetterSystem& ls) {
    std::vector<int> d(w.letters.size());
    for (size_t i = 0; i < w.letters.size(); ++i) d[i] = ls.degree(w.letters[i]);
    return d;
}

Word subword(const Word& w, std::uint32_t mask) {
    Word r;
    for (int i = 0; i < w.size(); ++i)
        if (mask >> i & 1u) r.letters.push_back(w.letters[i]);
    return r;
}

} // namespace

SymTensor reduced_coproduct(const SymElement& x, const LetterSystem& ls) {
    SymTensor result(2);
    for (const auto& [w, c] : x.terms()) {
        const int k = w.size();
        if (k < 2) continue;
        const auto degs = letter_degrees(w, ls);
        const std::uint32_t full = (1u << k) - 1;
        for (std::uint32_t mask = 1; mask < full; ++mask) {
            int sign = subset_sign(degs, mask);
            // Subwords of a canonical word are canonical: ascending order is
            // inherited and odd repeats cannot appear.
            result.add_term({subword(w, mask), subword(w, full & ~mask)}, c * LaurentH(sign));
        }
    }
    return result;
}

SymTensor iterated_coproduct(const SymElement& x, int r, const LetterSystem& ls) {
    if (r < 1) throw std::invalid_argument("arity must be >= 1");
    SymTensor cur(1);
    for (const auto& [w, c] : x.terms()) cur.add_term({w}, c);
    for (int step = 2; step <= r; ++step) {
        SymTensor next(step);
        for (const auto& [slots, c] : cur.terms()) {
            SymElement head = SymElement::single(slots[0], c);
            SymTensor split = reduced_coproduct(head, ls);
            for (const auto& [pair_slots, pc] : split.terms()) {
                std::vector<Word> out;
                out.reserve(step);
                out.push_back(pair_slots[0]);
                out.push_back(pair_slots[1]);
                for (size_t i = 1; i < slots.size(); ++i) out.push_back(slots[i]);
                next.add_term(out, pc);
            }
        }
        cur = std::move(next);
    }
    return cur;
}

LinComb tau1(const Word& w, LetterSystem& ls) {
    if (w.size() == 0) throw std::invalid_argument("empty word has no product");
    LinComb r{{w.letters[0], LaurentH(1)}};
    for (int i = 1; i < w.size(); ++i) r = ls.product(r, LinComb{{w.letters[i], LaurentH(1)}});
    return r;
}

namespace {

// Shared partition sum for tau, tau_inv and the cumulant maps: the ordered
// enumeration divided by r! replaces the unordered sum exactly.
SymElement partition_lift(const SymElement& x, LetterSystem& ls,
                          const std::function<Rational(const std::vector<std::vector<int>>&)>& weight) {
    SymElement result;
    for (const auto& [w, c] : x.terms()) {
        if (w.size() == 0) continue;
        std::vector<int> degs(w.size());
        for (int i = 0; i < w.size(); ++i) degs[i] = ls.degree(w.letters[i]);
        for_each_ordered_partition(degs, [&](const std::vector<std::vector<int>>& blocks, int sign) {
            std::vector<LinComb> factors;
            factors.reserve(blocks.size());
            for (const auto& block : blocks) {
                Word b;
                for (int p : block) b.letters.push_back(w.letters[p]);
                factors.push_back(tau1(b, ls));
            }
            Rational wgt = weight(blocks);
            if (wgt == 0) return;
            SymElement term = wedge_expand(factors, ls);
            result += term.scaled(c * LaurentH(Rational(sign) * wgt));
        });
    }
    return result;
}

} // namespace

SymElement tau(const SymElement& x, LetterSystem& ls) {
    return partition_lift(x, ls, [](const std::vector<std::vector<int>>& blocks) {
        return Rational(1, factorial(static_cast<int>(blocks.size())));
    });
}

SymElement tau_inv(const SymElement& x, LetterSystem& ls) {
    return partition_lift(x, ls, [](const std::vector<std::vector<int>>& blocks) {
        const int r = static_cast<int>(blocks.size());
        Rational w(1, factorial(r));
        for (const auto& block : blocks) {
            const int m = static_cast<int>(block.size());
            BigInt d = factorial(m - 1);
            w *= (m % 2 ? Rational(d) : Rational(-d));
        }
        return w;
    });
}

SymElement coderivation_extend(const KBracket& b, int k, const SymElement& x, LetterSystem& ls) {
    if (k < 1) throw std::invalid_argument("bracket order must be >= 1");
    SymElement result;
    for (const auto& [w, c] : x.terms()) {
        const int m = w.size();
        if (m < k) continue;
        const auto degs = letter_degrees(w, ls);
        const std::uint32_t full = (1u << m) - 1;
        for (std::uint32_t mask = 1; mask <= full; ++mask) {
            if (std::popcount(mask) != k) continue;
            LinComb inner = b(subword(w, mask));
            if (inner.empty()) continue;
            std::vector<LinComb> factors;
            factors.push_back(std::move(inner));
            Word rest = subword(w, full & ~mask);
            for (int l : rest.letters) factors.push_back(LinComb{{l, LaurentH(1)}});
            SymElement term = wedge_expand(factors, ls);
            result += term.scaled(c * LaurentH(subset_sign(degs, mask)));
        }
    }
    return result;
}

SymElement dwedge(const SymElement& x, LetterSystem& ls) {
    KBracket d1 = [&ls](const Word& w) { return ls.differential(w.letters[0]); };
    return coderivation_extend(d1, 1, x, ls);
}

SymElement taylor_coderivation(const SymElement& x, LetterSystem& ls) {
    return tau_inv(dwedge(tau(x, ls), ls), ls);
}

LinComb project_length1(const SymElement& x) {
    LinComb r;
    for (const auto& [w, c] : x.terms())
        if (w.size() == 1) add_scaled(r, LinComb{{w.letters[0], LaurentH(1)}}, c);
    return r;
}

LinComb taylor_bracket_conjugation(const Word& w, LetterSystem& ls) {
    return project_length1(taylor_coderivation(SymElement::single(w), ls));
}

LinComb taylor_bracket_direct(const Word& w, LetterSystem& ls) {
    const int k = w.size();
    if (k == 0) throw std::invalid_argument("empty word");
    std::vector<int> degs(k);
    for (int i = 0; i < k; ++i) degs[i] = ls.degree(w.letters[i]);
    const std::uint32_t full = (1u << k) - 1;
    LinComb result;
    for (std::uint32_t mask = 1; mask <= full; ++mask) {
        const int r = std::popcount(mask);
        LinComb term = ls.differential(tau1(subword(w, mask), ls));
        if (mask != full) term = ls.product(term, tau1(subword(w, full & ~mask), ls));
        int sign = subset_sign(degs, mask);
        if ((k - r) % 2) sign = -sign;
        add_scaled(result, term, LaurentH(sign));
    }
    return result;
}

namespace {

LinComb bracket_rec(const LinComb& first, int first_degree,
                    const std::vector<int>& rest, size_t at, LetterSystem& ls) {
    if (at == rest.size()) return ls.differential(first);
    const int v2 = rest[at];
    const int d1 = first_degree;
    const int d2 = ls.degree(v2);
    const LinComb v2_comb{{v2, LaurentH(1)}};

    LinComb merged = bracket_rec(ls.product(first, v2_comb), d1 + d2, rest, at + 1, ls);
    LinComb right = bracket_rec(v2_comb, d2, rest, at + 1, ls);
    LinComb keep_first = bracket_rec(first, d1, rest, at + 1, ls);

    LinComb result = std::move(merged);
    add_scaled(result, ls.product(first, right), LaurentH(d1 % 2 ? 1 : -1));
    add_scaled(result, ls.product(v2_comb, keep_first),
               LaurentH((d2 * (1 + d1)) % 2 ? 1 : -1));
    return result;
}

} // namespace

LinComb taylor_bracket_recursive(const Word& w, LetterSystem& ls) {
    if (w.size() == 0) throw std::invalid_argument("empty word");
    std::vector<int> rest(w.letters.begin() + 1, w.letters.end());
    return bracket_rec(LinComb{{w.letters[0], LaurentH(1)}}, ls.degree(w.letters[0]), rest, 0, ls);
}

BigInt surjection_count(int s, int t) {
    if (s < 0 || t < 0) throw std::invalid_argument("negative arguments");
    if (t == 0) return s == 0 ? 1 : 0;
    BigInt n = 0;
    for (int k = 1; k <= t; ++k) {
        BigInt pw = 1;
        for (int i = 0; i < s; ++i) pw *= k;
        BigInt term = binomial(t, k) * pw;
        n += ((t - k) % 2) ? -term : term;
    }
    return n;
}

BigInt surjection_alternating_sum(int s) {
    BigInt acc = 0;
    for (int t = s; t >= 1; --t) {
        BigInt term = surjection_count(s, t);
        acc += ((s - t) % 2) ? -term : term;
    }
    return acc;
}

} // namespace latcalc
