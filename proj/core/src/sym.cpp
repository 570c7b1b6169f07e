#include "latcalc/sym.hpp"

#include <sstream>

namespace latcalc {

LinComb LetterSystem::product(const LinComb& x, const LinComb& y) {
    LinComb r;
    for (const auto& [a, ca] : x)
        for (const auto& [b, cb] : y)
            add_scaled(r, product(a, b), ca * cb);
    return r;
}

LinComb LetterSystem::differential(const LinComb& x) {
    LinComb r;
    for (const auto& [a, c] : x) add_scaled(r, differential(a), c);
    return r;
}

LinComb BarMap::apply(const LinComb& x) {
    LinComb r;
    for (const auto& [a, c] : x) add_scaled(r, apply(a), c);
    return r;
}

int word_degree(const Word& w, const LetterSystem& ls) {
    int d = 0;
    for (int l : w.letters) d += ls.degree(l);
    return d;
}

std::optional<CanonicalWord> canonicalize(std::vector<int> letters, const LetterSystem& ls) {
    // Insertion sort, counting degree-weighted inversions. Word lengths stay
    // small, so quadratic is fine and keeps the sign bookkeeping transparent.
    int sign = 1;
    const int k = static_cast<int>(letters.size());
    std::vector<int> degs(k);
    for (int i = 0; i < k; ++i) degs[i] = ls.degree(letters[i]);
    for (int i = 1; i < k; ++i) {
        int j = i;
        while (j > 0 && letters[j - 1] > letters[j]) {
            if (degs[j - 1] % 2 && degs[j] % 2) sign = -sign;
            std::swap(letters[j - 1], letters[j]);
            std::swap(degs[j - 1], degs[j]);
            --j;
        }
    }
    for (int i = 1; i < k; ++i)
        if (letters[i] == letters[i - 1] && degs[i] % 2) return std::nullopt;
    return CanonicalWord{Word{std::move(letters)}, sign};
}

int koszul_sign(const std::vector<int>& p, const std::vector<int>& degrees) {
    int sign = 1;
    for (size_t a = 0; a < p.size(); ++a)
        for (size_t b = a + 1; b < p.size(); ++b)
            if (p[a] > p[b] && degrees[p[a]] % 2 && degrees[p[b]] % 2) sign = -sign;
    return sign;
}

int subset_sign(const std::vector<int>& degrees, std::uint32_t subset) {
    int sign = 1;
    const int k = static_cast<int>(degrees.size());
    for (int i = 0; i < k; ++i) {
        if (!(subset >> i & 1u) || degrees[i] % 2 == 0) continue;
        for (int j = 0; j < i; ++j)
            if (!(subset >> j & 1u) && degrees[j] % 2) sign = -sign;
    }
    return sign;
}

SymElement SymElement::single(Word w, LaurentH c) {
    SymElement e;
    e.add_term(w, c);
    return e;
}

void SymElement::add_term(const Word& w, const LaurentH& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(w);
    if (it == terms_.end()) {
        terms_.emplace(w, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymElement& SymElement::operator+=(const SymElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, c);
    return *this;
}

SymElement& SymElement::operator-=(const SymElement& o) {
    for (const auto& [w, c] : o.terms_) add_term(w, -c);
    return *this;
}

SymElement SymElement::scaled(const LaurentH& c) const {
    SymElement r;
    if (c.is_zero()) return r;
    for (const auto& [w, k] : terms_) r.add_term(w, k * c);
    return r;
}

SymElement SymElement::length_part(int k) const {
    SymElement r;
    for (const auto& [w, c] : terms_)
        if (w.size() == k) r.add_term(w, c);
    return r;
}

std::string SymElement::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "[" << c.to_string() << "]";
        for (size_t i = 0; i < w.letters.size(); ++i)
            os << (i ? "^" : "") << "e" << w.letters[i];
    }
    return os.str();
}

void SymTensor::add_term(const std::vector<Word>& slots, const LaurentH& c) {
    if (static_cast<int>(slots.size()) != arity_)
        throw std::invalid_argument("tensor arity mismatch");
    if (c.is_zero()) return;
    auto it = terms_.find(slots);
    if (it == terms_.end()) {
        terms_.emplace(slots, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

SymTensor& SymTensor::operator+=(const SymTensor& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("tensor arity mismatch");
    for (const auto& [s, c] : o.terms_) add_term(s, c);
    return *this;
}

SymTensor& SymTensor::operator-=(const SymTensor& o) {
    if (arity_ != o.arity_) throw std::invalid_argument("tensor arity mismatch");
    for (const auto& [s, c] : o.terms_) add_term(s, -c);
    return *this;
}

SymElement wedge_expand(const std::vector<LinComb>& factors, const LetterSystem& ls) {
    SymElement result;
    const int r = static_cast<int>(factors.size());
    std::vector<LinComb::const_iterator> pick(r);
    // Odometer over one letter per factor.
    for (int i = 0; i < r; ++i) {
        if (factors[i].empty()) return result;
        pick[i] = factors[i].begin();
    }
    while (true) {
        LaurentH coeff(1);
        std::vector<int> letters(r);
        for (int i = 0; i < r; ++i) {
            letters[i] = pick[i]->first;
            coeff *= pick[i]->second;
        }
        if (auto canon = canonicalize(std::move(letters), ls))
            result.add_term(canon->word, coeff * LaurentH(canon->sign));
        int i = r - 1;
        while (i >= 0 && ++pick[i] == factors[i].end()) {
            pick[i] = factors[i].begin();
            --i;
        }
        if (i < 0) break;
    }
    return result;
}

void for_each_ordered_partition(
    const std::vector<int>& degrees,
    const std::function<void(const std::vector<std::vector<int>>&, int)>& fn) {
    const int k = static_cast<int>(degrees.size());
    if (k == 0) return;
    std::vector<int> block_of(k);
    for (int r = 1; r <= k; ++r) {
        std::vector<std::vector<int>> blocks(r);
        auto emit = [&] {
            for (auto& b : blocks) b.clear();
            for (int p = 0; p < k; ++p) blocks[block_of[p]].push_back(p);
            for (const auto& b : blocks)
                if (b.empty()) return;
            // Koszul sign of reading positions block by block.
            int sign = 1;
            for (int p = 0; p < k; ++p)
                for (int q = p + 1; q < k; ++q)
                    if (block_of[p] > block_of[q] && degrees[p] % 2 && degrees[q] % 2)
                        sign = -sign;
            fn(blocks, sign);
        };
        std::fill(block_of.begin(), block_of.end(), 0);
        while (true) {
            emit();
            int p = k - 1;
            while (p >= 0 && ++block_of[p] == r) {
                block_of[p] = 0;
                --p;
            }
            if (p < 0) break;
        }
    }
}

} // namespace latcalc
