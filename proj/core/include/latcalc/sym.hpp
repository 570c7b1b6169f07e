#pragma once

#include "latcalc/letters.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

namespace latcalc {

// Word in the symmetric algebra: letter ids ascending. Canonical form is
// established by canonicalize(), which also produces the Koszul sign; words
// with a repeated odd-degree letter are zero and have no canonical form.
struct Word {
    std::vector<int> letters;

    int size() const { return static_cast<int>(letters.size()); }
    auto operator<=>(const Word&) const = default;
};

int word_degree(const Word& w, const LetterSystem& ls);

struct CanonicalWord {
    Word word;
    int sign;
};

// Stable sort with degree-weighted inversion signs.
std::optional<CanonicalWord> canonicalize(std::vector<int> letters, const LetterSystem& ls);

// Sign of presenting (x_{p[0]}, ..., x_{p[k-1]}) relative to (x_0, ..., x_{k-1}):
// each out-of-order pair contributes (-1)^{|x_i||x_j|}. degrees[i] is the
// degree of x_i; p must be a permutation of 0..k-1.
int koszul_sign(const std::vector<int>& p, const std::vector<int>& degrees);

// Sign of splitting (x_0, ..., x_{k-1}) into the subsequence on subset I and
// its complement: pairs i in I, j not in I with i > j contribute
// (-1)^{|x_i||x_j|}. The product of the signs for I and for I^c equals
// (-1)^{|x_I||x_{I^c}|}.
int subset_sign(const std::vector<int>& degrees, std::uint32_t subset);

class SymElement {
public:
    SymElement() = default;
    static SymElement single(Word w, LaurentH c = LaurentH(1));

    bool is_zero() const { return terms_.empty(); }
    const std::map<Word, LaurentH>& terms() const { return terms_; }

    void add_term(const Word& w, const LaurentH& c);
    SymElement& operator+=(const SymElement& o);
    SymElement& operator-=(const SymElement& o);
    friend SymElement operator+(SymElement a, const SymElement& b) { a += b; return a; }
    friend SymElement operator-(SymElement a, const SymElement& b) { a -= b; return a; }
    SymElement scaled(const LaurentH& c) const;
    friend bool operator==(const SymElement& a, const SymElement& b) { return a.terms_ == b.terms_; }

    // Terms whose word has exactly k letters.
    SymElement length_part(int k) const;

    std::string to_string() const;

private:
    std::map<Word, LaurentH> terms_;
};

// Tensor power of the symmetric algebra, fixed arity.
class SymTensor {
public:
    explicit SymTensor(int arity) : arity_(arity) {}

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::vector<Word>, LaurentH>& terms() const { return terms_; }

    void add_term(const std::vector<Word>& slots, const LaurentH& c);
    SymTensor& operator+=(const SymTensor& o);
    SymTensor& operator-=(const SymTensor& o);
    friend SymTensor operator-(SymTensor a, const SymTensor& b) { a -= b; return a; }
    friend bool operator==(const SymTensor& a, const SymTensor& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }

private:
    int arity_;
    std::map<std::vector<Word>, LaurentH> terms_;
};

// Multilinear expansion of factor_1 ^ ... ^ factor_r into canonical words,
// keeping the factors in the given list order before canonical sorting.
SymElement wedge_expand(const std::vector<LinComb>& factors, const LetterSystem& ls);

// Enumerates ordered partitions of positions 0..k-1 into r nonempty blocks
// for every 1 <= r <= k. Blocks list positions ascending; sign is the Koszul
// sign of reordering the word into block-concatenated order. Unordered
// partition sums are realized as ordered sums with weight 1/r!, which is
// exact over the rationals.
void for_each_ordered_partition(
    const std::vector<int>& degrees,
    const std::function<void(const std::vector<std::vector<int>>& blocks, int sign)>& fn);

} // namespace latcalc
