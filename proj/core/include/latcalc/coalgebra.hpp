#pragma once

#include "latcalc/sym.hpp"

namespace latcalc {

// Reduced coproduct: sum over proper nonempty position subsets I of
// sign(I) x_I (x) x_{I^c}. Generators (length-1 words) map to zero.
SymTensor reduced_coproduct(const SymElement& x, const LetterSystem& ls);

// r-fold tensor refinement: arity r, obtained by repeatedly splitting the
// first slot. r = 1 returns x itself as an arity-1 tensor.
SymTensor iterated_coproduct(const SymElement& x, int r, const LetterSystem& ls);

// Multiplies the letters of a word in the algebra, left to right.
LinComb tau1(const Word& w, LetterSystem& ls);

// Coalgebra lift of multiplication: sum over partitions of the word into
// blocks, each block multiplied out, blocks wedged back together. Block
// upper-triangular in word length with identity diagonal, hence invertible.
SymElement tau(const SymElement& x, LetterSystem& ls);

// Inverse lift: same partition sum weighted by
// prod_blocks (-1)^{|block|-1} (|block|-1)!.
SymElement tau_inv(const SymElement& x, LetterSystem& ls);

// A map defined on words of exactly k letters, extended to a coderivation.
using KBracket = std::function<LinComb(const Word&)>;

// Coderivation extension: sum over k-subsets I of sign(I) b(x_I) ^ x_{I^c}.
SymElement coderivation_extend(const KBracket& b, int k, const SymElement& x, LetterSystem& ls);

// Coderivation extension of the algebra differential (k = 1).
SymElement dwedge(const SymElement& x, LetterSystem& ls);

// Conjugated differential D = tau^{-1} o dwedge o tau; square-zero
// coderivation whose Taylor coefficients are the higher brackets.
SymElement taylor_coderivation(const SymElement& x, LetterSystem& ls);

// Sum of the coefficients of the length-1 words.
LinComb project_length1(const SymElement& x);

// k-th Taylor coefficient of D on a word of k letters, three routes that
// must agree: the conjugation definition, the closed subset-sum formula, and
// the two-letter merge recursion.
LinComb taylor_bracket_conjugation(const Word& w, LetterSystem& ls);
LinComb taylor_bracket_direct(const Word& w, LetterSystem& ls);
LinComb taylor_bracket_recursive(const Word& w, LetterSystem& ls);

// Number of surjections from an s-set onto a t-set, by inclusion-exclusion.
BigInt surjection_count(int s, int t);

// Alternating sum N(s,s) - N(s,s-1) + ... +- N(s,1); equals 1 for s >= 1.
BigInt surjection_alternating_sum(int s);

} // namespace latcalc
