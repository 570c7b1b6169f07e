#pragma once

#include "latcalc/algebra.hpp"

#include <concepts>
#include <map>
#include <vector>

namespace latcalc {

// A graded commutative algebra seen through integer letter ids. Words of
// letters form the symmetric algebra the coalgebra machinery acts on.
// product() may allocate fresh letters (pool systems do), hence non-const.
class LetterSystem {
public:
    virtual ~LetterSystem() = default;
    virtual int degree(int letter) const = 0;
    virtual LinComb product(int a, int b) = 0;
    virtual LinComb differential(int letter) = 0;
    virtual int differential_degree() const = 0;

    LinComb product(const LinComb& x, const LinComb& y);
    LinComb differential(const LinComb& x);
};

// Letters are the basis elements of a GradedBasisAlgebra.
class BasisLetters final : public LetterSystem {
public:
    explicit BasisLetters(const GradedBasisAlgebra& alg) : alg_(&alg) {}
    int degree(int letter) const override { return alg_->degree(letter); }
    LinComb product(int a, int b) override { return alg_->product(a, b); }
    LinComb differential(int letter) override { return alg_->differential(letter); }
    int differential_degree() const override { return alg_->differential_degree(); }

private:
    const GradedBasisAlgebra* alg_;
};

template <class A>
concept PoolAlgebra = requires(const A& alg, const typename A::Element& x) {
    { alg.product(x, x) } -> std::convertible_to<typename A::Element>;
    { alg.differential(x) } -> std::convertible_to<typename A::Element>;
    { alg.differential_degree() } -> std::convertible_to<int>;
    { alg.is_zero(x) } -> std::convertible_to<bool>;
    { alg.scaled(x, LaurentH(1)) } -> std::convertible_to<typename A::Element>;
    { alg.sum(x, x) } -> std::convertible_to<typename A::Element>;
    { alg.homogeneous_parts(x) } -> std::convertible_to<std::vector<std::pair<int, typename A::Element>>>;
};

// Letters are opaque homogeneous elements interned on demand. Keeps the
// symmetric-word computations polynomial even when the underlying algebra
// has a large basis: products collapse to a single fresh letter instead of
// expanding into basis monomials.
template <PoolAlgebra A>
class PoolLetters final : public LetterSystem {
public:
    using Element = typename A::Element;

    explicit PoolLetters(const A& alg) : alg_(&alg) {}

    const A& algebra() const { return *alg_; }

    // x must be homogeneous of the given degree; zero is not a letter.
    int add(Element x, int deg) {
        pool_.push_back(std::move(x));
        degrees_.push_back(deg);
        return static_cast<int>(pool_.size()) - 1;
    }

    // Splits into homogeneous parts, one letter each.
    LinComb intern(const Element& x) {
        LinComb r;
        for (auto& [deg, part] : alg_->homogeneous_parts(x))
            r[add(std::move(part), deg)] = LaurentH(1);
        return r;
    }

    const Element& element(int letter) const { return pool_.at(letter); }

    // Empty combinations resolve to a default Element; callers that need a
    // typed zero should seed the pool and check emptiness first.
    Element resolve(const LinComb& x) const {
        auto it = x.begin();
        if (it == x.end()) return Element{};
        Element r = alg_->scaled(pool_.at(it->first), it->second);
        for (++it; it != x.end(); ++it)
            r = alg_->sum(r, alg_->scaled(pool_.at(it->first), it->second));
        return r;
    }

    int degree(int letter) const override { return degrees_.at(letter); }

    LinComb product(int a, int b) override {
        auto it = product_memo_.find({a, b});
        if (it != product_memo_.end()) return it->second;
        Element p = alg_->product(pool_.at(a), pool_.at(b));
        LinComb r;
        if (!alg_->is_zero(p))
            r[add(std::move(p), degrees_[a] + degrees_[b])] = LaurentH(1);
        product_memo_.emplace(std::make_pair(a, b), r);
        return r;
    }

    LinComb differential(int letter) override {
        auto it = diff_memo_.find(letter);
        if (it != diff_memo_.end()) return it->second;
        Element d = alg_->differential(pool_.at(letter));
        LinComb r;
        if (!alg_->is_zero(d))
            r[add(std::move(d), degrees_[letter] + alg_->differential_degree())] = LaurentH(1);
        diff_memo_.emplace(letter, r);
        return r;
    }

    int differential_degree() const override { return alg_->differential_degree(); }

private:
    const A* alg_;
    std::vector<Element> pool_;
    std::vector<int> degrees_;
    std::map<std::pair<int, int>, LinComb> product_memo_;
    std::map<int, LinComb> diff_memo_;
};

// Grade-preserving linear map between two letter systems.
class BarMap {
public:
    virtual ~BarMap() = default;
    virtual LinComb apply(int source_letter) = 0;
    LinComb apply(const LinComb& x);
};

} // namespace latcalc
