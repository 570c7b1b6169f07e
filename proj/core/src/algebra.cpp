#include "latcalc/algebra.hpp"
#include "latcalc/random_gen.hpp"

#include <nlohmann/json.hpp>

#include <bit>

namespace latcalc {

void add_scaled(LinComb& acc, const LinComb& x, const LaurentH& c) {
    if (c.is_zero()) return;
    for (const auto& [i, v] : x) {
        auto it = acc.find(i);
        if (it == acc.end()) {
            LaurentH w = v * c;
            if (!w.is_zero()) acc.emplace(i, std::move(w));
        } else {
            it->second += v * c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

LinComb scaled(const LinComb& x, const LaurentH& c) {
    LinComb r;
    add_scaled(r, x, c);
    return r;
}

LinComb operator+(const LinComb& a, const LinComb& b) {
    LinComb r = a;
    add_scaled(r, b, LaurentH(1));
    return r;
}

LinComb operator-(const LinComb& a, const LinComb& b) {
    LinComb r = a;
    add_scaled(r, b, LaurentH(-1));
    return r;
}

GradedBasisAlgebra::GradedBasisAlgebra(std::vector<int> degrees, int diff_degree)
    : degrees_(std::move(degrees)), diff_degree_(diff_degree) {
    if (diff_degree_ != 1 && diff_degree_ != -1)
        throw std::invalid_argument("differential degree must be +1 or -1");
}

void GradedBasisAlgebra::set_product(int i, int j, LinComb value) {
    if (value.empty()) products_.erase({i, j});
    else products_[{i, j}] = std::move(value);
}

void GradedBasisAlgebra::set_differential(int i, LinComb value) {
    if (value.empty()) differential_.erase(i);
    else differential_[i] = std::move(value);
}

const LinComb& GradedBasisAlgebra::product(int i, int j) const {
    static const LinComb empty;
    auto it = products_.find({i, j});
    return it == products_.end() ? empty : it->second;
}

const LinComb& GradedBasisAlgebra::differential(int i) const {
    static const LinComb empty;
    auto it = differential_.find(i);
    return it == differential_.end() ? empty : it->second;
}

LinComb GradedBasisAlgebra::product(const LinComb& x, const LinComb& y) const {
    LinComb r;
    for (const auto& [i, ci] : x)
        for (const auto& [j, cj] : y)
            add_scaled(r, product(i, j), ci * cj);
    return r;
}

LinComb GradedBasisAlgebra::differential(const LinComb& x) const {
    LinComb r;
    for (const auto& [i, c] : x) add_scaled(r, differential(i), c);
    return r;
}

std::pair<int, bool> GradedBasisAlgebra::homogeneous_degree(const LinComb& x) const {
    if (x.empty()) return {0, true};
    int d = degree(x.begin()->first);
    for (const auto& [i, c] : x)
        if (degree(i) != d) throw std::invalid_argument("combination is not homogeneous");
    return {d, false};
}

std::vector<GradedBasisAlgebra::Violation> GradedBasisAlgebra::check_axioms() const {
    std::vector<Violation> bad;
    const int dim = basis_size();
    auto degree_of = [&](const LinComb& x, int expected) {
        for (const auto& [b, c] : x)
            if (degrees_[b] != expected) return false;
        return true;
    };
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            if (!degree_of(product(i, j), degrees_[i] + degrees_[j]))
                bad.push_back({"product-grading", {i, j}});
            int s = (degrees_[i] * degrees_[j]) % 2 ? -1 : 1;
            if (product(i, j) != scaled(product(j, i), LaurentH(s)))
                bad.push_back({"commutativity", {i, j}});
        }
    }
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            for (int k = 0; k < dim; ++k) {
                LinComb left = product(product(i, j), LinComb{{k, LaurentH(1)}});
                LinComb right = product(LinComb{{i, LaurentH(1)}}, product(j, k));
                if (left != right) bad.push_back({"associativity", {i, j, k}});
            }
    for (int i = 0; i < dim; ++i) {
        if (!degree_of(differential(i), degrees_[i] + diff_degree_))
            bad.push_back({"differential-grading", {i}});
        if (!differential(differential(i)).empty())
            bad.push_back({"differential-square", {i}});
    }
    return bad;
}

nlohmann::json GradedBasisAlgebra::to_json() const {
    nlohmann::json products = nlohmann::json::array();
    auto comb = [](const LinComb& x) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& [b, c] : x) arr.push_back({b, c.to_json()});
        return arr;
    };
    for (const auto& [key, value] : products_)
        products.push_back({key.first, key.second, comb(value)});
    nlohmann::json differential = nlohmann::json::array();
    for (const auto& [i, value] : differential_)
        differential.push_back({i, comb(value)});
    return nlohmann::json{
        {"basis_degrees", degrees_},
        {"diff_degree", diff_degree_},
        {"products", products},
        {"differential", differential},
    };
}

GradedBasisAlgebra GradedBasisAlgebra::from_json(const nlohmann::json& j) {
    GradedBasisAlgebra alg(j.at("basis_degrees").get<std::vector<int>>(),
                           j.at("diff_degree").get<int>());
    auto comb = [&](const nlohmann::json& arr) {
        LinComb x;
        for (const auto& term : arr) {
            int b = term.at(0).get<int>();
            if (b < 0 || b >= alg.basis_size()) throw std::invalid_argument("basis index out of range");
            LaurentH c = LaurentH::from_json(term.at(1));
            if (!c.is_zero()) x[b] = c;
        }
        return x;
    };
    for (const auto& entry : j.at("products"))
        alg.set_product(entry.at(0).get<int>(), entry.at(1).get<int>(), comb(entry.at(2)));
    for (const auto& entry : j.at("differential"))
        alg.set_differential(entry.at(0).get<int>(), comb(entry.at(1)));
    return alg;
}

int exterior_rank(std::uint32_t subset) { return std::popcount(subset); }

namespace {

// Sign for merging two ascending generator lists: each pair (s, t) with
// s in S, t in T, s > t contributes (-1)^{d_s d_t}.
int merge_sign(std::uint32_t s, std::uint32_t t, const std::vector<int>& gen_degrees) {
    int sign = 1;
    for (std::uint32_t i = 0; i < gen_degrees.size(); ++i) {
        if (!(s >> i & 1u)) continue;
        for (std::uint32_t j = 0; j < i; ++j)
            if (t >> j & 1u && gen_degrees[i] % 2 && gen_degrees[j] % 2) sign = -sign;
    }
    return sign;
}

} // namespace

GradedBasisAlgebra exterior_algebra(const std::vector<int>& generator_degrees) {
    const int g = static_cast<int>(generator_degrees.size());
    if (g > 20) throw std::invalid_argument("too many generators");
    const std::uint32_t dim = 1u << g;
    std::vector<int> degrees(dim, 0);
    for (std::uint32_t s = 0; s < dim; ++s)
        for (int i = 0; i < g; ++i)
            if (s >> i & 1u) degrees[s] += generator_degrees[i];
    GradedBasisAlgebra alg(degrees, 1);
    for (std::uint32_t s = 0; s < dim; ++s)
        for (std::uint32_t t = 0; t < dim; ++t) {
            if (s & t) continue;
            int sign = merge_sign(s, t, generator_degrees);
            alg.set_product(static_cast<int>(s), static_cast<int>(t),
                            LinComb{{static_cast<int>(s | t), LaurentH(sign)}});
        }
    return alg;
}

namespace {

// Unipotent degree-preserving change of basis; strictly triangular part maps
// each basis element into earlier same-degree elements.
struct Unipotent {
    std::map<int, LinComb> strict; // image of e_i minus e_i itself

    LinComb apply(const LinComb& x) const {
        LinComb r = x;
        for (const auto& [i, c] : x) {
            auto it = strict.find(i);
            if (it != strict.end()) add_scaled(r, it->second, c);
        }
        return r;
    }

    LinComb apply_inverse(const LinComb& x) const {
        // Neumann series; strictness in the basis order makes it finite.
        LinComb r = x;
        LinComb layer = x;
        while (true) {
            LinComb next;
            for (const auto& [i, c] : layer) {
                auto it = strict.find(i);
                if (it != strict.end()) add_scaled(next, it->second, c);
            }
            if (next.empty()) break;
            add_scaled(r, next, LaurentH(-1));
            layer = scaled(next, LaurentH(-1));
        }
        return r;
    }
};

} // namespace

GradedBasisAlgebra random_graded_algebra(Rng& rng, int max_generators, int diff_degree) {
    const int g = std::max(2, rng.uniform(2, std::max(2, max_generators)));
    std::vector<int> gen_degrees(g);
    // Generator 0 carries the differential degree so an odd element of that
    // degree always exists; the rest are mixed.
    gen_degrees[0] = diff_degree;
    static const int choices[5] = {-1, 1, 2, 2, 3};
    for (int i = 1; i < g; ++i) gen_degrees[i] = choices[rng.uniform(0, 4)];

    GradedBasisAlgebra alg = exterior_algebra(gen_degrees);
    const int dim = alg.basis_size();

    // theta: random homogeneous element of the differential degree. Degree
    // +1/-1 is odd, so theta * theta = 0 and multiplication by theta is a
    // square-zero degree-shift map, strictly triangular in monomial length.
    LinComb theta{{1, LaurentH(rng.nonzero_rational())}}; // subset {0} has index 1
    for (int b = 2; b < dim; ++b)
        if (alg.degree(b) == diff_degree && rng.uniform(0, 2) == 0)
            theta[b] = LaurentH(rng.nonzero_rational());

    // Conjugate by a random unipotent degree-0 map to decouple the
    // differential from the multiplication table.
    Unipotent u;
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (alg.degree(i) == alg.degree(j) && rng.uniform(0, 3) == 0) {
                Rational c = rng.rational(2, 2);
                if (c != 0) u.strict[j][i] = LaurentH(c);
            }

    GradedBasisAlgebra result(alg.degrees(), diff_degree);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            result.set_product(i, j, alg.product(i, j));
    for (int i = 0; i < dim; ++i) {
        LinComb x = u.apply_inverse(LinComb{{i, LaurentH(1)}});
        LinComb y = alg.product(theta, x);
        result.set_differential(i, u.apply(y));
    }
    return result;
}

GradedBasisAlgebra random_derivation_algebra(Rng& rng, int generator_pairs, int diff_degree) {
    const int g = 2 * generator_pairs;
    std::vector<int> gen_degrees(g);
    for (int p = 0; p < generator_pairs; ++p) {
        // The source generator must sit in odd degree: x^2 = 0 forces
        // d(x)x + (-1)^{|x|} x d(x) = 0, which fails for even |x|.
        int d = 2 * rng.uniform(0, 1) + 1;
        gen_degrees[2 * p] = d;
        gen_degrees[2 * p + 1] = d + diff_degree;
    }
    GradedBasisAlgebra alg = exterior_algebra(gen_degrees);
    const int dim = alg.basis_size();
    GradedBasisAlgebra result(alg.degrees(), diff_degree);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            result.set_product(i, j, alg.product(i, j));

    // Derivation with d(x_{2p}) = c_p x_{2p+1}, d(x_{2p+1}) = 0, extended by
    // the graded Leibniz rule over the monomial basis.
    std::vector<Rational> coeff(generator_pairs);
    for (auto& c : coeff) c = rng.nonzero_rational();
    for (std::uint32_t s = 1; s < static_cast<std::uint32_t>(dim); ++s) {
        LinComb image;
        int sign = 1; // parity of the degree sum of the letters before slot i
        for (int i = 0; i < g; ++i) {
            if (!(s >> i & 1u)) continue;
            if (i % 2 == 0 && !(s >> (i + 1) & 1u)) {
                // x_{i+1} lands in the slot of x_i and the monomial stays
                // sorted because i+1 is not present, so only the Leibniz
                // prefix sign enters.
                std::uint32_t t = (s & ~(1u << i)) | (1u << (i + 1));
                add_scaled(image, LinComb{{static_cast<int>(t), LaurentH(1)}},
                           LaurentH(coeff[i / 2] * sign));
            }
            if (gen_degrees[i] % 2) sign = -sign;
        }
        result.set_differential(static_cast<int>(s), image);
    }
    return result;
}

GradedBasisAlgebra tensor_product_algebra(const GradedBasisAlgebra& a, const GradedBasisAlgebra& b) {
    if (a.differential_degree() != b.differential_degree())
        throw std::invalid_argument("differential degrees differ");
    const int da = a.basis_size(), db = b.basis_size();
    std::vector<int> degrees(da * db);
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) degrees[i * db + j] = a.degree(i) + b.degree(j);
    GradedBasisAlgebra t(degrees, a.differential_degree());

    auto pair_comb = [&](const LinComb& xa, const LinComb& xb) {
        LinComb r;
        for (const auto& [i, ci] : xa)
            for (const auto& [j, cj] : xb)
                add_scaled(r, LinComb{{i * db + j, LaurentH(1)}}, ci * cj);
        return r;
    };

    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j)
            for (int k = 0; k < da; ++k)
                for (int l = 0; l < db; ++l) {
                    int sign = (b.degree(j) * a.degree(k)) % 2 ? -1 : 1;
                    LinComb value = pair_comb(a.product(i, k), b.product(j, l));
                    t.set_product(i * db + j, k * db + l, scaled(value, LaurentH(sign)));
                }
    for (int i = 0; i < da; ++i)
        for (int j = 0; j < db; ++j) {
            LinComb image = pair_comb(a.differential(i), LinComb{{j, LaurentH(1)}});
            int sign = a.degree(i) % 2 ? -1 : 1;
            add_scaled(image, pair_comb(LinComb{{i, LaurentH(1)}}, b.differential(j)), LaurentH(sign));
            t.set_differential(i * db + j, image);
        }
    return t;
}

} // namespace latcalc
