#include "latcalc/multiscale.hpp"

#include "latcalc/brackets.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <utility>

namespace latcalc {

namespace {

int floor_div(int a, int b) {
    int q = a / b, r = a % b;
    return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}

int ceil_div(int a, int b) { return -floor_div(-a, b); }

bool even_coord(int c) { return ((c % 2) + 2) % 2 == 0; }

void validate_pair(const ScalePair& pair) {
    if (pair.coarse.n != pair.fine.n || pair.coarse.mode != pair.fine.mode ||
        pair.coarse.scale.formal != pair.fine.scale.formal ||
        pair.coarse.scale.log2 != pair.fine.scale.log2 + 1 ||
        (pair.fine.mode == Mode::periodic && pair.fine.N != 2 * pair.coarse.N))
        throw std::invalid_argument("inconsistent scale pair");
}

const char* role_name(Role role) { return role == Role::chain ? "chain" : "cochain"; }

// Fine coordinates under a coarse cell along one axis: the shifted vertex
// for an unspanned axis, the two half cells for a spanned one.
std::vector<int> fine_choices(bool spanned, int c) {
    int a = 2 * c;
    if (!spanned) return {even_coord(c) ? a : a - 1};
    if (even_coord(c)) return {a, a - 2};
    return {a - 1, a + 1};
}

nlohmann::json valuation_json(const LatticeElement& x) {
    Valuation v = element_valuation(x);
    return v.is_finite() ? nlohmann::json(v.value()) : nlohmann::json();
}

} // namespace

ScalePair ScalePair::from_fine(const LatticeSpec& fine) {
    LatticeSpec coarse = fine;
    coarse.scale.log2 = fine.scale.log2 + 1;
    if (fine.mode == Mode::periodic) {
        if (fine.N % 2 != 0)
            throw std::invalid_argument("periodic cell count must be even to coarsen");
        coarse.N = fine.N / 2;
    }
    return {fine, coarse};
}

WindowBounds crumble_window(const WindowBounds& coarse) {
    WindowBounds w = coarse;
    for (auto& b : w) b = {2 * b[0], 2 * b[1] - 1};
    return w;
}

WindowBounds integrate_window(const WindowBounds& fine) {
    WindowBounds w = fine;
    for (auto& b : w) b = {ceil_div(b[0] + 2, 2), floor_div(b[1] - 1, 2)};
    return w;
}

LatticeElement crumble(const ScalePair& pair, const LatticeElement& coarse_chain) {
    validate_pair(pair);
    if (coarse_chain.spec() != pair.coarse || coarse_chain.role() != Role::chain)
        throw std::invalid_argument("crumble expects a chain on the coarse lattice");
    WindowBounds fw;
    if (pair.fine.mode == Mode::window) fw = crumble_window(coarse_chain.window());
    const bool windowed = pair.fine.mode == Mode::window;
    LatticeElement out(pair.fine, Role::chain, std::move(fw));
    const int n = pair.fine.n;
    for (const auto& [cell, coeff] : coarse_chain.entries()) {
        std::vector<std::vector<int>> choices(n);
        for (int u = 0; u < n; ++u)
            choices[u] = fine_choices((cell.type >> u) & 1u, cell.center[u]);
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
            Cell fc{cell.type, std::vector<int>(n)};
            bool inside = true;
            for (int u = 0; u < n; ++u) {
                fc.center[u] = choices[u][idx[u]];
                if (windowed && (fc.center[u] < out.window()[u][0] ||
                                 fc.center[u] > out.window()[u][1]))
                    inside = false;
            }
            // outside cells are partial sums: a fine cell is determined only
            // when both coarse cells meeting it lie inside the coarse window
            if (inside) out.add_entry(std::move(fc), coeff);
            int u = 0;
            while (u < n && ++idx[u] == choices[u].size()) {
                idx[u] = 0;
                ++u;
            }
            if (u == n) break;
        }
    }
    return out;
}

LatticeElement integrate(const ScalePair& pair, const LatticeElement& fine_cochain) {
    validate_pair(pair);
    if (fine_cochain.spec() != pair.fine || fine_cochain.role() != Role::cochain)
        throw std::invalid_argument("integrate expects a cochain on the fine lattice");
    const int n = pair.fine.n;
    WindowBounds cw;
    if (pair.fine.mode == Mode::window) cw = integrate_window(fine_cochain.window());
    LatticeElement out(pair.coarse, Role::cochain, cw);
    WindowBounds box = cw;
    if (pair.fine.mode == Mode::periodic)
        box.assign(n, {0, pair.coarse.period() - 1});

    std::set<std::uint32_t> types;
    for (const auto& [cell, coeff] : fine_cochain.entries()) types.insert(cell.type);

    for (std::uint32_t type : types) {
        const LaurentH weight(pow2(-std::popcount(type)));
        std::vector<int> c(n);
        for (int u = 0; u < n; ++u) c[u] = box[u][0];
        for (;;) {
            std::vector<std::vector<int>> choices(n);
            for (int u = 0; u < n; ++u)
                choices[u] = fine_choices((type >> u) & 1u, c[u]);
            LaurentH val;
            std::vector<std::size_t> idx(n, 0);
            for (;;) {
                Cell fc{type, std::vector<int>(n)};
                for (int u = 0; u < n; ++u) fc.center[u] = choices[u][idx[u]];
                val += fine_cochain.entry(fc);
                int u = 0;
                while (u < n && ++idx[u] == choices[u].size()) {
                    idx[u] = 0;
                    ++u;
                }
                if (u == n) break;
            }
            val = val * weight;
            if (!val.is_zero()) out.add_entry(Cell{type, c}, val);
            int u = 0;
            while (u < n && ++c[u] > box[u][1]) {
                c[u] = box[u][0];
                ++u;
            }
            if (u == n) break;
        }
    }
    return out;
}

// --- generic cumulants -------------------------------------------------------

SymElement symmetric_extension(const SymElement& x, BarMap& bar, const LetterSystem& dst) {
    SymElement out;
    for (const auto& [w, c] : x.terms()) {
        std::vector<LinComb> factors;
        factors.reserve(w.letters.size());
        for (int l : w.letters) factors.push_back(bar.apply(l));
        out += wedge_expand(factors, dst).scaled(c);
    }
    return out;
}

SymElement sigma_composed(const SymElement& x, BarMap& bar, LetterSystem& src, LetterSystem& dst) {
    return tau_inv(symmetric_extension(tau(x, src), bar, dst), dst);
}

LinComb sigma_direct(const Word& w, BarMap& bar, LetterSystem& src, LetterSystem& dst) {
    std::vector<int> degrees;
    degrees.reserve(w.letters.size());
    for (int l : w.letters) degrees.push_back(src.degree(l));
    LinComb out;
    for_each_ordered_partition(degrees, [&](const std::vector<std::vector<int>>& blocks, int sign) {
        const int r = static_cast<int>(blocks.size());
        LinComb acc;
        bool first = true;
        for (const auto& block : blocks) {
            Word bw;
            for (int p : block) bw.letters.push_back(w.letters[p]);
            LinComb barred = bar.apply(tau1(bw, src));
            if (first) {
                acc = std::move(barred);
                first = false;
            } else {
                acc = dst.product(acc, barred);
            }
            if (acc.empty()) return;
        }
        add_scaled(out, acc, LaurentH(Rational((r % 2 == 1 ? 1 : -1) * sign, r)));
    });
    return out;
}

LinComb sigma_recursive(const Word& w, BarMap& bar, LetterSystem& src, LetterSystem& dst) {
    const int k = w.size();
    if (k == 0) throw std::invalid_argument("empty word");
    if (k == 1) return bar.apply(w.letters[0]);
    const int u = w.letters[0], v = w.letters[1];
    const std::vector<int> rest(w.letters.begin() + 2, w.letters.end());
    const int m = static_cast<int>(rest.size());
    std::vector<int> rest_degs;
    rest_degs.reserve(rest.size());
    for (int l : rest) rest_degs.push_back(src.degree(l));
    const int dv = src.degree(v);

    LinComb out;
    for (const auto& [merged, c] : src.product(u, v)) {
        std::vector<int> letters{merged};
        letters.insert(letters.end(), rest.begin(), rest.end());
        if (auto cw = canonicalize(std::move(letters), src))
            add_scaled(out, sigma_recursive(cw->word, bar, src, dst), c * LaurentH(cw->sign));
    }
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        int sign = subset_sign(rest_degs, mask);
        int dj = 0;
        std::vector<int> letters_a{u}, letters_b{v};
        for (int i = 0; i < m; ++i) {
            if ((mask >> i) & 1u) {
                letters_a.push_back(rest[i]);
                dj += rest_degs[i];
            } else {
                letters_b.push_back(rest[i]);
            }
        }
        // moving rest_J across v costs (-1)^{|v| deg(rest_J)}
        if ((dj & 1) && (dv & 1)) sign = -sign;
        auto ca = canonicalize(std::move(letters_a), src);
        if (!ca) continue;
        auto cb = canonicalize(std::move(letters_b), src);
        if (!cb) continue;
        LinComb a = sigma_recursive(ca->word, bar, src, dst);
        if (a.empty()) continue;
        LinComb b = sigma_recursive(cb->word, bar, src, dst);
        if (b.empty()) continue;
        add_scaled(out, dst.product(a, b), LaurentH(-sign * ca->sign * cb->sign));
    }
    return out;
}

SymElement intertwine_full_defect(const SymElement& x, BarMap& bar, LetterSystem& src,
                                  LetterSystem& dst) {
    return sigma_composed(taylor_coderivation(x, src), bar, src, dst) -
           taylor_coderivation(sigma_composed(x, bar, src, dst), dst);
}

LinComb intertwine_defect(const Word& w, BarMap& bar, LetterSystem& src, LetterSystem& dst) {
    return project_length1(intertwine_full_defect(SymElement::single(w), bar, src, dst));
}

MatrixBarMap::MatrixBarMap(const GradedBasisAlgebra& src, const GradedBasisAlgebra& dst,
                           std::vector<LinComb> image)
    : image_(std::move(image)) {
    if (static_cast<int>(image_.size()) != src.basis_size())
        throw std::invalid_argument("image size must match the source basis");
    for (int i = 0; i < src.basis_size(); ++i)
        for (const auto& [j, c] : image_[i])
            if (dst.degree(j) != src.degree(i))
                throw std::invalid_argument("bar map must preserve degree");
}

LinComb MatrixBarMap::apply(int source_letter) { return image_.at(source_letter); }

MatrixBarMap random_grade_map(Rng& rng, const GradedBasisAlgebra& src,
                              const GradedBasisAlgebra& dst) {
    std::vector<LinComb> image(src.basis_size());
    for (int i = 0; i < src.basis_size(); ++i)
        for (int j = 0; j < dst.basis_size(); ++j)
            if (dst.degree(j) == src.degree(i) && rng.flip())
                image[i][j] = LaurentH(rng.nonzero_rational());
    return MatrixBarMap(src, dst, std::move(image));
}

MatrixBarMap random_closed_multiplier_map(Rng& rng, const GradedBasisAlgebra& alg) {
    if (alg.degree(0) != 0)
        throw std::invalid_argument("basis element 0 must be the unit");
    LinComb z{{0, LaurentH(1)}};
    for (int i = 0; i < alg.basis_size(); ++i)
        if (alg.degree(i) == -alg.differential_degree() && rng.flip())
            add_scaled(z, alg.differential(i), LaurentH(rng.rational()));
    std::vector<LinComb> image(alg.basis_size());
    for (int i = 0; i < alg.basis_size(); ++i)
        image[i] = alg.product(z, LinComb{{i, LaurentH(1)}});
    return MatrixBarMap(alg, alg, std::move(image));
}

LinComb tensor_cumulant(const Word& w, const GradedBasisAlgebra& v_src,
                        const GradedBasisAlgebra& w_src, const GradedBasisAlgebra& v_dst,
                        const GradedBasisAlgebra& w_dst, BarMap& bar_v, BarMap& bar_w) {
    const int k = w.size();
    const int wd_src = w_src.basis_size();
    const int wd_dst = w_dst.basis_size();
    std::vector<int> vi(k), wi(k);
    for (int p = 0; p < k; ++p) {
        vi[p] = w.letters[p] / wd_src;
        wi[p] = w.letters[p] % wd_src;
    }
    BasisLetters lv(v_src), lw(w_src), lvd(v_dst), lwd(w_dst);
    // degrees of the 2k symbols v_1, w_1, ..., v_k, w_k
    std::vector<int> deg2(2 * k);
    for (int p = 0; p < k; ++p) {
        deg2[2 * p] = v_src.degree(vi[p]);
        deg2[2 * p + 1] = w_src.degree(wi[p]);
    }

    LinComb out;
    const std::vector<int> zero_degs(k, 0);
    for_each_ordered_partition(zero_degs, [&](const std::vector<std::vector<int>>& blocks, int) {
        const int r = static_cast<int>(blocks.size());
        // sign of presenting the v letters block by block, then the w letters
        std::vector<int> perm;
        perm.reserve(2 * k);
        for (const auto& block : blocks)
            for (int p : block) perm.push_back(2 * p);
        for (const auto& block : blocks)
            for (int p : block) perm.push_back(2 * p + 1);
        const int sign = koszul_sign(perm, deg2);

        LinComb vacc;
        bool first = true;
        for (const auto& block : blocks) {
            std::vector<int> letters;
            letters.reserve(block.size());
            for (int p : block) letters.push_back(vi[p]);
            auto cw = canonicalize(std::move(letters), lv);
            if (!cw) {
                vacc.clear();
                break;
            }
            LinComb s = scaled(sigma_direct(cw->word, bar_v, lv, lvd), LaurentH(cw->sign));
            if (first) {
                vacc = std::move(s);
                first = false;
            } else {
                vacc = v_dst.product(vacc, s);
            }
            if (vacc.empty()) break;
        }
        if (vacc.empty()) return;

        std::vector<LinComb> slots;
        slots.reserve(blocks.size());
        for (const auto& block : blocks) {
            Word bw;
            for (int p : block) bw.letters.push_back(wi[p]);
            slots.push_back(tau1(bw, lw));
        }
        LinComb wacc;
        const SymElement expanded = wedge_expand(slots, lw);
        for (const auto& [word, c] : expanded.terms())
            add_scaled(wacc, sigma_direct(word, bar_w, lw, lwd), c);
        if (wacc.empty()) return;

        Rational inv_rfact(1);
        for (int t = 2; t <= r; ++t) inv_rfact /= t;
        LinComb paired;
        for (const auto& [a, ca] : vacc)
            for (const auto& [b, cb] : wacc) paired[a * wd_dst + b] = ca * cb;
        add_scaled(out, paired, LaurentH(inv_rfact * sign));
    });
    return out;
}

MatrixBarMap tensor_bar_map(const GradedBasisAlgebra& src_tensor,
                            const GradedBasisAlgebra& dst_tensor, int w_src_dim, int w_dst_dim,
                            BarMap& bar_v, BarMap& bar_w) {
    std::vector<LinComb> image(src_tensor.basis_size());
    for (int idx = 0; idx < src_tensor.basis_size(); ++idx) {
        const LinComb bv = bar_v.apply(idx / w_src_dim);
        const LinComb bw = bar_w.apply(idx % w_src_dim);
        LinComb& row = image[idx];
        for (const auto& [a, ca] : bv)
            for (const auto& [b, cb] : bw) row[a * w_dst_dim + b] = ca * cb;
    }
    return MatrixBarMap(src_tensor, dst_tensor, std::move(image));
}

// --- lattice-level cumulants -------------------------------------------------

namespace {

std::function<LatticeElement(const LatticeElement&)> inter_scale_map(const ScalePair& pair,
                                                                     Role role) {
    if (role == Role::cochain)
        return [pair](const LatticeElement& e) { return integrate(pair, e); };
    return [pair](const LatticeElement& e) { return crumble(pair, e); };
}

// Cochains use each lattice's own coboundary/(2 step); chains use the
// unnormalized boundary, the normalization for which crumble is a chain map.
LatticeOps ops_for(Role role) {
    if (role == Role::cochain)
        return LatticeOps{[](const LatticeElement& e) { return coboundary_half_step(e); }, 1};
    return LatticeOps{[](const LatticeElement& e) { return boundary(e); }, -1};
}

class PoolBar final : public BarMap {
public:
    PoolBar(PoolLetters<LatticeOps>& src, PoolLetters<LatticeOps>& dst,
            std::function<LatticeElement(const LatticeElement&)> map)
        : src_(&src), dst_(&dst), map_(std::move(map)) {}

    LinComb apply(int source_letter) override {
        auto it = memo_.find(source_letter);
        if (it != memo_.end()) return it->second;
        LinComb r = dst_->intern(map_(src_->element(source_letter)));
        memo_.emplace(source_letter, r);
        return r;
    }

private:
    PoolLetters<LatticeOps>* src_;
    PoolLetters<LatticeOps>* dst_;
    std::function<LatticeElement(const LatticeElement&)> map_;
    std::map<int, LinComb> memo_;
};

struct LatticePools {
    LatticeOps src_ops;
    LatticeOps dst_ops;
    PoolLetters<LatticeOps> src;
    PoolLetters<LatticeOps> dst;
    std::function<LatticeElement(const LatticeElement&)> map;
    PoolBar bar;

    LatticePools(const ScalePair& pair, Role role)
        : src_ops(ops_for(role)), dst_ops(ops_for(role)), src(src_ops), dst(dst_ops),
          map(inter_scale_map(pair, role)), bar(src, dst, map) {}
};

// Multilinear expansion of a word-level evaluator over the homogeneous parts
// of the arguments.
LatticeElement expand_words(const ScalePair& pair, Role role,
                            const std::vector<LatticeElement>& args,
                            const std::function<LinComb(const Word&, LatticePools&)>& eval) {
    validate_pair(pair);
    if (args.empty()) throw std::invalid_argument("at least one argument required");
    const LatticeSpec& src_spec = role == Role::cochain ? pair.fine : pair.coarse;
    for (const auto& x : args)
        if (x.spec() != src_spec || x.role() != role)
            throw std::invalid_argument("argument lattice mismatch");

    LatticePools pools(pair, role);

    // typed zero carrying the window every term shares
    LatticeElement prod = args[0];
    for (std::size_t j = 1; j < args.size(); ++j) prod = wedge(prod, args[j]);
    LatticeElement acc = scale(pools.map(prod), LaurentH(0));

    std::vector<LinComb> interned;
    interned.reserve(args.size());
    for (const auto& x : args) {
        interned.push_back(pools.src.intern(x));
        if (interned.back().empty()) return acc;
    }
    std::vector<LinComb::const_iterator> its;
    for (const auto& lc : interned) its.push_back(lc.begin());
    for (;;) {
        std::vector<int> letters;
        LaurentH coeff(1);
        for (std::size_t j = 0; j < interned.size(); ++j) {
            letters.push_back(its[j]->first);
            coeff = coeff * its[j]->second;
        }
        if (auto cw = canonicalize(std::move(letters), pools.src)) {
            LinComb res = eval(cw->word, pools);
            if (!res.empty())
                acc = add(acc, scale(pools.dst.resolve(res), coeff * LaurentH(cw->sign)));
        }
        std::size_t j = 0;
        while (j < interned.size() && ++its[j] == interned[j].end()) {
            its[j] = interned[j].begin();
            ++j;
        }
        if (j == interned.size()) break;
    }
    return acc;
}

} // namespace

LatticeElement lattice_sigma(SigmaRoute route, const ScalePair& pair, Role role,
                             const std::vector<LatticeElement>& args) {
    return expand_words(pair, role, args, [route](const Word& w, LatticePools& p) -> LinComb {
        switch (route) {
        case SigmaRoute::direct:
            return sigma_direct(w, p.bar, p.src, p.dst);
        case SigmaRoute::recursive:
            return sigma_recursive(w, p.bar, p.src, p.dst);
        default:
            return project_length1(sigma_composed(SymElement::single(w), p.bar, p.src, p.dst));
        }
    });
}

LatticeElement lattice_intertwine_defect(const ScalePair& pair, Role role,
                                         const std::vector<LatticeElement>& args) {
    return expand_words(pair, role, args, [](const Word& w, LatticePools& p) {
        return intertwine_defect(w, p.bar, p.src, p.dst);
    });
}

LatticeElement intertwine_order2_longhand(const ScalePair& pair, const LatticeElement& v,
                                          const LatticeElement& w) {
    validate_pair(pair);
    if (v.spec() != pair.fine || w.spec() != pair.fine || v.role() != Role::cochain ||
        w.role() != Role::cochain)
        throw std::invalid_argument("longhand check expects fine cochains");
    int dim_v = -1;
    for (const auto& [cell, c] : v.entries()) {
        if (dim_v < 0) dim_v = cell.dim();
        else if (dim_v != cell.dim())
            throw std::invalid_argument("v must be homogeneous");
    }
    if (dim_v < 0) dim_v = 0;

    auto bar = [&](const LatticeElement& x) { return integrate(pair, x); };
    auto s2 = [&](const LatticeElement& a, const LatticeElement& b) {
        return sub(bar(wedge(a, b)), wedge(bar(a), bar(b)));
    };
    // closed 2-bracket of coboundary/(2 step) on the element's own lattice,
    // already carrying its full normalization
    auto bracket2 = [](const LatticeElement& a, const LatticeElement& b) {
        return delta_bracket_closed({a, b});
    };

    LatticeElement lhs = sub(bar(bracket2(v, w)), bracket2(bar(v), bar(w)));
    LatticeElement rhs =
        sub(coboundary_half_step(s2(v, w)),
            add(s2(coboundary_half_step(v), w),
                scale(s2(v, coboundary_half_step(w)), LaurentH(dim_v % 2 == 0 ? 1 : -1))));
    return sub(lhs, rhs);
}

nlohmann::json sigma_divisibility_check(const ScalePair& pair, int k_max,
                                        const std::vector<PolynomialField>& samples,
                                        const WindowBounds& fine_window, Role role) {
    validate_pair(pair);
    if (!pair.fine.scale.formal)
        throw std::invalid_argument("sigma divisibility requires the formal scale");
    if (pair.fine.mode != Mode::window)
        throw std::invalid_argument("sigma divisibility requires window mode");
    if (samples.empty()) throw std::invalid_argument("no samples");

    std::vector<LatticeElement> sampled;
    sampled.reserve(samples.size());
    if (role == Role::cochain) {
        for (const auto& f : samples)
            sampled.push_back(sample_polynomial(pair.fine, Role::cochain, f, fine_window));
    } else {
        const WindowBounds cw = integrate_window(fine_window);
        for (const auto& f : samples)
            sampled.push_back(sample_polynomial(pair.coarse, Role::chain, f, cw));
    }

    const bool assert_bound = role == Role::cochain;
    const int m = static_cast<int>(sampled.size());
    nlohmann::json rows = nlohmann::json::array();
    bool all = true;
    for (int k = 2; k <= k_max; ++k) {
        for (int s = 0; s < m; ++s) {
            std::vector<LatticeElement> args;
            args.reserve(k);
            for (int j = 0; j < k; ++j) args.push_back(sampled[(s + j) % m]);
            LatticeElement sk = lattice_sigma(SigmaRoute::direct, pair, role, args);
            Valuation observed = element_valuation(sk);
            bool point_zero = homogeneous_part(sk, 0).is_zero();
            bool pass = !assert_bound || (observed >= k - 1 && point_zero);
            all = all && pass;
            nlohmann::json row;
            row["role"] = role_name(role);
            row["k"] = k;
            row["sample"] = s;
            row["observed"] = valuation_json(sk);
            row["bound"] = k - 1;
            row["asserted"] = assert_bound;
            row["point_component_zero"] = point_zero;
            row["pass"] = pass;
            rows.push_back(std::move(row));
        }
    }
    return nlohmann::json{{"rows", std::move(rows)}, {"pass", all}};
}

nlohmann::json intertwine_check(const ScalePair& pair, int order_max,
                                const std::vector<PolynomialField>& samples,
                                const WindowBounds& fine_window) {
    validate_pair(pair);
    if (order_max < 1) throw std::invalid_argument("order_max must be at least 1");
    if (samples.empty()) throw std::invalid_argument("no samples");

    std::vector<LatticeElement> sampled;
    sampled.reserve(samples.size());
    for (const auto& f : samples)
        sampled.push_back(sample_polynomial(pair.fine, Role::cochain, f, fine_window));
    const int m = static_cast<int>(sampled.size());

    nlohmann::json rows = nlohmann::json::array();
    bool all = true;
    auto push = [&](int order, const char* form, std::vector<int> which,
                    const LatticeElement& defect) {
        bool pass = defect.is_zero();
        all = all && pass;
        nlohmann::json row;
        row["order"] = order;
        row["form"] = form;
        row["samples"] = which;
        row["pass"] = pass;
        row["residue_valuation"] = valuation_json(defect);
        rows.push_back(std::move(row));
    };

    for (int s = 0; s < m; ++s) {
        LatticeElement defect = sub(integrate(pair, coboundary_half_step(sampled[s])),
                                    coboundary_half_step(integrate(pair, sampled[s])));
        push(1, "map", {s}, defect);
    }
    for (int k = 2; k <= order_max; ++k) {
        for (int s = 0; s < m; ++s) {
            std::vector<LatticeElement> args;
            args.reserve(k);
            for (int j = 0; j < k; ++j) args.push_back(sampled[(s + j) % m]);
            push(k, "taylor", {s}, lattice_intertwine_defect(pair, Role::cochain, args));
        }
    }
    if (order_max >= 2) {
        for (int s = 0; s < m; ++s) {
            const LatticeElement& a = sampled[s];
            const LatticeElement& b = sampled[(s + 1) % m];
            for (int da = 0; da <= pair.fine.n; ++da) {
                LatticeElement v = homogeneous_part(a, da);
                if (v.is_zero()) continue;
                for (int db = 0; db <= pair.fine.n; ++db) {
                    LatticeElement w = homogeneous_part(b, db);
                    if (w.is_zero()) continue;
                    push(2, "longhand", {s, (s + 1) % m},
                         intertwine_order2_longhand(pair, v, w));
                }
            }
        }
    }
    return nlohmann::json{{"rows", std::move(rows)}, {"pass", all}};
}

nlohmann::json scale_tower(const LatticeSpec& finest, int levels, Role role, int k_max,
                           const std::vector<PolynomialField>& samples, int window_radius) {
    if (levels < 2) throw std::invalid_argument("tower needs at least two levels");
    if (finest.mode != Mode::periodic)
        throw std::invalid_argument("tower runs on periodic lattices");
    if (!finest.scale.formal) throw std::invalid_argument("tower requires the formal scale");
    if (finest.N % (1 << (levels - 1)) != 0)
        throw std::invalid_argument("finest cell count must be divisible by 2^(levels-1)");

    std::vector<LatticeSpec> specs{finest};
    for (int m = 1; m < levels; ++m) specs.push_back(ScalePair::from_fine(specs.back()).coarse);

    nlohmann::json pairs_json = nlohmann::json::array();
    bool all = true;
    for (int m = 0; m + 1 < levels; ++m) {
        const ScalePair pair{specs[m], specs[m + 1]};

        bool map_ok = true;
        if (role == Role::chain) {
            const LatticeBasis cb = enumerate_basis(pair.coarse, Role::chain);
            for (const Cell& cell : cb.cells) {
                LatticeElement e(pair.coarse, Role::chain);
                e.add_entry(cell, LaurentH(1));
                if (!(crumble(pair, boundary(e)) == boundary(crumble(pair, e)))) {
                    map_ok = false;
                    break;
                }
            }
        } else {
            const LatticeBasis fb = enumerate_basis(pair.fine, Role::cochain);
            for (const Cell& cell : fb.cells) {
                LatticeElement e(pair.fine, Role::cochain);
                e.add_entry(cell, LaurentH(1));
                if (!(scale(coboundary(integrate(pair, e)), LaurentH(Rational(1, 2))) ==
                      integrate(pair, coboundary(e)))) {
                    map_ok = false;
                    break;
                }
            }
        }

        bool duality_ok = true;
        {
            const LatticeBasis fb = enumerate_basis(pair.fine, Role::cochain);
            const LatticeBasis cb = enumerate_basis(pair.coarse, Role::chain);
            std::vector<LatticeElement> coarse_units, crumbled;
            coarse_units.reserve(cb.cells.size());
            crumbled.reserve(cb.cells.size());
            for (const Cell& ccell : cb.cells) {
                LatticeElement c(pair.coarse, Role::chain);
                c.add_entry(ccell, LaurentH(1));
                crumbled.push_back(crumble(pair, c));
                coarse_units.push_back(std::move(c));
            }
            for (const Cell& fcell : fb.cells) {
                LatticeElement f(pair.fine, Role::cochain);
                f.add_entry(fcell, LaurentH(1));
                const LatticeElement bf = integrate(pair, f);
                for (std::size_t i = 0; i < coarse_units.size(); ++i) {
                    if (!(pairing(bf, coarse_units[i]) == pairing(f, crumbled[i]))) {
                        duality_ok = false;
                        break;
                    }
                }
                if (!duality_ok) break;
            }
        }

        const LatticeSpec window_fine{pair.fine.n, Mode::window, 1, pair.fine.scale};
        const ScalePair window_pair = ScalePair::from_fine(window_fine);
        const WindowBounds fwin(pair.fine.n, {-window_radius, window_radius});
        const nlohmann::json sig =
            sigma_divisibility_check(window_pair, k_max, samples, fwin, role);

        nlohmann::json inter;
        if (role == Role::cochain) {
            inter = intertwine_check(window_pair, 3, samples, fwin);
        } else {
            const WindowBounds cwin = integrate_window(fwin);
            std::vector<LatticeElement> sampled;
            sampled.reserve(samples.size());
            for (const auto& f : samples)
                sampled.push_back(sample_polynomial(window_pair.coarse, Role::chain, f, cwin));
            const int sm = static_cast<int>(sampled.size());
            nlohmann::json rows = nlohmann::json::array();
            bool ipass = map_ok;
            {
                nlohmann::json row;
                row["order"] = 1;
                row["form"] = "map";
                row["pass"] = map_ok;
                rows.push_back(std::move(row));
            }
            for (int k = 2; k <= 3; ++k) {
                for (int s = 0; s < sm; ++s) {
                    std::vector<LatticeElement> args;
                    args.reserve(k);
                    for (int j = 0; j < k; ++j) args.push_back(sampled[(s + j) % sm]);
                    LatticeElement defect =
                        lattice_intertwine_defect(window_pair, Role::chain, args);
                    bool pass = defect.is_zero();
                    ipass = ipass && pass;
                    nlohmann::json row;
                    row["order"] = k;
                    row["form"] = "taylor";
                    row["samples"] = std::vector<int>{s};
                    row["pass"] = pass;
                    row["residue_valuation"] = valuation_json(defect);
                    rows.push_back(std::move(row));
                }
            }
            inter = nlohmann::json{{"rows", std::move(rows)}, {"pass", ipass}};
        }

        bool pair_ok = map_ok && duality_ok && sig.at("pass").get<bool>() &&
                       inter.at("pass").get<bool>();
        all = all && pair_ok;
        nlohmann::json entry;
        entry["level"] = m;
        entry["chain_map"] = map_ok;
        entry["duality"] = duality_ok;
        entry["sigma_valuations"] = sig.at("rows");
        entry["sigma_pass"] = sig.at("pass");
        entry["intertwine_orders"] = inter.at("rows");
        entry["intertwine_pass"] = inter.at("pass");
        entry["pass"] = pair_ok;
        pairs_json.push_back(std::move(entry));
    }

    nlohmann::json composition;
    if (levels >= 3) {
        const ScalePair p01{specs[0], specs[1]}, p12{specs[1], specs[2]};
        bool comp_ok = true;
        if (role == Role::chain) {
            const LatticeBasis cb = enumerate_basis(specs[2], Role::chain);
            for (const Cell& cell : cb.cells) {
                LatticeElement e(specs[2], Role::chain);
                e.add_entry(cell, LaurentH(1));
                if (!(boundary(crumble(p01, crumble(p12, e))) ==
                      crumble(p01, crumble(p12, boundary(e))))) {
                    comp_ok = false;
                    break;
                }
            }
            composition = nlohmann::json{{"form", "composed chain map"}, {"pass", comp_ok}};
        } else {
            const LatticeBasis fb = enumerate_basis(specs[0], Role::cochain);
            for (const Cell& cell : fb.cells) {
                LatticeElement f(specs[0], Role::cochain);
                f.add_entry(cell, LaurentH(1));
                if (!(scale(coboundary(integrate(p12, integrate(p01, f))), LaurentH(Rational(1, 4))) ==
                      integrate(p12, integrate(p01, coboundary(f))))) {
                    comp_ok = false;
                    break;
                }
            }
            composition = nlohmann::json{{"form", "composed quarter scaling"}, {"pass", comp_ok}};
        }
        all = all && comp_ok;
    }

    nlohmann::json out;
    out["role"] = role_name(role);
    out["levels"] = levels;
    out["finest"] = nlohmann::json{{"n", finest.n}, {"N", finest.N}, {"log2", finest.scale.log2}};
    out["pairs"] = std::move(pairs_json);
    out["composition"] = std::move(composition);
    out["pass"] = all;
    return out;
}

} // namespace latcalc
