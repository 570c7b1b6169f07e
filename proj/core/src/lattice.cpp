#include "latcalc/lattice.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace latcalc {

namespace {

int wrap(int v, int period) {
    int r = v % period;
    return r < 0 ? r + period : r;
}

void check_same_space(const LatticeElement& x, const LatticeElement& y) {
    if (!(x.spec() == y.spec()))
        throw std::invalid_argument("lattice elements live on different lattices");
    if (x.role() != y.role())
        throw std::invalid_argument("lattice elements have different roles");
}

WindowBounds intersect_windows(const LatticeElement& x, const LatticeElement& y) {
    const WindowBounds& a = x.window();
    const WindowBounds& b = y.window();
    if (a.empty()) return b;
    if (b.empty()) return a;
    WindowBounds out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = {std::max(a[i][0], b[i][0]), std::min(a[i][1], b[i][1])};
    return out;
}

bool center_in_window(const std::vector<int>& center, const WindowBounds& w) {
    if (w.empty()) return true;
    for (std::size_t i = 0; i < w.size(); ++i)
        if (center[i] < w[i][0] || center[i] > w[i][1]) return false;
    return true;
}

LaurentH dyadic(int log2) {
    return LaurentH(pow2(log2));
}

} // namespace

LaurentH step_scalar(const LatticeSpec& spec) {
    if (spec.scale.formal) return LaurentH::monomial(1, pow2(spec.scale.log2));
    return dyadic(spec.scale.log2);
}

LaurentH inv_step_scalar(const LatticeSpec& spec) {
    if (spec.scale.formal) return LaurentH::monomial(-1, pow2(-spec.scale.log2));
    return dyadic(-spec.scale.log2);
}

int Cell::dim() const {
    return std::popcount(type);
}

int axis_sign(std::uint32_t type, int u) {
    std::uint32_t below = type & ((std::uint32_t{1} << u) - 1);
    return std::popcount(below) % 2 ? -1 : 1;
}

int type_merge_sign(std::uint32_t j, std::uint32_t k) {
    if (j & k) return 0;
    int inversions = 0;
    for (int b = 0; b < 32; ++b)
        if (j >> b & 1u) inversions += std::popcount(k & ((std::uint32_t{1} << b) - 1));
    return inversions % 2 ? -1 : 1;
}

LatticeElement::LatticeElement(LatticeSpec spec, Role role, WindowBounds window)
    : spec_(std::move(spec)), role_(role), window_(std::move(window)) {
    if (spec_.mode == Mode::periodic) {
        if (!window_.empty())
            throw std::invalid_argument("periodic lattice takes no window");
        if (spec_.N <= 0)
            throw std::invalid_argument("periodic lattice needs N >= 1");
    } else {
        if (static_cast<int>(window_.size()) != spec_.n)
            throw std::invalid_argument("window must give bounds for every axis");
        for (const auto& [lo, hi] : window_)
            if (lo > hi) throw WindowOverflow("window is empty along some axis");
    }
}

void LatticeElement::add_entry(Cell cell, const LaurentH& c) {
    if (static_cast<int>(cell.center.size()) != spec_.n)
        throw std::invalid_argument("cell center has wrong dimension");
    if (cell.type >> spec_.n)
        throw std::invalid_argument("cell type uses axes beyond the lattice dimension");
    if (c.is_zero()) return;
    if (spec_.mode == Mode::periodic) {
        for (int& v : cell.center) v = wrap(v, spec_.period());
    } else if (!center_in_window(cell.center, window_)) {
        throw WindowOverflow("cell lies outside the window");
    }
    LaurentH& slot = entries_[cell];
    slot = slot + c;
    if (slot.is_zero()) entries_.erase(cell);
}

LaurentH LatticeElement::entry(const Cell& cell) const {
    Cell key = cell;
    if (spec_.mode == Mode::periodic)
        for (int& v : key.center) v = wrap(v, spec_.period());
    auto it = entries_.find(key);
    return it == entries_.end() ? LaurentH{} : it->second;
}

LatticeElement add(const LatticeElement& x, const LatticeElement& y) {
    check_same_space(x, y);
    LatticeElement out(x.spec(), x.role(), intersect_windows(x, y));
    for (const auto& [cell, c] : x.entries())
        if (center_in_window(cell.center, out.window())) out.add_entry(cell, c);
    for (const auto& [cell, c] : y.entries())
        if (center_in_window(cell.center, out.window())) out.add_entry(cell, c);
    return out;
}

LatticeElement scale(const LatticeElement& x, const LaurentH& c) {
    LatticeElement out(x.spec(), x.role(), x.window());
    if (c.is_zero()) return out;
    for (const auto& [cell, v] : x.entries()) out.add_entry(cell, v * c);
    return out;
}

LatticeElement sub(const LatticeElement& x, const LatticeElement& y) {
    return add(x, scale(y, LaurentH(-1)));
}

LatticeElement reinterpret_role(const LatticeElement& x, Role role) {
    LatticeElement out(x.spec(), role, x.window());
    for (const auto& [cell, c] : x.entries()) out.add_entry(cell, c);
    return out;
}

LatticeElement restrict_window(const LatticeElement& x, const WindowBounds& w) {
    if (x.spec().mode != Mode::window)
        throw std::invalid_argument("restrict_window needs a window-mode element");
    WindowBounds merged(w.size());
    if (static_cast<int>(w.size()) != x.spec().n)
        throw std::invalid_argument("window must give bounds for every axis");
    for (std::size_t i = 0; i < w.size(); ++i)
        merged[i] = {std::max(w[i][0], x.window()[i][0]), std::min(w[i][1], x.window()[i][1])};
    LatticeElement out(x.spec(), x.role(), merged);
    for (const auto& [cell, c] : x.entries())
        if (center_in_window(cell.center, merged)) out.add_entry(cell, c);
    return out;
}

LatticeElement homogeneous_part(const LatticeElement& x, int k) {
    LatticeElement out(x.spec(), x.role(), x.window());
    for (const auto& [cell, c] : x.entries())
        if (cell.dim() == k) out.add_entry(cell, c);
    return out;
}

bool equal_on_common_window(const LatticeElement& x, const LatticeElement& y) {
    check_same_space(x, y);
    if (x.spec().mode == Mode::periodic) return x.entries() == y.entries();
    WindowBounds w = intersect_windows(x, y);
    for (const auto& [lo, hi] : w)
        if (lo > hi) throw WindowOverflow("no common window");
    return restrict_window(x, w).entries() == restrict_window(y, w).entries();
}

LatticeElement wedge(const LatticeElement& x, const LatticeElement& y) {
    check_same_space(x, y);
    LatticeElement out(x.spec(), x.role(), intersect_windows(x, y));
    // Group the right factor by center so the pass is linear in the entries.
    std::map<std::vector<int>, std::vector<std::pair<std::uint32_t, const LaurentH*>>> by_center;
    for (const auto& [cell, c] : y.entries())
        by_center[cell.center].emplace_back(cell.type, &c);
    for (const auto& [cell, cx] : x.entries()) {
        if (!center_in_window(cell.center, out.window())) continue;
        auto it = by_center.find(cell.center);
        if (it == by_center.end()) continue;
        for (const auto& [ty, cy] : it->second) {
            int sign = type_merge_sign(cell.type, ty);
            if (sign == 0) continue;
            LaurentH v = cx * *cy;
            if (sign < 0) v = v * LaurentH(-1);
            out.add_entry(Cell{cell.type | ty, cell.center}, v);
        }
    }
    return out;
}

LatticeElement translate(const LatticeElement& x, int u, int offset) {
    WindowBounds w = x.window();
    if (!w.empty()) {
        w[u][0] += offset;
        w[u][1] += offset;
    }
    LatticeElement out(x.spec(), x.role(), std::move(w));
    for (const auto& [cell, c] : x.entries()) {
        Cell moved = cell;
        moved.center[u] += offset;
        out.add_entry(std::move(moved), c);
    }
    return out;
}

LatticeElement divided_difference(const LatticeElement& x, int u, bool forward) {
    LatticeElement diff = forward ? sub(translate(x, u, -1), x) : sub(x, translate(x, u, +1));
    return scale(diff, inv_step_scalar(x.spec()));
}

namespace {

// Removes axis u from every entry carrying it, with the orientation sign.
LatticeElement drop_axis(const LatticeElement& x, int u) {
    LatticeElement out(x.spec(), x.role(), x.window());
    for (const auto& [cell, c] : x.entries()) {
        if (!(cell.type >> u & 1u)) continue;
        int sign = axis_sign(cell.type, u);
        out.add_entry(Cell{cell.type & ~(std::uint32_t{1} << u), cell.center},
                      sign < 0 ? c * LaurentH(-1) : c);
    }
    return out;
}

// Adds axis u to every entry missing it, with the orientation sign.
LatticeElement raise_axis(const LatticeElement& x, int u) {
    LatticeElement out(x.spec(), x.role(), x.window());
    for (const auto& [cell, c] : x.entries()) {
        if (cell.type >> u & 1u) continue;
        std::uint32_t raised = cell.type | (std::uint32_t{1} << u);
        int sign = axis_sign(raised, u);
        out.add_entry(Cell{raised, cell.center}, sign < 0 ? c * LaurentH(-1) : c);
    }
    return out;
}

} // namespace

LatticeElement boundary_u(const LatticeElement& x, int u) {
    if (x.role() != Role::chain)
        throw std::invalid_argument("boundary acts on chains");
    LatticeElement dropped = drop_axis(x, u);
    return sub(translate(dropped, u, +1), translate(dropped, u, -1));
}

LatticeElement boundary(const LatticeElement& x) {
    LatticeElement out = boundary_u(x, 0);
    for (int u = 1; u < x.spec().n; ++u) out = add(out, boundary_u(x, u));
    return out;
}

LatticeElement coboundary_u(const LatticeElement& x, int u) {
    if (x.role() != Role::cochain)
        throw std::invalid_argument("coboundary acts on cochains");
    LatticeElement raised = raise_axis(x, u);
    return sub(translate(raised, u, -1), translate(raised, u, +1));
}

LatticeElement coboundary(const LatticeElement& x) {
    LatticeElement out = coboundary_u(x, 0);
    for (int u = 1; u < x.spec().n; ++u) out = add(out, coboundary_u(x, u));
    return out;
}

LatticeElement star(const LatticeElement& x) {
    std::uint32_t full = (std::uint32_t{1} << x.spec().n) - 1;
    LatticeElement out(x.spec(), x.role(), x.window());
    for (const auto& [cell, c] : x.entries()) {
        std::uint32_t comp = full & ~cell.type;
        int sign = type_merge_sign(cell.type, comp);
        out.add_entry(Cell{comp, cell.center}, sign < 0 ? c * LaurentH(-1) : c);
    }
    return out;
}

LatticeElement grade_involution(const LatticeElement& x) {
    LatticeElement out(x.spec(), x.role(), x.window());
    for (const auto& [cell, c] : x.entries())
        out.add_entry(cell, cell.dim() % 2 ? c * LaurentH(-1) : c);
    return out;
}

LatticeElement interior_product(const LatticeElement& x, int u) {
    LatticeElement out(x.spec(), x.role(), x.window());
    for (const auto& [cell, c] : x.entries()) {
        if (!(cell.type >> u & 1u)) continue;
        int sign = axis_sign(cell.type, u);
        out.add_entry(Cell{cell.type & ~(std::uint32_t{1} << u), cell.center},
                      sign < 0 ? c * LaurentH(-1) : c);
    }
    return out;
}

LaurentH pairing(const LatticeElement& cochain, const LatticeElement& chain) {
    if (cochain.role() != Role::cochain || chain.role() != Role::chain)
        throw std::invalid_argument("pairing takes a cochain and a chain");
    if (!(cochain.spec() == chain.spec()))
        throw std::invalid_argument("pairing needs a common lattice");
    LaurentH measure_unit = step_scalar(cochain.spec()) * LaurentH(2);
    LaurentH total;
    for (const auto& [cell, c] : chain.entries()) {
        LaurentH f = cochain.entry(cell);
        if (f.is_zero()) continue;
        LaurentH term = f * c;
        for (int k = 0; k < cell.dim(); ++k) term = term * measure_unit;
        total = total + term;
    }
    return total;
}

Valuation element_valuation(const LatticeElement& x) {
    Valuation v;
    for (const auto& [cell, c] : x.entries()) v = min(v, c.valuation());
    return v;
}

LatticeElement evaluate_at_scale(const LatticeElement& x, int level) {
    if (!x.spec().scale.formal)
        throw std::invalid_argument("element is already at a numeric scale");
    LatticeSpec spec = x.spec();
    spec.scale = Scale{false, x.spec().scale.log2 - level};
    LatticeElement out(spec, x.role(), x.window());
    for (const auto& [cell, c] : x.entries())
        out.add_entry(cell, LaurentH(c.evaluate_at_scale(level)));
    return out;
}

LatticeElement sample_polynomial(const LatticeSpec& spec, Role role,
                                 const PolynomialField& field, const WindowBounds& window) {
    if (spec.mode != Mode::window)
        throw std::invalid_argument("sampling is defined on window lattices");
    if (field.n != spec.n)
        throw std::invalid_argument("field dimension does not match the lattice");
    LatticeElement out(spec, role, window);
    std::vector<int> center(spec.n);
    for (const auto& [type, poly] : field.components) {
        auto visit = [&](auto&& self, int axis) -> void {
            if (axis == spec.n) {
                // Value in powers of the step, then step = 2^log2 * h or 2^log2.
                LaurentH in_step = poly.evaluate_at_h_multiple(center);
                LaurentH value;
                for (const auto& [d, c] : in_step.terms()) {
                    Rational scaled = c * pow2(spec.scale.log2 * d);
                    value = value + (spec.scale.formal ? LaurentH::monomial(d, scaled)
                                                       : LaurentH(scaled));
                }
                out.add_entry(Cell{type, center}, value);
                return;
            }
            for (center[axis] = window[axis][0]; center[axis] <= window[axis][1]; ++center[axis])
                self(self, axis + 1);
        };
        visit(visit, 0);
    }
    return out;
}

int homology_rank_degree0(int n, int N) {
    LatticeSpec spec{n, Mode::periodic, N, Scale{true, 0}};
    LatticeBasis b0 = enumerate_basis(spec, Role::chain);
    // Rows are boundaries of the 1-cells expressed over the 0-cells.
    std::vector<std::vector<Rational>> rows;
    int zero_cells = 0;
    std::map<Cell, int> zero_index;
    for (const Cell& cell : b0.cells)
        if (cell.dim() == 0) zero_index[cell] = zero_cells++;
    for (const Cell& cell : b0.cells) {
        if (cell.dim() != 1) continue;
        LatticeElement e(spec, Role::chain);
        e.add_entry(cell, LaurentH(1));
        LatticeElement de = boundary(e);
        std::vector<Rational> row(zero_cells, Rational(0));
        for (const auto& [c, v] : de.entries()) row[zero_index.at(c)] = v.coefficient(0);
        rows.push_back(std::move(row));
    }
    // Exact row reduction.
    int rank = 0;
    std::vector<std::vector<Rational>> pivots;
    std::vector<int> pivot_cols;
    for (auto& row : rows) {
        for (std::size_t p = 0; p < pivots.size(); ++p) {
            const Rational& lead = row[pivot_cols[p]];
            if (lead == 0) continue;
            Rational f = lead;
            for (int j = 0; j < zero_cells; ++j) row[j] -= f * pivots[p][j];
        }
        int col = -1;
        for (int j = 0; j < zero_cells; ++j)
            if (row[j] != 0) { col = j; break; }
        if (col < 0) continue;
        Rational inv = row[col];
        for (int j = 0; j < zero_cells; ++j) row[j] /= inv;
        pivots.push_back(row);
        pivot_cols.push_back(col);
        ++rank;
    }
    return zero_cells - rank;
}

nlohmann::json lattice_element_to_json(const LatticeElement& x) {
    nlohmann::json j;
    j["n"] = x.spec().n;
    j["mode"] = x.spec().mode == Mode::periodic ? "periodic" : "window";
    if (x.spec().mode == Mode::periodic) j["N"] = x.spec().N;
    j["scale"] = {{"formal", x.spec().scale.formal}, {"log2", x.spec().scale.log2}};
    j["role"] = x.role() == Role::chain ? "chain" : "cochain";
    if (!x.window().empty()) {
        nlohmann::json w = nlohmann::json::array();
        for (const auto& [lo, hi] : x.window()) w.push_back({lo, hi});
        j["window"] = w;
    }
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& [cell, c] : x.entries()) {
        nlohmann::json axes = nlohmann::json::array();
        for (int b = 0; b < x.spec().n; ++b)
            if (cell.type >> b & 1u) axes.push_back(b + 1);
        entries.push_back({{"axes", axes}, {"center", cell.center}, {"value", c.to_json()}});
    }
    j["entries"] = entries;
    return j;
}

LatticeElement lattice_element_from_json(const nlohmann::json& j) {
    LatticeSpec spec;
    spec.n = j.at("n").get<int>();
    spec.mode = j.at("mode").get<std::string>() == "periodic" ? Mode::periodic : Mode::window;
    if (spec.mode == Mode::periodic) spec.N = j.at("N").get<int>();
    spec.scale.formal = j.at("scale").at("formal").get<bool>();
    spec.scale.log2 = j.at("scale").at("log2").get<int>();
    Role role = j.at("role").get<std::string>() == "chain" ? Role::chain : Role::cochain;
    WindowBounds window;
    if (j.contains("window"))
        for (const auto& w : j.at("window"))
            window.push_back({w.at(0).get<int>(), w.at(1).get<int>()});
    LatticeElement out(spec, role, window);
    for (const auto& e : j.at("entries")) {
        std::uint32_t type = 0;
        for (const auto& a : e.at("axes")) type |= std::uint32_t{1} << (a.get<int>() - 1);
        out.add_entry(Cell{type, e.at("center").get<std::vector<int>>()},
                      LaurentH::from_json(e.at("value")));
    }
    return out;
}

LatticeElement LatticeOps::sum(const LatticeElement& x, const LatticeElement& y) const {
    return add(x, y);
}

std::vector<std::pair<int, LatticeElement>> LatticeOps::homogeneous_parts(const LatticeElement& x) const {
    std::vector<std::pair<int, LatticeElement>> parts;
    for (int k = 0; k <= x.spec().n; ++k) {
        LatticeElement part = homogeneous_part(x, k);
        if (!part.is_zero()) parts.emplace_back(k, std::move(part));
    }
    return parts;
}

LatticeElement coboundary_half_step(const LatticeElement& x) {
    LaurentH half = inv_step_scalar(x.spec()) * LaurentH(Rational(1, 2));
    return scale(coboundary(x), half);
}

LatticeElement boundary_half_step(const LatticeElement& x) {
    LaurentH half = inv_step_scalar(x.spec()) * LaurentH(Rational(1, 2));
    return scale(boundary(x), half);
}

LatticeElement boundary_over_step(const LatticeElement& x) {
    return scale(boundary(x), inv_step_scalar(x.spec()));
}

LatticeBasis enumerate_basis(const LatticeSpec& spec, Role role) {
    if (spec.mode != Mode::periodic)
        throw std::invalid_argument("only periodic lattices have a finite basis");
    LatticeBasis basis{spec, role, {}, {}};
    int period = spec.period();
    std::uint32_t masks = std::uint32_t{1} << spec.n;
    std::vector<int> center(spec.n, 0);
    for (std::uint32_t type = 0; type < masks; ++type) {
        auto visit = [&](auto&& self, int axis) -> void {
            if (axis == spec.n) {
                basis.cells.push_back(Cell{type, center});
                return;
            }
            for (center[axis] = 0; center[axis] < period; ++center[axis]) self(self, axis + 1);
        };
        visit(visit, 0);
    }
    std::sort(basis.cells.begin(), basis.cells.end());
    for (std::size_t i = 0; i < basis.cells.size(); ++i)
        basis.index[basis.cells[i]] = static_cast<int>(i);
    return basis;
}

GradedBasisAlgebra lattice_algebra(const LatticeBasis& basis,
                                   const std::function<LatticeElement(const LatticeElement&)>& diff,
                                   int diff_degree) {
    std::vector<int> degrees;
    degrees.reserve(basis.cells.size());
    for (const Cell& cell : basis.cells) degrees.push_back(cell.dim());
    GradedBasisAlgebra alg(std::move(degrees), diff_degree);
    int count = static_cast<int>(basis.cells.size());
    for (int i = 0; i < count; ++i) {
        LatticeElement xi(basis.spec, basis.role);
        xi.add_entry(basis.cells[i], LaurentH(1));
        alg.set_differential(i, to_lincomb(diff(xi), basis));
        for (int j = 0; j < count; ++j) {
            if (basis.cells[i].center != basis.cells[j].center) continue;
            LatticeElement xj(basis.spec, basis.role);
            xj.add_entry(basis.cells[j], LaurentH(1));
            LinComb p = to_lincomb(wedge(xi, xj), basis);
            if (!p.empty()) alg.set_product(i, j, std::move(p));
        }
    }
    return alg;
}

LinComb to_lincomb(const LatticeElement& x, const LatticeBasis& basis) {
    LinComb out;
    for (const auto& [cell, c] : x.entries()) out[basis.index.at(cell)] = c;
    return out;
}

LatticeElement from_lincomb(const LinComb& x, const LatticeBasis& basis) {
    LatticeElement out(basis.spec, basis.role);
    for (const auto& [i, c] : x) out.add_entry(basis.cells[static_cast<std::size_t>(i)], c);
    return out;
}

} // namespace latcalc
