#include <benchmark/benchmark.h>

#include <latcalc/brackets.hpp>
#include <latcalc/multiscale.hpp>
#include <latcalc/random_gen.hpp>

#include <cstdint>
#include <vector>

using namespace latcalc;

namespace {

LatticeElement random_element(Rng& rng, const LatticeSpec& spec, Role role, int terms) {
    LatticeElement x(spec, role);
    for (int t = 0; t < terms; ++t) {
        Cell cell;
        cell.type = static_cast<std::uint32_t>(rng.uniform(0, (1 << spec.n) - 1));
        for (int a = 0; a < spec.n; ++a) cell.center.push_back(rng.uniform(0, spec.period() - 1));
        x.add_entry(cell, rng.nonzero_laurent());
    }
    return x;
}

void BM_LaurentMultiply(benchmark::State& state) {
    Rng rng(7001);
    const LaurentH a = rng.nonzero_laurent();
    const LaurentH b = rng.nonzero_laurent();
    for (auto _ : state) {
        LaurentH c = a * b;
        benchmark::DoNotOptimize(c);
    }
}
BENCHMARK(BM_LaurentMultiply);

void BM_LatticeWedge(benchmark::State& state) {
    Rng rng(7013);
    const LatticeSpec spec{2, Mode::periodic, 1, {}};
    const LatticeElement x = random_element(rng, spec, Role::cochain, 8);
    const LatticeElement y = random_element(rng, spec, Role::cochain, 8);
    for (auto _ : state) {
        LatticeElement w = wedge(x, y);
        benchmark::DoNotOptimize(w);
    }
}
BENCHMARK(BM_LatticeWedge);

void BM_CumulantLift(benchmark::State& state) {
    GradedBasisAlgebra alg = exterior_algebra({1, 2, 3});
    BasisLetters ls(alg);
    const SymElement x = SymElement::single(Word{{1, 2, 4}});
    for (auto _ : state) {
        SymElement lifted = tau(x, ls);
        benchmark::DoNotOptimize(lifted);
    }
}
BENCHMARK(BM_CumulantLift);

void BM_ClosedTwoBracket(benchmark::State& state) {
    Rng rng(7019);
    const LatticeSpec spec{2, Mode::periodic, 1, {}};
    const LatticeElement f = random_element(rng, spec, Role::cochain, 8);
    const LatticeElement g = random_element(rng, spec, Role::cochain, 8);
    for (auto _ : state) {
        LatticeElement b = delta_bracket_closed({f, g});
        benchmark::DoNotOptimize(b);
    }
}
BENCHMARK(BM_ClosedTwoBracket);

void BM_Crumble(benchmark::State& state) {
    Rng rng(7027);
    const ScalePair pair = ScalePair::from_fine(LatticeSpec{2, Mode::periodic, 2, {}});
    const LatticeElement c = random_element(rng, pair.coarse, Role::chain, 8);
    for (auto _ : state) {
        LatticeElement fine = crumble(pair, c);
        benchmark::DoNotOptimize(fine);
    }
}
BENCHMARK(BM_Crumble);

void BM_SamplePolynomial(benchmark::State& state) {
    Rng rng(7039);
    const LatticeSpec spec{2, Mode::window, 1, {}};
    const WindowBounds window = {{-6, 6}, {-6, 6}};
    const PolynomialField field = rng.field(2, {0, 1, 2, 3}, 4);
    for (auto _ : state) {
        LatticeElement x = sample_polynomial(spec, Role::cochain, field, window);
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_SamplePolynomial);

} // namespace
