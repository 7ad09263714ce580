// ===== bench.cpp — core hot paths =====
//
// Parsing, extension computation with the common-belief fixpoint, the
// conditioning modes, family enumeration, the generator, and one bounded
// search. Fresh factories and evaluators per iteration where memoization
// would otherwise hide the cost being measured.

#include "ambilogic/family.hpp"
#include "ambilogic/generator.hpp"
#include "ambilogic/model_io.hpp"
#include "ambilogic/parser.hpp"
#include "ambilogic/semantics.hpp"
#include "ambilogic/sweeps.hpp"
#include "ambilogic/transforms.hpp"

#include <benchmark/benchmark.h>

namespace {

using namespace ambilogic;

const std::string kModelDir = AMBILOGIC_MODEL_DIR;

Structure load(const std::string& name) {
  return load_structure(kModelDir + "/" + name);
}

void BM_ParseFormula(benchmark::State& state) {
  const std::string text =
      "CB_{1,2,3}(1/2*Pr_1(p & !q) + 1/2*Pr_2(p | q) >= 3/4 -> B_3(K_1(p) <-> EB^2_{1,2}(q)))";
  for (auto _ : state) {
    FormulaFactory fa;
    benchmark::DoNotOptimize(parse_formula(text, fa));
  }
  state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_ParseFormula);

void BM_CommonBeliefFixpoint(benchmark::State& state) {
  Structure m = random_structure(11, {.min_states = 8, .max_states = 8, .min_players = 3,
                                      .max_players = 3, .min_props = 2, .max_props = 2});
  FormulaFactory fa;
  FormulaId f = parse_formula("CB_{1,2,3}(p -> B_1(q))", fa);
  for (auto _ : state) {
    Evaluator ev(m, fa);
    benchmark::DoNotOptimize(ev.eval(f, 0, 1, Mode::In));
  }
}
BENCHMARK(BM_CommonBeliefFixpoint);

void BM_ConditioningModes(benchmark::State& state) {
  Structure m = load("outai_event_gap.json");
  FormulaFactory fa;
  FormulaId f = parse_formula("CB_{1,2}(recv_1_s & recv_2_s)", fa);
  for (auto _ : state) {
    Evaluator ev(m, fa);
    bool v = false;
    for (PlayerId vp = 1; vp <= 2; ++vp) v ^= ev.eval(f, 0, vp, Mode::OutAi);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_ConditioningModes);

void BM_FormulaFamilyDepth2(benchmark::State& state) {
  for (auto _ : state) {
    FormulaFactory fa;
    benchmark::DoNotOptimize(formula_family(fa, {"p"}, 2, 2).size());
  }
}
BENCHMARK(BM_FormulaFamilyDepth2);

void BM_EquivalenceCheck(benchmark::State& state) {
  Structure m = load("example2.json");
  Structure pj = project_outermost(m, 1);
  FormulaFactory fa;
  auto fam = formula_family(fa, {"p", "q"}, 2, 1);
  auto pairing = projection_pairing(m, 1);
  for (auto _ : state) {
    Evaluator left(m, fa);
    Evaluator right(pj, fa);
    benchmark::DoNotOptimize(
        check_equivalent(left, right, pairing, Mode::Out, Mode::Out, fam).equivalent);
  }
}
BENCHMARK(BM_EquivalenceCheck);

void BM_RandomStructure(benchmark::State& state) {
  GeneratorConfig cfg;
  cfg.with_signals = true;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_structure(seed++, cfg).state_count());
  }
}
BENCHMARK(BM_RandomStructure);

void BM_SweepSuite(benchmark::State& state) {
  SweepOptions opts;
  opts.seed_count = 5;
  opts.depth = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_sweep("signals-common", opts).cases_checked);
  }
}
BENCHMARK(BM_SweepSuite)->Unit(benchmark::kMillisecond);

void BM_BoundedCpaSearch(benchmark::State& state) {
  Structure m = load("atd.json");
  FormulaFactory fa;
  std::vector<FormulaId> probes = {
      parse_formula("p", fa),
      parse_formula("!p", fa),
      parse_formula("B_1(p)", fa),
      parse_formula("B_2(!p)", fa),
  };
  BoundedCpaSearch bounds;
  bounds.max_states = 2;
  bounds.max_denominator = 4;
  for (auto _ : state) {
    Evaluator ev(m, fa);
    benchmark::DoNotOptimize(search_equivalent_cpa(ev, probes, bounds).found);
  }
}
BENCHMARK(BM_BoundedCpaSearch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
