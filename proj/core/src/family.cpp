#include "ambilogic/family.hpp"

#include <unordered_set>

namespace ambilogic {

namespace {

void push_unique(std::vector<FormulaId>& out, std::unordered_set<FormulaId>& seen, FormulaId f) {
  if (seen.insert(f).second) out.push_back(f);
}

std::vector<FormulaId> seed_pool(FormulaFactory& factory, const std::vector<std::string>& props,
                                 std::unordered_set<FormulaId>& seen) {
  std::vector<FormulaId> pool;
  push_unique(pool, seen, factory.truth());
  for (const auto& p : props) {
    FormulaId atom = factory.prim(p);
    push_unique(pool, seen, atom);
    push_unique(pool, seen, factory.negation(atom));
  }
  return pool;
}

void grow_propositional(FormulaFactory& factory, std::vector<FormulaId>& pool,
                        std::unordered_set<FormulaId>& seen) {
  const std::size_t base = pool.size();
  for (std::size_t a = 0; a < base; ++a) {
    for (std::size_t b = a + 1; b < base; ++b) {
      FormulaId both = factory.conj(pool[a], pool[b]);
      FormulaId either = factory.disj(pool[a], pool[b]);
      push_unique(pool, seen, both);
      push_unique(pool, seen, factory.negation(both));
      push_unique(pool, seen, either);
      push_unique(pool, seen, factory.negation(either));
    }
  }
}

const std::vector<Rational>& thresholds() {
  static const std::vector<Rational> kThresholds = {
      Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
  return kThresholds;
}

}  // namespace

std::vector<FormulaId> propositional_family(FormulaFactory& factory,
                                            const std::vector<std::string>& props, int depth) {
  std::unordered_set<FormulaId> seen;
  std::vector<FormulaId> pool = seed_pool(factory, props, seen);
  for (int d = 0; d < depth; ++d) grow_propositional(factory, pool, seen);
  return pool;
}

std::vector<FormulaId> formula_family(FormulaFactory& factory,
                                      const std::vector<std::string>& props, int players,
                                      int depth) {
  std::unordered_set<FormulaId> seen;
  std::vector<FormulaId> prop_pool = seed_pool(factory, props, seen);
  std::vector<FormulaId> family = prop_pool;

  std::vector<PlayerId> group;
  for (PlayerId i = 1; i <= players; ++i) group.push_back(i);

  for (int d = 0; d < depth; ++d) {
    const std::vector<FormulaId> previous = family;

    {
      std::unordered_set<FormulaId> prop_seen(prop_pool.begin(), prop_pool.end());
      grow_propositional(factory, prop_pool, prop_seen);
    }
    for (FormulaId f : prop_pool) push_unique(family, seen, f);

    for (FormulaId f : previous) {
      for (PlayerId i : group) {
        push_unique(family, seen, factory.belief(i, f));
        push_unique(family, seen, factory.knows(i, f));
        for (const Rational& t : thresholds()) {
          push_unique(family, seen, factory.prob_ge({{Rational(1), i, f}}, t));
        }
      }
      if (!group.empty()) push_unique(family, seen, factory.common_belief(group, f));
    }
  }
  return family;
}

}  // namespace ambilogic
