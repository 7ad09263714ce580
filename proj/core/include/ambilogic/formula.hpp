// ===== formula.hpp — epistemic probability formulas =====
//
// Formulas form an interned DAG: a FormulaFactory owns every node, and a
// FormulaId is a stable handle into it. Interning makes structural equality
// an integer compare and gives the evaluator cheap memo keys. Construction
// is not synchronized; once built, ids and nodes are safe to read from any
// number of threads.
//
// Surface comparisons other than ">=" are desugared at construction time
// (<=, <, > and = have no node kind of their own), so ProbGE is the only
// probability atom in the tree.

#pragma once

#include "ambilogic/rational.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace ambilogic {

using FormulaId = std::uint32_t;
using PlayerId = int;  // players are 1-based, matching the surface syntax

inline constexpr FormulaId kNoFormula = 0xffffffffu;

enum class NodeKind : std::uint8_t {
  True,
  Prim,     // primitive proposition
  Not,
  And,
  Or,       // sugar, removed by normalize()
  Implies,  // sugar
  Iff,      // sugar
  ProbGE,   // sum of coeff * Pr_player(arg) >= bound
  Belief,   // B_i, sugar for Pr_i(arg) = 1
  EvBelief, // EB^m_G, sugar for iterated conjunctions of Belief
  CommonBelief,  // CB_G
  Knows,    // K_i
};

enum class CmpOp : std::uint8_t { Ge, Le, Gt, Lt, Eq };

struct ProbTerm {
  Rational coeff;
  PlayerId player = 0;
  FormulaId arg = kNoFormula;

  friend bool operator==(const ProbTerm&, const ProbTerm&) = default;
};

struct FormulaNode {
  NodeKind kind = NodeKind::True;
  FormulaId child0 = kNoFormula;
  FormulaId child1 = kNoFormula;
  PlayerId player = 0;            // Belief, Knows
  int count = 0;                  // EvBelief iteration depth m
  std::vector<PlayerId> group;    // EvBelief, CommonBelief; sorted, unique
  std::string prop;               // Prim
  std::vector<ProbTerm> terms;    // ProbGE
  Rational bound;                 // ProbGE

  friend bool operator==(const FormulaNode&, const FormulaNode&) = default;
};

class FormulaFactory {
public:
  FormulaFactory();

  FormulaId truth() const { return true_id_; }
  FormulaId prim(std::string_view name);
  FormulaId negation(FormulaId f);
  FormulaId conj(FormulaId a, FormulaId b);
  FormulaId disj(FormulaId a, FormulaId b);
  FormulaId implies(FormulaId a, FormulaId b);
  FormulaId iff(FormulaId a, FormulaId b);
  FormulaId prob_ge(std::vector<ProbTerm> terms, Rational bound);
  // Desugars Le/Gt/Lt/Eq; Ge is prob_ge itself.
  FormulaId prob_cmp(CmpOp op, std::vector<ProbTerm> terms, Rational bound);
  FormulaId belief(PlayerId i, FormulaId f);
  FormulaId everyone_believes(int m, std::vector<PlayerId> group, FormulaId f);
  FormulaId common_belief(std::vector<PlayerId> group, FormulaId f);
  FormulaId knows(PlayerId i, FormulaId f);

  // Left fold of conj over parts; truth() when parts is empty.
  FormulaId conj_all(const std::vector<FormulaId>& parts);

  const FormulaNode& node(FormulaId id) const { return nodes_[id]; }
  std::size_t size() const { return nodes_.size(); }

  std::string to_string(FormulaId f) const;

  // Rewrites to the core fragment {true, prim, !, &, ProbGE, CB, K}:
  //   B_i(f)      ->  1*Pr_i(f) >= 1  &  -1*Pr_i(f) >= -1
  //   EB^1_G(f)   ->  &_{i in G} B_i(f)
  //   EB^m_G(f)   ->  EB^{m-1}_G(EB^1_G(f)), unrolled
  //   a | b       ->  !(!a & !b)
  //   a -> b      ->  !(a & !b)
  //   a <-> b     ->  (a -> b) & (b -> a), each expanded
  // Idempotent; interning keeps the unrolling linear in m * |G|.
  FormulaId normalize(FormulaId f);

  bool is_propositional(FormulaId f) const;

  // True when a node of the given kind appears anywhere in f.
  bool mentions(FormulaId f, NodeKind kind) const;

  // Propositions mentioned anywhere in f, in first-occurrence order.
  std::vector<std::string> props_of(FormulaId f) const;

  // Largest player index mentioned by any B/EB/CB/K/Pr in f; 0 if none.
  PlayerId max_player(FormulaId f) const;

private:
  FormulaId intern(FormulaNode node);
  void collect_props(FormulaId f, std::vector<std::string>& out,
                     std::vector<FormulaId>& seen) const;

  std::vector<FormulaNode> nodes_;
  std::unordered_map<std::size_t, std::vector<FormulaId>> buckets_;
  std::unordered_map<FormulaId, FormulaId> normalize_memo_;
  FormulaId true_id_ = 0;
};

}  // namespace ambilogic
