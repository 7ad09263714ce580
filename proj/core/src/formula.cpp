#include "ambilogic/formula.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>
#include <stdexcept>
#include <unordered_set>

namespace ambilogic {

namespace {

void hash_mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2);
}

std::size_t node_hash(const FormulaNode& n) {
  std::size_t seed = static_cast<std::size_t>(n.kind);
  hash_mix(seed, n.child0);
  hash_mix(seed, n.child1);
  hash_mix(seed, static_cast<std::size_t>(n.player));
  hash_mix(seed, static_cast<std::size_t>(n.count));
  for (PlayerId g : n.group) hash_mix(seed, static_cast<std::size_t>(g));
  hash_mix(seed, std::hash<std::string>{}(n.prop));
  for (const ProbTerm& t : n.terms) {
    hash_mix(seed, t.coeff.hash());
    hash_mix(seed, static_cast<std::size_t>(t.player));
    hash_mix(seed, t.arg);
  }
  hash_mix(seed, n.bound.hash());
  return seed;
}

std::vector<PlayerId> canonical_group(std::vector<PlayerId> group) {
  if (group.empty()) throw std::invalid_argument("formula: empty player group");
  std::sort(group.begin(), group.end());
  group.erase(std::unique(group.begin(), group.end()), group.end());
  if (group.front() < 1) throw std::invalid_argument("formula: player indices are 1-based");
  return group;
}

void require_player(PlayerId i) {
  if (i < 1) throw std::invalid_argument("formula: player indices are 1-based");
}

}  // namespace

FormulaFactory::FormulaFactory() {
  FormulaNode t;
  t.kind = NodeKind::True;
  true_id_ = intern(std::move(t));
}

FormulaId FormulaFactory::intern(FormulaNode node) {
  const std::size_t h = node_hash(node);
  auto& bucket = buckets_[h];
  for (FormulaId id : bucket) {
    if (nodes_[id] == node) return id;
  }
  const FormulaId id = static_cast<FormulaId>(nodes_.size());
  nodes_.push_back(std::move(node));
  bucket.push_back(id);
  return id;
}

FormulaId FormulaFactory::prim(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front())))
    throw std::invalid_argument("formula: proposition names start with a letter");
  for (char c : name) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      throw std::invalid_argument("formula: bad character in proposition name");
  }
  FormulaNode n;
  n.kind = NodeKind::Prim;
  n.prop = std::string(name);
  return intern(std::move(n));
}

FormulaId FormulaFactory::negation(FormulaId f) {
  FormulaNode n;
  n.kind = NodeKind::Not;
  n.child0 = f;
  return intern(std::move(n));
}

FormulaId FormulaFactory::conj(FormulaId a, FormulaId b) {
  FormulaNode n;
  n.kind = NodeKind::And;
  n.child0 = a;
  n.child1 = b;
  return intern(std::move(n));
}

FormulaId FormulaFactory::disj(FormulaId a, FormulaId b) {
  FormulaNode n;
  n.kind = NodeKind::Or;
  n.child0 = a;
  n.child1 = b;
  return intern(std::move(n));
}

FormulaId FormulaFactory::implies(FormulaId a, FormulaId b) {
  FormulaNode n;
  n.kind = NodeKind::Implies;
  n.child0 = a;
  n.child1 = b;
  return intern(std::move(n));
}

FormulaId FormulaFactory::iff(FormulaId a, FormulaId b) {
  FormulaNode n;
  n.kind = NodeKind::Iff;
  n.child0 = a;
  n.child1 = b;
  return intern(std::move(n));
}

FormulaId FormulaFactory::prob_ge(std::vector<ProbTerm> terms, Rational bound) {
  if (terms.empty()) throw std::invalid_argument("formula: probability sum needs a term");
  for (const ProbTerm& t : terms) require_player(t.player);
  FormulaNode n;
  n.kind = NodeKind::ProbGE;
  n.terms = std::move(terms);
  n.bound = std::move(bound);
  return intern(std::move(n));
}

FormulaId FormulaFactory::prob_cmp(CmpOp op, std::vector<ProbTerm> terms, Rational bound) {
  auto negated = [&terms] {
    std::vector<ProbTerm> out = terms;
    for (ProbTerm& t : out) t.coeff = -t.coeff;
    return out;
  };
  switch (op) {
    case CmpOp::Ge:
      return prob_ge(std::move(terms), std::move(bound));
    case CmpOp::Le:
      return prob_ge(negated(), -bound);
    case CmpOp::Lt:
      return negation(prob_ge(std::move(terms), std::move(bound)));
    case CmpOp::Gt:
      return negation(prob_ge(negated(), -bound));
    case CmpOp::Eq: {
      FormulaId ge = prob_ge(terms, bound);
      FormulaId le = prob_ge(negated(), -bound);
      return conj(ge, le);
    }
  }
  throw std::logic_error("formula: unknown comparison");
}

FormulaId FormulaFactory::belief(PlayerId i, FormulaId f) {
  require_player(i);
  FormulaNode n;
  n.kind = NodeKind::Belief;
  n.child0 = f;
  n.player = i;
  return intern(std::move(n));
}

FormulaId FormulaFactory::everyone_believes(int m, std::vector<PlayerId> group, FormulaId f) {
  if (m < 1) throw std::invalid_argument("formula: EB iteration depth must be >= 1");
  FormulaNode n;
  n.kind = NodeKind::EvBelief;
  n.child0 = f;
  n.count = m;
  n.group = canonical_group(std::move(group));
  return intern(std::move(n));
}

FormulaId FormulaFactory::common_belief(std::vector<PlayerId> group, FormulaId f) {
  FormulaNode n;
  n.kind = NodeKind::CommonBelief;
  n.child0 = f;
  n.group = canonical_group(std::move(group));
  return intern(std::move(n));
}

FormulaId FormulaFactory::knows(PlayerId i, FormulaId f) {
  require_player(i);
  FormulaNode n;
  n.kind = NodeKind::Knows;
  n.child0 = f;
  n.player = i;
  return intern(std::move(n));
}

FormulaId FormulaFactory::conj_all(const std::vector<FormulaId>& parts) {
  if (parts.empty()) return truth();
  FormulaId acc = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) acc = conj(acc, parts[k]);
  return acc;
}

// ── printing ──
//
// Precedence, loosest to tightest: prob atom, <->, ->, |, &, !, atoms.
// Probability atoms never nest bare inside a connective, so they get the
// loosest rank and pick up parentheses everywhere except at top level.

namespace {

constexpr int kPrecProb = 0;
constexpr int kPrecIff = 1;
constexpr int kPrecImplies = 2;
constexpr int kPrecOr = 3;
constexpr int kPrecAnd = 4;
constexpr int kPrecNot = 5;
constexpr int kPrecAtom = 6;

std::string join_group(const std::vector<PlayerId>& group) {
  std::string out;
  for (std::size_t k = 0; k < group.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(group[k]);
  }
  return out;
}

}  // namespace

std::string FormulaFactory::to_string(FormulaId f) const {
  // (node, context precedence) -> text; parenthesized when looser than context
  std::function<std::string(FormulaId, int)> pr = [&](FormulaId id, int ctx) {
    const FormulaNode& n = nodes_[id];
    std::string body;
    int prec = kPrecAtom;
    switch (n.kind) {
      case NodeKind::True:
        body = "true";
        break;
      case NodeKind::Prim:
        body = n.prop;
        break;
      case NodeKind::Not:
        prec = kPrecNot;
        body = "!" + pr(n.child0, kPrecNot);
        break;
      case NodeKind::And:
        prec = kPrecAnd;
        body = pr(n.child0, kPrecAnd) + " & " + pr(n.child1, kPrecAnd + 1);
        break;
      case NodeKind::Or:
        prec = kPrecOr;
        body = pr(n.child0, kPrecOr) + " | " + pr(n.child1, kPrecOr + 1);
        break;
      case NodeKind::Implies:
        prec = kPrecImplies;
        body = pr(n.child0, kPrecImplies + 1) + " -> " + pr(n.child1, kPrecImplies);
        break;
      case NodeKind::Iff:
        prec = kPrecIff;
        body = pr(n.child0, kPrecIff + 1) + " <-> " + pr(n.child1, kPrecIff);
        break;
      case NodeKind::ProbGE: {
        prec = kPrecProb;
        for (std::size_t k = 0; k < n.terms.size(); ++k) {
          if (k) body += " + ";
          const ProbTerm& t = n.terms[k];
          body += t.coeff.str() + "*Pr_" + std::to_string(t.player) + "(" + pr(t.arg, 0) + ")";
        }
        body += " >= " + n.bound.str();
        break;
      }
      case NodeKind::Belief:
        body = "B_" + std::to_string(n.player) + "(" + pr(n.child0, 0) + ")";
        break;
      case NodeKind::EvBelief:
        body = "EB^" + std::to_string(n.count) + "_{" + join_group(n.group) + "}(" +
               pr(n.child0, 0) + ")";
        break;
      case NodeKind::CommonBelief:
        body = "CB_{" + join_group(n.group) + "}(" + pr(n.child0, 0) + ")";
        break;
      case NodeKind::Knows:
        body = "K_" + std::to_string(n.player) + "(" + pr(n.child0, 0) + ")";
        break;
    }
    if (prec < ctx) return "(" + body + ")";
    return body;
  };
  return pr(f, 0);
}

// ── normalization ──

FormulaId FormulaFactory::normalize(FormulaId f) {
  if (auto it = normalize_memo_.find(f); it != normalize_memo_.end()) return it->second;

  // Copy the node up front: intern() may grow nodes_ under recursion.
  const FormulaNode n = nodes_[f];

  auto belief_core = [this](PlayerId i, FormulaId arg) {
    FormulaId ge1 = prob_ge({ProbTerm{Rational(1), i, arg}}, Rational(1));
    FormulaId le1 = prob_ge({ProbTerm{Rational(-1), i, arg}}, Rational(-1));
    return conj(ge1, le1);
  };

  FormulaId out = kNoFormula;
  switch (n.kind) {
    case NodeKind::True:
    case NodeKind::Prim:
      out = f;
      break;
    case NodeKind::Not:
      out = negation(normalize(n.child0));
      break;
    case NodeKind::And:
      out = conj(normalize(n.child0), normalize(n.child1));
      break;
    case NodeKind::Or: {
      FormulaId a = normalize(n.child0);
      FormulaId b = normalize(n.child1);
      out = negation(conj(negation(a), negation(b)));
      break;
    }
    case NodeKind::Implies: {
      FormulaId a = normalize(n.child0);
      FormulaId b = normalize(n.child1);
      out = negation(conj(a, negation(b)));
      break;
    }
    case NodeKind::Iff: {
      FormulaId a = normalize(n.child0);
      FormulaId b = normalize(n.child1);
      FormulaId ab = negation(conj(a, negation(b)));
      FormulaId ba = negation(conj(b, negation(a)));
      out = conj(ab, ba);
      break;
    }
    case NodeKind::ProbGE: {
      std::vector<ProbTerm> terms = n.terms;
      for (ProbTerm& t : terms) t.arg = normalize(t.arg);
      out = prob_ge(std::move(terms), n.bound);
      break;
    }
    case NodeKind::Belief:
      out = belief_core(n.player, normalize(n.child0));
      break;
    case NodeKind::EvBelief: {
      FormulaId level = normalize(n.child0);
      for (int k = 0; k < n.count; ++k) {
        std::vector<FormulaId> parts;
        parts.reserve(n.group.size());
        for (PlayerId i : n.group) parts.push_back(belief_core(i, level));
        level = conj_all(parts);
      }
      out = level;
      break;
    }
    case NodeKind::CommonBelief:
      out = common_belief(n.group, normalize(n.child0));
      break;
    case NodeKind::Knows:
      out = knows(n.player, normalize(n.child0));
      break;
  }

  normalize_memo_[f] = out;
  normalize_memo_[out] = out;
  return out;
}

bool FormulaFactory::is_propositional(FormulaId f) const {
  std::vector<FormulaId> stack{f};
  std::unordered_set<FormulaId> seen;
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const FormulaNode& n = nodes_[id];
    switch (n.kind) {
      case NodeKind::True:
      case NodeKind::Prim:
        break;
      case NodeKind::Not:
        stack.push_back(n.child0);
        break;
      case NodeKind::And:
      case NodeKind::Or:
      case NodeKind::Implies:
      case NodeKind::Iff:
        stack.push_back(n.child0);
        stack.push_back(n.child1);
        break;
      default:
        return false;
    }
  }
  return true;
}

void FormulaFactory::collect_props(FormulaId f, std::vector<std::string>& out,
                                   std::vector<FormulaId>& seen) const {
  if (std::find(seen.begin(), seen.end(), f) != seen.end()) return;
  seen.push_back(f);
  const FormulaNode& n = nodes_[f];
  if (n.kind == NodeKind::Prim) {
    if (std::find(out.begin(), out.end(), n.prop) == out.end()) out.push_back(n.prop);
    return;
  }
  if (n.child0 != kNoFormula) collect_props(n.child0, out, seen);
  if (n.child1 != kNoFormula) collect_props(n.child1, out, seen);
  for (const ProbTerm& t : n.terms) collect_props(t.arg, out, seen);
}

bool FormulaFactory::mentions(FormulaId f, NodeKind kind) const {
  std::vector<FormulaId> stack{f};
  std::unordered_set<FormulaId> seen;
  while (!stack.empty()) {
    const FormulaId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const FormulaNode& n = nodes_[id];
    if (n.kind == kind) return true;
    for (const ProbTerm& t : n.terms) stack.push_back(t.arg);
    if (n.child0 != kNoFormula) stack.push_back(n.child0);
    if (n.child1 != kNoFormula) stack.push_back(n.child1);
  }
  return false;
}

std::vector<std::string> FormulaFactory::props_of(FormulaId f) const {
  std::vector<std::string> out;
  std::vector<FormulaId> seen;
  collect_props(f, out, seen);
  return out;
}

PlayerId FormulaFactory::max_player(FormulaId f) const {
  PlayerId best = 0;
  std::vector<FormulaId> stack{f};
  std::unordered_set<FormulaId> seen;
  while (!stack.empty()) {
    FormulaId id = stack.back();
    stack.pop_back();
    if (!seen.insert(id).second) continue;
    const FormulaNode& n = nodes_[id];
    best = std::max(best, n.player);
    for (PlayerId g : n.group) best = std::max(best, g);
    for (const ProbTerm& t : n.terms) {
      best = std::max(best, t.player);
      stack.push_back(t.arg);
    }
    if (n.child0 != kNoFormula) stack.push_back(n.child0);
    if (n.child1 != kNoFormula) stack.push_back(n.child1);
  }
  return best;
}

}  // namespace ambilogic
