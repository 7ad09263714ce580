#include "ambilogic/structure.hpp"

#include "ambilogic/parser.hpp"

#include <algorithm>
#include <cctype>

namespace ambilogic {

namespace {

bool identifier_shaped(const std::string& s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  for (char c : s) {
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  }
  return true;
}

// Names the formula parser claims for itself; a proposition with one of
// these shapes could never be mentioned in a query.
bool reserved_prop_name(const std::string& s) {
  if (s == "true" || s == "EB") return true;
  if (s.rfind("CB_", 0) == 0) return true;
  auto digits_after = [&s](std::string_view prefix) {
    if (s.size() <= prefix.size() || s.rfind(prefix, 0) != 0) return false;
    for (std::size_t k = prefix.size(); k < s.size(); ++k) {
      if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
    }
    return true;
  };
  return digits_after("B_") || digits_after("K_") || digits_after("Pr_");
}

}  // namespace

int Structure::state_index(const std::string& name) const {
  auto it = name_to_idx_.find(name);
  return it == name_to_idx_.end() ? -1 : it->second;
}

bool Structure::has_prop(const std::string& name) const {
  return prop_to_idx_.count(name) > 0;
}

void Structure::check_player(PlayerId i) const {
  if (i < 1 || i > players_)
    throw ModelError("player index " + std::to_string(i) + " out of range (structure has " +
                     std::to_string(players_) + " players)");
}

int Structure::cell_count(PlayerId i) const {
  check_player(i);
  return static_cast<int>(cells_[i - 1].size());
}

const StateSet& Structure::cell(PlayerId i, int cell_idx) const {
  check_player(i);
  return cells_[i - 1].at(cell_idx);
}

int Structure::cell_index(PlayerId i, int state) const {
  check_player(i);
  return cell_of_[i - 1].at(state);
}

const StateSet& Structure::cell_of(PlayerId i, int state) const {
  int c = cell_index(i, state);
  if (c < 0)
    throw ModelError("state '" + names_.at(state) + "' is in no cell of player " +
                     std::to_string(i));
  return cells_[i - 1][c];
}

const std::map<int, Rational>& Structure::posterior_entries(PlayerId i, int cell_idx) const {
  check_player(i);
  return post_[i - 1].at(cell_idx);
}

Rational Structure::posterior_mass(PlayerId i, int state) const {
  int c = cell_index(i, state);
  if (c < 0)
    throw ModelError("state '" + names_.at(state) + "' is in no cell of player " +
                     std::to_string(i));
  const auto& entries = post_[i - 1][c];
  auto it = entries.find(state);
  return it == entries.end() ? Rational(0) : it->second;
}

Rational Structure::cell_measure(PlayerId i, int cell_idx, const StateSet& e) const {
  check_player(i);
  const StateSet& c = cells_[i - 1].at(cell_idx);
  Rational total(0);
  for (const auto& [state, mass] : post_[i - 1][cell_idx]) {
    if (c.test(state) && e.test(state)) total += mass;
  }
  return total;
}

Rational Structure::posterior_measure(PlayerId i, int state, const StateSet& e) const {
  int c = cell_index(i, state);
  if (c < 0)
    throw ModelError("state '" + names_.at(state) + "' is in no cell of player " +
                     std::to_string(i));
  return cell_measure(i, c, e);
}

bool Structure::prop_true_at(PlayerId i, int state, const std::string& prop) const {
  return prop_extension(i, prop).test(state);
}

const StateSet& Structure::prop_extension(PlayerId i, const std::string& prop) const {
  check_player(i);
  auto it = prop_to_idx_.find(prop);
  if (it == prop_to_idx_.end())
    throw ModelError("unknown proposition '" + prop + "'");
  return ext_[i - 1][it->second];
}

const std::vector<Rational>& Structure::prior(PlayerId i) const {
  check_player(i);
  if (!priors_) throw ModelError("structure has no priors");
  return (*priors_)[i - 1];
}

Rational Structure::prior_measure(PlayerId i, const StateSet& e) const {
  const auto& nu = prior(i);
  Rational total(0);
  for (int s = 0; s < state_count(); ++s) {
    if (e.test(s)) total += nu[s];
  }
  return total;
}

const std::string& Structure::cell_label(PlayerId i, int cell_idx) const {
  check_player(i);
  if (!labels_) throw ModelError("structure has no cell labels");
  return (*labels_)[i - 1].at(cell_idx);
}

const std::optional<std::string>& Structure::signal(PlayerId i, int state) const {
  check_player(i);
  if (!signals_) throw ModelError("structure has no signals");
  return (*signals_)[i - 1].at(state);
}

std::vector<std::string> Structure::signal_names() const {
  std::vector<std::string> out;
  if (!signals_) return out;
  for (int s = 0; s < state_count(); ++s) {
    for (int i = 1; i <= players_; ++i) {
      const auto& sig = (*signals_)[i - 1][s];
      if (sig && std::find(out.begin(), out.end(), *sig) == out.end()) out.push_back(*sig);
    }
  }
  return out;
}

StructureData Structure::to_data() const {
  StructureData d;
  d.states = names_;
  d.players = players_;
  d.partitions.resize(players_);
  d.posteriors.resize(players_);
  d.interpretations.resize(players_);
  for (int i = 0; i < players_; ++i) {
    for (const StateSet& c : cells_[i]) {
      std::vector<std::string> member_names;
      for (int s : c.members()) member_names.push_back(names_[s]);
      d.partitions[i].push_back(std::move(member_names));
    }
    for (const auto& entries : post_[i]) {
      std::map<std::string, Rational> out;
      for (const auto& [state, mass] : entries) out[names_[state]] = mass;
      d.posteriors[i].push_back(std::move(out));
    }
    d.interpretations[i].resize(names_.size());
    for (int s = 0; s < state_count(); ++s) {
      for (const std::string& p : props_) {
        if (ext_[i][prop_to_idx_.at(p)].test(s)) d.interpretations[i][s].push_back(p);
      }
    }
  }
  if (priors_) {
    d.priors.emplace();
    for (int i = 0; i < players_; ++i) {
      std::map<std::string, Rational> nu;
      for (int s = 0; s < state_count(); ++s) {
        if (!(*priors_)[i][s].is_zero()) nu[names_[s]] = (*priors_)[i][s];
      }
      d.priors->push_back(std::move(nu));
    }
  }
  if (labels_) d.cell_labels = *labels_;
  if (signals_) {
    d.signals.emplace();
    for (int s = 0; s < state_count(); ++s) {
      std::vector<std::optional<std::string>> row;
      for (int i = 0; i < players_; ++i) row.push_back((*signals_)[i][s]);
      (*d.signals)[names_[s]] = std::move(row);
    }
  }
  return d;
}

Structure build_structure(const StructureData& data, int max_states) {
  Structure m;

  if (data.states.empty()) throw ModelError("structure needs at least one state");
  if (static_cast<int>(data.states.size()) > max_states)
    throw ModelError("structure has " + std::to_string(data.states.size()) +
                     " states, more than the cap of " + std::to_string(max_states));
  for (const std::string& name : data.states) {
    if (!identifier_shaped(name)) throw ModelError("state name '" + name + "' is not an identifier");
    if (m.name_to_idx_.count(name)) throw ModelError("duplicate state name '" + name + "'");
    m.name_to_idx_[name] = static_cast<int>(m.names_.size());
    m.names_.push_back(name);
  }
  const int n_states = m.state_count();

  if (data.players < 1) throw ModelError("structure needs at least one player");
  m.players_ = data.players;
  const int n = m.players_;

  auto state_idx = [&m](const std::string& name, const char* where) {
    int idx = m.state_index(name);
    if (idx < 0) throw ModelError(std::string("unknown state '") + name + "' in " + where);
    return idx;
  };

  if (static_cast<int>(data.partitions.size()) != n)
    throw ModelError("partitions must list one partition per player");
  m.cells_.resize(n);
  m.cell_of_.assign(n, std::vector<int>(n_states, -1));
  for (int i = 0; i < n; ++i) {
    if (data.partitions[i].empty())
      throw ModelError("player " + std::to_string(i + 1) + " has an empty partition");
    for (const auto& members : data.partitions[i]) {
      if (members.empty())
        throw ModelError("player " + std::to_string(i + 1) + " has an empty cell");
      StateSet c(n_states);
      for (const std::string& name : members) {
        int s = state_idx(name, "a partition cell");
        if (c.test(s))
          throw ModelError("state '" + name + "' listed twice in one cell of player " +
                           std::to_string(i + 1));
        c.set(s);
      }
      int idx = static_cast<int>(m.cells_[i].size());
      for (int s : c.members()) {
        if (m.cell_of_[i][s] < 0) m.cell_of_[i][s] = idx;
      }
      m.cells_[i].push_back(std::move(c));
    }
  }

  if (static_cast<int>(data.posteriors.size()) != n)
    throw ModelError("posteriors must list one entry per player");
  m.post_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (data.posteriors[i].size() != m.cells_[i].size())
      throw ModelError("player " + std::to_string(i + 1) + " has " +
                       std::to_string(m.cells_[i].size()) + " cells but " +
                       std::to_string(data.posteriors[i].size()) + " posterior maps");
    for (const auto& entries : data.posteriors[i]) {
      std::map<int, Rational> out;
      for (const auto& [name, mass] : entries) out[state_idx(name, "a posterior")] = mass;
      m.post_[i].push_back(std::move(out));
    }
  }

  if (static_cast<int>(data.interpretations.size()) != n)
    throw ModelError("interpretations must list one entry per player");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(data.interpretations[i].size()) != n_states)
      throw ModelError("player " + std::to_string(i + 1) +
                       " interpretation must cover every state in order");
    for (const auto& props : data.interpretations[i]) {
      for (const std::string& p : props) {
        if (!identifier_shaped(p)) throw ModelError("proposition name '" + p + "' is not an identifier");
        if (reserved_prop_name(p))
          throw ModelError("proposition name '" + p + "' is reserved by the formula syntax");
        if (!m.prop_to_idx_.count(p)) {
          m.prop_to_idx_[p] = static_cast<int>(m.props_.size());
          m.props_.push_back(p);
        }
      }
    }
  }
  m.ext_.assign(n, std::vector<StateSet>(m.props_.size(), StateSet(n_states)));
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < n_states; ++s) {
      for (const std::string& p : data.interpretations[i][s]) {
        m.ext_[i][m.prop_to_idx_[p]].set(s);
      }
    }
  }
  m.empty_ext_ = StateSet(n_states);

  if (data.priors) {
    if (static_cast<int>(data.priors->size()) != n)
      throw ModelError("priors must list one measure per player");
    m.priors_.emplace(n, std::vector<Rational>(n_states, Rational(0)));
    for (int i = 0; i < n; ++i) {
      for (const auto& [name, mass] : (*data.priors)[i]) {
        (*m.priors_)[i][state_idx(name, "a prior")] = mass;
      }
    }
  }

  if (data.cell_labels) {
    if (static_cast<int>(data.cell_labels->size()) != n)
      throw ModelError("cell_labels must list one entry per player");
    for (int i = 0; i < n; ++i) {
      if ((*data.cell_labels)[i].size() != m.cells_[i].size())
        throw ModelError("player " + std::to_string(i + 1) +
                         " needs one cell label per partition cell");
      for (const std::string& text : (*data.cell_labels)[i]) {
        try {
          FormulaFactory probe;
          parse_formula(text, probe);
        } catch (const ParseError& e) {
          throw ModelError("cell label '" + text + "' for player " + std::to_string(i + 1) +
                           " does not parse: " + e.what());
        }
      }
    }
    m.labels_ = *data.cell_labels;
  }

  if (data.signals) {
    m.signals_.emplace(n, std::vector<std::optional<std::string>>(n_states));
    for (const auto& [name, row] : *data.signals) {
      int s = state_idx(name, "signals");
      if (static_cast<int>(row.size()) != n)
        throw ModelError("signals at state '" + name + "' must list one entry per player");
      for (int i = 0; i < n; ++i) {
        if (row[i] && !identifier_shaped(*row[i]))
          throw ModelError("signal name '" + *row[i] + "' is not an identifier");
        (*m.signals_)[i][s] = row[i];
      }
    }
  }

  return m;
}

StateSet reachable(const Structure& m, const std::vector<PlayerId>& group, int state) {
  if (group.empty()) throw std::invalid_argument("reachable: empty group");
  if (state < 0 || state >= m.state_count())
    throw std::invalid_argument("reachable: state index out of range");

  StateSet closure = StateSet::single(m.state_count(), state);
  bool grew = true;
  while (grew) {
    grew = false;
    for (PlayerId i : group) {
      for (int c = 0; c < m.cell_count(i); ++c) {
        const StateSet& cell = m.cell(i, c);
        if (cell.intersects(closure) && !cell.is_subset_of(closure)) {
          closure |= cell;
          grew = true;
        }
      }
    }
  }
  return closure;
}

std::vector<std::vector<Rational>> generate_priors(const Structure& m) {
  std::vector<std::vector<Rational>> priors(m.player_count(),
                                            std::vector<Rational>(m.state_count(), Rational(0)));
  for (PlayerId i = 1; i <= m.player_count(); ++i) {
    const Rational share(1, m.cell_count(i));
    for (int s = 0; s < m.state_count(); ++s) {
      priors[i - 1][s] = share * m.posterior_mass(i, s);
    }
  }
  return priors;
}

PriorGenReport check_prior_generated(const Structure& m) {
  if (!m.has_priors())
    throw std::invalid_argument("check_prior_generated: structure has no priors");

  PriorGenReport report;
  for (PlayerId i = 1; i <= m.player_count(); ++i) {
    const auto& nu = m.prior(i);
    for (int c = 0; c < m.cell_count(i); ++c) {
      const StateSet& cell = m.cell(i, c);
      Rational cell_mass = m.prior_measure(i, cell);
      if (cell_mass.is_zero()) {
        report.unconstrained.emplace_back(i, c);
        continue;
      }
      for (int s : cell.members()) {
        Rational expected = nu[s] / cell_mass;
        Rational actual = m.posterior_mass(i, s);
        if (expected != actual) {
          report.ok = false;
          report.mismatches.push_back({i, c, s, expected, actual});
        }
      }
    }
  }
  return report;
}

CpaReport check_cpa(const Structure& m) {
  CpaReport report;
  report.has_priors = m.has_priors();
  if (!report.has_priors) return report;

  report.priors_common = true;
  for (PlayerId i = 1; i <= m.player_count() && report.priors_common; ++i) {
    for (PlayerId j = i + 1; j <= m.player_count() && report.priors_common; ++j) {
      for (int s = 0; s < m.state_count(); ++s) {
        if (m.prior(i)[s] != m.prior(j)[s]) {
          report.priors_common = false;
          report.differ_i = i;
          report.differ_j = j;
          report.differ_state = s;
          break;
        }
      }
    }
  }

  report.prior_generated = check_prior_generated(m);

  std::vector<PlayerId> everyone;
  for (PlayerId i = 1; i <= m.player_count(); ++i) everyone.push_back(i);
  report.reachable_positive = true;
  for (int s = 0; s < m.state_count(); ++s) {
    StateSet cls = reachable(m, everyone, s);
    if (m.prior_measure(1, cls).is_zero()) {
      report.reachable_positive = false;
      report.null_reachable_state = s;
      break;
    }
  }

  report.ok = report.priors_common && report.prior_generated.ok && report.reachable_positive;
  return report;
}

bool common_prior_impossible(const Structure& m) {
  StateSet common = StateSet::full(m.state_count());
  for (PlayerId i = 1; i <= m.player_count(); ++i) {
    StateSet support(m.state_count());
    for (int c = 0; c < m.cell_count(i); ++c) {
      for (const auto& [s, mass] : m.posterior_entries(i, c)) {
        if (!mass.is_zero()) support.set(s);
      }
    }
    common &= support;
  }
  return common.empty();
}

}  // namespace ambilogic
