#include "ambilogic/generator.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace ambilogic {

namespace {

std::uint64_t draw(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

int draw_range(std::mt19937_64& rng, int lo, int hi) {
  if (lo > hi) throw std::invalid_argument("generator range is empty");
  return lo + static_cast<int>(draw(rng, static_cast<std::uint64_t>(hi - lo + 1)));
}

bool draw_chance(std::mt19937_64& rng, const Rational& p) {
  if (p <= Rational(0)) return false;
  if (p >= Rational(1)) return true;
  const auto num = p.numerator().convert_to<std::uint64_t>();
  const auto den = p.denominator().convert_to<std::uint64_t>();
  return draw(rng, den) < num;
}

// Every state lands in one of up to `n` cells; used cells are renumbered
// densely in order of their lowest member.
std::vector<std::vector<int>> draw_partition(std::mt19937_64& rng, int n) {
  std::vector<int> raw(n);
  const int target = draw_range(rng, 1, n);
  for (int s = 0; s < n; ++s) raw[s] = static_cast<int>(draw(rng, target));
  std::vector<int> renumber(target, -1);
  std::vector<std::vector<int>> cells;
  for (int s = 0; s < n; ++s) {
    int& idx = renumber[raw[s]];
    if (idx < 0) {
      idx = static_cast<int>(cells.size());
      cells.emplace_back();
    }
    cells[idx].push_back(s);
  }
  return cells;
}

std::map<std::string, Rational> weighted_masses(std::mt19937_64& rng,
                                                const std::vector<int>& members,
                                                const std::vector<std::string>& names) {
  std::vector<long long> weights(members.size());
  long long total = 0;
  for (auto& w : weights) {
    w = 1 + static_cast<long long>(draw(rng, 9));
    total += w;
  }
  std::map<std::string, Rational> out;
  for (std::size_t k = 0; k < members.size(); ++k) {
    out[names[members[k]]] = Rational(weights[k], total);
  }
  return out;
}

}  // namespace

Structure random_structure(std::uint64_t seed, const GeneratorConfig& config) {
  std::mt19937_64 rng(seed);
  StructureData data;

  const int n = draw_range(rng, config.min_states, config.max_states);
  const int players = draw_range(rng, config.min_players, config.max_players);
  const int props = draw_range(rng, config.min_props, config.max_props);

  for (int s = 0; s < n; ++s) data.states.push_back("w" + std::to_string(s + 1));
  data.players = players;

  std::vector<std::vector<std::vector<int>>> cells(players);
  for (int i = 0; i < players; ++i) {
    cells[i] = draw_partition(rng, n);
    std::vector<std::vector<std::string>> named;
    for (const auto& cell : cells[i]) {
      std::vector<std::string> members;
      for (int s : cell) members.push_back(data.states[s]);
      named.push_back(std::move(members));
    }
    data.partitions.push_back(std::move(named));
  }

  // Payload propositions: player 1 draws a nonempty extension, everyone
  // else copies it with per-state flips.
  std::vector<std::vector<std::vector<bool>>> truth(
      players, std::vector<std::vector<bool>>(props, std::vector<bool>(n, false)));
  for (int p = 0; p < props; ++p) {
    bool any = false;
    for (int s = 0; s < n; ++s) {
      truth[0][p][s] = draw(rng, 2) == 1;
      any = any || truth[0][p][s];
    }
    if (!any) truth[0][p][static_cast<int>(draw(rng, n))] = true;
    for (int i = 1; i < players; ++i) {
      for (int s = 0; s < n; ++s) {
        truth[i][p][s] = truth[0][p][s] != draw_chance(rng, config.ambiguity);
      }
    }
  }

  if (config.common_prior) {
    std::vector<long long> weights(n);
    long long total = 0;
    for (auto& w : weights) {
      w = 1 + static_cast<long long>(draw(rng, 9));
      total += w;
    }
    std::map<std::string, Rational> prior;
    for (int s = 0; s < n; ++s) prior[data.states[s]] = Rational(weights[s], total);
    data.priors = std::vector<std::map<std::string, Rational>>(players, prior);

    for (int i = 0; i < players; ++i) {
      std::vector<std::map<std::string, Rational>> per_cell;
      for (const auto& cell : cells[i]) {
        long long mass = 0;
        for (int s : cell) mass += weights[s];
        std::map<std::string, Rational> post;
        for (int s : cell) post[data.states[s]] = Rational(weights[s], mass);
        per_cell.push_back(std::move(post));
      }
      data.posteriors.push_back(std::move(per_cell));
    }
  } else {
    for (int i = 0; i < players; ++i) {
      std::vector<std::map<std::string, Rational>> per_cell;
      for (const auto& cell : cells[i]) {
        if (config.allow_degenerate && draw(rng, 4) == 0) {
          std::map<std::string, Rational> post;
          post[data.states[cell[draw(rng, cell.size())]]] = Rational(1);
          per_cell.push_back(std::move(post));
        } else {
          per_cell.push_back(weighted_masses(rng, cell, data.states));
        }
      }
      data.posteriors.push_back(std::move(per_cell));
    }
  }

  // Reception propositions and labels. Player i's own reading of
  // recv_<i>_<k> is exactly their k-th cell; reader j sees a block of a
  // random coarsening of i's partition, so each reader's readings of i's
  // labels tile the state space and contain the emitting cell.
  std::vector<std::vector<std::vector<std::vector<int>>>> recv_ext;
  if (config.with_signals) {
    recv_ext.assign(players, {});
    for (int i = 0; i < players; ++i) {
      const int ci = static_cast<int>(cells[i].size());
      recv_ext[i].assign(ci, std::vector<std::vector<int>>(players));
      for (int j = 0; j < players; ++j) {
        if (j == i) {
          for (int c = 0; c < ci; ++c) recv_ext[i][c][j] = cells[i][c];
          continue;
        }
        std::vector<int> block_of(ci, 0);
        int blocks = 1;
        for (int c = 1; c < ci; ++c) {
          if (draw_chance(rng, config.ambiguity)) {
            block_of[c] = block_of[c - 1];
          } else {
            block_of[c] = blocks++;
          }
        }
        std::vector<std::vector<int>> block_states(blocks);
        for (int c = 0; c < ci; ++c) {
          auto& dst = block_states[block_of[c]];
          dst.insert(dst.end(), cells[i][c].begin(), cells[i][c].end());
        }
        for (auto& b : block_states) std::sort(b.begin(), b.end());
        for (int c = 0; c < ci; ++c) recv_ext[i][c][j] = block_states[block_of[c]];
      }
    }

    std::vector<std::vector<std::string>> labels(players);
    std::map<std::string, std::vector<std::optional<std::string>>> signals;
    for (const auto& name : data.states) {
      signals[name] = std::vector<std::optional<std::string>>(players);
    }
    for (int i = 0; i < players; ++i) {
      for (int c = 0; c < static_cast<int>(cells[i].size()); ++c) {
        const std::string sig = "s" + std::to_string(c + 1);
        labels[i].push_back("recv_" + std::to_string(i + 1) + "_" + sig);
        for (int s : cells[i][c]) signals[data.states[s]][i] = sig;
      }
    }
    data.cell_labels = std::move(labels);
    data.signals = std::move(signals);
  }

  for (int j = 0; j < players; ++j) {
    std::vector<std::vector<std::string>> rows(n);
    for (int s = 0; s < n; ++s) {
      for (int p = 0; p < props; ++p) {
        if (truth[j][p][s]) rows[s].push_back("p" + std::to_string(p + 1));
      }
    }
    if (config.with_signals) {
      for (int i = 0; i < players; ++i) {
        for (int c = 0; c < static_cast<int>(cells[i].size()); ++c) {
          const std::string prop =
              "recv_" + std::to_string(i + 1) + "_s" + std::to_string(c + 1);
          for (int s : recv_ext[i][c][j]) rows[s].push_back(prop);
        }
      }
    }
    data.interpretations.push_back(std::move(rows));
  }

  return build_structure(data);
}

}  // namespace ambilogic
