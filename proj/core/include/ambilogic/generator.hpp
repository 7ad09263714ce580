// ===== generator.hpp — seeded random structures =====
//
// Produces pseudo-random structures for property sweeps. A given (seed,
// config) pair always yields the same structure: draws come from
// std::mt19937_64 — whose output sequence the C++ standard pins down —
// reduced by modulus, never through std::uniform_int_distribution, whose
// mapping varies across standard libraries.
//
// Knobs:
//   * ambiguity — chance, per proposition and per player beyond the first,
//     that the player's reading of a state flips relative to player 1.
//     Zero yields a commonly interpreted structure.
//   * common_prior — posteriors are generated by one strictly positive
//     prior shared by all players (and the prior is stored), so the output
//     satisfies the common prior assumption by construction. Otherwise
//     posteriors are drawn independently per cell and no priors are stored.
//   * with_signals — attaches a signal to every (player, state), one
//     distinct signal per cell of the receiving player, plus reception
//     propositions `recv_<i>_<signal>`. The receiver reads their own
//     reception proposition as exactly the emitting cell; other players
//     read it as a block of a random coarsening of the receiver's
//     partition (blocks merge with probability `ambiguity`). Cell labels
//     are installed accordingly, so the output is label-complete and the
//     label readings of any reader tile the state space.
//   * allow_degenerate — when posteriors are drawn per cell, permits point
//     masses; otherwise every member of a cell gets positive mass.

#pragma once

#include "ambilogic/rational.hpp"
#include "ambilogic/structure.hpp"

#include <cstdint>

namespace ambilogic {

struct GeneratorConfig {
  int min_states = 2;
  int max_states = 6;
  int min_players = 2;
  int max_players = 3;
  int min_props = 1;
  int max_props = 2;
  Rational ambiguity = Rational(1, 4);
  bool common_prior = true;
  bool with_signals = false;
  bool allow_degenerate = false;
};

Structure random_structure(std::uint64_t seed, const GeneratorConfig& config = {});

}  // namespace ambilogic
