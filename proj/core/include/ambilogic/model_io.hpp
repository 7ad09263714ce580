// ===== model_io.hpp — model files =====
//
// One JSON document per structure:
//
//   {
//     "states":          ["w1", ...],
//     "players":         2,
//     "partitions":      [ [["w1","w2"],["w3"]], ... ]        per player
//     "posteriors":      [ [{"w1":"1/2","w2":"1/2"},{"w3":"1"}], ... ]
//     "interpretations": [ [["p","q"], [], ["q"]], ... ]      per player, per state
//     "priors":          [ {"w1":"1/3", ...}, ... ]           optional
//     "cell_labels":     [ ["recv_1_s","!recv_1_s"], ... ]    optional, per cell
//     "signals":         { "w1": ["s","s"], "w2": ["s",null] } optional
//   }
//
// Probability masses are always strings, "n" or "n/d"; states and cells are
// referenced by name; array positions encode player (outer) and state or
// cell (inner) order. Unknown top-level keys are rejected.

#pragma once

#include "ambilogic/structure.hpp"

#include <string>

namespace ambilogic {

Structure parse_structure_json(const std::string& text, int max_states = kDefaultMaxStates);
Structure load_structure(const std::string& path, int max_states = kDefaultMaxStates);

std::string structure_to_json(const Structure& m);
void save_structure(const Structure& m, const std::string& path);

}  // namespace ambilogic
