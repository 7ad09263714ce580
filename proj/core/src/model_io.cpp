#include "ambilogic/model_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <sstream>

namespace ambilogic {

namespace {

using Json = nlohmann::ordered_json;

Rational rational_field(const Json& j, const std::string& where) {
  if (!j.is_string())
    throw ModelError(where + ": probability masses must be strings like \"1/2\"");
  auto r = Rational::parse(j.get<std::string>());
  if (!r) throw ModelError(where + ": malformed rational '" + j.get<std::string>() + "'");
  return *r;
}

std::vector<std::string> string_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw ModelError(where + ": expected an array of strings");
  std::vector<std::string> out;
  for (const Json& e : j) {
    if (!e.is_string()) throw ModelError(where + ": expected an array of strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

}  // namespace

Structure parse_structure_json(const std::string& text, int max_states) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ModelError(std::string("model file is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ModelError("model file must be a JSON object");

  static const char* known[] = {"states", "players", "partitions", "posteriors",
                                "interpretations", "priors", "cell_labels", "signals"};
  for (const auto& [key, value] : doc.items()) {
    bool ok = false;
    for (const char* k : known) ok |= key == k;
    if (!ok) throw ModelError("unknown model field '" + key + "'");
  }
  for (const char* k : {"states", "players", "partitions", "posteriors", "interpretations"}) {
    if (!doc.contains(k)) throw ModelError(std::string("model field '") + k + "' is required");
  }

  StructureData data;
  data.states = string_array(doc["states"], "states");

  if (!doc["players"].is_number_unsigned())
    throw ModelError("players: expected a positive integer");
  data.players = doc["players"].get<int>();

  const Json& parts = doc["partitions"];
  if (!parts.is_array()) throw ModelError("partitions: expected an array (one per player)");
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const Json& per_player = parts[i];
    if (!per_player.is_array())
      throw ModelError("partitions: player " + std::to_string(i + 1) + " must be an array of cells");
    std::vector<std::vector<std::string>> cells;
    for (const Json& cell : per_player) {
      cells.push_back(string_array(cell, "partitions"));
    }
    data.partitions.push_back(std::move(cells));
  }

  const Json& post = doc["posteriors"];
  if (!post.is_array()) throw ModelError("posteriors: expected an array (one per player)");
  for (std::size_t i = 0; i < post.size(); ++i) {
    const Json& per_player = post[i];
    if (!per_player.is_array())
      throw ModelError("posteriors: player " + std::to_string(i + 1) + " must be an array of maps");
    std::vector<std::map<std::string, Rational>> cells;
    for (const Json& cell : per_player) {
      if (!cell.is_object()) throw ModelError("posteriors: each cell entry must be a map");
      std::map<std::string, Rational> entries;
      for (const auto& [state, mass] : cell.items()) {
        entries[state] = rational_field(mass, "posteriors");
      }
      cells.push_back(std::move(entries));
    }
    data.posteriors.push_back(std::move(cells));
  }

  const Json& interp = doc["interpretations"];
  if (!interp.is_array()) throw ModelError("interpretations: expected an array (one per player)");
  for (std::size_t i = 0; i < interp.size(); ++i) {
    const Json& per_player = interp[i];
    if (!per_player.is_array())
      throw ModelError("interpretations: player " + std::to_string(i + 1) +
                       " must list true propositions per state");
    std::vector<std::vector<std::string>> rows;
    for (const Json& row : per_player) {
      rows.push_back(string_array(row, "interpretations"));
    }
    data.interpretations.push_back(std::move(rows));
  }

  if (doc.contains("priors")) {
    const Json& priors = doc["priors"];
    if (!priors.is_array()) throw ModelError("priors: expected an array (one per player)");
    data.priors.emplace();
    for (const Json& per_player : priors) {
      if (!per_player.is_object()) throw ModelError("priors: each entry must be a map");
      std::map<std::string, Rational> nu;
      for (const auto& [state, mass] : per_player.items()) {
        nu[state] = rational_field(mass, "priors");
      }
      data.priors->push_back(std::move(nu));
    }
  }

  if (doc.contains("cell_labels")) {
    const Json& labels = doc["cell_labels"];
    if (!labels.is_array()) throw ModelError("cell_labels: expected an array (one per player)");
    data.cell_labels.emplace();
    for (const Json& per_player : labels) {
      data.cell_labels->push_back(string_array(per_player, "cell_labels"));
    }
  }

  if (doc.contains("signals")) {
    const Json& signals = doc["signals"];
    if (!signals.is_object()) throw ModelError("signals: expected a map from state to signals");
    data.signals.emplace();
    for (const auto& [state, row] : signals.items()) {
      if (!row.is_array())
        throw ModelError("signals: entry for '" + state + "' must be an array (one per player)");
      std::vector<std::optional<std::string>> sigs;
      for (const Json& s : row) {
        if (s.is_null()) sigs.push_back(std::nullopt);
        else if (s.is_string()) sigs.push_back(s.get<std::string>());
        else throw ModelError("signals: entries are signal names or null");
      }
      (*data.signals)[state] = std::move(sigs);
    }
  }

  return build_structure(data, max_states);
}

Structure load_structure(const std::string& path, int max_states) {
  std::ifstream in(path);
  if (!in) throw ModelError("cannot open model file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_structure_json(buffer.str(), max_states);
}

std::string structure_to_json(const Structure& m) {
  const StructureData data = m.to_data();
  Json doc;
  doc["states"] = data.states;
  doc["players"] = data.players;

  Json parts = Json::array();
  for (const auto& per_player : data.partitions) {
    Json cells = Json::array();
    for (const auto& cell : per_player) cells.push_back(cell);
    parts.push_back(std::move(cells));
  }
  doc["partitions"] = std::move(parts);

  Json post = Json::array();
  for (const auto& per_player : data.posteriors) {
    Json cells = Json::array();
    for (const auto& cell : per_player) {
      Json entries = Json::object();
      for (const auto& [state, mass] : cell) entries[state] = mass.str();
      cells.push_back(std::move(entries));
    }
    post.push_back(std::move(cells));
  }
  doc["posteriors"] = std::move(post);

  Json interp = Json::array();
  for (const auto& per_player : data.interpretations) {
    Json rows = Json::array();
    for (const auto& row : per_player) rows.push_back(row);
    interp.push_back(std::move(rows));
  }
  doc["interpretations"] = std::move(interp);

  if (data.priors) {
    Json priors = Json::array();
    for (const auto& per_player : *data.priors) {
      Json nu = Json::object();
      for (const auto& [state, mass] : per_player) nu[state] = mass.str();
      priors.push_back(std::move(nu));
    }
    doc["priors"] = std::move(priors);
  }

  if (data.cell_labels) {
    Json labels = Json::array();
    for (const auto& per_player : *data.cell_labels) labels.push_back(per_player);
    doc["cell_labels"] = std::move(labels);
  }

  if (data.signals) {
    Json signals = Json::object();
    for (const auto& [state, row] : *data.signals) {
      Json sigs = Json::array();
      for (const auto& s : row) {
        if (s) sigs.push_back(*s);
        else sigs.push_back(nullptr);
      }
      signals[state] = std::move(sigs);
    }
    doc["signals"] = std::move(signals);
  }

  return doc.dump(2) + "\n";
}

void save_structure(const Structure& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw ModelError("cannot write model file '" + path + "'");
  out << structure_to_json(m);
}

}  // namespace ambilogic
