#include "seqamp/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "seqamp/errors.hpp"

namespace seqamp {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  fail(Errc::parse_error, where + ": " + what);
}

const json& field(const json& j, const char* key, const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) bad(where, std::string("missing field '") + key + "'");
  return *it;
}

int get_int(const json& j, const char* key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer())
    bad(where, std::string("field '") + key + "' must be an integer");
  return v.get<int>();
}

std::string get_string(const json& j, const char* key,
                       const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string())
    bad(where, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string get_string_or(const json& j, const char* key,
                          const std::string& fallback,
                          const std::string& where) {
  const auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_string())
    bad(where, std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

Complex get_complex(const json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() ||
      !v[1].is_number())
    bad(where, "matrix entries must be [re, im] number pairs");
  return {v[0].get<Real>(), v[1].get<Real>()};
}

Matrix get_matrix(const json& j, const char* key, int dim,
                  const std::string& where) {
  const json& rows = field(j, key, where);
  if (!rows.is_array() || static_cast<int>(rows.size()) != dim)
    bad(where, "matrix must have exactly " + std::to_string(dim) + " rows");
  Matrix m(dim, dim);
  for (int r = 0; r < dim; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != dim)
      bad(where, "matrix row " + std::to_string(r) + " must have " +
                     std::to_string(dim) + " entries");
    for (int c = 0; c < dim; ++c)
      m(r, c) = get_complex(row[static_cast<std::size_t>(c)],
                            where + ", row " + std::to_string(r));
  }
  return m;
}

IndexSet get_index_set(const json& v, const std::string& where) {
  if (v.is_number_integer()) return IndexSet::single(v.get<int>());
  if (!v.is_array() || v.empty())
    bad(where, "outcome must be an atomic index or a nonempty index array");
  std::vector<int> indices;
  for (const json& e : v) {
    if (!e.is_number_integer()) bad(where, "outcome indices must be integers");
    indices.push_back(e.get<int>());
  }
  return IndexSet(std::move(indices));
}

const Measurement& declared(const AmplitudeModel& model,
                            const std::string& id, const std::string& where) {
  if (!model.has_measurement(id))
    fail(Errc::unresolved_reference,
         where + ": measurement '" + id + "' is not declared");
  return model.measurement(id);
}

// A measurement reference: either a declared id, or an object naming a
// declared id plus an optional coarse-graining ("blocks" partition or
// "trivial": true).
Measurement measurement_ref(const json& v, const AmplitudeModel& model,
                            const std::string& where) {
  if (v.is_string()) return declared(model, v.get<std::string>(), where);
  if (!v.is_object())
    bad(where, "measurement reference must be an id or an object");
  const Measurement& base =
      declared(model, get_string(v, "measurement", where), where);
  if (v.value("trivial", false)) return trivialize(base);
  const auto blocks = v.find("blocks");
  if (blocks == v.end()) return base;
  if (!blocks->is_array()) bad(where, "'blocks' must be an array of blocks");
  std::vector<IndexSet> partition;
  for (const json& b : *blocks)
    partition.push_back(get_index_set(b, where + ", blocks"));
  return Measurement(base.id(), base.atomic_count(), std::move(partition));
}

Event get_event(const json& v, const AmplitudeModel& model,
                const std::string& where) {
  if (!v.is_object()) bad(where, "event must be an object");
  const int time = get_int(v, "time", where);
  const Measurement& m =
      declared(model, get_string(v, "measurement", where), where);
  return Event(time, m, get_index_set(field(v, "outcome", where), where));
}

Sequence get_sequence(const json& v, const AmplitudeModel& model,
                      const std::string& system, const std::string& where) {
  const json& events_json = field(v, "events", where);
  if (!events_json.is_array() || events_json.size() < 2)
    bad(where, "'events' must list at least two events");
  std::vector<Event> events;
  for (std::size_t i = 0; i < events_json.size(); ++i)
    events.push_back(get_event(events_json[i], model,
                               where + ", event " + std::to_string(i)));
  std::vector<InteractionId> links(events.size() - 1, kIdentityInteraction);
  const auto it = v.find("interactions");
  if (it != v.end()) {
    if (!it->is_array() || it->size() != links.size())
      bad(where, "'interactions' must list one id per interval (" +
                     std::to_string(links.size()) + ")");
    for (std::size_t i = 0; i < links.size(); ++i) {
      if (!(*it)[i].is_string())
        bad(where, "interaction ids must be strings");
      links[i] = (*it)[i].get<std::string>();
    }
  }
  return Sequence(get_string_or(v, "system", system, where),
                  std::move(events), std::move(links));
}

Layout get_layout(const json& v, const AmplitudeModel& model,
                  const std::string& where) {
  Event preparation =
      get_event(field(v, "preparation", where), model, where + ", preparation");
  InteractionId first =
      get_string_or(v, "first_interaction", kIdentityInteraction, where);
  std::vector<ChainStep> chain;
  const auto steps = v.find("chain");
  if (steps != v.end()) {
    if (!steps->is_array()) bad(where, "'chain' must be an array of steps");
    for (std::size_t i = 0; i < steps->size(); ++i) {
      const json& step = (*steps)[i];
      const std::string at = where + ", chain step " + std::to_string(i);
      if (!step.is_object()) bad(at, "chain step must be an object");
      chain.push_back(
          {measurement_ref(step, model, at),
           get_string_or(step, "next_interaction", kIdentityInteraction, at)});
    }
  }
  Measurement final_measurement = measurement_ref(
      field(v, "final_measurement", where), model, where + ", final");
  return Layout{std::move(preparation), std::move(first), std::move(chain),
                std::move(final_measurement)};
}

}  // namespace

const Sequence& ExperimentConfig::sequence(const std::string& name) const {
  for (const NamedSequence& s : sequences)
    if (s.name == name) return s.sequence;
  fail(Errc::unknown_sequence, "no sequence named '" + name + "'");
}

const Layout& ExperimentConfig::layout(const std::string& name) const {
  for (const NamedLayout& l : layouts)
    if (l.name == name) return l.layout;
  fail(Errc::unknown_sequence, "no layout named '" + name + "'");
}

ExperimentConfig parse_config(const std::string& text, bool validate) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    fail(Errc::parse_error, e.what());
  }
  if (!root.is_object()) bad("config", "top level must be an object");

  const int version = get_int(root, "schema_version", "config");
  if (version != kSchemaVersion)
    bad("config", "schema_version " + std::to_string(version) +
                      " unsupported (expected " +
                      std::to_string(kSchemaVersion) + ")");
  const int dim = get_int(root, "dimension", "config");
  if (dim < 2 || dim > kMaxAtomicOutcomes)
    bad("config", "dimension must lie in [2, " +
                      std::to_string(kMaxAtomicOutcomes) + "]");

  ExperimentConfig cfg{version,
                       get_string_or(root, "title", "", "config"),
                       AmplitudeModel(dim, validate),
                       {},
                       {}};
  const std::string system = get_string_or(root, "system", "S", "config");

  const json& measurements = field(root, "measurements", "config");
  if (!measurements.is_array() || measurements.empty())
    bad("config", "'measurements' must be a nonempty array");
  for (const json& m : measurements) {
    const std::string id = get_string(m, "id", "measurements");
    const int outcomes = get_int(m, "outcomes", "measurement '" + id + "'");
    if (outcomes != dim)
      bad("measurement '" + id + "'",
          "atomic outcome count must equal the model dimension");
    cfg.model.add_measurement(Measurement(id, outcomes));
  }

  if (const auto it = root.find("interactions"); it != root.end()) {
    if (!it->is_array()) bad("config", "'interactions' must be an array");
    for (const json& g : *it) {
      const std::string id = get_string(g, "id", "interactions");
      cfg.model.add_interaction(
          id, get_matrix(g, "matrix", dim, "interaction '" + id + "'"));
    }
  }

  if (const auto it = root.find("transitions"); it != root.end()) {
    if (!it->is_array()) bad("config", "'transitions' must be an array");
    for (const json& t : *it) {
      const std::string from = get_string(t, "from", "transitions");
      const std::string to = get_string(t, "to", "transitions");
      const std::string where = "transition " + from + " -> " + to;
      declared(cfg.model, from, where);
      declared(cfg.model, to, where);
      cfg.model.add_transition(
          from, to, get_string_or(t, "interaction", kIdentityInteraction, where),
          get_matrix(t, "matrix", dim, where));
    }
  }

  if (const auto it = root.find("sequences"); it != root.end()) {
    if (!it->is_array()) bad("config", "'sequences' must be an array");
    for (const json& s : *it) {
      const std::string name = get_string(s, "name", "sequences");
      cfg.sequences.push_back(
          {name, get_sequence(s, cfg.model, system, "sequence '" + name + "'")});
    }
  }

  if (const auto it = root.find("layouts"); it != root.end()) {
    if (!it->is_array()) bad("config", "'layouts' must be an array");
    for (const json& l : *it) {
      const std::string name = get_string(l, "name", "layouts");
      cfg.layouts.push_back(
          {name, get_layout(l, cfg.model, "layout '" + name + "'")});
    }
  }

  return cfg;
}

ExperimentConfig load_config(const std::string& path, bool validate) {
  std::ifstream in(path);
  if (!in) fail(Errc::parse_error, "cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str(), validate);
}

}  // namespace seqamp
