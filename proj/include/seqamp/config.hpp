#pragma once

#include <string>
#include <vector>

#include "seqamp/amplitude.hpp"
#include "seqamp/disturbance.hpp"

namespace seqamp {

inline constexpr int kSchemaVersion = 1;

struct NamedSequence {
  std::string name;
  Sequence sequence;
};

struct NamedLayout {
  std::string name;
  Layout layout;
};

// One experiment description: a transition model plus named sequences and
// measurement layouts built against it. See configs/*.json for the format.
struct ExperimentConfig {
  int schema_version = kSchemaVersion;
  std::string title;
  AmplitudeModel model;
  std::vector<NamedSequence> sequences;
  std::vector<NamedLayout> layouts;

  //   Errors: UnknownSequence.
  const Sequence& sequence(const std::string& name) const;
  const Layout& layout(const std::string& name) const;
};

// Parses an experiment description. `validate` controls unitarity checking
// of the declared matrices; structural validation (shapes, references,
// partitions) always runs.
//   Errors: ParseError (unreadable file, malformed syntax, missing or
//   ill-typed field, wrong schema version, bad matrix shape),
//   UnresolvedReference (an undeclared measurement or sequence named),
//   NotUnitary (when validating).
ExperimentConfig parse_config(const std::string& text, bool validate = true);
ExperimentConfig load_config(const std::string& path, bool validate = true);

}  // namespace seqamp
