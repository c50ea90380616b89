#pragma once

#include <stdexcept>
#include <string>

namespace seqamp {

// Failure categories surfaced by the library. Each operation documents which
// of these it can raise; everything derives from a single exception type so
// callers can branch on the code without a class hierarchy.
enum class Errc {
  mismatched_junction,
  non_atomic_endpoint,
  not_parallel_compatible,
  length_mismatch,
  time_mismatch,
  same_system,
  invalid_partition,
  unknown_transition,
  not_unitary,
  normalization_failure,
  reference_mismatch,
  dimension_mismatch,
  invalid_position,
  out_of_range,
  zero_candidate,
  degenerate_segment,
  resource_limit,
  parse_error,
  unresolved_reference,
  unknown_sequence,
  asymmetric_transitions,
  invalid_argument,
};

const char* to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& message) {
  throw Error(code, message);
}

inline const char* to_string(Errc code) {
  switch (code) {
    case Errc::mismatched_junction: return "MismatchedJunction";
    case Errc::non_atomic_endpoint: return "NonAtomicEndpoint";
    case Errc::not_parallel_compatible: return "NotParallelCompatible";
    case Errc::length_mismatch: return "LengthMismatch";
    case Errc::time_mismatch: return "TimeMismatch";
    case Errc::same_system: return "SameSystem";
    case Errc::invalid_partition: return "InvalidPartition";
    case Errc::unknown_transition: return "UnknownTransition";
    case Errc::not_unitary: return "NotUnitary";
    case Errc::normalization_failure: return "NormalizationFailure";
    case Errc::reference_mismatch: return "ReferenceMismatch";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_position: return "InvalidPosition";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::zero_candidate: return "ZeroCandidate";
    case Errc::degenerate_segment: return "DegenerateSegment";
    case Errc::resource_limit: return "ResourceLimit";
    case Errc::parse_error: return "ParseError";
    case Errc::unresolved_reference: return "UnresolvedReference";
    case Errc::unknown_sequence: return "UnknownSequence";
    case Errc::asymmetric_transitions: return "AsymmetricTransitions";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace seqamp
