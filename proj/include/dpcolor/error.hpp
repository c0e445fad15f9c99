#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpcolor {

enum class Errc {
  SelfLoop,
  VertexOutOfRange,
  MalformedGraph6,
  Parse,
  Disconnected,
  NotGenusZero,
  InvalidRotation,
  NotOnFace,
  NonPlanarOrTooLarge,
  InvalidMatching,
  NonUniformLists,
  NotSpanningTree,
  BudgetExceeded,
  InvalidPartial,
  ConditionsViolated,
  ChargeSumMismatch,
  ConservationViolated,
  PreconditionFailed,
  InvalidArgument,
};

inline const char* errc_name(Errc e) {
  switch (e) {
    case Errc::SelfLoop: return "SelfLoop";
    case Errc::VertexOutOfRange: return "VertexOutOfRange";
    case Errc::MalformedGraph6: return "MalformedGraph6";
    case Errc::Parse: return "Parse";
    case Errc::Disconnected: return "Disconnected";
    case Errc::NotGenusZero: return "NotGenusZero";
    case Errc::InvalidRotation: return "InvalidRotation";
    case Errc::NotOnFace: return "NotOnFace";
    case Errc::NonPlanarOrTooLarge: return "NonPlanarOrTooLarge";
    case Errc::InvalidMatching: return "InvalidMatching";
    case Errc::NonUniformLists: return "NonUniformLists";
    case Errc::NotSpanningTree: return "NotSpanningTree";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::InvalidPartial: return "InvalidPartial";
    case Errc::ConditionsViolated: return "ConditionsViolated";
    case Errc::ChargeSumMismatch: return "ChargeSumMismatch";
    case Errc::ConservationViolated: return "ConservationViolated";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// All library failures are reported as an Error carrying a stable code.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Raised when an exhaustive search would examine more cases than allowed.
/// `cases()` is the size of the search space that was refused (saturated at
/// UINT64_MAX) or the number of cases examined when the limit was hit.
class BudgetExceeded : public Error {
 public:
  BudgetExceeded(std::uint64_t cases, std::uint64_t budget)
      : Error(Errc::BudgetExceeded, std::to_string(cases) + " cases exceed budget " +
                                        std::to_string(budget)),
        cases_(cases),
        budget_(budget) {}

  std::uint64_t cases() const noexcept { return cases_; }
  std::uint64_t budget() const noexcept { return budget_; }

 private:
  std::uint64_t cases_;
  std::uint64_t budget_;
};

/// Extension preconditions failed; `condition()` is 1, 2 or 3 and `index()`
/// the 1-based position in the vertex order where it failed (0 if global).
class ConditionsViolated : public Error {
 public:
  ConditionsViolated(int condition, int index, const std::string& what)
      : Error(Errc::ConditionsViolated, "condition (" + std::to_string(condition) + ") " + what),
        condition_(condition),
        index_(index) {}

  int condition() const noexcept { return condition_; }
  int index() const noexcept { return index_; }

 private:
  int condition_;
  int index_;
};

}  // namespace dpcolor
