#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hexpst {

/// Malformed or inconsistent lattice description.
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The ξ-basis decomposition did not produce uniform 2- and 3-chains.
class StructureError : public std::runtime_error {
 public:
  StructureError(const std::string& summary, std::vector<std::string> details)
      : std::runtime_error(summary), details_(std::move(details)) {}

  const std::vector<std::string>& details() const noexcept { return details_; }

 private:
  std::vector<std::string> details_;
};

/// No fault-free path joins the requested heads. `blocking()` holds the
/// faulty vertices bordering the component reachable from the input.
class UnroutableError : public std::runtime_error {
 public:
  UnroutableError(const std::string& what, std::vector<int> blocking)
      : std::runtime_error(what), blocking_(std::move(blocking)) {}

  const std::vector<int>& blocking() const noexcept { return blocking_; }

 private:
  std::vector<int> blocking_;
};

/// Schedule or routing request that violates a precondition.
class ScheduleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hexpst
