#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "qsm/check.hpp"

// One-shot verification of the acceptance criteria at a single size n.
namespace qsm::report {

enum class Status { Pass, Fail, Skip };

struct Criterion {
  int number = 0;
  std::string title;
  Status status = Status::Skip;
  std::vector<Check> checks;
  std::string note; // reason for a skip, or extra context
};

struct Options {
  std::uint64_t budget = 10'000'000;
  unsigned jobs = 1;
  std::uint64_t seed = 20240611;
  std::size_t cases = 200;
  /// Largest n for which the extreme rays are enumerated.
  std::size_t rayLimit = 4;
};

std::string statusName(Status s);

/// Throws DomainError for n < 3.
std::vector<Criterion> run(std::size_t n, const Options& options = {});

} // namespace qsm::report
