#pragma once

// Named property suites. Each suite enumerates a fixed family of inputs,
// checks one property on every input and reports the failures.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qlat/fp_quadratic.hpp"
#include "qlat/serialize.hpp"

namespace qlat {

struct VerifyOptions {
  std::optional<std::int64_t> p;          ///< restrict to one prime
  std::optional<std::size_t> max_rank;    ///< overrides the suite's rank bound
  std::uint64_t seed = 0;
  std::uint64_t max_points = kDefaultMaxPoints;
  std::uint64_t max_group = kDefaultMaxGroup;
  std::size_t max_details = 20;  ///< failures listed in the report (all are counted)
};

struct VerifyDetail {
  std::string input;  ///< canonical description of the instance
  std::string expected;
  std::string actual;
};

struct VerifyReport {
  std::string suite;
  std::uint64_t instances = 0;
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;  ///< inputs outside the suite's hypotheses
  std::vector<VerifyDetail> details;

  bool passed() const { return failures == 0 && instances > 0; }
};

/// witt-extension, neighbor-bijection, nice-cochar, unique-growth, cokernel-m,
/// lang-counts, spinor-surjectivity, k3-degree, transitivity, quadric-counts.
const std::vector<std::string>& suite_names();

/// Throws PreconditionError for an unknown suite name.
VerifyReport run_suite(const std::string& name, const VerifyOptions& opts = {});

Json report_to_json(const VerifyReport& r);

}  // namespace qlat
