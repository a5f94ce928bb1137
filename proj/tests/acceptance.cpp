// Acceptance gate: runs the suite behind each numbered criterion with its
// default scope and prints one PASS/FAIL line per criterion.
//
//   qlat_acceptance                 all criteria
//   qlat_acceptance --criterion 4   one criterion
//
// Exit status is 0 only if every selected criterion passed.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qlat/verify.hpp"

namespace {

struct Criterion {
  int number;
  const char* suite;
  std::optional<double> time_limit;  // seconds
};

const std::vector<Criterion> kCriteria{
    {1, "neighbor-bijection", 30.0}, {2, "nice-cochar", 120.0},
    {3, "unique-growth", std::nullopt}, {4, "witt-extension", 300.0},
    {5, "cokernel-m", std::nullopt},    {6, "k3-degree", std::nullopt},
    {7, "lang-counts", 120.0},          {8, "transitivity", std::nullopt},
    {9, "spinor-surjectivity", 60.0},   {10, "quadric-counts", std::nullopt},
};

bool run(const Criterion& c) {
  auto t0 = std::chrono::steady_clock::now();
  qlat::VerifyReport r;
  std::string error;
  try {
    r = qlat::run_suite(c.suite);
  } catch (const std::exception& e) {
    error = e.what();
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  bool in_time = !c.time_limit || secs < *c.time_limit;
  bool ok = error.empty() && r.passed() && in_time;

  std::printf("criterion %2d %s  %-20s instances=%llu failures=%llu skipped=%llu time=%.2fs", c.number,
              ok ? "PASS" : "FAIL", c.suite, static_cast<unsigned long long>(r.instances),
              static_cast<unsigned long long>(r.failures), static_cast<unsigned long long>(r.skipped), secs);
  if (c.time_limit) std::printf(" limit=%.0fs", *c.time_limit);
  std::printf("\n");
  if (!error.empty()) std::printf("    error: %s\n", error.c_str());
  if (!in_time) std::printf("    exceeded the time limit\n");
  for (const auto& d : r.details) {
    std::printf("    %s\n      expected: %s\n      actual:   %s\n", d.input.c_str(), d.expected.c_str(), d.actual.c_str());
  }
  if (r.failures > r.details.size())
    std::printf("    ... %llu more failures not listed\n", static_cast<unsigned long long>(r.failures - r.details.size()));
  std::fflush(stdout);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::optional<int> only;
  app.add_option("--criterion", only, "Run a single criterion")->check(CLI::Range(1, 10));
  CLI11_PARSE(app, argc, argv);

  bool all_ok = true;
  for (const auto& c : kCriteria) {
    if (only && *only != c.number) continue;
    all_ok = run(c) && all_ok;
  }
  return all_ok ? EXIT_SUCCESS : EXIT_FAILURE;
}
