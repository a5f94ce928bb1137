// qlat: command-line front end. Every command prints one JSON document on
// standard output. Exit status 0 on success, 1 when a verification fails,
// 2 on bad input or an unmet precondition.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "qlat/errors.hpp"
#include "qlat/exact_linalg.hpp"
#include "qlat/hecke_k3.hpp"
#include "qlat/padic_lattice.hpp"
#include "qlat/quad_lattice.hpp"
#include "qlat/serialize.hpp"
#include "qlat/verify.hpp"

using namespace qlat;

namespace {

// An argument is a file name, or else inline JSON text.
Json load_json(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) {
    std::ifstream in(arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_document(buf.str());
  }
  return parse_document(arg);
}

// A lattice file, inline JSON, or a standard name such as "H+H" or "H⊥H".
QuadLattice load_lattice(const std::string& arg) {
  if (std::filesystem::is_regular_file(arg)) return lattice_from_json(load_json(arg));
  if (!arg.empty() && arg.front() == '{') return lattice_from_json(parse_document(arg));
  return standard_lattice(arg);
}

IntMatrix load_embedding(const std::string& arg, std::size_t rows) {
  Json j = load_json(arg);
  if (j.is_object()) j = j.at("basis");
  IntMatrix m = matrix_from_json(j);
  if (m.rows() != rows) throw PreconditionError("embedding must have one row per coordinate of N");
  return m;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

void require_prime(std::int64_t p) {
  if (!is_prime(p) || p >= (std::int64_t{1} << 31)) throw PreconditionError("--p must be a prime below 2^31");
}

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic lattices, p-neighbors and special-cycle lattice computations"};
  app.require_subcommand(1);

  std::int64_t p = 0;
  std::uint64_t max_points = kDefaultMaxPoints;
  std::uint64_t max_group = kDefaultMaxGroup;
  std::uint64_t seed = 0;
  std::size_t max_rank = 0;
  std::int64_t prime_bound = 50;
  long d = 0;
  std::string file, file2, file3, suite;

  auto* lattice = app.add_subcommand("lattice", "Lattice invariants");
  auto* info = lattice->add_subcommand("info", "Rank, signature, determinant, discriminant group, self-dual primes");
  info->add_option("lattice", file, "Lattice file, inline JSON or standard name")->required();
  info->add_option("--prime-bound", prime_bound, "List self-dual primes up to this bound")->capture_default_str();
  lattice->require_subcommand(1);

  auto* quadric = app.add_subcommand("quadric", "Quadrics over F_p");
  auto* lines = quadric->add_subcommand("lines", "Isotropic lines of N/pN");
  lines->add_option("lattice", file, "Lattice file, inline JSON or standard name")->required();
  lines->add_option("--p", p, "Prime")->required();
  lines->add_option("--max-points", max_points, "Projective point guard")->capture_default_str();
  quadric->require_subcommand(1);

  auto* neighbors = app.add_subcommand("neighbors", "Self-dual p-neighbors of N");
  neighbors->add_option("lattice", file, "Lattice file, inline JSON or standard name")->required();
  neighbors->add_option("--p", p, "Prime")->required();
  neighbors->add_option("--max-points", max_points, "Projective point guard")->capture_default_str();

  auto* shrink = app.add_subcommand("shrink", "Neighbors N~ of N with N~ n W[1/p] = W~");
  shrink->add_option("lattice", file, "Lattice N")->required();
  shrink->add_option("embedding", file2, "Embedding of Lambda into N (rows = coordinates of N)")->required();
  shrink->add_option("pair", file3, "Minimal pair {lambda, tilde_basis[, p]}")->required();
  shrink->add_option("--p", p, "Prime")->required();

  auto* grow = app.add_subcommand("grow", "The unique N adjacent to N~ containing the saturation of Lambda~");
  grow->add_option("ntilde", file, "PLattice document")->required();
  grow->add_option("embedding", file2, "Embedding of Lambda~ (rows = coordinates of N)")->required();
  grow->add_option("--p", p, "Prime")->required();

  auto* k3 = app.add_subcommand("k3-isogeny", "Rescale the first hyperbolic plane of the K3 lattice");
  k3->add_option("--d", d, "Half-degree of the starting polarization")->required();
  k3->add_option("--p", p, "Prime")->required();

  auto* verify = app.add_subcommand("verify", "Run a named verification suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
  auto* p_opt = verify->add_option("--p", p, "Restrict to one prime");
  auto* rank_opt = verify->add_option("--max-rank", max_rank, "Rank bound");
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();
  verify->add_option("--max-points", max_points, "Projective point guard")->capture_default_str();
  verify->add_option("--max-group", max_group, "Group element guard")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*info) {
      emit(lattice_info_to_json(load_lattice(file), prime_bound));
      return 0;
    }
    if (*lines) {
      require_prime(p);
      QuadLattice l = load_lattice(file);
      auto ls = enumerate_isotropic_lines(reduction(l, p), max_points);
      Json arr = Json::array();
      for (const auto& x : ls) arr.push_back(fp_vector_to_json(x.generator));
      emit({{"p", p}, {"count", ls.size()}, {"lines", arr}});
      return 0;
    }
    if (*neighbors) {
      require_prime(p);
      QuadLattice l = load_lattice(file);
      auto lines_list = smooth_isotropic_lines(l, p, max_points);
      Json arr = Json::array();
      for (const auto& line : lines_list)
        arr.push_back({{"line", fp_vector_to_json(line.generator)}, {"lattice", plattice_to_json(lattice_from_line(l, p, line))}});
      emit({{"p", p}, {"count", lines_list.size()}, {"neighbors", arr}});
      return 0;
    }
    if (*shrink) {
      require_prime(p);
      QuadLattice n = load_lattice(file);
      IntMatrix emb = load_embedding(file2, n.rank());
      Json pj = load_json(file3);
      if (!pj.contains("p")) pj["p"] = p;
      MinimalPair pair = minimal_pair_from_json(pj);
      if (pair.p != p) throw PreconditionError("--p does not match the minimal pair");
      auto fiber = shrink_fiber(n, emb, pair);
      Json arr = Json::array();
      for (const auto& l : fiber) arr.push_back(plattice_to_json(l));
      emit({{"p", p}, {"count", fiber.size()}, {"fiber", arr}});
      return 0;
    }
    if (*grow) {
      require_prime(p);
      PLattice nt = plattice_from_json(load_json(file));
      if (nt.p() != p) throw PreconditionError("--p does not match the lattice document");
      IntMatrix emb = load_embedding(file2, nt.ambient().rank());
      Recovery r = grow_unique(nt, emb);
      emit({{"p", p},
            {"lattice", plattice_to_json(r.lattice)},
            {"candidates", r.candidates},
            {"constructed", r.constructed},
            {"survivors", r.survivors}});
      return 0;
    }
    if (*k3) {
      require_prime(p);
      PolarizedK3Lattice out = k3_isogeny(Integer(d), p);
      Json doc = polarized_to_json(out);
      doc["degree"] = integer_to_json(out.degree());
      doc["p"] = p;
      doc["d"] = d;
      emit(doc);
      return 0;
    }
    if (*verify) {
      VerifyOptions opts;
      if (*p_opt) {
        require_prime(p);
        opts.p = p;
      }
      if (*rank_opt) opts.max_rank = max_rank;
      opts.seed = seed;
      opts.max_points = max_points;
      opts.max_group = max_group;
      VerifyReport r = run_suite(suite, opts);
      emit(report_to_json(r));
      return r.passed() ? 0 : 1;
    }
  } catch (const InvariantViolation& e) {
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
