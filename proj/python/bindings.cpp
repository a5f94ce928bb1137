// Python extension _qlat. Structured values cross the boundary as JSON text
// in the same documents the command-line tool reads and writes; the qlat
// package decodes them into dicts and lists.

#include <optional>
#include <string>

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qlat/deformation_tori.hpp"
#include "qlat/errors.hpp"
#include "qlat/hecke_k3.hpp"
#include "qlat/padic_lattice.hpp"
#include "qlat/quad_lattice.hpp"
#include "qlat/serialize.hpp"
#include "qlat/verify.hpp"

namespace py = pybind11;
using namespace qlat;

namespace {

QuadLattice lattice_arg(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return lattice_from_json(parse_document(arg));
  return standard_lattice(arg);
}

IntMatrix embedding_arg(const std::string& text, std::size_t rows) {
  Json j = parse_document(text);
  if (j.is_object()) j = j.at("basis");
  IntMatrix m = matrix_from_json(j);
  if (m.rows() != rows) throw PreconditionError("embedding must have one row per coordinate of N");
  return m;
}

std::string lattice_info(const std::string& lattice, std::int64_t prime_bound) {
  return lattice_info_to_json(lattice_arg(lattice), prime_bound).dump();
}

std::string isotropic_lines(const std::string& lattice, std::int64_t p, std::uint64_t max_points) {
  Json out = Json::array();
  for (const auto& l : enumerate_isotropic_lines(reduction(lattice_arg(lattice), p), max_points))
    out.push_back(fp_vector_to_json(l.generator));
  return out.dump();
}

std::string neighbors(const std::string& lattice, std::int64_t p, std::uint64_t max_points) {
  QuadLattice n = lattice_arg(lattice);
  if (!is_self_dual_at(n, p)) throw PreconditionError("neighbors: N is not self-dual at p");
  Json out = Json::array();
  for (const auto& line : smooth_isotropic_lines(n, p, max_points))
    out.push_back({{"line", fp_vector_to_json(line.generator)}, {"lattice", plattice_to_json(lattice_from_line(n, p, line))}});
  return out.dump();
}

std::string shrink(const std::string& lattice, const std::string& embedding, const std::string& pair) {
  QuadLattice n = lattice_arg(lattice);
  Json out = Json::array();
  for (const auto& l : shrink_fiber(n, embedding_arg(embedding, n.rank()), minimal_pair_from_json(parse_document(pair))))
    out.push_back(plattice_to_json(l));
  return out.dump();
}

std::string grow(const std::string& n_tilde, const std::string& embedding) {
  PLattice nt = plattice_from_json(parse_document(n_tilde));
  Recovery r = grow_unique(nt, embedding_arg(embedding, nt.ambient().rank()));
  Json out;
  out["lattice"] = plattice_to_json(r.lattice);
  out["candidates"] = r.candidates;
  out["constructed"] = r.constructed;
  out["survivors"] = r.survivors;
  return out.dump();
}

std::string index_p_sublattices(const std::string& lambda, std::int64_t p) {
  Json out = Json::array();
  for (const auto& m : enumerate_index_p_sublattices(lattice_arg(lambda), p)) out.push_back(minimal_pair_to_json(m));
  return out.dump();
}

std::string k3(long d, std::int64_t p) {
  PolarizedK3Lattice x = k3_isogeny(Integer(d), p);
  Json out = polarized_to_json(x);
  out["degree"] = integer_to_json(x.degree());
  return out.dump();
}

std::string qisog(std::size_t a, std::size_t b, std::size_t c, std::int64_t p) {
  return kernel_to_json(qisog_kernel_char(CharLattice::split(a, b, c), p)).dump();
}

std::string cokernel(std::size_t b, const std::string& w, std::int64_t p) {
  CokernelM r = cokernel_m(CharLattice::split(1, b, 1), matrix_from_json(parse_document(w)), p);
  Json out;
  out["m"] = abelian_to_json(r.m);
  out["inj1_index"] = integer_to_json(r.inj1_index);
  out["inj1_injective"] = r.inj1_injective;
  out["iso2"] = r.iso2;
  out["w_tilde"] = matrix_to_json(r.w_tilde);
  return out.dump();
}

std::string verify(const std::string& suite, std::optional<std::int64_t> p, std::optional<std::size_t> max_rank,
                   std::uint64_t seed) {
  VerifyOptions opts;
  opts.p = p;
  opts.max_rank = max_rank;
  opts.seed = seed;
  VerifyReport r;
  {
    py::gil_scoped_release release;
    r = run_suite(suite, opts);
  }
  return report_to_json(r).dump();
}

}  // namespace

PYBIND11_MODULE(_qlat, m) {
  m.doc() = "Quadratic lattices over Z and F_p, p-neighbors and special-cycle lattice computations";

  auto base = py::register_exception<Error>(m, "QlatError", PyExc_RuntimeError);
  py::register_exception<PreconditionError>(m, "PreconditionError", base.ptr());
  py::register_exception<GuardExceeded>(m, "GuardExceeded", base.ptr());
  py::register_exception<NotFound>(m, "NotFound", base.ptr());
  py::register_exception<InvariantViolation>(m, "InvariantViolation", base.ptr());

  m.def("lattice_info", &lattice_info, py::arg("lattice"), py::arg("prime_bound") = 50);
  m.def("isotropic_lines", &isotropic_lines, py::arg("lattice"), py::arg("p"),
        py::arg("max_points") = kDefaultMaxPoints);
  m.def("neighbors", &neighbors, py::arg("lattice"), py::arg("p"), py::arg("max_points") = kDefaultMaxPoints);
  m.def("shrink", &shrink, py::arg("lattice"), py::arg("embedding"), py::arg("pair"));
  m.def("grow", &grow, py::arg("n_tilde"), py::arg("embedding"));
  m.def("index_p_sublattices", &index_p_sublattices, py::arg("lambda_"), py::arg("p"));
  m.def("k3_isogeny", &k3, py::arg("d"), py::arg("p"));
  m.def("qisog_kernel", &qisog, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("p"));
  m.def("cokernel_m", &cokernel, py::arg("b"), py::arg("w"), py::arg("p"));
  m.def("verify", &verify, py::arg("suite"), py::arg("p") = std::nullopt, py::arg("max_rank") = std::nullopt,
        py::arg("seed") = 0);
  m.def("suite_names", &suite_names);
}
