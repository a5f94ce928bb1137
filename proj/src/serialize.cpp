#include "qlat/serialize.hpp"

#include <string>

#include "qlat/errors.hpp"

namespace qlat {

Json integer_to_json(const Integer& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(std::to_string(j.get<std::int64_t>()));
  if (j.is_string()) {
    Integer x;
    if (x.set_str(j.get<std::string>(), 10) != 0) throw PreconditionError("malformed integer '" + j.get<std::string>() + "'");
    return x;
  }
  throw PreconditionError("expected an integer, got " + j.dump());
}

Json vector_to_json(const IntVector& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(integer_to_json(x));
  return out;
}

IntVector vector_from_json(const Json& j) {
  if (!j.is_array()) throw PreconditionError("expected a list of integers");
  IntVector out;
  for (const Json& x : j) out.push_back(integer_from_json(x));
  return out;
}

Json fp_vector_to_json(const FpVector& v) { return Json(v); }

Json matrix_to_json(const IntMatrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(vector_to_json(m.row(i)));
  return out;
}

IntMatrix matrix_from_json(const Json& j, std::size_t cols) {
  if (!j.is_array()) throw PreconditionError("expected a matrix as a list of rows");
  if (j.empty()) return IntMatrix(0, cols);
  const std::size_t c = j[0].size();
  IntMatrix m(j.size(), c);
  for (std::size_t i = 0; i < j.size(); ++i) {
    IntVector row = vector_from_json(j[i]);
    if (row.size() != c) throw PreconditionError("ragged matrix rows");
    for (std::size_t k = 0; k < c; ++k) m(i, k) = row[k];
  }
  return m;
}

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw PreconditionError(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::int64_t prime_from_json(const Json& j) {
  Integer p = integer_from_json(j);
  if (p < 2 || p >= (Integer(1) << 31)) throw PreconditionError("p out of range");
  return p.get_si();
}

}  // namespace

Json lattice_to_json(const QuadLattice& l) {
  Json out;
  out["rank"] = l.rank();
  out["half_gram"] = matrix_to_json(l.half_gram());
  return out;
}

QuadLattice lattice_from_json(const Json& j) {
  const std::size_t rank = field(j, "rank").get<std::size_t>();
  IntMatrix h = matrix_from_json(field(j, "half_gram"), rank);
  if (h.rows() != rank || h.cols() != rank) throw PreconditionError("half_gram does not match rank");
  return QuadLattice(h);
}

Json space_to_json(const FpQuadSpace& v) {
  Json out;
  out["p"] = v.p();
  out["dim"] = v.dim();
  Json rows = Json::array();
  for (std::size_t i = 0; i < v.dim(); ++i) rows.push_back(v.half_gram().row(i));
  out["half_gram"] = rows;
  return out;
}

FpQuadSpace space_from_json(const Json& j) {
  const std::int64_t p = prime_from_json(field(j, "p"));
  const std::size_t dim = field(j, "dim").get<std::size_t>();
  IntMatrix h = matrix_from_json(field(j, "half_gram"), dim);
  if (h.rows() != dim || h.cols() != dim) throw PreconditionError("half_gram does not match dim");
  return FpQuadSpace::reduce(h, p);
}

Json plattice_to_json(const PLattice& l) {
  Json out;
  out["ambient"] = lattice_to_json(l.ambient());
  out["p"] = l.p();
  out["power"] = l.power();
  out["numerator_basis"] = matrix_to_json(l.numerator());
  return out;
}

PLattice plattice_from_json(const Json& j) {
  QuadLattice ambient = lattice_from_json(field(j, "ambient"));
  const std::int64_t p = prime_from_json(field(j, "p"));
  const unsigned power = field(j, "power").get<unsigned>();
  IntMatrix num = matrix_from_json(field(j, "numerator_basis"), ambient.rank());
  return PLattice(ambient, p, power, num);
}

Json minimal_pair_to_json(const MinimalPair& m) {
  Json out;
  out["lambda"] = lattice_to_json(m.lambda);
  out["tilde_basis"] = matrix_to_json(m.tilde_basis);
  out["p"] = m.p;
  return out;
}

MinimalPair minimal_pair_from_json(const Json& j) {
  MinimalPair m;
  m.lambda = lattice_from_json(field(j, "lambda"));
  m.tilde_basis = matrix_from_json(field(j, "tilde_basis"), m.lambda.rank());
  m.p = prime_from_json(field(j, "p"));
  m.validate();
  return m;
}

Json polarized_to_json(const PolarizedK3Lattice& k) {
  Json out;
  out["lattice"] = lattice_to_json(k.lattice);
  out["xi"] = vector_to_json(k.xi);
  return out;
}

PolarizedK3Lattice polarized_from_json(const Json& j) {
  PolarizedK3Lattice k{lattice_from_json(field(j, "lattice")), vector_from_json(field(j, "xi"))};
  k.validate();
  return k;
}

Json abelian_to_json(const AbelianQuotient& a) {
  Json out;
  out["free_rank"] = a.free_rank;
  out["torsion"] = vector_to_json(a.torsion);
  return out;
}

Json lattice_info_to_json(const QuadLattice& l, std::int64_t prime_bound) {
  Signature sig = signature(l);
  Json out;
  out["rank"] = l.rank();
  out["signature"] = {sig.positive, sig.negative};
  out["determinant"] = integer_to_json(l.determinant());
  out["even"] = is_even(l);
  out["discriminant_group"] = abelian_to_json(discriminant_group(l));
  Json primes = Json::array();
  for (std::int64_t q = 2; q <= prime_bound; ++q)
    if (mpz_probab_prime_p(Integer(q).get_mpz_t(), 25) && is_self_dual_at(l, q)) primes.push_back(q);
  out["self_dual_primes"] = primes;
  out["prime_bound"] = prime_bound;
  return out;
}

Json kernel_to_json(const DiagGroupKernel& k) {
  Json out;
  out["presentation"] = abelian_to_json(k.presentation);
  out["source_divisors"] = vector_to_json(k.source_divisors);
  out["target_divisors"] = vector_to_json(k.target_divisors);
  return out;
}

Json parse_document(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace qlat
