#pragma once

// JSON documents for the core types. Integers that fit in 64 bits are written
// as numbers, larger ones as decimal strings; readers accept either.
// Matrices are row-major lists of rows.

#include <string>

#include <json.hpp>

#include "qlat/deformation_tori.hpp"
#include "qlat/fp_quadratic.hpp"
#include "qlat/hecke_k3.hpp"
#include "qlat/padic_lattice.hpp"
#include "qlat/quad_lattice.hpp"

namespace qlat {

using Json = nlohmann::ordered_json;

Json integer_to_json(const Integer& x);
Integer integer_from_json(const Json& j);

Json vector_to_json(const IntVector& v);
IntVector vector_from_json(const Json& j);
Json fp_vector_to_json(const FpVector& v);

Json matrix_to_json(const IntMatrix& m);
/// A list of rows; an empty list needs `cols` to fix the shape.
IntMatrix matrix_from_json(const Json& j, std::size_t cols = 0);

/// {rank, half_gram}
Json lattice_to_json(const QuadLattice& l);
QuadLattice lattice_from_json(const Json& j);

/// {p, dim, half_gram}
Json space_to_json(const FpQuadSpace& v);
FpQuadSpace space_from_json(const Json& j);

/// {ambient, p, power, numerator_basis}, meaning p^-power times the columns.
Json plattice_to_json(const PLattice& l);
PLattice plattice_from_json(const Json& j);

/// {lambda, tilde_basis, p}
Json minimal_pair_to_json(const MinimalPair& m);
MinimalPair minimal_pair_from_json(const Json& j);

/// {lattice, xi}
Json polarized_to_json(const PolarizedK3Lattice& k);
PolarizedK3Lattice polarized_from_json(const Json& j);

Json abelian_to_json(const AbelianQuotient& a);

/// {rank, signature, determinant, even, discriminant_group, self_dual_primes,
/// prime_bound}; self-dual primes are listed up to prime_bound.
Json lattice_info_to_json(const QuadLattice& l, std::int64_t prime_bound = 50);
Json kernel_to_json(const DiagGroupKernel& k);

/// Parses a JSON document, throwing PreconditionError with a short message.
Json parse_document(const std::string& text);

}  // namespace qlat
