#pragma once

#include <optional>
#include <vector>

#include "blockdescent/matrix.hpp"
#include "blockdescent/poly.hpp"

namespace bd {

/// Matrices acting on column vectors; together with the identity they
/// generate the acting algebra.  Every routine here works for any such list,
/// so group modules and modules for abstract algebras share them.
using Gens = std::vector<Matrix>;

/// Smallest invariant subspace containing the seeds.
RowSpace spin(const FieldPtr& f, const Gens& gens, const std::vector<Vec>& seeds, std::size_t dim);

Poly char_poly(const Matrix& a);
Matrix eval_poly(const Poly& f, const Matrix& a);
/// Minimal polynomial of a by Krylov iteration on the standard basis.
Poly min_poly(const Matrix& a);

/// Action on an invariant subspace, in the reduced echelon basis of w.
Gens restrict_action(const Gens& gens, const RowSpace& w);
/// Action on V / w, in the basis given by w.free_columns().
Gens quotient_action(const Gens& gens, const RowSpace& w);

/// A proper nonzero invariant subspace, or nullopt when the module is
/// irreducible.  Irreducibility is certified by Norton's criterion; the
/// randomized search throws RetryBudgetExceeded if it cannot decide.
std::optional<RowSpace> find_submodule(const FieldPtr& f, const Gens& gens, std::size_t dim, Rng& rng, std::size_t budget = 400);
bool is_irreducible(const FieldPtr& f, const Gens& gens, std::size_t dim, Rng& rng);

/// Composition series in an adapted basis.  basis is invertible with
/// columns ordered bottom layer first, so basis^-1 g basis is block upper
/// triangular with diagonal blocks factors[t][g].
struct CompositionSeries {
  Matrix basis;
  std::vector<std::size_t> sizes;
  std::vector<Gens> factors;
};
CompositionSeries composition_series(const FieldPtr& f, const Gens& gens, std::size_t dim, Rng& rng);

/// Basis of {X : X a_i = b_i X for all i}; each X is dim_b x dim_a.
/// Computed by spinning the source and solving for images of the spin seeds.
std::vector<Matrix> hom_space(const FieldPtr& f, const Gens& a, std::size_t dim_a, const Gens& b, std::size_t dim_b);

}  // namespace bd
