#pragma once

#include <optional>
#include <vector>

#include "blockdescent/homotopy.hpp"

namespace bd {

/// ^sigma M for sigma = Frobenius^power of the tower.  Generator matrices
/// are the entrywise images under sigma.
struct TwistedModule {
  RepModule underlying;
  unsigned power = 0;
  RepModule module(const FieldTower& tower) const;
};
RepModule galois_twist(const RepModule& m, const FieldTower& tower, unsigned power = 1);

struct Stability {
  bool stable = false;
  /// witnesses[i]: an isomorphism M -> ^sigma M for sigma the generator of
  /// Gal(k'/k), present when stable.
  std::vector<Matrix> witnesses;
};
Stability is_gamma_stable(const RepModule& m, const FieldTower& tower, Rng& rng);

RepModule extend_scalars(const RepModule& m, const FieldTower& tower);
/// Each k'-entry becomes the matrix of multiplication by it on the k-basis
/// tower.basis(); dimension grows by [k':k].
RepModule restrict_scalars(const RepModule& m, const FieldTower& tower);
Matrix restrict_matrix(const Matrix& a, const FieldTower& tower);
/// A k'-matrix whose entries all lie in k, as a k-matrix.
std::optional<Matrix> contract_matrix(const Matrix& a, const FieldTower& tower);

struct DescentCertificate {
  RepModule form;    ///< over k
  RepModule target;  ///< over k'
  Matrix iso;        ///< k' (x) form -> target, equivariant and invertible
  std::vector<Matrix> stability;
  /// Re-checks the isomorphism by multiplication.
  bool verify(const FieldTower& tower) const;
};

/// k-form of a Gamma-stable module: split restrict_scalars(m) over k and
/// take the first summands whose extensions assemble m.
DescentCertificate descend_module(const RepModule& m, const FieldTower& tower, Rng& rng);

/// Degreewise isomorphisms f_n: a_n -> b_n with d_b f = f d_a, or nullopt.
/// Both complexes must share the degree range.
std::optional<std::vector<Matrix>> chain_isomorphism(const BoundedComplex& a, const BoundedComplex& b, Rng& rng);
BoundedComplex extend_complex(const BoundedComplex& x, const FieldTower& tower);

struct ComplexDescent {
  BoundedComplex form;     ///< over k
  BoundedComplex target;   ///< over k'
  std::vector<Matrix> iso; ///< iso[i]: k' (x) form_{lo+i} -> target_{lo+i}
  std::vector<DescentCertificate> terms;
  bool verify(const FieldTower& tower) const;
};

/// pi: Q -> M over k with k' (x) (Q -> M) isomorphic to (Q' -> M') as
/// complexes.  lib holds PIMs over k covering M.
ComplexDescent descend_map(const BoundedComplex& two_term, const DescentCertificate& q, const DescentCertificate& m,
                           const PimLibrary& lib, Rng& rng);
/// Termwise descent followed by differential matching.  Complexes with more
/// than two terms must have differentials that become k-rational after
/// transport along the termwise certificates.
ComplexDescent descend_complex(const BoundedComplex& x, const FieldTower& tower, const PimLibrary* lib, Rng& rng);

}  // namespace bd
