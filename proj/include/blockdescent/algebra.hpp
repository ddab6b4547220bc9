#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "blockdescent/group.hpp"
#include "blockdescent/matrix.hpp"
#include "blockdescent/poly.hpp"

namespace bd {

/// Element of a group algebra: coefficient vector indexed like the group's
/// element list.
using AlgebraElement = Vec;

/// The group algebra kG with the group elements as basis.
class GroupAlgebra {
 public:
  GroupAlgebra(GroupPtr g, FieldPtr f);

  const GroupPtr& group() const { return group_; }
  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return group_->order(); }

  AlgebraElement zero() const { return AlgebraElement(dim(), 0); }
  AlgebraElement one() const { return element(0); }
  AlgebraElement element(int g) const;
  AlgebraElement mul(const AlgebraElement& a, const AlgebraElement& b) const;
  /// g x g^-1
  AlgebraElement conjugate(const AlgebraElement& x, int g) const;
  bool is_fixed(const AlgebraElement& x, const Subgroup& h) const;
  /// The anti-automorphism g -> g^-1.
  AlgebraElement antipode(const AlgebraElement& x) const;
  /// Sum of coefficients (the trivial character).
  Elt augmentation(const AlgebraElement& x) const;
  /// Left multiplication in the group basis.
  Matrix left_matrix(const AlgebraElement& x) const;
  /// Sum of the elements of a subset.
  AlgebraElement subset_sum(const std::vector<int>& elems) const;

 private:
  GroupPtr group_;
  FieldPtr field_;
};

/// Image of an element of kH in kG for a subgroup H (elements listed by
/// the subgroup, so position i of x is ambient element sub.elements()[i]).
AlgebraElement embed_element(const Subgroup& sub, const AlgebraElement& x);
/// Coefficients of x on the elements of sub, as an element of k[sub].
AlgebraElement truncate_element(const Subgroup& sub, const AlgebraElement& x);

/// A finite-dimensional algebra by basis and left-multiplication matrices.
///
/// left(i) has column j equal to the coordinates of e_i e_j.  When built as a
/// subalgebra the basis rows of ambient() record the elements in the ambient
/// space (group algebra coefficients, flattened matrices, ...).
class Algebra {
 public:
  Algebra(FieldPtr f, std::vector<Matrix> left, Vec unit, Matrix ambient = {});

  const FieldPtr& field() const { return field_; }
  std::size_t dim() const { return left_.size(); }
  const Matrix& left(std::size_t i) const { return left_[i]; }
  const std::vector<Matrix>& left() const { return left_; }
  const Vec& unit() const { return unit_; }
  const Matrix& ambient() const { return ambient_; }

  Vec mul(const Vec& a, const Vec& b) const;
  Matrix left_matrix(const Vec& a) const;
  Vec basis_element(std::size_t i) const;
  /// Ambient image of a coordinate vector.
  Vec to_ambient(const Vec& coords) const;
  /// Coordinates of an ambient vector lying in the algebra.
  Vec coordinates(const Vec& ambient_vec) const;
  bool contains_ambient(const Vec& ambient_vec) const;
  bool is_commutative() const;

 private:
  FieldPtr field_;
  std::vector<Matrix> left_;
  Vec unit_;
  Matrix ambient_;
  std::optional<RowSpace> span_;
};

using AmbientMul = std::function<Vec(const Vec&, const Vec&)>;

/// Subalgebra spanned by the given ambient vectors (closed under the ambient
/// multiplication; checked).  The unit is the given ambient vector.
Algebra subalgebra(const FieldPtr& f, std::size_t ambient_dim, const AmbientMul& mul, const std::vector<Vec>& spanning,
                   const Vec& unit);
Algebra group_subalgebra(const GroupAlgebra& ga, const std::vector<AlgebraElement>& spanning, const AlgebraElement& unit);
/// Algebra of matrices spanned by the given square matrices (ambient =
/// flattened row-major entries); the unit is the given matrix.
Algebra matrix_algebra(const FieldPtr& f, const std::vector<Matrix>& spanning, const Matrix& unit);
/// A (x) B with basis e_i (x) f_j at index i * dim B + j.
Algebra tensor_algebra(const Algebra& a, const Algebra& b);

/// Radical J(A) (rows = coordinates of a basis).  Computed from a
/// composition series of the left regular module: J(A) is exactly the set
/// of elements acting as zero on every composition factor.
Matrix radical(const Algebra& a, Rng& rng);

/// Minimal polynomial of x inside the algebra, with e playing the unit
/// (x must lie in eAe).
Poly element_min_poly(const Algebra& a, const Vec& x, const Vec& e);

/// Pairwise orthogonal primitive idempotents of A summing to u.
///
/// Idempotents are split by the Fitting decomposition of random elements of
/// the corner algebra eAe; primitivity of e is certified by showing that
/// eAe / eJ(A)e is a field.
std::vector<Vec> primitive_decomposition(const Algebra& a, const Vec& u, Rng& rng);
/// True iff the idempotent e is primitive in A (eAe local).
bool is_primitive_idempotent(const Algebra& a, const Vec& e, Rng& rng);

/// A block of kG.
struct BlockData {
  AlgebraElement idempotent;
  Subgroup defect;
  std::size_t dimension = 0;
  bool principal = false;
};

/// Blocks of kG: primitive idempotents of Z(kG).
///
/// Computed in the Frobenius-fixed subalgebra {z in Z(kG) : z^q = z}, which
/// is split semisimple with one primitive idempotent per block, so common
/// eigenspaces of its basis give the blocks exactly.  The principal block
/// comes first, then by decreasing dimension and coefficient vector.
std::vector<BlockData> central_idempotents(const GroupAlgebra& ga);

/// Br_P(x): coefficients of x on C_G(P), indexed like centralizer(G, P).
/// Throws PreconditionFailed if x is not P-fixed or P is not a p-group.
AlgebraElement brauer_map(const GroupAlgebra& ga, const AlgebraElement& x, const Subgroup& p);

/// A maximal p-subgroup with Br_Q(b) != 0, searched inside the lattice of
/// the given Sylow subgroup (default: sylow(G, p)).
Subgroup defect_group(const GroupAlgebra& ga, const AlgebraElement& b, std::optional<Subgroup> sylow_p = std::nullopt);

/// The block c of k N_G(P) with Br_P(c) = Br_P(b).  The returned block lives
/// in the group algebra of normalizer(G, P).as_group().
BlockData brauer_correspondent(const GroupAlgebra& ga, const BlockData& b, const Subgroup& p);

/// (kG b)^H spanned by H-conjugation orbit sums times b; ambient = kG.
Algebra fixed_point_algebra(const GroupAlgebra& ga, const AlgebraElement& b, const Subgroup& h);

/// {n in N : n e n^-1 = e}; e is an element of kG.
Subgroup stabilizer_of_block(const GroupAlgebra& ga, const Subgroup& n, const AlgebraElement& e);

/// The idempotents of a source triple, all as elements of kG except
/// e_local (in kC_G(P)) and c (in kN_G(P)).
struct SourceTriple {
  Subgroup p, centralizer, normalizer, stabilizer;
  AlgebraElement e;  ///< block of kC_G(P) embedded in kG
  AlgebraElement e_local;
  BlockData c;       ///< Brauer correspondent, in kN_G(P)
  AlgebraElement j;  ///< primitive in kC_G(P) e, embedded in kG
  AlgebraElement f;  ///< primitive in (kGb)^{N_G(P,e)} with Br_P(f) = e
  AlgebraElement i;  ///< j f, a source idempotent
  std::size_t source_dim = 0;        ///< dim i kG i
  std::size_t local_dim = 0;         ///< dim j kN_G(P) j
  bool embedding_injective = false;  ///< x -> x f on j kN_G(P) j
};

SourceTriple source_triple(const GroupAlgebra& ga, const BlockData& b, Rng& rng);

}  // namespace bd
