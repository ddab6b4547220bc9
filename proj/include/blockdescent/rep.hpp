#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "blockdescent/algebra.hpp"
#include "blockdescent/group.hpp"
#include "blockdescent/matrix.hpp"
#include "blockdescent/meataxe.hpp"

namespace bd {

/// A finite-dimensional kG-module given by one matrix per group generator
/// (in the order of generator_indices()), acting on column vectors.
///
/// Matrices of arbitrary elements are built lazily along the group's BFS
/// words and shared between copies.  For a product group G x H only the
/// matrices of (g, 1) and (1, h) are stored and rho(g, h) is their product.
class RepModule {
 public:
  RepModule() = default;
  RepModule(FieldPtr f, GroupPtr g, std::size_t dim, Gens gens, std::string label = {});

  const FieldPtr& field() const { return field_; }
  const GroupPtr& group() const { return group_; }
  std::size_t dim() const { return dim_; }
  const Gens& gens() const { return gens_; }

  Matrix action(int g) const;
  /// Sum over g of x_g rho(g).
  Matrix act_element(const AlgebraElement& x) const;
  /// rho(x (x) y) for x in kG, y in kH on a product group G x H.
  Matrix act_pure(const AlgebraElement& x, const AlgebraElement& y) const;
  /// The orbit vectors rho(g) v for every element g.
  std::vector<Vec> orbit(const Vec& v) const;
  /// Homomorphism check: rho(ab) = rho(a) rho(b) on random pairs and every
  /// generator has the order of the group element.
  bool check(Rng& rng, std::size_t samples = 50) const;

  std::string label;

 private:
  struct Cache;
  const Cache& cache() const;

  FieldPtr field_;
  GroupPtr group_;
  std::size_t dim_ = 0;
  Gens gens_;
  std::shared_ptr<Cache> cache_;
};

/// An equivariant linear map source -> target (matrix target.dim x source.dim).
struct ModuleMap {
  RepModule source, target;
  Matrix matrix;

  bool is_equivariant() const;
  ModuleMap compose(const ModuleMap& inner) const;  ///< this o inner
};

// ---------------------------------------------------------------- constructors

RepModule trivial_module(const FieldPtr& f, const GroupPtr& g);
RepModule zero_module(const FieldPtr& f, const GroupPtr& g);
/// kG by left multiplication, basis the group elements.
RepModule regular_module(const GroupAlgebra& ga);
/// kGb by left multiplication; throws PreconditionFailed if b is not a
/// central idempotent.
RepModule block_regular_module(const GroupAlgebra& ga, const AlgebraElement& b);
/// kG x ε for an idempotent ε, the spin basis element of each basis vector
/// recorded as group algebra elements in basis_elements (optional).
RepModule left_ideal_module(const GroupAlgebra& ga, const AlgebraElement& e, Matrix* basis_elements = nullptr);
/// e kG f as a module over L x R (built from L.as_group(), R.as_group())
/// with (l, r) m = l m r^-1.  e must commute with L and f with R.
/// basis_elements (optional) receives the basis as rows of group algebra
/// coefficients.
RepModule two_sided_module(const GroupAlgebra& ga, const Subgroup& l, const Subgroup& r, const AlgebraElement& e,
                           const AlgebraElement& f, GroupPtr product = nullptr, Matrix* basis_elements = nullptr);
/// The permutation module on the cosets G/H, i.e. Ind_H^G k.
RepModule permutation_module(const FieldPtr& f, const Subgroup& h);

RepModule direct_sum(const RepModule& a, const RepModule& b);
RepModule dual(const RepModule& m);
/// M (x)_k N over G x H; pass the product group to reuse one instance.
RepModule outer_tensor(const RepModule& m, const RepModule& n, GroupPtr product = nullptr);
/// Restriction along an index map from the elements of h into M's group.
RepModule restrict_along(const RepModule& m, const GroupPtr& h, const std::vector<int>& map);
/// Restriction to a subgroup, as a module over sub.as_group().
RepModule restrict_to(const RepModule& m, const Subgroup& sub);
/// Ind from sub.as_group() to the ambient group of sub.
RepModule induce(const RepModule& m, const Subgroup& sub);

/// The submodule spanned by an invariant subspace (rows of w), with the
/// inclusion as columns.
RepModule submodule(const RepModule& m, const RowSpace& w, Matrix* inclusion = nullptr);
/// M / w in the basis of w.free_columns(), with the projection matrix.
RepModule quotient(const RepModule& m, const RowSpace& w, Matrix* projection = nullptr);
/// Module obtained by changing basis: new matrices t^-1 rho t.
RepModule change_basis(const RepModule& m, const Matrix& t);

// ---------------------------------------------------------------- structure

std::vector<Matrix> hom_space(const RepModule& a, const RepModule& b);
Algebra endomorphism_algebra(const RepModule& m);
/// An invertible equivariant map a -> b, or nullopt.
std::optional<Matrix> iso_test(const RepModule& a, const RepModule& b, Rng& rng);

bool is_irreducible(const RepModule& m, Rng& rng);

struct SimpleFactor {
  RepModule module;
  std::size_t multiplicity = 0;
  std::string label;              ///< dimension followed by a letter, e.g. "2a"
  std::vector<Elt> fingerprint;   ///< traces on the conjugacy class representatives
};
/// Composition factors up to isomorphism, sorted by (dimension, fingerprint).
/// Letters are assigned within each dimension in that order.
std::vector<SimpleFactor> chop(const RepModule& m, Rng& rng);
std::vector<Elt> trace_fingerprint(const RepModule& m);
/// Index of the factor in list isomorphic to the simple module s, or -1.
int find_simple(const std::vector<SimpleFactor>& list, const RepModule& s, Rng& rng);

struct Summand {
  RepModule module;
  Matrix inclusion;   ///< dim M x dim S
  Matrix projection;  ///< dim S x dim M
};
/// Indecomposable direct summands (Krull-Schmidt), via primitive
/// idempotents of End(M).  Summands are ordered by dimension.
std::vector<Summand> decompose(const RepModule& m, Rng& rng);
/// Groups summands into isomorphism classes; returns class index per summand.
std::vector<std::size_t> isomorphism_classes(const std::vector<RepModule>& mods, Rng& rng);

RowSpace radical(const RepModule& m, Rng& rng);
RowSpace socle(const RepModule& m, Rng& rng);
RepModule top(const RepModule& m, Rng& rng);
/// rad^0 M = M >= rad M >= rad^2 M >= ... >= 0 as subspaces of M.
std::vector<RowSpace> radical_series(const RepModule& m, Rng& rng);
/// True iff every radical layer of M is simple and isomorphic to the
/// expected module, from the top down.
bool check_uniserial(const RepModule& m, const std::vector<RepModule>& expected, Rng& rng);

/// Projective indecomposable modules of a group algebra (or of one block).
struct Pim {
  RepModule module;          ///< kG eps
  AlgebraElement idempotent; ///< eps
  Matrix basis;              ///< rows: the module basis as elements of kG
  Vec generator;             ///< coordinates of eps in module's basis
  RepModule top;
};
struct PimLibrary {
  GroupPtr group;
  FieldPtr field;
  std::vector<Pim> pims;  ///< one per isomorphism class
};
PimLibrary pim_library(const GroupAlgebra& ga, const AlgebraElement& block, Rng& rng);
/// PIMs of k[G x H] from libraries for G and H, splitting e (x) f in the
/// tensor product of corner algebras when k is not a splitting field.
PimLibrary product_pim_library(const GroupAlgebra& gha, const PimLibrary& left, const PimLibrary& right, Rng& rng);

struct ProjectiveCover {
  RepModule cover;
  Matrix map;                         ///< dim M x dim cover, surjective
  std::vector<std::size_t> pim_index; ///< summand t is lib.pims[pim_index[t]]
  std::vector<Vec> images;            ///< x_t = image of the generator of summand t
  std::vector<std::size_t> offsets;   ///< first cover coordinate of summand t
};
/// Raises Inconsistency if a top factor has no PIM in the library.
ProjectiveCover projective_cover(const RepModule& m, const PimLibrary& lib, Rng& rng);

/// Free over a Sylow p-subgroup: rank of the norm element equals dim/|S|.
bool is_projective(const RepModule& m);

struct VertexResult {
  Subgroup vertex;
  Matrix certificate;  ///< phi in End_Q(M) with Tr_Q^G(phi) = id
};
/// Relative projectivity via Higman's criterion.
bool is_relatively_projective(const RepModule& m, const Subgroup& q, Rng& rng, Matrix* certificate = nullptr);
/// Vertex of an indecomposable module: the first Q in the candidate list
/// (default: subgroups of a Sylow p-subgroup up to conjugacy, by order) with
/// M relatively Q-projective.
VertexResult vertex(const RepModule& m, Rng& rng, std::vector<Subgroup> candidates = {});
/// Subgroups of s up to conjugacy in the ambient group, by order.
std::vector<Subgroup> subgroup_classes(const Subgroup& s);
/// True iff the indecomposable M is a direct summand of Ind_Q^G k.
bool trivial_source_check(const RepModule& m, const Subgroup& q, Rng& rng);

}  // namespace bd
