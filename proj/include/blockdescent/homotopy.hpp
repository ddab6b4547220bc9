#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockdescent/rep.hpp"

namespace bd {

/// A bounded chain complex of modules over one product group G x H, read as
/// (kG, kH)-bimodules through (g, h) m = g m h^-1.
///
/// Homological grading: d(n) maps degree n to degree n - 1.
struct BoundedComplex {
  int lo = 0;
  std::vector<RepModule> terms;  ///< terms[i] sits in degree lo + i
  std::vector<Matrix> diffs;     ///< diffs[i] = d(lo + i + 1)
  std::string left_block, right_block;

  int hi() const { return lo + static_cast<int>(terms.size()) - 1; }
  const RepModule& term(int n) const { return terms.at(static_cast<std::size_t>(n - lo)); }
  std::size_t dim(int n) const { return n < lo || n > hi() ? 0 : term(n).dim(); }
  /// d(n): X_n -> X_{n-1}, a zero matrix outside the range.
  Matrix d(int n) const;
  /// d o d = 0 exactly and every differential is equivariant.
  bool is_complex() const;
};

BoundedComplex single_term(const RepModule& m, int degree = 0);
/// upper (degree 1) -> lower (degree 0).
BoundedComplex two_term(const RepModule& upper, const RepModule& lower, const Matrix& d);

/// M (x)_{kH} N for M over G x H and N over H x K, as a module over G x K.
///
/// Computed through (M (x)_H N)* = Hom_H(N, M*): forms[l] are a basis of
/// the balanced bilinear forms and the class of m_i (x) n_j has coordinates
/// forms[l](i, j).  The pivot pairs give a basis of the quotient.
struct BalancedTensor {
  RepModule module;
  std::vector<Matrix> forms;
  std::vector<std::pair<std::size_t, std::size_t>> pivots;
  Matrix pivot_inverse;
};
BalancedTensor tensor_over_group(const RepModule& m, const RepModule& n, GroupPtr product = nullptr);
/// The map f (x) g between two balanced tensors.
Matrix tensor_map(const BalancedTensor& src, const BalancedTensor& dst, const Matrix& f, const Matrix& g);

/// M* = Hom_k(M, k) as an (H, G)-bimodule, over H x G.
RepModule bimodule_dual(const RepModule& m, GroupPtr swapped = nullptr);
/// (X^v)_n = (X_{-n})*, differentials transposed.
BoundedComplex complex_dual(const BoundedComplex& x, GroupPtr swapped = nullptr);
/// Total complex with d(x (x) y) = dx (x) y + (-1)^{deg x} x (x) dy.
BoundedComplex complex_tensor(const BoundedComplex& x, const BoundedComplex& y, GroupPtr product = nullptr);

/// ker d(n) / im d(n+1).
RepModule homology(const BoundedComplex& x, int n);
std::map<int, std::size_t> homology_dims(const BoundedComplex& x);

/// A block of a group algebra, with PIMs for it and for its dual block.
struct BlockSide {
  GroupAlgebra ga;
  AlgebraElement block;
  std::string label;
};

struct SideReport {
  std::string name;
  bool pass = false;
  std::string failure;
  std::map<int, std::size_t> term_dims, homology_dims;
  bool range_supported = false;
  bool terms_projective = false;
  bool homology_concentrated = false;
  bool outgoing_split = false;
  bool incoming_split = false;
  bool complement_regular = false;
  bool certificates_verified = false;
  std::size_t complement_dim = 0;
  Matrix section;     ///< C_{-1} -> C_0 with d(0) section = id
  Matrix retraction;  ///< C_0 -> C_1 with retraction d(1) = id
  Matrix iso;         ///< complement -> regular bimodule
  double seconds = 0;
};

struct RickardReport {
  SideReport left;   ///< X (x)_B X^v against A
  SideReport right;  ///< X^v (x)_A X against B
  bool pass = false;
};

/// Split-and-strip verification that X is a Rickard complex between the
/// blocks a (left) and b (right).  Supports tensor squares concentrated in
/// degrees -1..1, which covers complexes with at most two adjacent terms.
RickardReport verify_rickard(const BoundedComplex& x, const BlockSide& a, const BlockSide& b, Rng& rng);
/// Re-checks every stored certificate of one side by multiplication.
bool recheck_side(const SideReport& side, const BoundedComplex& c, const RepModule& regular);

/// Section s of a surjective equivariant map d: C -> P onto a projective
/// module (d s = id), built from a projective cover of P.
std::optional<Matrix> split_surjection(const RepModule& c, const RepModule& p, const Matrix& d, const PimLibrary& lib,
                                       Rng& rng);
/// PIMs of k[G x G'] covering the blocks b (x) b' and their duals.
PimLibrary bimodule_pim_library(const GroupPtr& product, const BlockSide& left, const BlockSide& right, Rng& rng);

struct SummandVertex {
  std::size_t dim = 0;
  Subgroup vertex;
  bool within_delta = false;
  bool trivial_source = false;
};
struct TermSplendid {
  int degree = 0;
  std::vector<SummandVertex> summands;
};
struct SplendidReport {
  std::vector<TermSplendid> terms;
  bool pass = false;
};
/// Every indecomposable summand of every term has vertex inside a conjugate
/// of delta and trivial source.
SplendidReport verify_splendid(const BoundedComplex& x, const Subgroup& delta, Rng& rng);

}  // namespace bd
