#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blockdescent/descent.hpp"

namespace bd {

enum class SourceKind { P, A4, A5 };
std::string kind_name(SourceKind k);
/// The reference group of a kind: v4, a4 or a5.
GroupPtr model_group(SourceKind k);

bool is_klein_four(const Subgroup& s);

/// C[i][j] = multiplicity of simple j in the PIM of simple i, simples in
/// chop() order.
std::vector<std::vector<std::size_t>> cartan_matrix(const GroupAlgebra& ga, const AlgebraElement& block, Rng& rng);
/// Equal up to a simultaneous permutation of rows and columns.
bool cartan_equivalent(const std::vector<std::vector<std::size_t>>& a, const std::vector<std::vector<std::size_t>>& b);

/// x -> u phi(x) u from the reference block algebra into u kH u, where phi
/// embeds the model group into H and maps its Sylow 2-subgroup onto P.
struct ModelMatch {
  SourceKind kind = SourceKind::P;
  std::vector<int> embedding;  ///< model element index -> element index of H
  Matrix images;               ///< rows: images of the model block basis in kH
  bool unital = false;
  bool multiplicative = false;
  bool bijective = false;
  bool p_compatible = false;
  bool ok() const { return unital && multiplicative && bijective && p_compatible; }
};
/// Certified matches, in backtracking order, at most limit of them.
std::vector<ModelMatch> model_matches(const GroupAlgebra& ga, const AlgebraElement& u, const Subgroup& p,
                                      SourceKind kind, std::size_t limit = 1);
/// Re-checks a stored match.
bool verify_match(const GroupAlgebra& ga, const AlgebraElement& u, const Subgroup& p, const ModelMatch& m);

struct SourceAlgebraClass {
  SourceKind kind = SourceKind::P;
  SourceKind local_kind = SourceKind::P;
  std::size_t source_dim = 0, local_dim = 0;
  std::vector<std::vector<std::size_t>> cartan, local_cartan;
  ModelMatch source_match, local_match;
  bool pairing_ok = false;  ///< A4/A5 pair with A4 locally, P with P
  SourceTriple triple;
};
/// Raises Inconsistency("classification failure ...") when the source
/// algebra matches none of the three models.
SourceAlgebraClass classify_source_algebra(const GroupAlgebra& ga, const BlockData& b, Rng& rng);

/// The local and global sides of a block with its Brauer correspondent.
struct BlockPair {
  GroupAlgebra global;   ///< kG
  AlgebraElement b;
  Subgroup normalizer;   ///< N_G(P) inside G
  GroupAlgebra local;    ///< kN, N = normalizer.as_group()
  AlgebraElement c;      ///< in kN
  Subgroup defect;       ///< P inside G
  GroupPtr product;      ///< N x G
  Subgroup delta;        ///< Delta P inside N x G
  BlockSide local_side() const { return {local, c, "c"}; }
  BlockSide global_side() const { return {global, b, "b"}; }
};
BlockPair make_block_pair(const GroupPtr& g, const FieldPtr& f, const AlgebraElement& b, const Subgroup& p);
/// The same pair over another field; b and c must have coefficients in it.
BlockPair change_field(const BlockPair& pair, const FieldPtr& f);

/// PIMs of k[N x G] covering c (x) b.
PimLibrary pair_library(const BlockPair& pair, Rng& rng);
/// c kG b as an (N, G)-bimodule.
RepModule correspondent_bimodule(const BlockPair& pair);
/// kN i kG, the image of kN j (x)_{j kN j} i kG in kG.
RepModule transport_bimodule(const BlockPair& pair, const AlgebraElement& i);

/// Q -> M with Q the projective cover summands of M whose top is not the
/// trivial module.
BoundedComplex two_term_from_cover(const RepModule& m, const PimLibrary& lib, Rng& rng);
/// X' = (Q' -> M') for (k'A4, k'A5 b0).
BoundedComplex build_base_complex(const FieldPtr& f, Rng& rng);

/// Summands of a bimodule with vertex conjugate to delta.
struct DeltaSummands {
  std::vector<Summand> summands;
  std::vector<std::size_t> delta_vertex;  ///< indices into summands
};
DeltaSummands delta_summands(const RepModule& m, const Subgroup& delta, Rng& rng);

struct LemmaChecks {
  bool fog_checked = false, fog_unique = false, fog_iso = false;
  bool summand_checked = false, summand_unique = false, summand_iso = false;
  bool key_checked = false, key_iso = false;
};
/// The unique Delta P-vertex summand of e kG b is f kG, and that of c kG b is
/// the transport bimodule.
LemmaChecks lemma_checks(const BlockPair& pair, const SourceTriple& st, Rng& rng);

struct GammaReport {
  bool checked = false;
  std::vector<int> local_permutation, global_permutation;  ///< twist of simple i is simple perm[i]
  std::vector<bool> term_stable;
};

struct BlockRow {
  std::size_t dim = 0;
  std::size_t defect_order = 0;
  bool principal = false;
  std::vector<int> support;
};

struct TheoremReport {
  std::string theorem;
  std::string group;
  std::size_t group_order = 0;
  FieldPtr k, kprime;
  std::vector<BlockRow> blocks;
  std::size_t block_index = 0;
  std::vector<int> defect;
  std::size_t correspondent_dim = 0;
  std::optional<SourceAlgebraClass> classification;
  bool hypothesis_ok = true;
  std::string hypothesis_note;
  BoundedComplex complex_ext;  ///< over k'
  BoundedComplex complex;      ///< over k
  std::optional<ComplexDescent> descent;
  GammaReport gamma;
  LemmaChecks lemmas;
  std::optional<RickardReport> rickard, rickard_ext;
  std::optional<SplendidReport> splendid, splendid_ext;
  bool verdict_rickard = false, verdict_splendid = false, verdict_descent = false, pass = false;
  std::vector<std::pair<std::string, double>> timings;
};

struct TheoremOptions {
  std::size_t block = 0;       ///< index into central_idempotents over k'
  bool verify_extension = true;
  bool lemma_checks = true;
  std::string group_name;
};
TheoremReport run_theorem_3_1(const GroupPtr& g, const FieldPtr& k, const FieldPtr& kprime, Rng& rng,
                              const TheoremOptions& opt = {});
TheoremReport run_theorem_3(const GroupPtr& g, const FieldPtr& k, const FieldPtr& kprime, Rng& rng,
                            const TheoremOptions& opt = {});

}  // namespace bd
