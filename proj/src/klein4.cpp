#include "blockdescent/klein4.hpp"

#include <algorithm>
#include <chrono>
#include <functional>

namespace bd {

std::string kind_name(SourceKind k) {
  switch (k) {
    case SourceKind::P: return "P";
    case SourceKind::A4: return "A4";
    case SourceKind::A5: return "A5b0";
  }
  return "?";
}

GroupPtr model_group(SourceKind k) {
  static const GroupPtr v4 = builtin_group("v4"), a4 = builtin_group("a4"), a5 = builtin_group("a5");
  return k == SourceKind::P ? v4 : k == SourceKind::A4 ? a4 : a5;
}

bool is_klein_four(const Subgroup& s) {
  if (s.order() != 4) return false;
  for (int x : s.elements())
    if (s.ambient()->element_order(x) > 2) return false;
  return true;
}

std::vector<std::vector<std::size_t>> cartan_matrix(const GroupAlgebra& ga, const AlgebraElement& block, Rng& rng) {
  auto simples = chop(block_regular_module(ga, block), rng);
  PimLibrary lib = pim_library(ga, block, rng);
  const std::size_t n = simples.size();
  std::vector<std::vector<std::size_t>> c(n, std::vector<std::size_t>(n, 0));
  for (const auto& pim : lib.pims) {
    int i = find_simple(simples, pim.top, rng);
    if (i < 0) throw Inconsistency("PIM top is not a simple of the block");
    for (const auto& fac : chop(pim.module, rng)) {
      int j = find_simple(simples, fac.module, rng);
      if (j < 0) throw Inconsistency("PIM factor is not a simple of the block");
      c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = fac.multiplicity;
    }
  }
  return c;
}

bool cartan_equivalent(const std::vector<std::vector<std::size_t>>& a, const std::vector<std::vector<std::size_t>>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::size_t> perm(a.size());
  for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = i;
  do {
    bool same = true;
    for (std::size_t i = 0; i < a.size() && same; ++i)
      for (std::size_t j = 0; j < a.size() && same; ++j) same = a[perm[i]][perm[j]] == b[i][j];
    if (same) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

// ---------------------------------------------------------------- models

namespace {

struct Model {
  GroupPtr group;
  GroupAlgebra ga;
  AlgebraElement block;
  Matrix basis;  // rows: a basis of k M block
  Subgroup sylow2;
};

Model make_model(SourceKind kind, const FieldPtr& f) {
  GroupPtr m = model_group(kind);
  GroupAlgebra ga(m, f);
  AlgebraElement blk = kind == SourceKind::A5 ? central_idempotents(ga)[0].idempotent : ga.one();
  RowSpace span(f, ga.dim());
  for (std::size_t g = 0; g < ga.dim(); ++g) span.insert(ga.mul(ga.element(static_cast<int>(g)), blk));
  return {m, ga, blk, span.basis(), sylow(m, 2)};
}

std::size_t corner_dim(const GroupAlgebra& ga, const AlgebraElement& u) {
  RowSpace span(ga.field(), ga.dim());
  for (std::size_t g = 0; g < ga.dim(); ++g) span.insert(ga.mul(ga.mul(u, ga.element(static_cast<int>(g))), u));
  return span.dim();
}

AlgebraElement push(const GroupAlgebra& ga, const std::vector<int>& phi, std::span<const Elt> x) {
  AlgebraElement y = ga.zero();
  for (std::size_t m = 0; m < x.size(); ++m)
    if (x[m]) y[static_cast<std::size_t>(phi[m])] = x[m];
  return y;
}

ModelMatch check_embedding(const GroupAlgebra& ga, const AlgebraElement& u, const Subgroup& p, const Model& md,
                           SourceKind kind, const std::vector<int>& phi) {
  ModelMatch mm;
  mm.kind = kind;
  mm.embedding = phi;
  auto psi = [&](std::span<const Elt> x) { return ga.mul(ga.mul(u, push(ga, phi, x)), u); };

  std::vector<int> img;
  for (int s : md.sylow2.elements()) img.push_back(phi[static_cast<std::size_t>(s)]);
  std::sort(img.begin(), img.end());
  mm.p_compatible = img == p.elements();
  for (int s : md.sylow2.elements()) {
    AlgebraElement e = ga.element(phi[static_cast<std::size_t>(s)]);
    if (ga.mul(u, e) != ga.mul(e, u)) mm.p_compatible = false;
  }

  const std::size_t d = md.basis.rows();
  Matrix images(ga.field(), d, ga.dim());
  for (std::size_t r = 0; r < d; ++r) {
    AlgebraElement y = psi(md.basis.row(r));
    std::copy(y.begin(), y.end(), images.row(r).begin());
  }
  mm.bijective = rank(images) == d && corner_dim(ga, u) == d;
  mm.unital = psi(md.block) == u;
  mm.multiplicative = true;
  for (int s : md.group->generator_indices()) {
    AlgebraElement gs = md.ga.mul(md.ga.element(s), md.block);
    AlgebraElement pgs = psi(gs);
    for (std::size_t r = 0; r < d && mm.multiplicative; ++r) {
      AlgebraElement x(md.basis.row(r).begin(), md.basis.row(r).end());
      if (psi(md.ga.mul(gs, x)) != ga.mul(pgs, psi(x))) mm.multiplicative = false;
    }
  }
  mm.images = std::move(images);
  return mm;
}

// Injective homomorphisms M -> H by backtracking over generator images.
void embeddings(const PermGroup& m, const PermGroup& h, const std::function<bool(const std::vector<int>&)>& visit) {
  const auto& gens = m.generator_indices();
  std::vector<std::vector<int>> cands(gens.size());
  for (std::size_t t = 0; t < gens.size(); ++t)
    for (std::size_t x = 0; x < h.order(); ++x)
      if (h.element_order(static_cast<int>(x)) == m.element_order(gens[t])) cands[t].push_back(static_cast<int>(x));
  std::vector<int> choice(gens.size());
  std::function<bool(std::size_t)> rec = [&](std::size_t t) -> bool {
    if (t == gens.size()) {
      std::vector<int> phi(m.order(), -1);
      phi[0] = 0;
      for (int x : m.bfs_order()) {
        if (x == 0) continue;
        phi[static_cast<std::size_t>(x)] =
            h.mul(choice[static_cast<std::size_t>(m.word_gen(x))], phi[static_cast<std::size_t>(m.word_parent(x))]);
      }
      for (std::size_t x = 0; x < m.order(); ++x)
        for (std::size_t s = 0; s < gens.size(); ++s)
          if (phi[static_cast<std::size_t>(m.mul(gens[s], static_cast<int>(x)))] != h.mul(choice[s], phi[x])) return true;
      std::vector<int> sorted = phi;
      std::sort(sorted.begin(), sorted.end());
      if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return true;
      return visit(phi);
    }
    for (int x : cands[t]) {
      choice[t] = x;
      if (!rec(t + 1)) return false;
    }
    return true;
  };
  rec(0);
}

}  // namespace

std::vector<ModelMatch> model_matches(const GroupAlgebra& ga, const AlgebraElement& u, const Subgroup& p,
                                      SourceKind kind, std::size_t limit) {
  Model md = make_model(kind, ga.field());
  std::vector<ModelMatch> out;
  if (corner_dim(ga, u) != md.basis.rows()) return out;
  embeddings(*md.group, *ga.group(), [&](const std::vector<int>& phi) {
    std::vector<int> img;
    for (int s : md.sylow2.elements()) img.push_back(phi[static_cast<std::size_t>(s)]);
    std::sort(img.begin(), img.end());
    if (img != p.elements()) return true;
    ModelMatch mm = check_embedding(ga, u, p, md, kind, phi);
    if (mm.ok()) out.push_back(std::move(mm));
    return out.size() < limit;
  });
  return out;
}

bool verify_match(const GroupAlgebra& ga, const AlgebraElement& u, const Subgroup& p, const ModelMatch& m) {
  Model md = make_model(m.kind, ga.field());
  if (m.embedding.size() != md.group->order()) return false;
  ModelMatch again = check_embedding(ga, u, p, md, m.kind, m.embedding);
  return again.ok() && again.images == m.images;
}

namespace {

std::optional<SourceKind> kind_of_dim(std::size_t d) {
  if (d == 4) return SourceKind::P;
  if (d == 12) return SourceKind::A4;
  if (d == 44) return SourceKind::A5;
  return std::nullopt;
}

Subgroup in_group(const GroupPtr& h, const Subgroup& s) {
  std::vector<int> e;
  for (int x : s.elements()) {
    int y = h->index_of(s.ambient()->element(x));
    if (y < 0) throw ShapeMismatch("subgroup is not contained in the target group");
    e.push_back(y);
  }
  std::sort(e.begin(), e.end());
  return Subgroup(h, std::move(e));
}

}  // namespace

SourceAlgebraClass classify_source_algebra(const GroupAlgebra& ga, const BlockData& b, Rng& rng) {
  SourceAlgebraClass cls;
  cls.triple = source_triple(ga, b, rng);
  const SourceTriple& st = cls.triple;
  cls.source_dim = st.source_dim;
  cls.local_dim = st.local_dim;
  auto kind = kind_of_dim(st.source_dim);
  auto local = kind_of_dim(st.local_dim);
  if (!kind || !local || *local == SourceKind::A5)
    throw Inconsistency("classification failure: source algebra dimensions " + std::to_string(st.source_dim) + "/" +
                        std::to_string(st.local_dim));
  cls.kind = *kind;
  cls.local_kind = *local;

  GroupAlgebra na(st.normalizer.as_group(), ga.field());
  cls.cartan = cartan_matrix(ga, b.idempotent, rng);
  cls.local_cartan = cartan_matrix(na, st.c.idempotent, rng);
  Model ms = make_model(cls.kind, ga.field());
  Model ml = make_model(cls.local_kind, ga.field());
  if (!cartan_equivalent(cls.cartan, cartan_matrix(ms.ga, ms.block, rng)) ||
      !cartan_equivalent(cls.local_cartan, cartan_matrix(ml.ga, ml.block, rng)))
    throw Inconsistency("classification failure: Cartan matrix differs from the reference model");

  auto sm = model_matches(ga, st.i, b.defect, cls.kind);
  if (sm.empty()) throw Inconsistency("classification failure: no isomorphism to the " + kind_name(cls.kind) + " model");
  cls.source_match = std::move(sm.front());
  AlgebraElement jn = truncate_element(st.normalizer, st.j);
  auto lm = model_matches(na, jn, in_group(na.group(), b.defect), cls.local_kind);
  if (lm.empty())
    throw Inconsistency("classification failure: no isomorphism to the local " + kind_name(cls.local_kind) + " model");
  cls.local_match = std::move(lm.front());
  cls.pairing_ok = cls.kind == SourceKind::P ? cls.local_kind == SourceKind::P : cls.local_kind == SourceKind::A4;
  return cls;
}

// ---------------------------------------------------------------- block pairs

BlockPair make_block_pair(const GroupPtr& g, const FieldPtr& f, const AlgebraElement& b, const Subgroup& p) {
  GroupAlgebra ga(g, f);
  Subgroup n = normalizer(g, p);
  GroupPtr ng = n.as_group();
  BlockData bd{b, p, 0, false};
  AlgebraElement c = brauer_correspondent(ga, bd, p).idempotent;
  GroupPtr prod = direct_product(ng, g);
  std::vector<int> to_n(g->order(), -1);
  for (std::size_t x = 0; x < to_n.size(); ++x) to_n[x] = ng->index_of(g->element(static_cast<int>(x)));
  Subgroup delta = diagonal(prod, p, to_n);
  return BlockPair{ga, b, n, GroupAlgebra(ng, f), c, p, prod, delta};
}

BlockPair change_field(const BlockPair& pair, const FieldPtr& f) {
  const FieldPtr& old = pair.global.field();
  auto convert = [&](const AlgebraElement& x) {
    AlgebraElement y(x.size());
    if (f->degree() <= old->degree()) {
      FieldTower t(f, old);
      for (std::size_t i = 0; i < x.size(); ++i) {
        if (!t.in_base(x[i])) throw PreconditionFailed("block idempotent is not defined over " + f->name());
        y[i] = t.contract(x[i]);
      }
    } else {
      FieldTower t(old, f);
      for (std::size_t i = 0; i < x.size(); ++i) y[i] = t.embed(x[i]);
    }
    return y;
  };
  BlockPair out = pair;
  out.global = GroupAlgebra(pair.global.group(), f);
  out.local = GroupAlgebra(pair.local.group(), f);
  out.b = convert(pair.b);
  out.c = convert(pair.c);
  return out;
}

PimLibrary pair_library(const BlockPair& pair, Rng& rng) {
  return product_pim_library(GroupAlgebra(pair.product, pair.global.field()), pim_library(pair.local, pair.c, rng),
                             pim_library(pair.global, pair.b, rng), rng);
}

RepModule correspondent_bimodule(const BlockPair& pair) {
  AlgebraElement c = embed_element(pair.normalizer, pair.c);
  RepModule m = two_sided_module(pair.global, pair.normalizer, whole(pair.global.group()), c, pair.b, pair.product);
  m.label = "cGb";
  return m;
}

RepModule transport_bimodule(const BlockPair& pair, const AlgebraElement& i) {
  RepModule m = two_sided_module(pair.global, pair.normalizer, whole(pair.global.group()), i, pair.b, pair.product);
  m.label = "T'";
  return m;
}

BoundedComplex two_term_from_cover(const RepModule& m, const PimLibrary& lib, Rng& rng) {
  ProjectiveCover pc = projective_cover(m, lib, rng);
  std::vector<std::size_t> cols;
  for (std::size_t t = 0; t < pc.pim_index.size(); ++t) {
    const Pim& pim = lib.pims[pc.pim_index[t]];
    bool trivial_top = pim.top.dim() == 1;
    for (const auto& g : pim.top.gens()) trivial_top = trivial_top && g.is_identity();
    if (trivial_top) continue;
    for (std::size_t k = 0; k < pim.module.dim(); ++k) cols.push_back(pc.offsets[t] + k);
  }
  RowSpace keep(m.field(), pc.cover.dim());
  for (std::size_t c : cols) {
    Vec e(pc.cover.dim(), 0);
    e[c] = 1;
    keep.insert(e);
  }
  Matrix incl;
  RepModule q = submodule(pc.cover, keep, &incl);
  q.label = "Q'";
  BoundedComplex x = two_term(q, m, pc.map * incl);
  return x;
}

BoundedComplex build_base_complex(const FieldPtr& f, Rng& rng) {
  GroupPtr g = model_group(SourceKind::A5);
  GroupAlgebra ga(g, f);
  BlockPair pair = make_block_pair(g, f, central_idempotents(ga)[0].idempotent, sylow(g, 2));
  RepModule m = correspondent_bimodule(pair);
  m.label = "M'";
  BoundedComplex x = two_term_from_cover(m, pair_library(pair, rng), rng);
  x.left_block = "kA4";
  x.right_block = "kA5b0";
  return x;
}

DeltaSummands delta_summands(const RepModule& m, const Subgroup& delta, Rng& rng) {
  DeltaSummands out;
  const GroupPtr& gp = m.group();
  auto candidates = subgroup_classes(sylow(gp, 2));
  out.summands = decompose(m, rng);
  for (std::size_t s = 0; s < out.summands.size(); ++s) {
    Subgroup v = vertex(out.summands[s].module, rng, candidates).vertex;
    if (v.order() == delta.order() && conjugacy_test(gp, v, delta)) out.delta_vertex.push_back(s);
  }
  return out;
}

LemmaChecks lemma_checks(const BlockPair& pair, const SourceTriple& st, Rng& rng) {
  LemmaChecks lc;
  const GroupPtr& g = pair.global.group();
  GroupPtr lg = st.stabilizer.as_group();
  GroupPtr prod = direct_product(lg, g);
  std::vector<int> to_l(g->order(), -1);
  for (std::size_t x = 0; x < to_l.size(); ++x) to_l[x] = lg->index_of(g->element(static_cast<int>(x)));
  Subgroup delta = diagonal(prod, pair.defect, to_l);

  RepModule eg = two_sided_module(pair.global, st.stabilizer, whole(g), st.e, pair.b, prod);
  auto ds = delta_summands(eg, delta, rng);
  lc.fog_checked = true;
  lc.fog_unique = ds.delta_vertex.size() == 1;
  if (lc.fog_unique) {
    RepModule fg = two_sided_module(pair.global, st.stabilizer, whole(g), st.f, pair.global.one(), prod);
    lc.fog_iso = iso_test(ds.summands[ds.delta_vertex[0]].module, fg, rng).has_value();
  }

  auto cs = delta_summands(correspondent_bimodule(pair), pair.delta, rng);
  lc.summand_checked = true;
  lc.summand_unique = cs.delta_vertex.size() == 1;
  if (lc.summand_unique)
    lc.summand_iso =
        iso_test(cs.summands[cs.delta_vertex[0]].module, transport_bimodule(pair, st.i), rng).has_value();
  return lc;
}

// ---------------------------------------------------------------- pipelines

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
  template <class Fn>
  auto operator()(const std::string& name, Fn&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    struct Guard {
      std::vector<std::pair<std::string, double>>& sink;
      std::string name;
      std::chrono::steady_clock::time_point t0;
      ~Guard() { sink.emplace_back(name, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()); }
    } guard{sink_, name, t0};
    return fn();
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
};

std::vector<int> twist_permutation(const GroupAlgebra& ga, const AlgebraElement& blk, const FieldTower& tower,
                                   Rng& rng) {
  auto simples = chop(block_regular_module(ga, blk), rng);
  std::vector<int> perm;
  for (const auto& s : simples) perm.push_back(find_simple(simples, galois_twist(s.module, tower), rng));
  return perm;
}

struct Common {
  FieldTower tower;
  GroupAlgebra gap;
  std::vector<BlockData> blocks;
  BlockData block;
  BlockPair pair;
};

Common prepare(TheoremReport& rep, const GroupPtr& g, const FieldPtr& k, const FieldPtr& kprime, Rng& rng,
               const TheoremOptions& opt, Stopwatch& clock) {
  if (k->characteristic() != 2 || kprime->characteristic() != 2)
    throw PreconditionFailed("the Klein four pipeline works in characteristic 2");
  if (kprime->degree() % k->degree() != 0) throw PreconditionFailed("k is not a subfield of k'");
  rep.group = opt.group_name;
  rep.group_order = g->order();
  rep.k = k;
  rep.kprime = kprime;
  FieldTower tower(k, kprime);
  GroupAlgebra gap(g, kprime);
  auto blocks = clock("blocks", [&] { return central_idempotents(gap); });
  for (const auto& b : blocks) {
    BlockRow row;
    row.dim = b.dimension;
    row.defect_order = b.defect.order();
    row.principal = b.principal;
    for (std::size_t x = 0; x < b.idempotent.size(); ++x)
      if (b.idempotent[x]) row.support.push_back(static_cast<int>(x));
    rep.blocks.push_back(std::move(row));
  }
  if (opt.block >= blocks.size()) throw PreconditionFailed("block index out of range");
  rep.block_index = opt.block;
  const BlockData& b = blocks[opt.block];
  for (Elt x : b.idempotent)
    if (!tower.in_base(x)) throw PreconditionFailed("block idempotent is not defined over " + k->name());
  if (!is_klein_four(b.defect)) throw PreconditionFailed("defect group is not a Klein four group");
  rep.defect = b.defect.elements();
  BlockPair pair = clock("correspondent", [&] { return make_block_pair(g, kprime, b.idempotent, b.defect); });
  rep.correspondent_dim = left_ideal_module(pair.local, pair.c).dim();
  rep.classification = clock("classify", [&] { return classify_source_algebra(gap, b, rng); });
  return Common{tower, gap, blocks, b, pair};
}

void gamma_checks(TheoremReport& rep, const Common& cm, Rng& rng) {
  if (cm.tower.relative_degree() == 1) return;
  rep.gamma.checked = true;
  rep.gamma.local_permutation = twist_permutation(cm.pair.local, cm.pair.c, cm.tower, rng);
  rep.gamma.global_permutation = twist_permutation(cm.pair.global, cm.pair.b, cm.tower, rng);
  for (const auto& t : rep.complex_ext.terms) rep.gamma.term_stable.push_back(is_gamma_stable(t, cm.tower, rng).stable);
}

bool lemmas_pass(const LemmaChecks& l) {
  if (l.fog_checked && !(l.fog_unique && l.fog_iso)) return false;
  if (l.summand_checked && !(l.summand_unique && l.summand_iso)) return false;
  if (l.key_checked && !l.key_iso) return false;
  return true;
}

// Labels over k drop the prime of the k' label.
void unprime(RepModule& m, const RepModule& ext) {
  m.label = ext.label;
  std::erase(m.label, '\'');
}

void finish(TheoremReport& rep) {
  rep.verdict_rickard = rep.rickard && rep.rickard->pass && (!rep.rickard_ext || rep.rickard_ext->pass);
  rep.verdict_splendid = rep.splendid && rep.splendid->pass && (!rep.splendid_ext || rep.splendid_ext->pass);
  bool gamma_ok = true;
  for (bool s : rep.gamma.term_stable) gamma_ok = gamma_ok && s;
  rep.pass = rep.hypothesis_ok && rep.verdict_rickard && rep.verdict_splendid && rep.verdict_descent && gamma_ok &&
             rep.classification && rep.classification->pairing_ok && lemmas_pass(rep.lemmas);
}

}  // namespace

TheoremReport run_theorem_3_1(const GroupPtr& g, const FieldPtr& k, const FieldPtr& kprime, Rng& rng,
                              const TheoremOptions& opt) {
  TheoremReport rep;
  rep.theorem = "3.1";
  Stopwatch clock(rep.timings);
  Common cm = prepare(rep, g, k, kprime, rng, opt, clock);
  const SourceAlgebraClass& cls = *rep.classification;
  const BlockPair& pk = cm.pair;

  rep.complex_ext = clock("build", [&] {
    RepModule t = transport_bimodule(pk, cls.triple.i);
    if (cls.kind != SourceKind::A5) return single_term(t);
    t.label = "M'";
    return two_term_from_cover(t, pair_library(pk, rng), rng);
  });
  rep.complex_ext.left_block = "c";
  rep.complex_ext.right_block = "b";
  if (opt.verify_extension) {
    rep.rickard_ext = clock("rickard_ext", [&] { return verify_rickard(rep.complex_ext, pk.local_side(), pk.global_side(), rng); });
    rep.splendid_ext = clock("splendid_ext", [&] { return verify_splendid(rep.complex_ext, pk.delta, rng); });
  }
  clock("gamma", [&] { gamma_checks(rep, cm, rng); });
  if (opt.lemma_checks) rep.lemmas = clock("lemmas", [&] { return lemma_checks(pk, cls.triple, rng); });

  BlockPair base = change_field(pk, k);
  rep.descent = clock("descent", [&] {
    std::optional<PimLibrary> lib;
    if (rep.complex_ext.terms.size() == 2) lib = pair_library(base, rng);
    return descend_complex(rep.complex_ext, cm.tower, lib ? &*lib : nullptr, rng);
  });
  rep.verdict_descent = rep.descent->verify(cm.tower);
  rep.complex = rep.descent->form;
  for (std::size_t t = 0; t < rep.complex.terms.size(); ++t) unprime(rep.complex.terms[t], rep.complex_ext.terms[t]);
  rep.rickard = clock("rickard", [&] { return verify_rickard(rep.complex, base.local_side(), base.global_side(), rng); });
  rep.splendid = clock("splendid", [&] { return verify_splendid(rep.complex, base.delta, rng); });
  finish(rep);
  return rep;
}

TheoremReport run_theorem_3(const GroupPtr& g, const FieldPtr& k, const FieldPtr& kprime, Rng& rng,
                            const TheoremOptions& opt) {
  TheoremReport rep;
  rep.theorem = "3";
  Stopwatch clock(rep.timings);
  Common cm = prepare(rep, g, k, kprime, rng, opt, clock);
  const SourceAlgebraClass& cls = *rep.classification;
  const BlockPair& pk = cm.pair;

  // A splendid Morita equivalence over k' forces isomorphic source algebras
  // on both sides, and then multiplication by f is an isomorphism.
  bool same_kind = cls.kind == cls.local_kind;
  bool embedding_iso = cls.triple.embedding_injective && cls.triple.local_dim == cls.triple.source_dim;
  if (!same_kind || !embedding_iso) {
    rep.hypothesis_ok = false;
    rep.hypothesis_note = "no splendid Morita equivalence: source algebra " + kind_name(cls.kind) +
                          " against local " + kind_name(cls.local_kind) +
                          (cartan_equivalent(cls.cartan, cls.local_cartan) ? "" : " (Cartan matrices differ)");
    finish(rep);
    return rep;
  }

  RepModule tp = clock("build", [&] { return transport_bimodule(pk, cls.triple.i); });
  rep.complex_ext = single_term(tp);
  rep.complex_ext.left_block = "c";
  rep.complex_ext.right_block = "b";
  if (opt.verify_extension) {
    rep.rickard_ext = clock("rickard_ext", [&] { return verify_rickard(rep.complex_ext, pk.local_side(), pk.global_side(), rng); });
    rep.splendid_ext = clock("splendid_ext", [&] { return verify_splendid(rep.complex_ext, pk.delta, rng); });
  }
  clock("gamma", [&] { gamma_checks(rep, cm, rng); });
  if (opt.lemma_checks) rep.lemmas = clock("lemmas", [&] { return lemma_checks(pk, cls.triple, rng); });

  BlockPair base = change_field(pk, k);
  clock("descent", [&] {
    auto ds = delta_summands(correspondent_bimodule(base), base.delta, rng);
    rep.lemmas.key_checked = true;
    if (ds.delta_vertex.size() != 1) return;
    RepModule t = ds.summands[ds.delta_vertex[0]].module;
    t.label = "T";
    auto iso = iso_test(extend_scalars(t, cm.tower), tp, rng);
    rep.lemmas.key_iso = iso.has_value();
    if (!iso) return;
    DescentCertificate cert = descend_module(tp, cm.tower, rng);
    ComplexDescent cd;
    cd.form = single_term(t);
    cd.form.left_block = "c";
    cd.form.right_block = "b";
    cd.target = rep.complex_ext;
    cd.iso = {*iso};
    cd.terms = {cert};
    rep.descent = std::move(cd);
  });
  if (!rep.descent) {
    finish(rep);
    return rep;
  }
  rep.verdict_descent = rep.descent->verify(cm.tower) && rep.descent->terms.front().verify(cm.tower) &&
                        iso_test(rep.descent->terms.front().form, rep.descent->form.term(0), rng).has_value();
  rep.complex = rep.descent->form;
  for (std::size_t t = 0; t < rep.complex.terms.size(); ++t) unprime(rep.complex.terms[t], rep.complex_ext.terms[t]);
  rep.rickard = clock("rickard", [&] { return verify_rickard(rep.complex, base.local_side(), base.global_side(), rng); });
  rep.splendid = clock("splendid", [&] { return verify_splendid(rep.complex, base.delta, rng); });
  finish(rep);
  return rep;
}

}  // namespace bd
