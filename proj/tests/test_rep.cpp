#include "doctest.h"

#include <algorithm>
#include <map>
#include <set>

#include "blockdescent/rep.hpp"

using namespace bd;

namespace {

struct A5Setup {
  FieldPtr f;
  GroupPtr g;
  GroupAlgebra ga;
  AlgebraElement b0;
  Subgroup p, n;
  explicit A5Setup(unsigned degree)
      : f(make_field(2, degree)), g(builtin_group("a5")), ga(g, f), b0(central_idempotents(ga)[0].idempotent),
        p(sylow(g, 2)), n(normalizer(g, p)) {}
};

RepModule frobenius_twist(const RepModule& m) {
  const Field& F = *m.field();
  Gens gens;
  for (const auto& x : m.gens()) gens.push_back(x.map([&](Elt a) { return F.frobenius(a); }));
  return RepModule(m.field(), m.group(), m.dim(), gens);
}

std::multiset<std::size_t> dims_of(const std::vector<Summand>& s) {
  std::multiset<std::size_t> d;
  for (const auto& x : s) d.insert(x.module.dim());
  return d;
}

RepModule random_module(const FieldPtr& f, const GroupPtr& g, Rng& rng) {
  // A random submodule quotient of a permutation module keeps things small.
  GroupAlgebra ga(g, f);
  AlgebraElement x = ga.zero();
  for (auto& c : x) c = static_cast<Elt>(rng.below(f->order()));
  RepModule m = left_ideal_module(ga, x);
  return m;
}

}  // namespace

TEST_CASE("module constructions") {
  A5Setup s(2);
  Rng rng(1);
  RepModule blk = block_regular_module(s.ga, s.b0);
  CHECK(blk.dim() == 44);
  CHECK(blk.check(rng));
  auto triv = builtin_group("trivial");
  GroupAlgebra gt(triv, s.f);
  CHECK(block_regular_module(gt, gt.one()).dim() == 1);
  CHECK_THROWS_AS(block_regular_module(s.ga, s.ga.element(1)), PreconditionFailed);

  // c F4A5 b0 as an (A4, A5)-bimodule.
  GroupPtr prod = direct_product(s.n.as_group(), s.g);
  RepModule mp = two_sided_module(s.ga, s.n, whole(s.g), s.ga.one(), s.b0, prod);
  CHECK(mp.dim() == 44);
  CHECK(mp.check(rng));
  // Left and right actions commute: checked through the product relations.
  RepModule bim = two_sided_module(s.ga, whole(s.g), whole(s.g), s.b0, s.b0);
  CHECK(bim.dim() == 44);
  CHECK(bim.check(rng, 20));

  RepModule t = trivial_module(s.f, s.g);
  CHECK(iso_test(dual(t), t, rng));
  auto v4 = builtin_group("v4");
  auto a4 = builtin_group("a4");
  Subgroup pa4 = sylow(a4, 2);
  RepModule ind = induce(trivial_module(s.f, pa4.as_group()), pa4);
  CHECK(ind.dim() == 3);
  CHECK(ind.check(rng));
  CHECK(permutation_module(s.f, pa4).dim() == 3);
  CHECK(iso_test(ind, permutation_module(s.f, pa4), rng));
  RepModule ot = outer_tensor(blk, t);
  CHECK(ot.dim() == 44);
  CHECK(ot.check(rng, 10));
  CHECK(restrict_to(blk, s.n).dim() == 44);
  (void)v4;
}

TEST_CASE("hom spaces and chop") {
  Rng rng(2);
  A5Setup s4(2), s2(1);
  RepModule t = trivial_module(s4.f, s4.g);
  CHECK(hom_space(t, t).size() == 1);

  auto f4 = chop(block_regular_module(s4.ga, s4.b0), rng);
  REQUIRE(f4.size() == 3);
  CHECK(f4[0].module.dim() == 1);
  CHECK(f4[1].module.dim() == 2);
  CHECK(f4[2].module.dim() == 2);
  CHECK(f4[1].label == "2a");
  CHECK(f4[2].label == "2b");
  CHECK(hom_space(f4[1].module, f4[1].module).size() == 1);
  CHECK(hom_space(f4[1].module, f4[2].module).empty());
  CHECK(!iso_test(f4[1].module, f4[2].module, rng));
  // The Frobenius twist swaps the two 2-dimensional simples.
  CHECK(iso_test(frobenius_twist(f4[1].module), f4[2].module, rng));
  CHECK(!iso_test(frobenius_twist(f4[1].module), f4[1].module, rng));

  auto f2 = chop(block_regular_module(s2.ga, s2.b0), rng);
  REQUIRE(f2.size() == 2);
  CHECK(f2[0].module.dim() == 1);
  CHECK(f2[1].module.dim() == 4);
  CHECK(hom_space(f2[1].module, f2[1].module).size() == 2);

  GroupAlgebra a4(builtin_group("a4"), s4.f);
  auto fa = chop(regular_module(a4), rng);
  REQUIRE(fa.size() == 3);
  for (const auto& x : fa) {
    CHECK(x.module.dim() == 1);
    CHECK(x.multiplicity == 4);
  }
  CHECK(fa[0].label == "1a");
  CHECK(fa[2].label == "1c");

  // Same labels under reseeding.
  for (std::uint64_t seed : {5u, 6u, 7u}) {
    Rng r(seed);
    auto again = chop(block_regular_module(s4.ga, s4.b0), r);
    REQUIRE(again.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(again[i].fingerprint == f4[i].fingerprint);
      CHECK(again[i].multiplicity == f4[i].multiplicity);
    }
  }
}

TEST_CASE("decomposition") {
  Rng rng(3);
  A5Setup s(2);
  auto simples = chop(block_regular_module(s.ga, s.b0), rng);
  RepModule two = direct_sum(simples[1].module, simples[1].module);
  auto d2 = decompose(two, rng);
  REQUIRE(d2.size() == 2);
  CHECK(iso_test(d2[0].module, d2[1].module, rng));

  GroupAlgebra a4(builtin_group("a4"), s.f);
  auto da = decompose(regular_module(a4), rng);
  CHECK(dims_of(da) == std::multiset<std::size_t>{4, 4, 4});
  std::vector<RepModule> mods;
  for (auto& x : da) mods.push_back(x.module);
  auto cls = isomorphism_classes(mods, rng);
  CHECK(std::set<std::size_t>(cls.begin(), cls.end()).size() == 3);

  RepModule blk = block_regular_module(s.ga, s.b0);
  auto db = decompose(blk, rng);
  CHECK(dims_of(db) == std::multiset<std::size_t>{8, 8, 8, 8, 12});
  // Summands reassemble the module.
  Matrix sum(s.f, 44, 44);
  for (const auto& x : db) {
    CHECK((x.projection * x.inclusion).is_identity());
    sum = sum + x.inclusion * x.projection;
    CHECK(ModuleMap{x.module, blk, x.inclusion}.is_equivariant());
  }
  CHECK(sum.is_identity());
  // Krull-Schmidt: same multiset under another seed.
  Rng other(99);
  CHECK(dims_of(decompose(blk, other)) == dims_of(db));
}

TEST_CASE("radicals, tops and projective covers") {
  Rng rng(4);
  A5Setup s(2);
  auto simples = chop(block_regular_module(s.ga, s.b0), rng);
  CHECK(radical(simples[1].module, rng).dim() == 0);
  CHECK(iso_test(top(simples[1].module, rng), simples[1].module, rng));

  auto f2 = make_field(2, 1);
  GroupAlgebra v4(builtin_group("v4"), f2);
  CHECK(radical(regular_module(v4), rng).dim() == 3);
  CHECK(socle(regular_module(v4), rng).dim() == 1);

  GroupAlgebra a4(builtin_group("a4"), s.f);
  auto lib4 = pim_library(a4, a4.one(), rng);
  REQUIRE(lib4.pims.size() == 3);
  for (const auto& p : lib4.pims) {
    CHECK(p.module.dim() == 4);
    CHECK(p.top.dim() == 1);
    CHECK(is_projective(p.module));
  }
  auto lib5 = pim_library(s.ga, s.b0, rng);
  std::multiset<std::size_t> pd;
  for (const auto& p : lib5.pims) pd.insert(p.module.dim());
  CHECK(pd == std::multiset<std::size_t>{8, 8, 12});

  // Cartan matrix two ways: chop of PIMs and dim Hom(P_i, P_j).
  auto cartan = [&](const PimLibrary& lib) {
    std::size_t r = lib.pims.size();
    std::vector<std::vector<std::size_t>> c1(r, std::vector<std::size_t>(r)), c2 = c1;
    std::vector<RepModule> tops;
    for (const auto& p : lib.pims) tops.push_back(p.top);
    for (std::size_t i = 0; i < r; ++i) {
      for (const auto& fct : chop(lib.pims[i].module, rng))
        for (std::size_t j = 0; j < r; ++j)
          if (fct.module.dim() == tops[j].dim() && !hom_space(fct.module, tops[j]).empty()) c1[j][i] = fct.multiplicity;
      for (std::size_t j = 0; j < r; ++j) c2[i][j] = hom_space(lib.pims[i].module, lib.pims[j].module).size();
    }
    CHECK(c1 == c2);
    return c1;
  };
  auto c4 = cartan(lib4);
  CHECK(c4 == std::vector<std::vector<std::size_t>>{{2, 1, 1}, {1, 2, 1}, {1, 1, 2}});
  auto c5 = cartan(lib5);
  CHECK(c5 == std::vector<std::vector<std::size_t>>{{4, 2, 2}, {2, 2, 1}, {2, 1, 2}});

  // Cover of a simple is its PIM; cover of zero is zero.
  auto pc = projective_cover(simples[1].module, lib5, rng);
  CHECK(pc.cover.dim() == 8);
  CHECK(rank(pc.map) == 2);
  CHECK(ModuleMap{pc.cover, simples[1].module, pc.map}.is_equivariant());
  CHECK(projective_cover(zero_module(s.f, s.g), lib5, rng).cover.dim() == 0);

  // Cover of M' = F4A5b0 as (A4, A5)-bimodule has dimension 112.
  auto n = s.n.as_group();
  GroupPtr prod = direct_product(n, s.g);
  RepModule mp = two_sided_module(s.ga, s.n, whole(s.g), s.ga.one(), s.b0, prod);
  GroupAlgebra na(prod->product_info()->left, s.f);
  GroupAlgebra gha(prod, s.f);
  auto libn = pim_library(na, na.one(), rng);
  auto libp = product_pim_library(gha, libn, lib5, rng);
  CHECK(libp.pims.size() == 9);
  auto cov = projective_cover(mp, libp, rng);
  CHECK(cov.cover.dim() == 112);
  CHECK(rank(cov.map) == 44);
  CHECK(ModuleMap{cov.cover, mp, cov.map}.is_equivariant());
  CHECK(is_projective(cov.cover));
  CHECK_FALSE(is_projective(mp));
}

TEST_CASE("restriction, uniserial modules, vertices") {
  Rng rng(5);
  A5Setup s(2);
  auto simples = chop(block_regular_module(s.ga, s.b0), rng);
  RepModule res = restrict_to(simples[1].module, s.n);
  auto layers = radical_series(res, rng);
  REQUIRE(layers.size() == 3);
  auto n = s.n.as_group();
  GroupAlgebra na(n, s.f);
  auto ts = chop(regular_module(na), rng);
  REQUIRE(ts.size() == 3);
  int passes = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) passes += check_uniserial(res, {ts[i].module, ts[j].module}, rng);
  CHECK(passes == 1);
  CHECK(check_uniserial(ts[0].module, {ts[0].module}, rng));
  CHECK_FALSE(check_uniserial(direct_sum(ts[1].module, ts[2].module), {ts[1].module, ts[2].module}, rng));

  // Vertices: trivial module has the Sylow as vertex, PIMs the trivial group.
  auto vt = vertex(trivial_module(s.f, s.g), rng);
  CHECK(vt.vertex.order() == 4);
  auto lib5 = pim_library(s.ga, s.b0, rng);
  auto vp = vertex(lib5.pims[0].module, rng);
  CHECK(vp.vertex.order() == 1);
  // Certificate: Tr_Q^G(phi) = id.
  {
    const RepModule& m = lib5.pims[0].module;
    Matrix tr(s.f, m.dim(), m.dim());
    for (std::size_t g = 0; g < 60; ++g)
      tr = tr + m.action(static_cast<int>(g)) * vp.certificate * m.action(s.g->inv(static_cast<int>(g)));
    CHECK(tr.is_identity());
  }
  CHECK(trivial_source_check(trivial_module(s.f, s.g), vt.vertex, rng));
  auto vr = vertex(res, rng);
  CHECK_FALSE(trivial_source_check(res, vr.vertex, rng));

  // Vertex is conjugation invariant.
  RepModule conj = restrict_along(res, n, [&] {
    std::vector<int> m(n->order());
    for (std::size_t x = 0; x < n->order(); ++x) m[x] = n->conj(3 % static_cast<int>(n->order()), static_cast<int>(x));
    return m;
  }());
  auto vc = vertex(conj, rng);
  CHECK(conjugacy_test(n, vc.vertex, vr.vertex));
}

TEST_CASE("duality and Frobenius reciprocity") {
  Rng rng(6);
  auto f = make_field(2, 2);
  auto a4 = builtin_group("a4");
  Subgroup q = sylow(a4, 2);
  auto qg = q.as_group();
  for (int t = 0; t < 20; ++t) {
    RepModule m = random_module(f, qg, rng);
    RepModule nmod = random_module(f, a4, rng);
    CHECK(iso_test(dual(dual(nmod)), nmod, rng));
    CHECK(hom_space(induce(m, q), nmod).size() == hom_space(m, restrict_to(nmod, q)).size());
  }
}

TEST_CASE("outer tensor of simples that are not absolutely irreducible") {
  // Over GF(2) both factors have endomorphism field GF(4), so the tensor
  // product splits into two non-isomorphic halves.
  Rng rng(8);
  auto f2 = make_field(2, 1);
  GroupAlgebra a4(builtin_group("a4"), f2), a5(builtin_group("a5"), f2);
  auto s = chop(regular_module(a4), rng);
  auto t = chop(block_regular_module(a5, central_idempotents(a5)[0].idempotent), rng);
  REQUIRE(s.size() == 2);
  REQUIRE(t.size() == 2);
  RepModule m = outer_tensor(s[1].module, t[1].module);
  REQUIRE(m.dim() == 8);
  auto factors = chop(m, rng);
  REQUIRE(factors.size() == 2);
  CHECK(factors[0].module.dim() == 4);
  CHECK(factors[1].module.dim() == 4);
  CHECK(factors[0].multiplicity == 1);
  CHECK(hom_space(factors[0].module, factors[0].module).size() == 2);
}
