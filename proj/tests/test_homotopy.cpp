#include "doctest.h"

#include <chrono>
#include <cstdio>

#include "blockdescent/homotopy.hpp"

using namespace bd;

namespace {

struct Local {
  FieldPtr f;
  GroupPtr g;
  GroupAlgebra ga;
  AlgebraElement b0;
  Subgroup n;
  GroupPtr ng;
  GroupAlgebra na;
  GroupPtr prod;
  RepModule mp;
  explicit Local(unsigned degree)
      : f(make_field(2, degree)), g(builtin_group("a5")), ga(g, f), b0(central_idempotents(ga)[0].idempotent),
        n(normalizer(g, sylow(g, 2))), ng(n.as_group()), na(ng, f), prod(direct_product(ng, g)),
        mp(two_sided_module(ga, n, whole(g), ga.one(), b0, prod)) {}
};

// Q' -> M' built from the cover summands whose top is not the trivial simple.
BoundedComplex base_complex(const Local& s, Rng& rng) {
  PimLibrary lib5 = pim_library(s.ga, s.b0, rng);
  PimLibrary libn = pim_library(s.na, s.na.one(), rng);
  PimLibrary libp = product_pim_library(GroupAlgebra(s.prod, s.f), libn, lib5, rng);
  ProjectiveCover pc = projective_cover(s.mp, libp, rng);
  RowSpace keep(s.f, pc.cover.dim());
  for (std::size_t t = 0; t < pc.pim_index.size(); ++t) {
    std::size_t d = libp.pims[pc.pim_index[t]].module.dim();
    if (libp.pims[pc.pim_index[t]].top.dim() == 1) continue;
    for (std::size_t k = 0; k < d; ++k) {
      Vec e(pc.cover.dim());
      e[pc.offsets[t] + k] = 1;
      keep.insert(e);
    }
  }
  Matrix incl;
  RepModule q = submodule(pc.cover, keep, &incl);
  return two_term(q, s.mp, pc.map * incl);
}

long euler(const std::map<int, std::size_t>& dims) {
  long e = 0;
  for (auto [n, d] : dims) e += (n % 2 ? -1 : 1) * static_cast<long>(d);
  return e;
}

}  // namespace

TEST_CASE("balanced tensor products") {
  Local s(2);
  Rng rng(11);
  RepModule an = two_sided_module(s.na, whole(s.ng), whole(s.ng), s.na.one(), s.na.one());
  auto left = tensor_over_group(an, s.mp);
  CHECK(left.module.dim() == 44);
  CHECK(left.module.check(rng, 10));
  CHECK(iso_test(left.module, s.mp, rng));

  RepModule bb = two_sided_module(s.ga, whole(s.g), whole(s.g), s.b0, s.b0);
  auto right = tensor_over_group(s.mp, bb, s.prod);
  CHECK(right.module.dim() == 44);
  CHECK(iso_test(right.module, s.mp, rng));

  RepModule z = zero_module(s.f, bb.group());
  CHECK(tensor_over_group(s.mp, z, s.prod).module.dim() == 0);

  RepModule md = bimodule_dual(s.mp);
  CHECK(md.check(rng, 10));
  auto sq = tensor_over_group(md, s.mp);
  CHECK(sq.module.check(rng, 10));
  // tensor_map of identities is the identity.
  Matrix id = tensor_map(right, right, Matrix::identity(s.f, s.mp.dim()), Matrix::identity(s.f, bb.dim()));
  CHECK(id.is_identity());
}

TEST_CASE("duals and total complexes") {
  Local s(2);
  Rng rng(12);
  BoundedComplex x = base_complex(s, rng);
  CHECK(x.dim(0) == 44);
  CHECK(x.dim(1) == 64);
  CHECK(x.is_complex());

  BoundedComplex xd = complex_dual(x);
  CHECK(xd.lo == -1);
  CHECK(xd.dim(-1) == 64);
  CHECK(xd.is_complex());
  BoundedComplex xdd = complex_dual(xd);
  REQUIRE(xdd.lo == x.lo);
  for (int n = x.lo; n <= x.hi(); ++n) CHECK(iso_test(xdd.term(n), x.term(n), rng));
  CHECK(xdd.d(1) == x.d(1));

  BoundedComplex c = complex_tensor(x, xd);
  CHECK(c.is_complex());
  auto h = homology_dims(c);
  std::map<int, std::size_t> dims;
  for (int n = c.lo; n <= c.hi(); ++n) dims[n] = c.dim(n);
  CHECK(euler(dims) == euler(h));
  CHECK(h.at(-1) == 0);
  CHECK(h.at(1) == 0);
  CHECK(homology(c, 0).dim() == h.at(0));
}

TEST_CASE("Rickard verification") {
  Local s(2);
  Rng rng(13);
  BlockSide a{s.na, s.na.one(), "F4A4"};
  BlockSide b{s.ga, s.b0, "F4A5b0"};

  SUBCASE("identity complex") {
    RepModule bb = two_sided_module(s.ga, whole(s.g), whole(s.g), s.b0, s.b0);
    auto rep = verify_rickard(single_term(bb), b, b, rng);
    INFO(rep.left.failure);
    INFO(rep.right.failure);
    CHECK(rep.pass);
    CHECK(rep.left.complement_dim == 44);
  }
  SUBCASE("bare bimodule is not enough") {
    auto rep = verify_rickard(single_term(s.mp), a, b, rng);
    CHECK_FALSE(rep.pass);
    CHECK_FALSE(rep.left.failure.empty());
  }
  SUBCASE("two-term complex") {
    auto t0 = std::chrono::steady_clock::now();
    BoundedComplex x = base_complex(s, rng);
    auto rep = verify_rickard(x, a, b, rng);
    std::printf("rickard: %.1fs left %zu/%zu/%zu right %zu/%zu/%zu\n",
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                rep.left.term_dims[-1], rep.left.term_dims[0], rep.left.term_dims[1], rep.right.term_dims[-1],
                rep.right.term_dims[0], rep.right.term_dims[1]);
    CHECK(rep.left.term_dims == std::map<int, std::size_t>{{-1, 64}, {0, 140}, {1, 64}});
    CHECK(rep.left.pass);
    CHECK(rep.right.pass);
    CHECK(rep.pass);
    CHECK(rep.left.complement_dim == 12);
    CHECK(rep.right.complement_dim == 44);
    CHECK(rep.left.failure.empty());
    CHECK(rep.right.failure.empty());
  }
}

TEST_CASE("splendid terms") {
  Local s(2);
  Rng rng(14);
  BoundedComplex x = base_complex(s, rng);
  Subgroup p = sylow(s.g, 2);
  std::vector<int> to_n(s.g->order());
  for (std::size_t i = 0; i < to_n.size(); ++i) to_n[i] = s.ng->index_of(s.g->element(static_cast<int>(i)));
  Subgroup delta = diagonal(x.terms.front().group(), p, to_n);
  CHECK(delta.order() == 4);
  auto rep = verify_splendid(x, delta, rng);
  CHECK(rep.pass);
  REQUIRE(rep.terms.size() == 2);
  // M' is indecomposable with vertex the full diagonal; Q' is projective.
  REQUIRE(rep.terms[0].summands.size() == 1);
  CHECK(rep.terms[0].summands[0].vertex.order() == 4);
  for (const auto& sv : rep.terms[1].summands) CHECK(sv.vertex.order() == 1);

  RepModule ind = induce(trivial_module(s.f, delta.as_group()), delta);
  CHECK(verify_splendid(single_term(ind), delta, rng).pass);
  // The trivial bimodule has the whole Sylow subgroup as vertex.
  auto bad = verify_splendid(single_term(trivial_module(s.f, s.prod)), delta, rng);
  CHECK_FALSE(bad.pass);
  CHECK(bad.terms[0].summands[0].vertex.order() == 16);
  CHECK_FALSE(bad.terms[0].summands[0].within_delta);
}
