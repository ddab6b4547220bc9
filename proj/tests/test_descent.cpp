#include "doctest.h"

#include "blockdescent/descent.hpp"

using namespace bd;

namespace {

struct Side {
  FieldPtr f;
  GroupPtr g;
  GroupAlgebra ga;
  AlgebraElement b0;
  Subgroup n;
  GroupPtr ng;
  GroupAlgebra na;
  GroupPtr prod;
  Side(FieldPtr field, GroupPtr a5, Subgroup norm, GroupPtr ngroup, GroupPtr product)
      : f(std::move(field)), g(std::move(a5)), ga(g, f), b0(central_idempotents(ga)[0].idempotent),
        n(std::move(norm)), ng(std::move(ngroup)), na(ng, f), prod(std::move(product)) {}
  RepModule mp() const { return two_sided_module(ga, n, whole(g), ga.one(), b0, prod); }
  PimLibrary library(Rng& rng) const {
    return product_pim_library(GroupAlgebra(prod, f), pim_library(na, na.one(), rng), pim_library(ga, b0, rng), rng);
  }
};

struct Fixture {
  GroupPtr g = builtin_group("a5");
  Subgroup n = normalizer(g, sylow(g, 2));
  GroupPtr ng = n.as_group();
  GroupPtr prod = direct_product(ng, g);
  FieldTower tower{make_field(2, 1), make_field(2, 2)};
  Side k{tower.base(), g, n, ng, prod};
  Side kk{tower.ext(), g, n, ng, prod};
};

BoundedComplex base_complex(const Side& s, Rng& rng) {
  PimLibrary lib = s.library(rng);
  RepModule mp = s.mp();
  ProjectiveCover pc = projective_cover(mp, lib, rng);
  RowSpace keep(s.f, pc.cover.dim());
  for (std::size_t t = 0; t < pc.pim_index.size(); ++t) {
    if (lib.pims[pc.pim_index[t]].top.dim() == 1) continue;
    for (std::size_t c = 0; c < lib.pims[pc.pim_index[t]].module.dim(); ++c) {
      Vec e(pc.cover.dim());
      e[pc.offsets[t] + c] = 1;
      keep.insert(e);
    }
  }
  Matrix incl;
  RepModule q = submodule(pc.cover, keep, &incl);
  return two_term(q, mp, pc.map * incl);
}

}  // namespace

TEST_CASE("twists, stability and scalars") {
  Fixture fx;
  Rng rng(21);
  auto simples = chop(block_regular_module(fx.kk.ga, fx.kk.b0), rng);
  REQUIRE(simples.size() == 3);
  const RepModule& s2a = simples[1].module;
  const RepModule& s2b = simples[2].module;

  CHECK(galois_twist(s2a, fx.tower, 0).gens() == s2a.gens());
  CHECK(galois_twist(s2a, fx.tower, 2).gens() == s2a.gens());
  CHECK(iso_test(galois_twist(s2a, fx.tower), s2b, rng));
  TwistedModule tw{s2a, 1};
  CHECK(galois_twist(tw.module(fx.tower), fx.tower).gens() == s2a.gens());

  RepModule t2 = trivial_module(fx.tower.base(), fx.g);
  CHECK(extend_scalars(t2, fx.tower).gens() == trivial_module(fx.tower.ext(), fx.g).gens());
  RepModule blk = extend_scalars(block_regular_module(fx.k.ga, fx.k.b0), fx.tower);
  CHECK(iso_test(galois_twist(blk, fx.tower), blk, rng));

  CHECK(is_gamma_stable(trivial_module(fx.tower.ext(), fx.g), fx.tower, rng).stable);
  CHECK_FALSE(is_gamma_stable(s2a, fx.tower, rng).stable);
  auto both = is_gamma_stable(direct_sum(s2a, s2b), fx.tower, rng);
  CHECK(both.stable);
  REQUIRE(both.witnesses.size() == 1);

  RepModule r = restrict_scalars(s2a, fx.tower);
  CHECK(r.dim() == 4);
  CHECK(r.check(rng, 10));
  CHECK(is_irreducible(r, rng));
  auto f2 = chop(block_regular_module(fx.k.ga, fx.k.b0), rng);
  CHECK(iso_test(r, f2[1].module, rng));

  // restrict(extend(M)) = M + M.
  RepModule m = f2[1].module;
  CHECK(iso_test(restrict_scalars(extend_scalars(m, fx.tower), fx.tower), direct_sum(m, m), rng));
  // Twisting commutes with direct sums.
  CHECK(iso_test(galois_twist(direct_sum(s2a, blk), fx.tower),
                 direct_sum(galois_twist(s2a, fx.tower), galois_twist(blk, fx.tower)), rng));
}

TEST_CASE("module descent") {
  Fixture fx;
  Rng rng(22);
  RepModule m2 = fx.k.mp();
  auto cert = descend_module(extend_scalars(m2, fx.tower), fx.tower, rng);
  CHECK(cert.verify(fx.tower));
  CHECK(cert.form.dim() == 44);
  CHECK(iso_test(cert.form, m2, rng));

  auto simples = chop(block_regular_module(fx.kk.ga, fx.kk.b0), rng);
  CHECK_THROWS_AS(descend_module(simples[1].module, fx.tower, rng), PreconditionFailed);
  auto pair = descend_module(direct_sum(simples[1].module, simples[2].module), fx.tower, rng);
  CHECK(pair.verify(fx.tower));
  CHECK(is_irreducible(pair.form, rng));

  // Seed independence up to isomorphism.
  Rng other(99);
  auto again = descend_module(extend_scalars(m2, fx.tower), fx.tower, other);
  CHECK(iso_test(again.form, cert.form, rng));

  auto z = descend_module(zero_module(fx.tower.ext(), fx.g), fx.tower, rng);
  CHECK(z.form.dim() == 0);

  // Tampering with the certificate is caught.
  DescentCertificate bad = cert;
  bad.iso(0, 0) = fx.tower.ext()->add(bad.iso(0, 0), 1);
  CHECK_FALSE(bad.verify(fx.tower));
}

TEST_CASE("complex descent over F2") {
  Fixture fx;
  Rng rng(23);
  BoundedComplex x = base_complex(fx.kk, rng);
  REQUIRE(x.dim(1) == 64);
  CHECK(is_gamma_stable(x.term(1), fx.tower, rng).stable);
  CHECK(is_gamma_stable(x.term(0), fx.tower, rng).stable);

  PimLibrary lib2 = fx.k.library(rng);
  ComplexDescent cd = descend_complex(x, fx.tower, &lib2, rng);
  CHECK(cd.verify(fx.tower));
  CHECK(cd.form.dim(0) == 44);
  CHECK(cd.form.dim(1) == 64);
  CHECK(cd.form.is_complex());
  CHECK(*cd.form.terms.front().field() == *fx.tower.base());

  BlockSide a{fx.k.na, fx.k.na.one(), "F2A4"};
  BlockSide b{fx.k.ga, fx.k.b0, "F2A5b0"};
  auto rep = verify_rickard(cd.form, a, b, rng);
  INFO(rep.left.failure);
  INFO(rep.right.failure);
  CHECK(rep.pass);
  CHECK(rep.left.complement_dim == 12);

  // Identity complex descends to itself.
  RepModule bb = two_sided_module(fx.k.ga, whole(fx.g), whole(fx.g), fx.k.b0, fx.k.b0);
  auto id = descend_complex(extend_complex(single_term(bb), fx.tower), fx.tower, nullptr, rng);
  CHECK(id.verify(fx.tower));
  CHECK(iso_test(id.form.term(0), bb, rng));

  // A complex with an unstable term.
  auto simples = chop(block_regular_module(fx.kk.ga, fx.kk.b0), rng);
  CHECK_THROWS_AS(descend_complex(single_term(simples[1].module), fx.tower, nullptr, rng), PreconditionFailed);
}
