#include "doctest.h"

#include <cstdio>

#include "blockdescent/klein4.hpp"

using namespace bd;

namespace {

BlockData principal(const GroupPtr& g, const FieldPtr& f) { return central_idempotents(GroupAlgebra(g, f))[0]; }

void print_timings(const TheoremReport& r) {
  std::printf("%s %s:", r.theorem.c_str(), r.group.c_str());
  for (const auto& [k, v] : r.timings) std::printf(" %s=%.1f", k.c_str(), v);
  std::printf("\n");
}

}  // namespace

TEST_CASE("source algebra classification") {
  Rng rng(31);
  auto f4 = make_field(2, 2);
  struct Case {
    const char* group;
    SourceKind kind, local;
    std::size_t dim;
  };
  for (const Case& c : {Case{"v4", SourceKind::P, SourceKind::P, 4}, Case{"a4", SourceKind::A4, SourceKind::A4, 12},
                        Case{"v4xc3", SourceKind::P, SourceKind::P, 4}, Case{"a5", SourceKind::A5, SourceKind::A4, 44}}) {
    CAPTURE(c.group);
    GroupPtr g = builtin_group(c.group);
    GroupAlgebra ga(g, f4);
    BlockData b = principal(g, f4);
    auto cls = classify_source_algebra(ga, b, rng);
    CHECK(cls.kind == c.kind);
    CHECK(cls.local_kind == c.local);
    CHECK(cls.source_dim == c.dim);
    CHECK(cls.pairing_ok);
    CHECK(cls.source_match.ok());
    CHECK(verify_match(ga, cls.triple.i, b.defect, cls.source_match));
  }
  auto a5 = builtin_group("a5");
  auto cls = classify_source_algebra(GroupAlgebra(a5, f4), principal(a5, f4), rng);
  CHECK(cls.cartan.size() == 3);
  CHECK_FALSE(cartan_equivalent(cls.cartan, cls.local_cartan));
  CHECK(cartan_equivalent(cls.local_cartan, {{2, 1, 1}, {1, 2, 1}, {1, 1, 2}}));
  CHECK(cartan_equivalent({{2, 1}, {1, 3}}, {{3, 1}, {1, 2}}));
  CHECK_FALSE(cartan_equivalent({{2, 1}, {1, 3}}, {{3, 2}, {1, 2}}));
}

TEST_CASE("identification independence") {
  Rng rng(32);
  auto f4 = make_field(2, 2);
  auto a4 = builtin_group("a4");
  GroupAlgebra ga(a4, f4);
  BlockData b = principal(a4, f4);
  auto matches = model_matches(ga, ga.one(), b.defect, SourceKind::A4, 2);
  REQUIRE(matches.size() == 2);
  CHECK(matches[0].embedding != matches[1].embedding);
  for (const auto& m : matches) CHECK(m.ok());
  // Two identifications differ by an automorphism of the algebra.
  RowSpace a(f4, ga.dim()), c(f4, ga.dim());
  a.insert_rows(matches[0].images);
  c.insert_rows(matches[1].images);
  CHECK(a.basis() == c.basis());

  // Tampered matches fail re-verification.
  ModelMatch bad = matches[0];
  std::swap(bad.embedding[1], bad.embedding[2]);
  CHECK_FALSE(verify_match(ga, ga.one(), b.defect, bad));
  CHECK(model_matches(ga, ga.one(), b.defect, SourceKind::P).empty());
}

TEST_CASE("base complex and lemma checks") {
  Rng rng(33);
  auto f4 = make_field(2, 2);
  BoundedComplex x = build_base_complex(f4, rng);
  CHECK(x.dim(0) == 44);
  CHECK(x.dim(1) == 64);
  CHECK(x.is_complex());

  auto a5 = builtin_group("a5");
  GroupAlgebra ga(a5, f4);
  BlockData b = principal(a5, f4);
  BlockPair pair = make_block_pair(a5, f4, b.idempotent, b.defect);
  SourceTriple st = source_triple(ga, b, rng);
  LemmaChecks lc = lemma_checks(pair, st, rng);
  CHECK(lc.fog_unique);
  CHECK(lc.fog_iso);
  CHECK(lc.summand_unique);
  CHECK(lc.summand_iso);
  // With j = 1 and i = b0 the transported complex is the base complex.
  CHECK(iso_test(transport_bimodule(pair, st.i), x.term(0), rng));

  CHECK(is_klein_four(b.defect));
  CHECK_FALSE(is_klein_four(whole(builtin_group("c3"))));
}

TEST_CASE("theorem 3.1 pipeline") {
  auto f2 = make_field(2, 1), f4 = make_field(2, 2);
  SUBCASE("A5 over F2 from F4") {
    Rng rng(34);
    TheoremOptions opt;
    opt.group_name = "a5";
    auto r = run_theorem_3_1(builtin_group("a5"), f2, f4, rng, opt);
    print_timings(r);
    CHECK(r.pass);
    CHECK(r.classification->kind == SourceKind::A5);
    CHECK(r.complex.dim(0) == 44);
    CHECK(r.complex.dim(1) == 64);
    CHECK(r.gamma.global_permutation == std::vector<int>{0, 2, 1});
    CHECK(r.gamma.local_permutation == std::vector<int>{0, 2, 1});
    CHECK(r.verdict_descent);
    CHECK(r.rickard->left.complement_dim == 12);
  }
  SUBCASE("A5 with trivial Galois group") {
    Rng rng(35);
    TheoremOptions opt;
    opt.verify_extension = false;
    opt.lemma_checks = false;
    auto r = run_theorem_3_1(builtin_group("a5"), f4, f4, rng, opt);
    CHECK(r.pass);
    CHECK_FALSE(r.gamma.checked);
  }
  SUBCASE("nilpotent block") {
    Rng rng(36);
    auto r = run_theorem_3_1(builtin_group("v4xc3"), f2, f4, rng);
    CHECK(r.pass);
    CHECK(r.complex.terms.size() == 1);
    CHECK(r.complex.dim(0) == 4);
  }
  SUBCASE("hypothesis violations") {
    Rng rng(37);
    TheoremOptions opt;
    opt.block = 1;
    CHECK_THROWS_AS(run_theorem_3_1(builtin_group("a5"), f2, f4, rng, opt), PreconditionFailed);
    // The non-principal blocks of F4[V4 x C3] are not defined over F2.
    CHECK_THROWS_AS(run_theorem_3_1(builtin_group("v4xc3"), f2, f4, rng, opt), PreconditionFailed);
  }
}

TEST_CASE("theorem 3 pipeline") {
  auto f2 = make_field(2, 1), f4 = make_field(2, 2);
  for (const char* name : {"a4", "v4xc3"}) {
    for (auto [k, kp] : {std::pair{f2, f4}, std::pair{f4, f4}}) {
      CAPTURE(name);
      CAPTURE(k->name());
      Rng rng(38);
      TheoremOptions opt;
      opt.group_name = name;
      auto r = run_theorem_3(builtin_group(name), k, kp, rng, opt);
      print_timings(r);
      CHECK(r.hypothesis_ok);
      CHECK(r.lemmas.key_iso);
      CHECK(r.lemmas.summand_iso);
      CHECK(r.rickard_ext->pass);
      CHECK(r.pass);
    }
  }
  Rng rng(39);
  auto r = run_theorem_3(builtin_group("a5"), f2, f4, rng);
  CHECK_FALSE(r.hypothesis_ok);
  CHECK_FALSE(r.pass);
  CHECK(r.hypothesis_note.find("Cartan") != std::string::npos);
}
