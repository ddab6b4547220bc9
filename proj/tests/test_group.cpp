#include "doctest.h"

#include <set>

#include "blockdescent/group.hpp"

using namespace bd;

namespace {

// Parity of a permutation by cycle counting.
bool is_even(const Perm& p) {
  std::vector<char> seen(p.size(), 0);
  std::size_t transpositions = 0;
  for (std::size_t s = 0; s < p.size(); ++s) {
    std::size_t len = 0;
    for (std::size_t x = s; !seen[x]; x = p[x]) {
      seen[x] = 1;
      ++len;
    }
    if (len) transpositions += len - 1;
  }
  return transpositions % 2 == 0;
}

bool closed(const Subgroup& s) {
  const auto& g = *s.ambient();
  for (int a : s.elements()) {
    if (!s.contains(g.inv(a))) return false;
    for (int b : s.elements())
      if (!s.contains(g.mul(a, b))) return false;
  }
  return s.contains(0);
}

}  // namespace

TEST_CASE("enumerate A5 and small groups") {
  auto a5 = make_group(5, {parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2 3)", 5)});
  CHECK(a5->order() == 60);
  // Oracle: A5 is exactly the even permutations of 5 points.
  std::size_t even = 0;
  Perm p = perm_identity(5);
  std::sort(p.begin(), p.end());
  do {
    if (is_even(p)) {
      ++even;
      CHECK(a5->index_of(p) >= 0);
    } else {
      CHECK(a5->index_of(p) < 0);
    }
  } while (std::next_permutation(p.begin(), p.end()));
  CHECK(even == 60);
  CHECK(a5->element(0) == perm_identity(5));
  CHECK(std::is_sorted(a5->elements().begin(), a5->elements().end()));
  for (int i = 0; i < 60; ++i)
    for (int j = 0; j < 60; ++j) CHECK(a5->element(a5->mul(i, j)) == perm_compose(a5->element(i), a5->element(j)));
  CHECK(a5->classes().size() == 5);

  auto triv = make_group(1, {});
  CHECK(triv->order() == 1);
  auto v4 = builtin_group("v4");
  CHECK(v4->order() == 4);
  CHECK_THROWS_AS(make_group(5, {parse_cycles("(1 2 3 4 5)", 5), parse_cycles("(1 2)", 5)}, 100), CapExceeded);
  CHECK_THROWS_AS(make_group(5, {perm_identity(4)}), ShapeMismatch);
}

TEST_CASE("Sylow, normalizer, centralizer") {
  auto a5 = builtin_group("a5");
  Subgroup P = sylow(a5, 2);
  CHECK(P.order() == 4);
  for (int x : P.elements()) CHECK(a5->element_order(x) <= 2);
  Subgroup N = normalizer(a5, P);
  CHECK(N.order() == 12);
  CHECK(N.as_group()->classes().size() == 4);  // A4 has 4 classes
  Subgroup C = centralizer(a5, P);
  CHECK(C == P);
  CHECK(P.is_subgroup_of(N));
  CHECK(C.is_subgroup_of(N));
  CHECK(sylow(a5, 3).order() == 3);
  CHECK(sylow(a5, 5).order() == 5);
  CHECK(sylow(a5, 7).order() == 1);

  auto a4 = builtin_group("a4");
  Subgroup Q = sylow(a4, 2);
  CHECK(Q.order() == 4);
  for (int g = 0; g < 12; ++g) CHECK(conjugate(Q, g) == Q);
  CHECK(normalizer(a4, whole(a4)) == whole(a4));
  CHECK(sylow(builtin_group("c3"), 2).order() == 1);

  // Lagrange and containment properties over the built-in set.
  for (auto name : {"a5", "a4", "v4", "v4xc3", "s3", "c3", "trivial"}) {
    auto g = builtin_group(name);
    for (unsigned p : {2u, 3u, 5u}) {
      Subgroup s = sylow(g, p);
      std::size_t n = g->order(), pp = 1;
      while (n % p == 0) {
        n /= p;
        pp *= p;
      }
      CHECK(s.order() == pp);
      CHECK(closed(s));
      CHECK(g->order() % s.order() == 0);
      Subgroup nn = normalizer(g, s);
      CHECK(s.is_subgroup_of(nn));
      CHECK(centralizer(g, s).is_subgroup_of(nn));
      CHECK(g->order() % nn.order() == 0);
    }
  }
}

TEST_CASE("products and diagonals") {
  auto a4 = builtin_group("a4"), a5 = builtin_group("a5");
  auto g = direct_product(a4, a5);
  CHECK(g->order() == 720);
  Rng rng(2);
  for (int t = 0; t < 100; ++t) {
    int x = static_cast<int>(rng.below(720));
    auto [l, r] = product_split(*g, x);
    CHECK(product_index(*g, l, r) == x);
    // element (l, r) acts as l on the first 4 points and r on the last 5
    const Perm& px = g->element(x);
    for (int pt = 0; pt < 4; ++pt) CHECK(px[pt] == a4->element(l)[pt]);
    for (int pt = 0; pt < 5; ++pt) CHECK(px[4 + pt] == a5->element(r)[pt] + 4);
    int y = static_cast<int>(rng.below(720));
    CHECK(g->element(g->mul(x, y)) == perm_compose(g->element(x), g->element(y)));
    CHECK(g->element(g->inv(x)) == perm_inverse(g->element(x)));
  }
  auto gt = direct_product(a5, builtin_group("trivial"));
  CHECK(gt->order() == 60);

  // Delta V4 in A4 x A5 through the inclusion of N_{A5}(V4) = A4'.
  Subgroup P = sylow(a5, 2);
  Subgroup N = normalizer(a5, P);
  auto n = N.as_group();
  auto gn = direct_product(n, a5);
  auto incl = inclusion_map(N);
  auto Pn = Subgroup(n, [&] {
    std::vector<int> e;
    for (int x : P.elements()) e.push_back(static_cast<int>(std::lower_bound(N.elements().begin(), N.elements().end(), x) - N.elements().begin()));
    return e;
  }());
  Subgroup dP = diagonal(gn, Pn, {}, incl);
  CHECK(dP.order() == 4);
  CHECK(closed(dP));
  CHECK(diagonal(gn, trivial_subgroup(n), {}, incl).order() == 1);

  // N_{N x G}(Delta P) = Delta N . (1 x C_G(P)), checked by brute force.
  Subgroup lhs = normalizer(gn, dP);
  Subgroup C = centralizer(a5, P);
  std::vector<int> gens;
  for (int x = 0; x < static_cast<int>(n->order()); ++x) gens.push_back(product_index(*gn, x, incl[static_cast<std::size_t>(x)]));
  for (int c : C.elements()) gens.push_back(product_index(*gn, 0, c));
  Subgroup rhs = generate(gn, gens);
  CHECK(lhs == rhs);
  CHECK(lhs.order() == 48);
}

TEST_CASE("subgroup lattices and conjugacy") {
  auto v4 = builtin_group("v4");
  CHECK(subgroups_of(whole(v4)).size() == 5);
  auto vv = direct_product(v4, v4);
  auto subs = subgroups_of(whole(vv));
  // Oracle: every subgroup of an elementary abelian 2-group is a subspace of
  // F2^4; count subspaces by brute force over subsets closed under XOR.
  std::set<unsigned> found;
  std::size_t count = 0;
  for (unsigned mask = 1; mask < (1u << 16); ++mask) {
    if (!(mask & 1u)) continue;
    bool ok = true;
    for (unsigned a = 0; a < 16 && ok; ++a)
      for (unsigned b = 0; b < 16 && ok; ++b)
        if ((mask >> a & 1u) && (mask >> b & 1u) && !(mask >> (a ^ b) & 1u)) ok = false;
    if (ok) ++count;
  }
  CHECK(count == 67);
  CHECK(subs.size() == count);
  for (const auto& s : subs) {
    CHECK(closed(s));
    CHECK(16 % s.order() == 0);
  }
  Subgroup d = diagonal(vv, whole(v4));
  std::vector<int> right;
  for (int x = 0; x < 4; ++x) right.push_back(inject_right(*vv, x));
  Subgroup r(vv, right);
  CHECK_FALSE(conjugacy_test(vv, d, r));
  CHECK(conjugacy_test(vv, d, d));
  // Sylow subgroups of A5 are all conjugate.
  auto a5 = builtin_group("a5");
  Subgroup P = sylow(a5, 2);
  for (int g = 0; g < 60; ++g) CHECK(conjugacy_test(a5, P, conjugate(P, g)));
}

TEST_CASE("isomorphisms") {
  auto a4 = builtin_group("a4");
  auto a5 = builtin_group("a5");
  auto n = normalizer(a5, sylow(a5, 2)).as_group();
  auto iso = find_isomorphism(*a4, *n);
  REQUIRE(iso);
  for (int x = 0; x < 12; ++x)
    for (int y = 0; y < 12; ++y) CHECK((*iso)[static_cast<std::size_t>(a4->mul(x, y))] == n->mul((*iso)[static_cast<std::size_t>(x)], (*iso)[static_cast<std::size_t>(y)]));
  CHECK_FALSE(find_isomorphism(*builtin_group("v4"), *make_group(4, {parse_cycles("(1 2 3 4)", 4)})));
}

TEST_CASE("group file parsing") {
  auto g = parse_group("# comment\n\n(1 2 3 4 5)  # five-cycle\n(1,2,3)\n");
  CHECK(g->order() == 60);
  CHECK(g->degree() == 5);
  CHECK(parse_group("")->order() == 1);
  try {
    parse_group("(1 2)\n(1 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_group("(1 1)"), ParseError);
  CHECK_THROWS_AS(parse_group("(0 1)"), ParseError);
  CHECK_THROWS_AS(parse_group("1 2"), ParseError);
  CHECK(format_cycles(parse_cycles("(1 3)(2 4 5)", 5)) == "(1 3)(2 4 5)");
  for (auto name : {"a5", "a4", "v4", "v4xc3", "c3", "s3", "trivial"})
    CHECK(parse_group(builtin_group_text(name))->order() == builtin_group(name)->order());
  CHECK(builtin_group("v4xc3")->order() == 12);
}
