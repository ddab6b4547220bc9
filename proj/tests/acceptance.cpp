// Acceptance run: one line per criterion, non-zero exit if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "blockdescent/klein4.hpp"
#include "oracles.hpp"

using namespace bd;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      out_.pass = false;
      if (!failures_.empty()) failures_ += "; ";
      failures_ += what;
    }
  }
  void note(const std::string& s) {
    if (!notes_.empty()) notes_ += ", ";
    notes_ += s;
  }
  Outcome result() const {
    Outcome o = out_;
    o.detail = o.pass ? notes_ : "failed: " + failures_;
    return o;
  }

 private:
  Outcome out_;
  std::string failures_, notes_;
};

template <class T>
std::string join(const std::multiset<T>& xs) {
  std::ostringstream s;
  s << "{";
  bool first = true;
  for (const auto& x : xs) {
    s << (first ? "" : ",") << x;
    first = false;
  }
  s << "}";
  return s.str();
}

AlgebraElement principal_block(const GroupAlgebra& ga) { return central_idempotents(ga)[0].idempotent; }

std::map<Perm, Elt> by_permutation(const GroupPtr& g, const AlgebraElement& x) {
  std::map<Perm, Elt> out;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) out[g->element(static_cast<int>(i))] = x[i];
  return out;
}

Subgroup inside(const GroupPtr& h, const Subgroup& s) {
  std::vector<int> idx;
  for (int x : s.elements()) idx.push_back(h->index_of(s.ambient()->element(x)));
  return Subgroup(h, idx);
}

RepModule random_ideal(const GroupAlgebra& ga, Rng& rng) {
  AlgebraElement x = ga.zero();
  for (auto& c : x) c = static_cast<Elt>(rng.below(ga.field()->order()));
  return left_ideal_module(ga, x);
}

// ---- criteria ----

Outcome blocks_criterion() {
  Check c;
  Rng rng(101);
  struct Case {
    const char* group;
    unsigned n;
    std::multiset<std::size_t> dims, defects;
  };
  for (const auto& k : {Case{"a5", 2, {16, 44}, {1, 4}}, Case{"a5", 1, {16, 44}, {1, 4}}, Case{"a4", 2, {12}, {4}},
                        Case{"a4", 1, {12}, {4}}}) {
    GroupAlgebra ga(builtin_group(k.group), make_field(2, k.n));
    auto blocks = central_idempotents(ga);
    std::multiset<std::size_t> dims, defects;
    std::vector<AlgebraElement> got;
    for (const auto& b : blocks) {
      dims.insert(b.dimension);
      defects.insert(b.defect.order());
      if (b.defect.order() == 4) c.expect(is_klein_four(b.defect), std::string(k.group) + " defect is not V4");
      got.push_back(b.idempotent);
    }
    std::sort(got.begin(), got.end());
    std::vector<AlgebraElement> best;
    for (int t = 0; t < 8; ++t) {
      auto o = oracle::oracle_blocks(ga, oracle::random_central(ga, rng), rng);
      if (o.size() > best.size()) best = o;
    }
    const std::string tag = std::string(k.group) + "/GF(" + std::to_string(1u << k.n) + ")";
    c.expect(dims == k.dims, tag + " block dims " + join(dims));
    c.expect(defects == k.defects, tag + " defect orders " + join(defects));
    c.expect(got == best, tag + " idempotents differ from the minimal polynomial oracle");
    c.note(tag + " dims " + join(dims));
  }
  return c.result();
}

Outcome brauer_criterion() {
  Check c;
  for (unsigned n : {1u, 2u}) {
    auto f = make_field(2, n);
    auto g = builtin_group("a5");
    GroupAlgebra ga(g, f);
    BlockData b0 = central_idempotents(ga)[0];
    const Subgroup& p = b0.defect;
    GroupPtr ng = normalizer(g, p).as_group();
    GroupAlgebra gn(ng, f);
    auto local_blocks = central_idempotents(gn);
    c.expect(local_blocks.size() == 1, "kN(P) has more than one block");
    c.expect(ng->order() == 12 && find_isomorphism(*ng, *builtin_group("a4")).has_value(), "N(P) is not A4");
    Subgroup pn = inside(ng, p);
    auto lhs = by_permutation(centralizer(g, p).as_group(), brauer_map(ga, b0.idempotent, p));
    auto rhs = by_permutation(centralizer(ng, pn).as_group(), brauer_map(gn, local_blocks[0].idempotent, pn));
    c.expect(!lhs.empty() && lhs == rhs, "Brauer images differ over " + f->name());
    c.expect(brauer_correspondent(ga, b0, p).idempotent == local_blocks[0].idempotent,
             "brauer_correspondent disagrees over " + f->name());
  }
  c.note("Br_V4(b0) = Br_V4(1_kA4) over GF(2), GF(4)");
  return c.result();
}

Outcome inventory_criterion() {
  Check c;
  struct Case {
    const char* group;
    unsigned n;
    std::multiset<std::size_t> simples, pims;
  };
  for (const auto& k : {Case{"a5", 2, {1, 2, 2}, {8, 8, 12}}, Case{"a5", 1, {1, 4}, {}}, Case{"a4", 2, {1, 1, 1}, {4, 4, 4}},
                        Case{"a4", 1, {1, 2}, {}}}) {
    GroupAlgebra ga(builtin_group(k.group), make_field(2, k.n));
    AlgebraElement b = principal_block(ga);
    RepModule m = block_regular_module(ga, b);
    const std::string tag = std::string(k.group) + "/GF(" + std::to_string(1u << k.n) + ")";
    std::vector<std::vector<Elt>> reference;
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      Rng rng(seed);
      auto simples = chop(m, rng);
      std::multiset<std::size_t> dims;
      std::vector<std::vector<Elt>> fps;
      for (const auto& s : simples) {
        dims.insert(s.module.dim());
        fps.push_back(s.fingerprint);
      }
      c.expect(dims == k.simples, tag + " simple dims " + join(dims) + " with seed " + std::to_string(seed));
      if (reference.empty())
        reference = fps;
      else
        c.expect(fps == reference, tag + " chop disagrees across seeds");
    }
    if (!k.pims.empty()) {
      Rng rng(4);
      std::multiset<std::size_t> pims;
      for (const auto& p : pim_library(ga, b, rng).pims) pims.insert(p.module.dim());
      c.expect(pims == k.pims, tag + " PIM dims " + join(pims));
      c.note(tag + " simples " + join(k.simples) + " PIMs " + join(pims));
    } else {
      c.note(tag + " simples " + join(k.simples));
    }
  }
  return c.result();
}

bool side_ok(const SideReport& s) {
  return s.pass && s.certificates_verified && s.complement_regular && s.outgoing_split && s.incoming_split;
}

Outcome base_complex_criterion(const TheoremReport& r) {
  Check c;
  const BoundedComplex& x = r.complex_ext;
  // Q' in degree 1, M' in degree 0.
  c.expect(x.terms.size() == 2 && x.dim(1) == 64 && x.dim(0) == 44,
           "term dims " + std::to_string(x.dim(1)) + "," + std::to_string(x.dim(0)));
  c.expect(x.is_complex(), "d^2 != 0");
  c.expect(r.rickard_ext && side_ok(r.rickard_ext->left) && side_ok(r.rickard_ext->right),
           "verify_rickard over GF(4): " + (r.rickard_ext ? r.rickard_ext->left.failure + r.rickard_ext->right.failure : ""));
  bool vertices = r.splendid_ext.has_value() && r.splendid_ext->pass;
  if (r.splendid_ext)
    for (const auto& t : r.splendid_ext->terms)
      for (const auto& s : t.summands) vertices = vertices && s.within_delta && s.trivial_source;
  c.expect(vertices, "verify_splendid over GF(4)");
  c.note("(Q',M') = (64,44), Rickard both sides, splendid");
  return c.result();
}

Outcome gamma_criterion(const TheoremReport& r) {
  Check c;
  Rng rng(105);
  auto f2 = make_field(2, 1), f4 = make_field(2, 2);
  FieldTower tower(f2, f4);
  GroupAlgebra ga(builtin_group("a5"), f4);
  AlgebraElement b0 = principal_block(ga);
  auto simples = chop(block_regular_module(ga, b0), rng);
  c.expect(simples.size() == 3, "F4A5b0 does not have three simples");
  if (simples.size() == 3) {
    c.expect(iso_test(galois_twist(simples[1].module, tower), simples[2].module, rng).has_value(), "twist of 2a is not 2b");
    c.expect(iso_test(galois_twist(simples[0].module, tower), simples[0].module, rng).has_value(), "twist moves the trivial module");
    c.expect(!is_gamma_stable(simples[1].module, tower, rng).stable, "2a is Gamma-stable");
  }
  // PIMs of the two blocks in the pair: the projective covers of 2a, 2b and
  // of the two non-trivial simples of F4A4.
  auto pims = pim_library(ga, b0, rng).pims;
  GroupAlgebra gn(builtin_group("a4"), f4);
  auto lpims = pim_library(gn, gn.one(), rng).pims;
  auto swapped = [&](const std::vector<Pim>& ps) {
    std::vector<std::size_t> moved;
    for (std::size_t i = 0; i < ps.size(); ++i)
      if (!iso_test(galois_twist(ps[i].module, tower), ps[i].module, rng)) moved.push_back(i);
    return moved.size() == 2 &&
           iso_test(galois_twist(ps[moved[0]].module, tower), ps[moved[1]].module, rng).has_value();
  };
  c.expect(swapped(pims), "twist does not swap the PIMs of 2a and 2b");
  c.expect(swapped(lpims), "twist does not swap the non-trivial PIMs of F4A4");
  c.expect(r.gamma.checked && r.gamma.global_permutation == std::vector<int>{0, 2, 1} &&
               r.gamma.local_permutation == std::vector<int>{0, 2, 1},
           "pipeline twist permutations");
  c.expect(r.gamma.term_stable == std::vector<bool>{true, true}, "Q' or M' is not Gamma-stable");
  if (r.descent)
    for (const auto& t : r.descent->terms) c.expect(!t.stability.empty(), "missing stability witness");
  c.note("2a<->2b, P(2a)<->P(2b), Q' and M' stable with witnesses");
  return c.result();
}

Outcome descent_criterion(const TheoremReport& r) {
  Check c;
  FieldTower tower(make_field(2, 1), make_field(2, 2));
  c.expect(r.descent.has_value() && r.descent->verify(tower), "chain isomorphism does not re-verify");
  c.expect(r.complex.terms.size() == 2 && r.complex.term(0).field()->order() == 2, "X is not over GF(2)");
  c.expect(r.complex.is_complex(), "X has d^2 != 0");
  c.expect(r.rickard && side_ok(r.rickard->left) && side_ok(r.rickard->right), "verify_rickard over GF(2)");
  c.expect(r.rickard && r.rickard->left.complement_dim == 12, "H0 of X (x) X^v is not F2A4-sized");
  c.expect(r.splendid && r.splendid->pass, "X over GF(2) is not splendid");
  c.note("X over GF(2) dims (" + std::to_string(r.complex.dim(1)) + "," + std::to_string(r.complex.dim(0)) +
         "), H0 = F2A4 (dim 12)");
  return c.result();
}

Outcome lemma_criterion(const TheoremReport& a5) {
  Check c;
  c.expect(a5.lemmas.fog_checked && a5.lemmas.fog_unique && a5.lemmas.fog_iso, "lemma fOG");
  c.expect(a5.lemmas.summand_checked && a5.lemmas.summand_unique && a5.lemmas.summand_iso, "lemma summand");
  Rng rng(107);
  TheoremOptions opt;
  opt.group_name = "v4xc3";
  auto r = run_theorem_3(builtin_group("v4xc3"), make_field(2, 1), make_field(2, 2), rng, opt);
  c.expect(r.lemmas.key_checked && r.lemmas.key_iso, "lemma key on V4 x C3");
  c.note("unique DeltaV4 summands in e.F4A5b0 and c.F4A5b0, k' (x) T = T' for V4xC3");
  return c.result();
}

Outcome theorem3_criterion() {
  Check c;
  auto f2 = make_field(2, 1), f4 = make_field(2, 2);
  for (const char* name : {"v4xc3", "a4"})
    for (const auto& k : {f2, f4}) {
      Rng rng(108);
      auto r = run_theorem_3(builtin_group(name), k, f4, rng);
      c.expect(r.pass && r.hypothesis_ok && r.verdict_rickard, std::string(name) + " over " + k->name());
    }
  Rng rng(109);
  auto r = run_theorem_3(builtin_group("a5"), f2, f4, rng);
  c.expect(!r.hypothesis_ok && !r.pass, "A5 not reported unsatisfiable");
  c.note("V4xC3 and A4 pass over GF(2), GF(4); A5 unsatisfiable");
  return c.result();
}

Outcome property_criterion(const TheoremReport& a5) {
  Check c;
  Rng rng(110);
  std::size_t pairs = 0, complexes = 0, modules = 0;
  for (const char* name : {"a5", "a4", "v4", "v4xc3"}) {
    auto g = builtin_group(name);
    for (unsigned n : {1u, 2u}) {
      auto f = make_field(2, n);
      GroupAlgebra ga(g, f);
      const std::string tag = std::string(name) + "/" + f->name();
      // Brauer map multiplicativity on P-fixed elements.
      Subgroup p = sylow(g, 2);
      Algebra fixed = fixed_point_algebra(ga, ga.one(), p);
      GroupAlgebra kc(centralizer(g, p).as_group(), f);
      bool mult = true;
      for (int t = 0; t < 100; ++t, ++pairs) {
        Vec x(fixed.dim()), y(fixed.dim());
        for (auto& v : x) v = static_cast<Elt>(rng.below(f->order()));
        for (auto& v : y) v = static_cast<Elt>(rng.below(f->order()));
        AlgebraElement ax = fixed.to_ambient(x), ay = fixed.to_ambient(y);
        mult = mult && brauer_map(ga, ga.mul(ax, ay), p) == kc.mul(brauer_map(ga, ax, p), brauer_map(ga, ay, p));
      }
      c.expect(mult, tag + " Brauer map not multiplicative");
      // Orthogonality and completeness.
      auto blocks = central_idempotents(ga);
      AlgebraElement sum = ga.zero();
      bool orth = true;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        sum = vec_add(*f, sum, blocks[i].idempotent);
        for (std::size_t j = 0; j < blocks.size(); ++j)
          orth = orth && ga.mul(blocks[i].idempotent, blocks[j].idempotent) ==
                             (i == j ? blocks[i].idempotent : ga.zero());
      }
      c.expect(orth && sum == ga.one(), tag + " block idempotents");
      // Krull-Schmidt accounting under reseeding.
      RepModule reg = block_regular_module(ga, blocks[0].idempotent);
      std::multiset<std::size_t> dims[2];
      for (int s = 0; s < 2; ++s) {
        Rng r2(200 + static_cast<std::uint64_t>(s));
        std::size_t total = 0;
        for (const auto& x : decompose(reg, r2)) {
          dims[s].insert(x.module.dim());
          total += x.module.dim();
        }
        c.expect(total == reg.dim(), tag + " summand dims do not add up");
      }
      c.expect(dims[0] == dims[1], tag + " decomposition depends on the seed");
      // Duality and Frobenius reciprocity.
      for (int t = 0; t < 3; ++t, ++modules) {
        RepModule m = random_ideal(ga, rng);
        RepModule q = random_ideal(GroupAlgebra(p.as_group(), f), rng);
        c.expect(iso_test(dual(dual(m)), m, rng).has_value(), tag + " dual of dual");
        c.expect(hom_space(induce(q, p), m).size() == hom_space(q, restrict_to(m, p)).size(),
                 tag + " Frobenius reciprocity");
      }
    }
  }
  // d^2 = 0 on every complex the pipelines produce, and on their duals.
  std::vector<BoundedComplex> all{a5.complex_ext, a5.complex};
  for (const char* name : {"a4", "v4xc3"}) {
    Rng r2(111);
    auto r = run_theorem_3_1(builtin_group(name), make_field(2, 1), make_field(2, 2), r2);
    all.push_back(r.complex_ext);
    all.push_back(r.complex);
  }
  for (const auto& x : all) {
    c.expect(x.is_complex(), "d^2 != 0");
    c.expect(complex_dual(x).is_complex(), "d^2 != 0 on a dual");
    complexes += 2;
  }
  c.note(std::to_string(pairs) + " Brauer pairs, " + std::to_string(modules) + " random modules, " +
         std::to_string(complexes) + " complexes");
  return c.result();
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  int failures = 0;
  auto run = [&](int id, double limit, const std::function<Outcome()>& f) {
    auto t0 = Clock::now();
    Outcome o;
    try {
      o = f();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    bool in_time = secs <= limit;
    bool pass = o.pass && in_time;
    failures += !pass;
    std::printf("criterion %d: %s (%.1f s, limit %.0f s) %s%s\n", id, pass ? "PASS" : "FAIL", secs, limit,
                o.detail.c_str(), in_time ? "" : " [over time limit]");
    std::fflush(stdout);
  };

  run(1, 10, blocks_criterion);
  run(2, 5, brauer_criterion);
  run(3, 60, inventory_criterion);

  // One Theorem 3.1 run over (GF(2), GF(4)) feeds criteria 4 to 7; its stage
  // timings are charged to the criteria they belong to.
  TheoremReport a5;
  double pipeline = 0;
  std::string pipeline_error;
  {
    auto t0 = Clock::now();
    try {
      Rng rng(100);
      TheoremOptions opt;
      opt.group_name = "a5";
      a5 = run_theorem_3_1(builtin_group("a5"), make_field(2, 1), make_field(2, 2), rng, opt);
    } catch (const std::exception& e) {
      pipeline_error = e.what();
    }
    pipeline = std::chrono::duration<double>(Clock::now() - t0).count();
  }
  std::map<std::string, double> stage(a5.timings.begin(), a5.timings.end());
  auto from_pipeline = [&](int id, double limit, double spent, std::function<Outcome()> f) {
    run(id, limit - spent, [&] {
      if (!pipeline_error.empty()) return Outcome{false, "pipeline: " + pipeline_error};
      return f();
    });
  };
  std::printf("pipeline: theorem 3.1 for A5 over GF(2) < GF(4) in %.1f s\n", pipeline);
  from_pipeline(4, 600, stage["build"] + stage["rickard_ext"] + stage["splendid_ext"],
                [&] { return base_complex_criterion(a5); });
  from_pipeline(5, 60, stage["gamma"], [&] { return gamma_criterion(a5); });
  from_pipeline(6, 600, stage["descent"] + stage["rickard"] + stage["splendid"], [&] { return descent_criterion(a5); });
  from_pipeline(7, 300, stage["lemmas"], [&] { return lemma_criterion(a5); });
  run(8, 300, theorem3_criterion);
  run(9, 300, [&] { return property_criterion(a5); });

  std::printf("%s: %d of 9 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}
