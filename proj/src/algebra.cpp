#include "blockdescent/algebra.hpp"

#include <algorithm>

#include "blockdescent/meataxe.hpp"

namespace bd {

// ---------------------------------------------------------------- group algebra

GroupAlgebra::GroupAlgebra(GroupPtr g, FieldPtr f) : group_(std::move(g)), field_(std::move(f)) {}

AlgebraElement GroupAlgebra::element(int g) const {
  AlgebraElement x = zero();
  x[static_cast<std::size_t>(g)] = 1;
  return x;
}

AlgebraElement GroupAlgebra::mul(const AlgebraElement& a, const AlgebraElement& b) const {
  const Field& F = *field_;
  const PermGroup& G = *group_;
  AlgebraElement r = zero();
  std::vector<int> nzb;
  for (std::size_t j = 0; j < b.size(); ++j)
    if (b[j]) nzb.push_back(static_cast<int>(j));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (int j : nzb) {
      auto k = static_cast<std::size_t>(G.mul(static_cast<int>(i), j));
      r[k] = F.add(r[k], F.mul(a[i], b[static_cast<std::size_t>(j)]));
    }
  }
  return r;
}

AlgebraElement GroupAlgebra::conjugate(const AlgebraElement& x, int g) const {
  AlgebraElement r = zero();
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i]) r[static_cast<std::size_t>(group_->conj(g, static_cast<int>(i)))] = x[i];
  return r;
}

bool GroupAlgebra::is_fixed(const AlgebraElement& x, const Subgroup& h) const {
  for (int g : h.generators())
    if (conjugate(x, g) != x) return false;
  return true;
}

AlgebraElement GroupAlgebra::antipode(const AlgebraElement& x) const {
  AlgebraElement r = zero();
  for (std::size_t i = 0; i < x.size(); ++i) r[static_cast<std::size_t>(group_->inv(static_cast<int>(i)))] = x[i];
  return r;
}

Elt GroupAlgebra::augmentation(const AlgebraElement& x) const {
  Elt s = 0;
  for (Elt c : x) s = field_->add(s, c);
  return s;
}

Matrix GroupAlgebra::left_matrix(const AlgebraElement& x) const {
  const Field& F = *field_;
  std::size_t n = dim();
  Matrix m(field_, n, n);
  for (std::size_t g = 0; g < n; ++g) {
    if (!x[g]) continue;
    for (std::size_t h = 0; h < n; ++h) {
      auto k = static_cast<std::size_t>(group_->mul(static_cast<int>(g), static_cast<int>(h)));
      m(k, h) = F.add(m(k, h), x[g]);
    }
  }
  return m;
}

AlgebraElement GroupAlgebra::subset_sum(const std::vector<int>& elems) const {
  AlgebraElement x = zero();
  for (int g : elems) x[static_cast<std::size_t>(g)] = field_->add(x[static_cast<std::size_t>(g)], 1);
  return x;
}

AlgebraElement embed_element(const Subgroup& sub, const AlgebraElement& x) {
  AlgebraElement r(sub.ambient()->order(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) r[static_cast<std::size_t>(sub.elements()[i])] = x[i];
  return r;
}

AlgebraElement truncate_element(const Subgroup& sub, const AlgebraElement& x) {
  AlgebraElement r(sub.order(), 0);
  for (std::size_t i = 0; i < sub.order(); ++i) r[i] = x[static_cast<std::size_t>(sub.elements()[i])];
  return r;
}

// ---------------------------------------------------------------- abstract algebras

Algebra::Algebra(FieldPtr f, std::vector<Matrix> left, Vec unit, Matrix ambient)
    : field_(std::move(f)), left_(std::move(left)), unit_(std::move(unit)), ambient_(std::move(ambient)) {
  if (!ambient_.empty()) {
    span_.emplace(field_, ambient_.cols());
    span_->insert_rows(ambient_);
    if (span_->basis() != ambient_) throw PreconditionFailed("algebra ambient basis must be in reduced echelon form");
  }
}

Vec Algebra::mul(const Vec& a, const Vec& b) const {
  const Field& F = *field_;
  Vec r(dim(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    Vec t = left_[i] * b;
    vec_axpy(F, a[i], t, r);
  }
  return r;
}

Matrix Algebra::left_matrix(const Vec& a) const {
  Matrix m(field_, dim(), dim());
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i]) m = m + left_[i].scaled(a[i]);
  return m;
}

Vec Algebra::basis_element(std::size_t i) const {
  Vec v(dim(), 0);
  v[i] = 1;
  return v;
}

Vec Algebra::to_ambient(const Vec& coords) const {
  if (ambient_.empty()) throw PreconditionFailed("algebra has no ambient embedding");
  Vec r(ambient_.cols(), 0);
  for (std::size_t i = 0; i < coords.size(); ++i) vec_axpy(*field_, coords[i], ambient_.row(i), r);
  return r;
}

Vec Algebra::coordinates(const Vec& v) const {
  if (!span_) throw PreconditionFailed("algebra has no ambient embedding");
  if (!span_->contains(v)) throw PreconditionFailed("vector is not in the algebra");
  return span_->coordinates(v);
}

bool Algebra::contains_ambient(const Vec& v) const {
  if (!span_) throw PreconditionFailed("algebra has no ambient embedding");
  return span_->contains(v);
}

bool Algebra::is_commutative() const {
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = i + 1; j < dim(); ++j)
      if (left_[i].column(j) != left_[j].column(i)) return false;
  return true;
}

Algebra subalgebra(const FieldPtr& f, std::size_t ambient_dim, const AmbientMul& mul, const std::vector<Vec>& spanning,
                   const Vec& unit) {
  RowSpace span(f, ambient_dim);
  for (const auto& v : spanning) span.insert(v);
  if (!span.contains(unit)) throw PreconditionFailed("unit not in the spanned subspace");
  Matrix b = span.basis();
  std::size_t d = span.dim();
  std::vector<Vec> rows(d);
  for (std::size_t i = 0; i < d; ++i) rows[i] = Vec(b.row(i).begin(), b.row(i).end());
  std::vector<Matrix> left(d, Matrix(f, d, d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec p = mul(rows[i], rows[j]);
      if (!span.contains(p)) throw Inconsistency("spanning set is not closed under multiplication");
      Vec c = span.coordinates(p);
      for (std::size_t k = 0; k < d; ++k) left[i](k, j) = c[k];
    }
  return Algebra(f, std::move(left), span.coordinates(unit), b);
}

Algebra group_subalgebra(const GroupAlgebra& ga, const std::vector<AlgebraElement>& spanning, const AlgebraElement& unit) {
  return subalgebra(ga.field(), ga.dim(), [&ga](const Vec& a, const Vec& b) { return ga.mul(a, b); }, spanning, unit);
}

Algebra matrix_algebra(const FieldPtr& f, const std::vector<Matrix>& spanning, const Matrix& unit) {
  std::size_t n = unit.rows();
  std::vector<Vec> flat;
  for (const auto& m : spanning) flat.push_back(m.data());
  return subalgebra(
      f, n * n,
      [f, n](const Vec& a, const Vec& b) { return (Matrix(f, n, n, a) * Matrix(f, n, n, b)).data(); }, flat,
      unit.data());
}

Algebra tensor_algebra(const Algebra& a, const Algebra& b) {
  std::vector<Matrix> left;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) left.push_back(kron(a.left(i), b.left(j)));
  const Field& F = *a.field();
  Vec unit(a.dim() * b.dim(), 0);
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) unit[i * b.dim() + j] = F.mul(a.unit()[i], b.unit()[j]);
  return Algebra(a.field(), std::move(left), std::move(unit));
}

Matrix radical(const Algebra& a, Rng& rng) {
  const FieldPtr& f = a.field();
  std::size_t d = a.dim();
  if (d == 0) return Matrix(f, 0, 0);
  CompositionSeries cs = composition_series(f, a.left(), d, rng);
  Matrix tinv = *inverse(cs.basis);
  std::size_t eqs = 0;
  for (auto s : cs.sizes) eqs += s * s;
  Matrix sys(f, eqs, d);
  for (std::size_t i = 0; i < d; ++i) {
    Matrix t = tinv * a.left(i) * cs.basis;
    std::size_t row = 0, off = 0;
    for (auto s : cs.sizes) {
      for (std::size_t r = 0; r < s; ++r)
        for (std::size_t c = 0; c < s; ++c) sys(row++, i) = t(off + r, off + c);
      off += s;
    }
  }
  return nullspace(sys).transpose();
}

namespace {

// Powers e, x, x^2, ... up to the first linear dependence; returns the
// minimal polynomial and the powers below its degree.
std::pair<Poly, std::vector<Vec>> min_poly_with_powers(const Algebra& a, const Vec& x, const Vec& e) {
  const FieldPtr& f = a.field();
  std::size_t n = a.dim();
  RowSpace rs(f, 2 * n + 1);
  std::vector<Vec> powers;
  Vec cur = e;
  for (std::size_t k = 0; k <= n; ++k) {
    Vec aug(2 * n + 1, 0);
    std::copy(cur.begin(), cur.end(), aug.begin());
    aug[n + k] = 1;
    Vec red = rs.reduce(aug);
    if (std::all_of(red.begin(), red.begin() + static_cast<std::ptrdiff_t>(n), [](Elt c) { return c == 0; })) {
      std::vector<Elt> c(red.begin() + static_cast<std::ptrdiff_t>(n), red.begin() + static_cast<std::ptrdiff_t>(n + k + 1));
      return {Poly(f, c).monic(), powers};
    }
    rs.insert(aug);
    powers.push_back(cur);
    cur = a.mul(x, cur);
  }
  throw Inconsistency("minimal polynomial iteration did not terminate");
}

Vec eval_with_powers(const Field& F, const Poly& p, const std::vector<Vec>& powers, std::size_t n) {
  Vec r(n, 0);
  for (std::size_t k = 0; k < p.coeffs().size(); ++k) vec_axpy(F, p.coeffs()[k], powers.at(k), r);
  return r;
}

// Orthogonal idempotents of k[x] (x in eAe, unit e) from the coprime
// factorization of its minimal polynomial.  Returns {e} when it is a prime power.
std::vector<Vec> fitting_idempotents(const Algebra& a, const Vec& x, const Vec& e, Rng& rng, int* irreducible_degree) {
  const Field& F = *a.field();
  auto [m, powers] = min_poly_with_powers(a, x, e);
  auto fac = factor(m, rng);
  if (irreducible_degree) *irreducible_degree = fac.size() == 1 ? fac[0].first.degree() : 0;
  if (fac.size() < 2) return {e};
  std::vector<Vec> out;
  for (std::size_t i = 0; i < fac.size(); ++i) {
    Poly g = Poly::constant(a.field(), 1);
    for (unsigned t = 0; t < fac[i].second; ++t) g = g * fac[i].first;
    Poly h = divmod(m, g).first;
    auto [one, s, t] = xgcd(h, g);
    (void)t;
    if (one.degree() != 0) throw Inconsistency("non-coprime factors");
    Poly pi = divmod(s * h, m).second;
    out.push_back(eval_with_powers(F, pi, powers, a.dim()));
  }
  return out;
}

Vec random_in(const Field& F, const RowSpace& span, Rng& rng) {
  Matrix b = span.basis();
  Vec v(span.ambient(), 0);
  for (std::size_t i = 0; i < b.rows(); ++i) vec_axpy(F, static_cast<Elt>(rng.below(F.order())), b.row(i), v);
  return v;
}

// nullopt when e is primitive; otherwise a splitting of e.
std::optional<std::vector<Vec>> split_or_certify(const Algebra& a, const Matrix& jrows, const Vec& e, Rng& rng) {
  const Field& F = *a.field();
  std::size_t d = a.dim();
  RowSpace corner(a.field(), d), jc(a.field(), d);
  for (std::size_t i = 0; i < d; ++i) corner.insert(a.mul(a.mul(e, a.basis_element(i)), e));
  for (std::size_t r = 0; r < jrows.rows(); ++r) {
    Vec j(jrows.row(r).begin(), jrows.row(r).end());
    jc.insert(a.mul(a.mul(e, j), e));
  }
  if (corner.dim() == 0) throw PreconditionFailed("zero idempotent");
  std::size_t dim_s = corner.dim() - jc.dim();
  if (dim_s == 1) return std::nullopt;
  Matrix cb = corner.basis();
  bool commutative = true;
  for (std::size_t i = 0; i < cb.rows() && commutative; ++i)
    for (std::size_t k = i + 1; k < cb.rows() && commutative; ++k) {
      Vec x(cb.row(i).begin(), cb.row(i).end()), y(cb.row(k).begin(), cb.row(k).end());
      if (!jc.contains(vec_sub(F, a.mul(x, y), a.mul(y, x)))) commutative = false;
    }
  for (int attempt = 0; attempt < 400; ++attempt) {
    Vec x = random_in(F, corner, rng);
    int deg = 0;
    auto parts = fitting_idempotents(a, x, e, rng, &deg);
    if (parts.size() > 1) return parts;
    if (commutative && static_cast<std::size_t>(deg) == dim_s) return std::nullopt;
  }
  throw RetryBudgetExceeded("primitive idempotent search did not converge");
}

}  // namespace

Poly element_min_poly(const Algebra& a, const Vec& x, const Vec& e) { return min_poly_with_powers(a, x, e).first; }

std::vector<Vec> primitive_decomposition(const Algebra& a, const Vec& u, Rng& rng) {
  if (a.mul(u, u) != u) throw PreconditionFailed("primitive_decomposition: u is not idempotent");
  std::vector<Vec> done;
  if (vec_is_zero(u)) return done;
  Matrix j = radical(a, rng);
  std::vector<Vec> work{u};
  while (!work.empty()) {
    Vec e = std::move(work.back());
    work.pop_back();
    auto parts = split_or_certify(a, j, e, rng);
    if (!parts)
      done.push_back(std::move(e));
    else
      for (auto& p : *parts) work.push_back(std::move(p));
  }
  std::sort(done.begin(), done.end());
  return done;
}

bool is_primitive_idempotent(const Algebra& a, const Vec& e, Rng& rng) {
  if (vec_is_zero(e) || a.mul(e, e) != e) return false;
  return !split_or_certify(a, radical(a, rng), e, rng).has_value();
}

// ---------------------------------------------------------------- blocks

std::vector<BlockData> central_idempotents(const GroupAlgebra& ga) {
  const FieldPtr& fp = ga.field();
  const Field& F = *fp;
  const PermGroup& G = *ga.group();
  std::vector<AlgebraElement> sums;
  for (const auto& cl : G.classes()) sums.push_back(ga.subset_sum(cl));
  Algebra z = group_subalgebra(ga, sums, ga.one());
  std::size_t r = z.dim();

  // Matrix of z -> z^q, which is F-linear on the commutative algebra Z(kG).
  Matrix phi(fp, r, r);
  for (std::size_t i = 0; i < r; ++i) {
    Vec base = z.basis_element(i), acc = z.unit();
    for (std::uint64_t e = F.order(); e; e >>= 1) {
      if (e & 1) acc = z.mul(acc, base);
      base = z.mul(base, base);
    }
    for (std::size_t k = 0; k < r; ++k) phi(k, i) = acc[k];
  }
  Matrix fixed = nullspace(phi - Matrix::identity(fp, r));

  std::vector<Vec> idem{z.unit()};
  for (std::size_t c = 0; c < fixed.cols(); ++c) {
    Vec y = fixed.column(c);
    std::vector<Vec> next;
    for (const auto& e : idem) {
      Vec ye = z.mul(y, e);
      Poly m = element_min_poly(z, ye, e);
      if (m.degree() == 1) {
        next.push_back(e);
        continue;
      }
      // m splits into distinct linear factors on the split semisimple part.
      std::vector<Elt> roots;
      for (unsigned t = 0; t < F.order(); ++t)
        if (m.eval(static_cast<Elt>(t)) == 0) roots.push_back(static_cast<Elt>(t));
      if (static_cast<int>(roots.size()) != m.degree()) throw Inconsistency("Frobenius-fixed element does not split");
      for (Elt lam : roots) {
        Vec acc = e;
        for (Elt mu : roots) {
          if (mu == lam) continue;
          Vec factor_v = vec_sub(F, ye, vec_scale(F, mu, e));
          acc = vec_scale(F, F.inv(F.sub(lam, mu)), z.mul(acc, factor_v));
        }
        next.push_back(acc);
      }
    }
    idem = std::move(next);
  }
  if (idem.size() != fixed.cols()) throw Inconsistency("block count does not match the Frobenius-fixed dimension");

  std::vector<BlockData> blocks;
  for (const auto& e : idem) {
    BlockData b;
    b.idempotent = z.to_ambient(e);
    b.dimension = rank(ga.left_matrix(b.idempotent));
    b.principal = ga.augmentation(b.idempotent) != 0;
    b.defect = defect_group(ga, b.idempotent);
    blocks.push_back(std::move(b));
  }
  std::sort(blocks.begin(), blocks.end(), [](const BlockData& x, const BlockData& y) {
    if (x.principal != y.principal) return x.principal;
    if (x.dimension != y.dimension) return x.dimension > y.dimension;
    return x.idempotent < y.idempotent;
  });
  return blocks;
}

AlgebraElement brauer_map(const GroupAlgebra& ga, const AlgebraElement& x, const Subgroup& p) {
  if (!is_p_group(p, ga.field()->characteristic())) throw PreconditionFailed("Brauer map needs a p-subgroup");
  if (!ga.is_fixed(x, p)) throw PreconditionFailed("element is not fixed by the subgroup");
  return truncate_element(centralizer(ga.group(), p), x);
}

Subgroup defect_group(const GroupAlgebra& ga, const AlgebraElement& b, std::optional<Subgroup> sylow_p) {
  Subgroup s = sylow_p ? *sylow_p : sylow(ga.group(), ga.field()->characteristic());
  const Subgroup* best = nullptr;
  auto subs = subgroups_of(s);
  for (const auto& q : subs)
    if ((!best || q.order() > best->order()) && !vec_is_zero(brauer_map(ga, b, q))) best = &q;
  if (best) return *best;
  throw Inconsistency("Brauer map vanishes on the trivial subgroup");
}

BlockData brauer_correspondent(const GroupAlgebra& ga, const BlockData& b, const Subgroup& p) {
  Subgroup n = normalizer(ga.group(), p);
  GroupPtr h = n.as_group();
  GroupAlgebra gh(h, ga.field());
  std::vector<int> pos;
  for (int x : p.elements())
    pos.push_back(static_cast<int>(std::lower_bound(n.elements().begin(), n.elements().end(), x) - n.elements().begin()));
  std::sort(pos.begin(), pos.end());
  Subgroup ph(h, pos);
  AlgebraElement target = brauer_map(ga, b.idempotent, p);
  for (const auto& c : central_idempotents(gh))
    if (c.defect.order() == p.order() && brauer_map(gh, c.idempotent, ph) == target) return c;
  throw Inconsistency("no Brauer correspondent found");
}

Algebra fixed_point_algebra(const GroupAlgebra& ga, const AlgebraElement& b, const Subgroup& h) {
  if (!ga.is_fixed(b, h)) throw PreconditionFailed("block idempotent is not fixed by the subgroup");
  const PermGroup& G = *ga.group();
  std::vector<char> seen(G.order(), 0);
  std::vector<AlgebraElement> span;
  for (int g = 0; g < static_cast<int>(G.order()); ++g) {
    if (seen[static_cast<std::size_t>(g)]) continue;
    std::vector<int> orbit;
    for (int x : h.elements()) {
      int y = G.conj(x, g);
      if (!seen[static_cast<std::size_t>(y)]) {
        seen[static_cast<std::size_t>(y)] = 1;
        orbit.push_back(y);
      }
    }
    span.push_back(ga.mul(ga.subset_sum(orbit), b));
  }
  return group_subalgebra(ga, span, b);
}

Subgroup stabilizer_of_block(const GroupAlgebra& ga, const Subgroup& n, const AlgebraElement& e) {
  std::vector<int> keep;
  for (int x : n.elements())
    if (ga.conjugate(e, x) == e) keep.push_back(x);
  return Subgroup(ga.group(), keep);
}

SourceTriple source_triple(const GroupAlgebra& ga, const BlockData& b, Rng& rng) {
  const FieldPtr& fp = ga.field();
  const PermGroup& G = *ga.group();
  SourceTriple st;
  st.p = b.defect;
  st.centralizer = centralizer(ga.group(), st.p);
  st.normalizer = normalizer(ga.group(), st.p);
  GroupAlgebra kc(st.centralizer.as_group(), fp);
  AlgebraElement brb = brauer_map(ga, b.idempotent, st.p);

  bool found = false;
  for (const auto& blk : central_idempotents(kc))
    if (kc.mul(brb, blk.idempotent) == blk.idempotent) {
      st.e_local = blk.idempotent;
      found = true;
      break;
    }
  if (!found) throw Inconsistency("no block e of kC_G(P) with Br_P(b) e = e");
  st.e = embed_element(st.centralizer, st.e_local);
  st.stabilizer = stabilizer_of_block(ga, st.normalizer, st.e);
  st.c = brauer_correspondent(ga, b, st.p);

  std::vector<AlgebraElement> ce;
  for (int g = 0; g < static_cast<int>(kc.dim()); ++g) ce.push_back(kc.mul(kc.element(g), st.e_local));
  Algebra ace = group_subalgebra(kc, ce, st.e_local);
  auto js = primitive_decomposition(ace, ace.unit(), rng);
  st.j = embed_element(st.centralizer, ace.to_ambient(js.front()));

  Algebra af = fixed_point_algebra(ga, b.idempotent, st.stabilizer);
  found = false;
  for (const auto& f : primitive_decomposition(af, af.unit(), rng)) {
    AlgebraElement fa = af.to_ambient(f);
    if (brauer_map(ga, fa, st.p) == st.e_local) {
      st.f = fa;
      found = true;
      break;
    }
  }
  if (!found) throw Inconsistency("no primitive f in (kGb)^{N_G(P,e)} with Br_P(f) = e");

  st.i = ga.mul(st.j, st.f);
  if (ga.mul(st.i, st.i) != st.i) throw Inconsistency("i = jf is not idempotent");
  if (vec_is_zero(brauer_map(ga, st.i, st.p))) throw Inconsistency("Br_P(i) = 0");
  Algebra ap = fixed_point_algebra(ga, b.idempotent, st.p);
  if (!is_primitive_idempotent(ap, ap.coordinates(st.i), rng)) throw Inconsistency("i is not primitive in (kGb)^P");

  RowSpace src(fp, ga.dim());
  for (int g = 0; g < static_cast<int>(G.order()); ++g) src.insert(ga.mul(ga.mul(st.i, ga.element(g)), st.i));
  st.source_dim = src.dim();

  RowSpace loc(fp, ga.dim()), img(fp, ga.dim());
  std::vector<AlgebraElement> locals;
  for (int x : st.normalizer.elements()) {
    AlgebraElement y = ga.mul(ga.mul(st.j, ga.element(x)), st.j);
    if (loc.insert(y)) {
      locals.push_back(y);
      img.insert(ga.mul(y, st.f));
    }
  }
  st.local_dim = loc.dim();
  st.embedding_injective = img.dim() == loc.dim();
  for (const auto& x : locals)
    for (const auto& y : locals)
      if (ga.mul(ga.mul(x, st.f), ga.mul(y, st.f)) != ga.mul(ga.mul(x, y), st.f))
        throw Inconsistency("multiplication by f is not multiplicative on j kN_G(P) j");
  return st;
}

}  // namespace bd
