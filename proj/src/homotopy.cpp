#include "blockdescent/homotopy.hpp"

#include <chrono>

namespace bd {

namespace {

Matrix zero_matrix(const FieldPtr& f, std::size_t r, std::size_t c) { return Matrix(f, r, c); }

const PermGroup::ProductInfo& product_of(const RepModule& m) {
  const auto& pi = m.group()->product_info();
  if (!pi) throw PreconditionFailed("bimodule expected over a product group");
  return *pi;
}

bool same_group(const PermGroup& a, const PermGroup& b) { return &a == &b || a.elements() == b.elements(); }

// The same bimodule over another product of the same two groups.
RepModule rebase(const RepModule& m, const GroupPtr& product) {
  const auto& old = product_of(m);
  const auto& now = *product->product_info();
  Gens gens;
  for (int s : now.left->generator_indices())
    gens.push_back(m.action(product_index(*m.group(), old.left->index_of(now.left->element(s)), 0)));
  for (int s : now.right->generator_indices())
    gens.push_back(m.action(product_index(*m.group(), 0, old.right->index_of(now.right->element(s)))));
  return RepModule(m.field(), product, m.dim(), std::move(gens), m.label);
}

// Entry (f^T X g)(i, j) for every pivot pair, as the column of coordinates
// of f m_i (x) g n_j in the target tensor.
Matrix induced(const BalancedTensor& dst, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
               const Matrix& f, const Matrix& g) {
  const FieldPtr& fp = f.field();
  const Field& F = *fp;
  Matrix psi(fp, dst.forms.size(), pairs.size());
  Matrix ft = f.transpose();
  for (std::size_t l = 0; l < dst.forms.size(); ++l) {
    Matrix xg = dst.forms[l] * g;  // dim M' x dim N
    Matrix xgt = xg.transpose();
    for (std::size_t s = 0; s < pairs.size(); ++s) {
      auto fi = ft.row(pairs[s].first);
      auto col = xgt.row(pairs[s].second);
      Elt acc = 0;
      for (std::size_t a = 0; a < fi.size(); ++a)
        if (fi[a] && col[a]) acc = F.add(acc, F.mul(fi[a], col[a]));
      psi(l, s) = acc;
    }
  }
  return psi;
}

}  // namespace

Matrix BoundedComplex::d(int n) const {
  const FieldPtr& f = terms.front().field();
  if (n - 1 < lo || n > hi()) return zero_matrix(f, dim(n - 1), dim(n));
  return diffs[static_cast<std::size_t>(n - lo - 1)];
}

bool BoundedComplex::is_complex() const {
  if (diffs.size() + 1 != terms.size()) return false;
  for (int n = lo + 1; n <= hi(); ++n) {
    const Matrix& m = diffs[static_cast<std::size_t>(n - lo - 1)];
    if (!ModuleMap{term(n), term(n - 1), m}.is_equivariant()) return false;
    if (n - 1 > lo && !(d(n - 1) * m).is_zero()) return false;
  }
  return true;
}

BoundedComplex single_term(const RepModule& m, int degree) {
  BoundedComplex x;
  x.lo = degree;
  x.terms = {m};
  return x;
}

BoundedComplex two_term(const RepModule& upper, const RepModule& lower, const Matrix& d) {
  BoundedComplex x;
  x.lo = 0;
  x.terms = {lower, upper};
  x.diffs = {d};
  if (!x.is_complex()) throw PreconditionFailed("differential is not equivariant");
  return x;
}

// ---------------------------------------------------------------- tensors

BalancedTensor tensor_over_group(const RepModule& m, const RepModule& n, GroupPtr product) {
  const FieldPtr& f = m.field();
  const auto& pm = product_of(m);
  const auto& pn = product_of(n);
  if (*f != *n.field()) throw FieldMismatch("tensor over different fields");
  if (!same_group(*pm.right, *pn.left)) throw ShapeMismatch("middle groups differ");
  if (!product) product = direct_product(pm.left, pn.right);
  const auto& pp = product->product_info();
  if (!pp || !same_group(*pp->left, *pm.left) || !same_group(*pp->right, *pn.right))
    throw ShapeMismatch("product group does not match the outer factors");
  const PermGroup& H = *pm.right;
  const PermGroup& GH = *m.group();
  const PermGroup& HK = *n.group();

  BalancedTensor t;
  Gens out_gens;
  if (m.dim() == 0 || n.dim() == 0) {
    for (std::size_t s = 0; s < product->generator_indices().size(); ++s) out_gens.push_back(Matrix(f, 0, 0));
    t.module = RepModule(f, product, 0, std::move(out_gens));
    t.pivot_inverse = Matrix(f, 0, 0);
    return t;
  }
  Gens mstar, nleft;
  for (int s : H.generator_indices()) {
    mstar.push_back(m.action(product_index(GH, 0, H.inv(s))).transpose());
    nleft.push_back(n.action(product_index(HK, s, 0)));
  }
  t.forms = hom_space(f, nleft, n.dim(), mstar, m.dim());
  const std::size_t r = t.forms.size();
  RowSpace seen(f, r);
  Matrix q(f, r, r);
  for (std::size_t i = 0; i < m.dim() && t.pivots.size() < r; ++i)
    for (std::size_t j = 0; j < n.dim() && t.pivots.size() < r; ++j) {
      Vec v(r);
      for (std::size_t l = 0; l < r; ++l) v[l] = t.forms[l](i, j);
      if (seen.insert(v)) {
        for (std::size_t l = 0; l < r; ++l) q(l, t.pivots.size()) = v[l];
        t.pivots.emplace_back(i, j);
      }
    }
  if (t.pivots.size() != r) throw Inconsistency("balanced forms are not independent");
  t.pivot_inverse = *inverse(q);

  const PermGroup& G = *pp->left;
  const PermGroup& K = *pp->right;
  Matrix im = Matrix::identity(f, m.dim()), in = Matrix::identity(f, n.dim());
  for (int s : G.generator_indices())
    out_gens.push_back(induced(t, t.pivots, m.action(product_index(GH, s, 0)), in) * t.pivot_inverse);
  for (int s : K.generator_indices())
    out_gens.push_back(induced(t, t.pivots, im, n.action(product_index(HK, 0, s))) * t.pivot_inverse);
  t.module = RepModule(f, product, r, std::move(out_gens));
  return t;
}

Matrix tensor_map(const BalancedTensor& src, const BalancedTensor& dst, const Matrix& f, const Matrix& g) {
  const FieldPtr& fp = f.field();
  if (src.forms.empty() || dst.forms.empty()) return Matrix(fp, dst.forms.size(), src.forms.size());
  return induced(dst, src.pivots, f, g) * src.pivot_inverse;
}

RepModule bimodule_dual(const RepModule& m, GroupPtr swapped) {
  const auto& pm = product_of(m);
  if (!swapped) swapped = direct_product(pm.right, pm.left);
  const auto& ps = swapped->product_info();
  if (!ps || !same_group(*ps->left, *pm.right) || !same_group(*ps->right, *pm.left))
    throw ShapeMismatch("swapped product does not match");
  const PermGroup& GH = *m.group();
  Gens gens;
  for (int s : ps->left->generator_indices()) gens.push_back(m.action(product_index(GH, 0, pm.right->inv(s))).transpose());
  for (int s : ps->right->generator_indices()) gens.push_back(m.action(product_index(GH, pm.left->inv(s), 0)).transpose());
  return RepModule(m.field(), swapped, m.dim(), std::move(gens), m.label.empty() ? "" : m.label + "*");
}

BoundedComplex complex_dual(const BoundedComplex& x, GroupPtr swapped) {
  const auto& pm = product_of(x.terms.front());
  if (!swapped) swapped = direct_product(pm.right, pm.left);
  BoundedComplex y;
  y.lo = -x.hi();
  for (int n = y.lo; n <= -x.lo; ++n) y.terms.push_back(bimodule_dual(x.term(-n), swapped));
  for (int n = y.lo + 1; n <= -x.lo; ++n) y.diffs.push_back(x.d(-n + 1).transpose());
  y.left_block = x.right_block;
  y.right_block = x.left_block;
  return y;
}

BoundedComplex complex_tensor(const BoundedComplex& x, const BoundedComplex& y, GroupPtr product) {
  const FieldPtr& f = x.terms.front().field();
  const Field& F = *f;
  const auto& px = product_of(x.terms.front());
  const auto& py = product_of(y.terms.front());
  if (!product) product = direct_product(px.left, py.right);
  std::map<std::pair<int, int>, BalancedTensor> bt;
  for (int i = x.lo; i <= x.hi(); ++i)
    for (int j = y.lo; j <= y.hi(); ++j) bt.emplace(std::make_pair(i, j), tensor_over_group(x.term(i), y.term(j), product));

  BoundedComplex t;
  t.lo = x.lo + y.lo;
  const int hi = x.hi() + y.hi();
  std::map<std::pair<int, int>, std::size_t> offset;
  std::vector<std::size_t> total;
  for (int n = t.lo; n <= hi; ++n) {
    std::optional<RepModule> sum;
    std::size_t off = 0;
    for (int i = x.lo; i <= x.hi(); ++i) {
      int j = n - i;
      if (j < y.lo || j > y.hi()) continue;
      const RepModule& piece = bt.at({i, j}).module;
      offset[{i, j}] = off;
      off += piece.dim();
      sum = sum ? direct_sum(*sum, piece) : piece;
    }
    t.terms.push_back(*sum);
    total.push_back(off);
  }
  for (int n = t.lo + 1; n <= hi; ++n) {
    Matrix d(f, total[static_cast<std::size_t>(n - 1 - t.lo)], total[static_cast<std::size_t>(n - t.lo)]);
    for (int i = x.lo; i <= x.hi(); ++i) {
      int j = n - i;
      if (j < y.lo || j > y.hi()) continue;
      const BalancedTensor& src = bt.at({i, j});
      std::size_t c0 = offset.at({i, j});
      if (i - 1 >= x.lo) {
        const BalancedTensor& dst = bt.at({i - 1, j});
        Matrix blk = tensor_map(src, dst, x.d(i), Matrix::identity(f, y.dim(j)));
        d.set_block(offset.at({i - 1, j}), c0, blk);
      }
      if (j - 1 >= y.lo) {
        const BalancedTensor& dst = bt.at({i, j - 1});
        Matrix blk = tensor_map(src, dst, Matrix::identity(f, x.dim(i)), y.d(j));
        if (i % 2 != 0) blk = blk.scaled(F.neg(1));
        d.set_block(offset.at({i, j - 1}), c0, blk);
      }
    }
    t.diffs.push_back(std::move(d));
  }
  t.left_block = x.left_block;
  t.right_block = y.right_block;
  for (int n = t.lo + 2; n <= hi; ++n)
    if (!(t.d(n - 1) * t.d(n)).is_zero()) throw Inconsistency("total complex has d o d != 0");
  return t;
}

// ---------------------------------------------------------------- homology

namespace {

RowSpace kernel_space(const BoundedComplex& x, int n) {
  const FieldPtr& f = x.terms.front().field();
  RowSpace k(f, x.dim(n));
  if (x.dim(n - 1) == 0) {
    k.insert_rows(Matrix::identity(f, x.dim(n)));
    return k;
  }
  Matrix ns = nullspace(x.d(n));
  for (std::size_t c = 0; c < ns.cols(); ++c) k.insert(ns.column(c));
  return k;
}

}  // namespace

RepModule homology(const BoundedComplex& x, int n) {
  RowSpace k = kernel_space(x, n);
  RepModule z = submodule(x.term(n), k);
  RowSpace b(x.term(n).field(), k.dim());
  if (x.dim(n + 1) > 0) {
    Matrix dn = x.d(n + 1);
    for (std::size_t c = 0; c < dn.cols(); ++c) b.insert(k.coordinates(dn.column(c)));
  }
  return quotient(z, b);
}

std::map<int, std::size_t> homology_dims(const BoundedComplex& x) {
  std::map<int, std::size_t> h;
  for (int n = x.lo; n <= x.hi(); ++n) {
    std::size_t ker = x.dim(n) - (x.dim(n - 1) ? rank(x.d(n)) : 0);
    std::size_t im = x.dim(n + 1) && x.dim(n) ? rank(x.d(n + 1)) : 0;
    h[n] = ker - im;
  }
  return h;
}

// ---------------------------------------------------------------- Rickard

std::optional<Matrix> split_surjection(const RepModule& c, const RepModule& p, const Matrix& d, const PimLibrary& lib,
                                       Rng& rng) {
  const FieldPtr& f = c.field();
  if (p.dim() == 0) return Matrix(f, c.dim(), 0);
  ProjectiveCover pc = projective_cover(p, lib, rng);
  if (pc.cover.dim() != p.dim()) return std::nullopt;
  auto minv = inverse(pc.map);
  if (!minv) return std::nullopt;
  Matrix sz(f, c.dim(), p.dim());
  for (std::size_t t = 0; t < pc.pim_index.size(); ++t) {
    const Pim& pim = lib.pims[pc.pim_index[t]];
    Matrix e = c.act_element(pim.idempotent);
    auto sol = solve_linear(d * e, Matrix::from_columns(f, {pc.images[t]}, p.dim()));
    if (!sol) return std::nullopt;
    Vec y = e * sol->particular.column(0);
    Matrix o = Matrix::from_columns(f, c.orbit(y), c.dim());
    sz.set_block(0, pc.offsets[t], o * pim.basis.transpose());
  }
  Matrix s = sz * *minv;
  if (!(d * s).is_identity()) return std::nullopt;
  return s;
}

namespace {

AlgebraElement block_and_dual(const BlockSide& side) {
  AlgebraElement th = side.ga.antipode(side.block);
  if (th == side.block) return side.block;
  return vec_add(*side.ga.field(), side.block, th);
}

// W = ker d(0) cap ker r inside C_0.
RepModule complement(const BoundedComplex& c, const Matrix& r) {
  const FieldPtr& f = c.term(0).field();
  const std::size_t d0 = c.dim(0);
  Matrix stack(f, 0, d0);
  if (c.dim(-1)) stack = c.d(0);
  if (r.rows()) stack = stack.rows() ? vstack(stack, r) : r;
  RowSpace w(f, d0);
  if (stack.rows() == 0) {
    w.insert_rows(Matrix::identity(f, d0));
  } else {
    Matrix ns = nullspace(stack);
    for (std::size_t k = 0; k < ns.cols(); ++k) w.insert(ns.column(k));
  }
  return submodule(c.term(0), w);
}

SideReport check_side(const std::string& name, const BoundedComplex& c, const PimLibrary& lib,
                      const RepModule& regular, Rng& rng) {
  auto start = std::chrono::steady_clock::now();
  const FieldPtr& f = regular.field();
  SideReport rep;
  rep.name = name;
  for (int n = c.lo; n <= c.hi(); ++n) rep.term_dims[n] = c.dim(n);
  auto finish = [&](const std::string& why) {
    rep.failure = why;
    rep.pass = why.empty();
    rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rep;
  };
  rep.range_supported = c.lo >= -1 && c.hi() <= 1;
  if (!rep.range_supported) return finish("tensor square outside degrees -1..1");
  rep.terms_projective = true;
  for (int n = c.lo; n <= c.hi(); ++n)
    if (n != 0 && c.dim(n) && !is_projective(c.term(n))) rep.terms_projective = false;
  if (!rep.terms_projective) return finish("a nonzero-degree term is not projective");
  rep.homology_dims = homology_dims(c);
  rep.homology_concentrated = true;
  for (auto [n, h] : rep.homology_dims)
    if (n != 0 && h) rep.homology_concentrated = false;
  if (!rep.homology_concentrated) return finish("homology outside degree 0");
  if (c.dim(0) == 0) return finish("degree 0 term vanishes");

  auto s = split_surjection(c.term(0), c.term(-1 >= c.lo ? -1 : 0), c.dim(-1) ? c.d(0) : Matrix(f, 0, c.dim(0)), lib, rng);
  if (c.dim(-1) == 0) s = Matrix(f, c.dim(0), 0);
  rep.outgoing_split = s.has_value();
  if (!s) return finish("outgoing differential does not split");
  rep.section = *s;

  if (c.dim(1)) {
    Matrix d1 = c.d(1);
    auto sigma = split_surjection(dual(c.term(0)), dual(c.term(1)), d1.transpose(), lib, rng);
    rep.incoming_split = sigma.has_value();
    if (!sigma) return finish("incoming differential does not split");
    rep.retraction = sigma->transpose();
  } else {
    rep.incoming_split = true;
    rep.retraction = Matrix(f, 0, c.dim(0));
  }

  RepModule w = complement(c, rep.retraction);
  rep.complement_dim = w.dim();
  auto iso = iso_test(w, regular, rng);
  rep.complement_regular = iso.has_value();
  if (!iso) return finish("degree 0 complement is not the regular bimodule");
  rep.iso = *iso;
  rep.certificates_verified = recheck_side(rep, c, regular);
  if (!rep.certificates_verified) return finish("certificate re-verification failed");
  return finish("");
}

}  // namespace

bool recheck_side(const SideReport& side, const BoundedComplex& c, const RepModule& regular) {
  if (c.dim(-1)) {
    if (!(c.d(0) * side.section).is_identity()) return false;
    if (!ModuleMap{c.term(-1), c.term(0), side.section}.is_equivariant()) return false;
  }
  if (c.dim(1)) {
    if (!(side.retraction * c.d(1)).is_identity()) return false;
    if (!ModuleMap{c.term(0), c.term(1), side.retraction}.is_equivariant()) return false;
  }
  RepModule w = complement(c, side.retraction);
  if (w.dim() != regular.dim() || rank(side.iso) != w.dim()) return false;
  return ModuleMap{w, regular, side.iso}.is_equivariant();
}

PimLibrary bimodule_pim_library(const GroupPtr& product, const BlockSide& left, const BlockSide& right, Rng& rng) {
  PimLibrary l = pim_library(left.ga, block_and_dual(left), rng);
  PimLibrary r = pim_library(right.ga, block_and_dual(right), rng);
  return product_pim_library(GroupAlgebra(product, left.ga.field()), l, r, rng);
}

RickardReport verify_rickard(const BoundedComplex& x, const BlockSide& a, const BlockSide& b, Rng& rng) {
  const auto& px = product_of(x.terms.front());
  if (!same_group(*px.left, *a.ga.group()) || !same_group(*px.right, *b.ga.group()))
    throw ShapeMismatch("complex does not live over the given groups");
  const GroupPtr& g = a.ga.group();
  const GroupPtr& h = b.ga.group();
  GroupPtr hg = direct_product(h, g);
  GroupPtr gg = direct_product(g, g);
  GroupPtr hh = direct_product(h, h);
  // Rebase X on the blocks' own group objects so every product agrees.
  GroupPtr gh = direct_product(g, h);
  BoundedComplex xr = x;
  for (auto& t : xr.terms) t = rebase(t, gh);
  BoundedComplex xd = complex_dual(xr, hg);

  RickardReport rep;
  {
    BoundedComplex c = complex_tensor(xr, xd, gg);
    PimLibrary lib = bimodule_pim_library(gg, a, a, rng);
    RepModule reg = two_sided_module(a.ga, whole(g), whole(g), a.block, a.block, gg);
    rep.left = check_side("X (x) X^v", c, lib, reg, rng);
  }
  {
    BoundedComplex c = complex_tensor(xd, xr, hh);
    PimLibrary lib = bimodule_pim_library(hh, b, b, rng);
    RepModule reg = two_sided_module(b.ga, whole(h), whole(h), b.block, b.block, hh);
    rep.right = check_side("X^v (x) X", c, lib, reg, rng);
  }
  rep.pass = rep.left.pass && rep.right.pass;
  return rep;
}

// ---------------------------------------------------------------- splendid

SplendidReport verify_splendid(const BoundedComplex& x, const Subgroup& delta, Rng& rng) {
  SplendidReport rep;
  rep.pass = true;
  const GroupPtr& gp = x.terms.front().group();
  unsigned p = x.terms.front().field()->characteristic();
  Subgroup ambient_delta(gp, delta.elements());
  auto candidates = subgroup_classes(sylow(gp, p));
  auto delta_subs = subgroups_of(ambient_delta);
  for (int n = x.lo; n <= x.hi(); ++n) {
    TermSplendid ts;
    ts.degree = n;
    RepModule term = x.term(n);
        for (const auto& s : decompose(term, rng)) {
      SummandVertex sv;
      sv.dim = s.module.dim();
      sv.vertex = vertex(s.module, rng, candidates).vertex;
      for (const auto& d : delta_subs)
        if (d.order() == sv.vertex.order() && conjugacy_test(gp, sv.vertex, d)) {
          sv.within_delta = true;
          break;
        }
      sv.trivial_source = trivial_source_check(s.module, sv.vertex, rng);
      if (!sv.within_delta || !sv.trivial_source) rep.pass = false;
      ts.summands.push_back(std::move(sv));
    }
    rep.terms.push_back(std::move(ts));
  }
  return rep;
}

}  // namespace bd
