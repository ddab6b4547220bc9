#include "blockdescent/meataxe.hpp"

#include <algorithm>
#include <deque>

namespace bd {

namespace {

Vec unit_vector(std::size_t n, std::size_t i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

// Relation p with p(a) v = 0 of least degree, monic.
Poly local_min_poly(const Matrix& a, const Vec& v) {
  const FieldPtr& f = a.field();
  std::size_t n = a.rows();
  RowSpace rs(f, 2 * n + 1);
  Vec cur = v;
  for (std::size_t k = 0; k <= n; ++k) {
    Vec aug(2 * n + 1, 0);
    std::copy(cur.begin(), cur.end(), aug.begin());
    aug[n + k] = 1;
    Vec red = rs.reduce(aug);
    bool head_zero = std::all_of(red.begin(), red.begin() + static_cast<std::ptrdiff_t>(n), [](Elt x) { return x == 0; });
    if (head_zero) {
      std::vector<Elt> c(red.begin() + static_cast<std::ptrdiff_t>(n), red.begin() + static_cast<std::ptrdiff_t>(n + k + 1));
      return Poly(f, c).monic();
    }
    rs.insert(aug);
    cur = a * cur;
  }
  throw Inconsistency("Krylov iteration did not terminate");
}

Poly lcm(const Poly& a, const Poly& b) {
  Poly g = gcd(a, b);
  return (divmod(a, g).first * b).monic();
}

}  // namespace

RowSpace spin(const FieldPtr& f, const Gens& gens, const std::vector<Vec>& seeds, std::size_t dim) {
  RowSpace rs(f, dim);
  std::deque<Vec> queue;
  for (const auto& s : seeds)
    if (rs.insert(s)) queue.push_back(s);
  while (!queue.empty() && rs.dim() < dim) {
    Vec v = std::move(queue.front());
    queue.pop_front();
    for (const auto& g : gens) {
      Vec w = g * v;
      if (rs.insert(w)) queue.push_back(std::move(w));
    }
  }
  return rs;
}

Poly char_poly(const Matrix& a) {
  const FieldPtr& fp = a.field();
  const Field& F = *fp;
  std::size_t n = a.rows();
  if (a.cols() != n) throw ShapeMismatch("char_poly of a non-square matrix");
  Matrix h = a;
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && h(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t c = 0; c < n; ++c) std::swap(h(i, c), h(m, c));
      for (std::size_t r = 0; r < n; ++r) std::swap(h(r, i), h(r, m));
    }
    Elt tinv = F.inv(h(m, m - 1));
    for (std::size_t r = m + 1; r < n; ++r) {
      Elt u = F.mul(h(r, m - 1), tinv);
      if (!u) continue;
      for (std::size_t c = 0; c < n; ++c) h(r, c) = F.sub(h(r, c), F.mul(u, h(m, c)));
      for (std::size_t rr = 0; rr < n; ++rr) h(rr, m) = F.add(h(rr, m), F.mul(u, h(rr, r)));
    }
  }
  std::vector<Poly> p;
  p.push_back(Poly::constant(fp, 1));
  Poly x = Poly::monomial(fp, 1);
  for (std::size_t m = 0; m < n; ++m) {
    Poly next = (x - Poly::constant(fp, h(m, m))) * p[m];
    Elt t = 1;
    for (std::size_t i = m; i-- > 0;) {
      t = F.mul(t, h(i + 1, i));
      if (!t) break;
      Elt c = F.mul(h(i, m), t);
      if (c) next = next - p[i].scaled(c);
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

Matrix eval_poly(const Poly& f, const Matrix& a) {
  std::size_t n = a.rows();
  Matrix r(a.field(), n, n);
  const Field& F = *a.field();
  for (int d = f.degree(); d >= 0; --d) {
    r = r * a;
    Elt c = f[static_cast<std::size_t>(d)];
    if (c)
      for (std::size_t i = 0; i < n; ++i) r(i, i) = F.add(r(i, i), c);
  }
  return r;
}

Poly min_poly(const Matrix& a) {
  std::size_t n = a.rows();
  Poly m = Poly::constant(a.field(), 1);
  if (n == 0) return m;
  RowSpace covered(a.field(), n);
  for (std::size_t i = 0; i < n && covered.dim() < n; ++i) {
    Vec e = unit_vector(n, i);
    if (covered.contains(e)) continue;
    Poly p = local_min_poly(a, e);
    m = lcm(m, p);
    Vec cur = e;
    for (int k = 0; k < p.degree(); ++k) {
      covered.insert(cur);
      cur = a * cur;
    }
  }
  return m;
}

Gens restrict_action(const Gens& gens, const RowSpace& w) {
  Matrix b = w.basis();
  std::size_t s = w.dim();
  Gens out;
  for (const auto& g : gens) {
    Matrix r(g.field(), s, s);
    for (std::size_t j = 0; j < s; ++j) {
      Vec img = g * b.row(j);
      Vec c = w.coordinates(img);
      for (std::size_t i = 0; i < s; ++i) r(i, j) = c[i];
    }
    out.push_back(std::move(r));
  }
  return out;
}

Gens quotient_action(const Gens& gens, const RowSpace& w) {
  std::vector<std::size_t> fc = w.free_columns();
  std::size_t s = fc.size();
  Gens out;
  for (const auto& g : gens) {
    Matrix r(g.field(), s, s);
    for (std::size_t j = 0; j < s; ++j) {
      Vec img = w.reduce(g.column(fc[j]));
      for (std::size_t i = 0; i < s; ++i) r(i, j) = img[fc[i]];
    }
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

// The first kernel basis vector, then a few random kernel vectors.  A
// single vector is enough for Norton's test, but when f divides the
// characteristic polynomial on two non-isomorphic summands only vectors
// inside one summand spin to a proper submodule.
std::vector<Vec> kernel_samples(const Field& F, const Matrix& ker, Rng& rng) {
  std::vector<Vec> out{ker.column(0)};
  if (ker.cols() == 1) return out;
  for (int t = 0; t < 4; ++t) {
    Vec v(ker.rows(), 0);
    for (std::size_t c = 0; c < ker.cols(); ++c) vec_axpy(F, static_cast<Elt>(rng.below(F.order())), ker.column(c), v);
    if (!vec_is_zero(v)) out.push_back(std::move(v));
  }
  return out;
}

}  // namespace

std::optional<RowSpace> find_submodule(const FieldPtr& fp, const Gens& gens, std::size_t dim, Rng& rng, std::size_t budget) {
  if (dim == 0) throw PreconditionFailed("zero module");
  const Field& F = *fp;
  if (dim == 1) return std::nullopt;
  Gens tr;
  for (const auto& g : gens) tr.push_back(g.transpose());
  std::vector<Matrix> pool = gens;
  pool.push_back(Matrix::identity(fp, dim));
  for (std::size_t attempt = 0; attempt < budget; ++attempt) {
    if (pool.size() < 40) {
      // Words in the generators; trivial generators would otherwise fill
      // the pool with zeros and scalars.
      const Matrix& x = pool[rng.below(pool.size())];
      const Matrix& g = gens[rng.below(gens.size())];
      Matrix next = x * g + pool[rng.below(pool.size())];
      if (!next.is_zero()) pool.push_back(std::move(next));
    }
    Matrix a(fp, dim, dim);
    for (const auto& m : pool) {
      Elt c = static_cast<Elt>(rng.below(F.order()));
      if (!c) continue;
      a = a + m.scaled(c);
    }
    auto factors = factor(char_poly(a), rng);
    std::stable_sort(factors.begin(), factors.end(), [](const auto& u, const auto& v) { return u.first.degree() < v.first.degree(); });
    for (const auto& [f, mult] : factors) {
      (void)mult;
      if (f.degree() > 16 && attempt + 1 < budget) continue;
      Matrix fa = eval_poly(f, a);
      Matrix ker = nullspace(fa);
      for (const Vec& v : kernel_samples(F, ker, rng)) {
        RowSpace w = spin(fp, gens, {v}, dim);
        if (w.dim() < dim) return w;
      }
      Matrix kert = nullspace(fa.transpose());
      for (const Vec& v : kernel_samples(F, kert, rng)) {
        RowSpace wt = spin(fp, tr, {v}, dim);
        if (wt.dim() < dim) {
          Matrix ann = wt.kernel();
          RowSpace sub(fp, dim);
          for (std::size_t c = 0; c < ann.cols(); ++c) sub.insert(ann.column(c));
          return sub;
        }
      }
      if (static_cast<std::size_t>(f.degree()) == ker.cols()) return std::nullopt;
    }
  }
  throw RetryBudgetExceeded("irreducibility test did not decide");
}

bool is_irreducible(const FieldPtr& f, const Gens& gens, std::size_t dim, Rng& rng) {
  return !find_submodule(f, gens, dim, rng).has_value();
}

CompositionSeries composition_series(const FieldPtr& fp, const Gens& gens, std::size_t dim, Rng& rng) {
  CompositionSeries cs;
  auto sub = find_submodule(fp, gens, dim, rng);
  if (!sub) {
    cs.basis = Matrix::identity(fp, dim);
    cs.sizes = {dim};
    cs.factors = {gens};
    return cs;
  }
  CompositionSeries lo = composition_series(fp, restrict_action(gens, *sub), sub->dim(), rng);
  CompositionSeries hi = composition_series(fp, quotient_action(gens, *sub), dim - sub->dim(), rng);
  Matrix wb = sub->basis().transpose() * lo.basis;
  std::vector<std::size_t> fc = sub->free_columns();
  Matrix lift(fp, dim, fc.size());
  for (std::size_t i = 0; i < fc.size(); ++i)
    for (std::size_t j = 0; j < fc.size(); ++j) lift(fc[i], j) = hi.basis(i, j);
  cs.basis = hstack(wb, lift);
  cs.sizes = lo.sizes;
  cs.sizes.insert(cs.sizes.end(), hi.sizes.begin(), hi.sizes.end());
  cs.factors = std::move(lo.factors);
  for (auto& f : hi.factors) cs.factors.push_back(std::move(f));
  return cs;
}

std::vector<Matrix> hom_space(const FieldPtr& fp, const Gens& a, std::size_t m, const Gens& b, std::size_t n) {
  if (a.size() != b.size()) throw ShapeMismatch("hom_space: generator counts differ");
  const Field& F = *fp;
  std::vector<Matrix> result;
  if (m == 0 || n == 0) return result;
  std::size_t s = a.size();

  // Spin the source from standard seeds, recording how each basis vector arose.
  RowSpace span(fp, m);
  std::vector<Vec> bvec;
  std::vector<std::size_t> seed_of, parent, pgen;
  std::vector<std::size_t> seeds;
  std::vector<std::vector<long>> defining;  // defining[k][i] = index produced by a_i b_k, or -1
  std::size_t next_std = 0;
  std::size_t processed = 0;
  while (bvec.size() < m) {
    while (span.contains(unit_vector(m, next_std))) ++next_std;
    Vec e = unit_vector(m, next_std);
    span.insert(e);
    seeds.push_back(bvec.size());
    seed_of.push_back(seeds.size() - 1);
    parent.push_back(0);
    pgen.push_back(0);
    bvec.push_back(e);
    defining.emplace_back(s, -1);
    for (; processed < bvec.size(); ++processed) {
      for (std::size_t i = 0; i < s; ++i) {
        Vec w = a[i] * bvec[processed];
        if (span.insert(w)) {
          defining[processed][i] = static_cast<long>(bvec.size());
          seed_of.push_back(seed_of[processed]);
          parent.push_back(processed);
          pgen.push_back(i);
          bvec.push_back(std::move(w));
          defining.emplace_back(s, -1);
        }
      }
    }
  }
  std::size_t r = seeds.size();
  Matrix bmat = Matrix::from_columns(fp, bvec, m);
  Matrix binv = *inverse(bmat);

  // phi(b_k) = W_k u_{seed(k)}.
  std::vector<Matrix> w(m);
  std::vector<PackedVec> wp(m);
  for (std::size_t k = 0; k < m; ++k) {
    if (k == seeds[seed_of[k]])
      w[k] = Matrix::identity(fp, n);
    else
      w[k] = b[pgen[k]] * w[parent[k]];
    wp[k] = PackedVec(fp, w[k].data());
  }

  std::size_t unknowns = r * n;
  RowSpace cons(fp, unknowns);
  std::vector<PackedVec> acc(r);
  for (std::size_t k = 0; k < m && cons.dim() < unknowns; ++k) {
    for (std::size_t i = 0; i < s && cons.dim() < unknowns; ++i) {
      if (defining[k][i] >= 0) continue;
      Vec c = binv * (a[i] * bvec[k]);
      for (auto& x : acc) x = PackedVec(fp, n * n);
      Matrix lead = b[i] * w[k];
      acc[seed_of[k]].axpy(1, PackedVec(fp, lead.data()));
      for (std::size_t j = 0; j < m; ++j)
        if (c[j]) acc[seed_of[j]].axpy(F.neg(c[j]), wp[j]);
      std::vector<Vec> blocks(r);
      for (std::size_t t = 0; t < r; ++t) blocks[t] = acc[t].unpack();
      Vec row(unknowns);
      for (std::size_t t = 0; t < n; ++t) {
        bool nz = false;
        for (std::size_t sd = 0; sd < r; ++sd)
          for (std::size_t col = 0; col < n; ++col) {
            Elt x = blocks[sd][t * n + col];
            row[sd * n + col] = x;
            nz |= x != 0;
          }
        if (nz) cons.insert(row);
      }
    }
  }
  Matrix sol = cons.kernel();
  for (std::size_t c = 0; c < sol.cols(); ++c) {
    Vec u = sol.column(c);
    Matrix y(fp, n, m);
    for (std::size_t k = 0; k < m; ++k) {
      std::span<const Elt> us(u.data() + seed_of[k] * n, n);
      Vec img = w[k] * us;
      for (std::size_t i = 0; i < n; ++i) y(i, k) = img[i];
    }
    result.push_back(y * binv);
  }
  return result;
}

}  // namespace bd
