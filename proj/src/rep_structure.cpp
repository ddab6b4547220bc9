#include <algorithm>
#include <cmath>

#include "blockdescent/rep.hpp"

namespace bd {

namespace {

void require_same(const RepModule& a, const RepModule& b) {
  if (*a.field() != *b.field()) throw FieldMismatch("modules over different fields");
  if (a.group() != b.group() && a.group()->elements() != b.group()->elements())
    throw ShapeMismatch("modules over different groups");
}

bool invertible(const Matrix& m) { return m.rows() == m.cols() && rank(m) == m.rows(); }

void add_scaled(const Field& F, Elt s, const Matrix& x, Matrix& acc) {
  for (std::size_t i = 0; i < x.rows(); ++i) vec_axpy(F, s, x.row(i), acc.row(i));
}

// tr(a b)
Elt trace_product(const Field& F, const Matrix& a, const Matrix& b) {
  Elt t = 0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k)
      if (a(i, k) && b(k, i)) t = F.add(t, F.mul(a(i, k), b(k, i)));
  return t;
}

std::vector<int> left_transversal(const Subgroup& q) {
  const PermGroup& G = *q.ambient();
  std::vector<char> seen(G.order(), 0);
  std::vector<int> reps;
  for (std::size_t g = 0; g < G.order(); ++g) {
    if (seen[g]) continue;
    for (int x : q.elements()) seen[static_cast<std::size_t>(G.mul(static_cast<int>(g), x))] = 1;
    reps.push_back(static_cast<int>(g));
  }
  return reps;
}

// Z with phi -> tr(Z phi) vanishing on J(End_G M) and taking the value 1 at
// the identity.  Requires End_G(M) local.
Matrix local_functional(const RepModule& m, Rng& rng) {
  const FieldPtr& f = m.field();
  const std::size_t d = m.dim();
  Algebra e = endomorphism_algebra(m);
  if (!is_primitive_idempotent(e, e.unit(), rng)) throw PreconditionFailed("module is not indecomposable");
  Matrix j = radical(e, rng);
  std::vector<Vec> rows;
  for (std::size_t r = 0; r < j.rows(); ++r) rows.emplace_back(j.row(r).begin(), j.row(r).end());
  rows.push_back(e.unit());
  Matrix a = Matrix::from_rows(f, rows, e.dim());
  Matrix b(f, rows.size(), 1);
  b(rows.size() - 1, 0) = 1;
  auto sol = solve_linear(a, b);
  if (!sol) throw Inconsistency("identity lies in the radical of the endomorphism ring");
  const Matrix& amb = e.ambient();
  Matrix z(f, d, d);
  for (std::size_t k = 0; k < e.dim(); ++k) {
    std::size_t p = 0;
    while (amb(k, p) == 0) ++p;
    z(p % d, p / d) = sol->particular(k, 0);
  }
  return z;
}

}  // namespace

std::vector<Matrix> hom_space(const RepModule& a, const RepModule& b) {
  require_same(a, b);
  return hom_space(a.field(), a.gens(), a.dim(), b.gens(), b.dim());
}

Algebra endomorphism_algebra(const RepModule& m) {
  return matrix_algebra(m.field(), hom_space(m, m), Matrix::identity(m.field(), m.dim()));
}

std::optional<Matrix> iso_test(const RepModule& a, const RepModule& b, Rng& rng) {
  require_same(a, b);
  const FieldPtr& f = a.field();
  const Field& F = *f;
  const std::size_t d = a.dim();
  if (d != b.dim()) return std::nullopt;
  if (d == 0) return Matrix(f, 0, 0);
  auto hom = hom_space(a, b);
  if (hom.empty()) return std::nullopt;
  // For indecomposable modules some basis element is already invertible.
  for (const auto& h : hom)
    if (invertible(h)) return h;
  for (int t = 0; t < 64; ++t) {
    Matrix x(f, d, d);
    for (const auto& h : hom) add_scaled(F, static_cast<Elt>(rng.below(F.order())), h, x);
    if (invertible(x)) return x;
  }
  double space = std::pow(static_cast<double>(F.order()), static_cast<double>(hom.size()));
  if (space <= 65536.0) {
    std::vector<Elt> c(hom.size(), 0);
    while (true) {
      std::size_t k = 0;
      while (k < c.size() && ++c[k] == F.order()) c[k++] = 0;
      if (k == c.size()) break;
      Matrix x(f, d, d);
      for (std::size_t i = 0; i < hom.size(); ++i)
        if (c[i]) add_scaled(F, c[i], hom[i], x);
      if (invertible(x)) return x;
    }
  }
  return std::nullopt;
}

bool is_irreducible(const RepModule& m, Rng& rng) {
  return m.dim() > 0 && is_irreducible(m.field(), m.gens(), m.dim(), rng);
}

std::vector<Elt> trace_fingerprint(const RepModule& m) {
  std::vector<Elt> fp;
  for (const auto& cl : m.group()->classes()) fp.push_back(trace(m.action(cl.front())));
  return fp;
}

std::vector<SimpleFactor> chop(const RepModule& m, Rng& rng) {
  std::vector<SimpleFactor> out;
  if (m.dim() == 0) return out;
  CompositionSeries cs = composition_series(m.field(), m.gens(), m.dim(), rng);
  for (std::size_t t = 0; t < cs.sizes.size(); ++t) {
    RepModule s(m.field(), m.group(), cs.sizes[t], cs.factors[t]);
    bool found = false;
    for (auto& x : out)
      if (x.module.dim() == s.dim() && !hom_space(s, x.module).empty()) {
        ++x.multiplicity;
        found = true;
        break;
      }
    if (!found) out.push_back({s, 1, {}, trace_fingerprint(s)});
  }
  std::sort(out.begin(), out.end(), [](const SimpleFactor& a, const SimpleFactor& b) {
    if (a.module.dim() != b.module.dim()) return a.module.dim() < b.module.dim();
    return a.fingerprint < b.fingerprint;
  });
  std::size_t letter = 0;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (i > 0 && out[i].module.dim() != out[i - 1].module.dim()) letter = 0;
    out[i].label = std::to_string(out[i].module.dim()) + static_cast<char>('a' + letter++);
    out[i].module.label = out[i].label;
  }
  return out;
}

int find_simple(const std::vector<SimpleFactor>& list, const RepModule& s, Rng&) {
  for (std::size_t i = 0; i < list.size(); ++i)
    if (list[i].module.dim() == s.dim() && !hom_space(s, list[i].module).empty()) return static_cast<int>(i);
  return -1;
}

std::vector<Summand> decompose(const RepModule& m, Rng& rng) {
  const FieldPtr& f = m.field();
  const std::size_t d = m.dim();
  if (d == 0) return {};
  Algebra e = endomorphism_algebra(m);
  auto idems = primitive_decomposition(e, e.unit(), rng);
  if (idems.size() == 1) return {{m, Matrix::identity(f, d), Matrix::identity(f, d)}};
  std::vector<Summand> out;
  for (const auto& id : idems) {
    Matrix ep(f, d, d, e.to_ambient(id));
    Matrix u = column_space(ep);
    auto sol = solve_linear(u, ep);
    if (!sol) throw Inconsistency("idempotent image does not factor");
    const Matrix& p = sol->particular;
    Gens gens;
    for (const auto& g : m.gens()) gens.push_back(p * g * u);
    out.push_back({RepModule(f, m.group(), u.cols(), std::move(gens)), u, p});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Summand& a, const Summand& b) { return a.module.dim() < b.module.dim(); });
  return out;
}

std::vector<std::size_t> isomorphism_classes(const std::vector<RepModule>& mods, Rng& rng) {
  std::vector<std::size_t> cls(mods.size());
  std::vector<std::size_t> reps;
  for (std::size_t i = 0; i < mods.size(); ++i) {
    std::size_t c = reps.size();
    for (std::size_t r = 0; r < reps.size(); ++r)
      if (iso_test(mods[reps[r]], mods[i], rng)) {
        c = r;
        break;
      }
    if (c == reps.size()) reps.push_back(i);
    cls[i] = c;
  }
  return cls;
}

RowSpace radical(const RepModule& m, Rng& rng) {
  const FieldPtr& f = m.field();
  RowSpace cons(f, m.dim());
  for (const auto& s : chop(m, rng))
    for (const auto& x : hom_space(m, s.module)) cons.insert_rows(x);
  Matrix k = cons.kernel();
  RowSpace r(f, m.dim());
  for (std::size_t c = 0; c < k.cols(); ++c) r.insert(k.column(c));
  return r;
}

RowSpace socle(const RepModule& m, Rng& rng) {
  RowSpace r(m.field(), m.dim());
  for (const auto& s : chop(m, rng))
    for (const auto& x : hom_space(s.module, m)) r.insert_rows(x.transpose());
  return r;
}

RepModule top(const RepModule& m, Rng& rng) { return quotient(m, radical(m, rng)); }

std::vector<RowSpace> radical_series(const RepModule& m, Rng& rng) {
  const FieldPtr& f = m.field();
  RowSpace cur(f, m.dim());
  cur.insert_rows(Matrix::identity(f, m.dim()));
  std::vector<RowSpace> series{cur};
  while (cur.dim() > 0) {
    Matrix incl;
    RepModule sub = submodule(m, cur, &incl);
    RowSpace r = radical(sub, rng);
    RowSpace next(f, m.dim());
    Matrix rb = r.basis();
    for (std::size_t i = 0; i < rb.rows(); ++i) next.insert(incl * rb.row(i));
    if (next.dim() == cur.dim()) throw Inconsistency("radical did not shrink");
    series.push_back(next);
    cur = next;
  }
  return series;
}

bool check_uniserial(const RepModule& m, const std::vector<RepModule>& expected, Rng& rng) {
  auto series = radical_series(m, rng);
  if (series.size() != expected.size() + 1) return false;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    RepModule sub = submodule(m, series[i]);
    RowSpace w(m.field(), sub.dim());
    Matrix nb = series[i + 1].basis();
    for (std::size_t r = 0; r < nb.rows(); ++r) w.insert(series[i].coordinates(nb.row(r)));
    RepModule layer = quotient(sub, w);
    if (layer.dim() != expected[i].dim() || !is_irreducible(layer, rng)) return false;
    if (hom_space(layer, expected[i]).empty()) return false;
  }
  return true;
}

// ---------------------------------------------------------------- PIMs

namespace {

Pim make_pim(const GroupAlgebra& ga, const AlgebraElement& eps, Rng& rng) {
  Pim p;
  p.idempotent = eps;
  p.module = left_ideal_module(ga, eps, &p.basis);
  RowSpace rs(ga.field(), ga.dim());
  rs.insert_rows(p.basis);
  p.generator = rs.coordinates(eps);
  p.top = top(p.module, rng);
  return p;
}

void add_if_new(std::vector<Pim>& pims, Pim p) {
  for (const auto& q : pims)
    if (q.top.dim() == p.top.dim() && !hom_space(p.top, q.top).empty()) return;
  pims.push_back(std::move(p));
}

void sort_pims(std::vector<Pim>& pims) {
  std::vector<std::pair<std::vector<Elt>, std::size_t>> keys;
  for (std::size_t i = 0; i < pims.size(); ++i) {
    auto fp = trace_fingerprint(pims[i].top);
    fp.insert(fp.begin(), static_cast<Elt>(pims[i].top.dim()));
    keys.emplace_back(std::move(fp), i);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<Pim> out;
  for (auto& k : keys) out.push_back(std::move(pims[k.second]));
  pims = std::move(out);
}

Algebra corner_algebra(const GroupAlgebra& ga, const AlgebraElement& e) {
  std::vector<AlgebraElement> span;
  for (std::size_t g = 0; g < ga.dim(); ++g) span.push_back(ga.mul(ga.mul(e, ga.element(static_cast<int>(g))), e));
  return group_subalgebra(ga, span, e);
}

}  // namespace

PimLibrary pim_library(const GroupAlgebra& ga, const AlgebraElement& block, Rng& rng) {
  const FieldPtr& f = ga.field();
  const std::size_t n = ga.dim();
  std::vector<Matrix> left;
  for (std::size_t g = 0; g < n; ++g) left.push_back(ga.left_matrix(ga.element(static_cast<int>(g))));
  Algebra alg(f, std::move(left), ga.one(), Matrix::identity(f, n));
  PimLibrary lib{ga.group(), f, {}};
  for (const auto& eps : primitive_decomposition(alg, block, rng)) add_if_new(lib.pims, make_pim(ga, eps, rng));
  sort_pims(lib.pims);
  return lib;
}

PimLibrary product_pim_library(const GroupAlgebra& gha, const PimLibrary& left, const PimLibrary& right, Rng& rng) {
  const FieldPtr& f = gha.field();
  const Field& F = *f;
  const PermGroup& GH = *gha.group();
  if (!GH.product_info()) throw PreconditionFailed("product_pim_library needs a product group");
  GroupAlgebra gl(left.group, f), gr(right.group, f);
  PimLibrary lib{gha.group(), f, {}};
  for (const auto& p : left.pims) {
    Algebra a = corner_algebra(gl, p.idempotent);
    for (const auto& q : right.pims) {
      Algebra b = corner_algebra(gr, q.idempotent);
      Algebra t = tensor_algebra(a, b);
      for (const auto& x : primitive_decomposition(t, t.unit(), rng)) {
        AlgebraElement eta(gha.dim(), 0);
        for (std::size_t i = 0; i < a.dim(); ++i)
          for (std::size_t j = 0; j < b.dim(); ++j) {
            Elt c = x[i * b.dim() + j];
            if (!c) continue;
            for (std::size_t g = 0; g < gl.dim(); ++g) {
              Elt ag = F.mul(c, a.ambient()(i, g));
              if (!ag) continue;
              for (std::size_t h = 0; h < gr.dim(); ++h)
                if (Elt bh = b.ambient()(j, h)) {
                  auto idx = static_cast<std::size_t>(product_index(GH, static_cast<int>(g), static_cast<int>(h)));
                  eta[idx] = F.add(eta[idx], F.mul(ag, bh));
                }
            }
          }
        add_if_new(lib.pims, make_pim(gha, eta, rng));
      }
    }
  }
  sort_pims(lib.pims);
  return lib;
}

ProjectiveCover projective_cover(const RepModule& m, const PimLibrary& lib, Rng& rng) {
  const FieldPtr& f = m.field();
  const std::size_t d = m.dim();
  ProjectiveCover pc;
  if (d == 0) {
    pc.cover = zero_module(f, m.group());
    pc.map = Matrix(f, 0, 0);
    return pc;
  }
  RowSpace w = radical(m, rng);
  for (std::size_t t = 0; t < lib.pims.size() && w.dim() < d; ++t) {
    Matrix e = m.act_element(lib.pims[t].idempotent);
    for (std::size_t c = 0; c < d && w.dim() < d; ++c) {
      Vec v = e.column(c);
      if (w.contains(v)) continue;
      for (const auto& o : m.orbit(v)) w.insert(o);
      pc.pim_index.push_back(t);
      pc.images.push_back(std::move(v));
    }
  }
  if (w.dim() < d) throw Inconsistency("a top factor has no projective cover in the library");
  std::size_t total = 0;
  for (auto t : pc.pim_index) {
    pc.offsets.push_back(total);
    total += lib.pims[t].module.dim();
  }
  pc.map = Matrix(f, d, total);
  for (std::size_t s = 0; s < pc.pim_index.size(); ++s) {
    const Pim& pim = lib.pims[pc.pim_index[s]];
    auto orb = m.orbit(pc.images[s]);
    Matrix o = Matrix::from_columns(f, orb, d);
    pc.map.set_block(0, pc.offsets[s], o * pim.basis.transpose());
    pc.cover = s == 0 ? pim.module : direct_sum(pc.cover, pim.module);
  }
  return pc;
}

bool is_projective(const RepModule& m) {
  const Field& F = *m.field();
  Subgroup s = sylow(m.group(), F.characteristic());
  if (m.dim() % s.order() != 0) return false;
  Matrix n(m.field(), m.dim(), m.dim());
  for (int x : s.elements()) add_scaled(F, 1, m.action(x), n);
  return rank(n) == m.dim() / s.order();
}

// ---------------------------------------------------------------- vertices

bool is_relatively_projective(const RepModule& m, const Subgroup& q, Rng& rng, Matrix* certificate) {
  const FieldPtr& f = m.field();
  const Field& F = *f;
  const std::size_t d = m.dim();
  const PermGroup& G = *m.group();
  Matrix z = local_functional(m, rng);
  auto reps = left_transversal(q);
  Matrix zp(f, d, d);
  for (int g : reps) zp = zp + m.action(G.inv(g)) * z * m.action(g);
  std::optional<Matrix> phi;
  if (q.order() == 1) {
    for (std::size_t i = 0; i < d && !phi; ++i)
      for (std::size_t j = 0; j < d && !phi; ++j)
        if (zp(i, j)) {
          Matrix e(f, d, d);
          e(j, i) = 1;
          phi = e;
        }
  } else {
    RepModule r = restrict_to(m, q);
    for (const auto& x : hom_space(r, r))
      if (trace_product(F, zp, x)) {
        phi = x;
        break;
      }
  }
  if (!phi) return false;
  if (certificate) {
    Matrix u(f, d, d);
    for (int g : reps) u = u + m.action(g) * *phi * m.action(G.inv(g));
    auto ui = inverse(u);
    if (!ui) throw Inconsistency("relative trace is not invertible");
    *certificate = *phi * *ui;
  }
  return true;
}

std::vector<Subgroup> subgroup_classes(const Subgroup& s) {
  std::vector<Subgroup> reps;
  for (const auto& sub : subgroups_of(s)) {
    bool found = false;
    for (const auto& r : reps)
      if (r.order() == sub.order() && conjugacy_test(s.ambient(), r, sub)) {
        found = true;
        break;
      }
    if (!found) reps.push_back(sub);
  }
  return reps;
}

VertexResult vertex(const RepModule& m, Rng& rng, std::vector<Subgroup> candidates) {
  if (candidates.empty()) candidates = subgroup_classes(sylow(m.group(), m.field()->characteristic()));
  for (const auto& q : candidates) {
    Matrix cert;
    if (is_relatively_projective(m, q, rng, &cert)) return {q, cert};
  }
  throw Inconsistency("no candidate subgroup is a vertex");
}

bool trivial_source_check(const RepModule& m, const Subgroup& q, Rng& rng) {
  const Field& F = *m.field();
  Matrix z = local_functional(m, rng);
  RepModule ind = permutation_module(m.field(), q);
  auto in = hom_space(m, ind);
  auto out = hom_space(ind, m);
  for (const auto& b : out) {
    Matrix zb = z * b;
    for (const auto& a : in)
      if (trace_product(F, zb, a)) return true;
  }
  return false;
}

}  // namespace bd
