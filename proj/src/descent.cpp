#include "blockdescent/descent.hpp"

#include <algorithm>
#include <functional>

namespace bd {

namespace {

Gens map_gens(const Gens& gens, const std::function<Matrix(const Matrix&)>& fn) {
  Gens out;
  out.reserve(gens.size());
  for (const auto& g : gens) out.push_back(fn(g));
  return out;
}

void require_tower(const RepModule& m, const FieldTower& tower, bool over_ext) {
  const Field& want = over_ext ? *tower.ext() : *tower.base();
  if (*m.field() != want) throw FieldMismatch("module is not over " + want.name());
}

Matrix unit_columns(const FieldPtr& f, std::size_t n, const std::vector<std::size_t>& cols) {
  Matrix m(f, n, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) m(cols[j], j) = 1;
  return m;
}

bool invertible_all(const std::vector<Matrix>& fs) {
  for (const auto& f : fs)
    if (f.rows() != f.cols() || rank(f) != f.rows()) return false;
  return true;
}

}  // namespace

RepModule TwistedModule::module(const FieldTower& tower) const { return galois_twist(underlying, tower, power); }

RepModule galois_twist(const RepModule& m, const FieldTower& tower, unsigned power) {
  require_tower(m, tower, true);
  power %= tower.galois_order();
  if (power == 0) return m;
  Gens gens = map_gens(m.gens(), [&](const Matrix& a) { return a.map([&](Elt x) { return tower.sigma(x, power); }); });
  return RepModule(m.field(), m.group(), m.dim(), std::move(gens), m.label);
}

Stability is_gamma_stable(const RepModule& m, const FieldTower& tower, Rng& rng) {
  Stability st;
  if (tower.galois_order() == 1) {
    st.stable = true;
    return st;
  }
  auto iso = iso_test(m, galois_twist(m, tower, 1), rng);
  st.stable = iso.has_value();
  if (iso) st.witnesses.push_back(*iso);
  return st;
}

RepModule extend_scalars(const RepModule& m, const FieldTower& tower) {
  require_tower(m, tower, false);
  Gens gens = map_gens(m.gens(), [&](const Matrix& a) { return extend_matrix(a, tower); });
  return RepModule(tower.ext(), m.group(), m.dim(), std::move(gens), m.label);
}

Matrix restrict_matrix(const Matrix& a, const FieldTower& tower) {
  const Field& K = *tower.ext();
  const std::size_t e = tower.relative_degree();
  const auto& basis = tower.basis();
  Matrix out(tower.base(), a.rows() * e, a.cols() * e);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      Elt x = a(i, j);
      if (!x) continue;
      for (std::size_t c = 0; c < e; ++c) {
        const auto& co = tower.coordinates(K.mul(x, basis[c]));
        for (std::size_t r = 0; r < e; ++r) out(i * e + r, j * e + c) = co[r];
      }
    }
  return out;
}

RepModule restrict_scalars(const RepModule& m, const FieldTower& tower) {
  require_tower(m, tower, true);
  Gens gens = map_gens(m.gens(), [&](const Matrix& a) { return restrict_matrix(a, tower); });
  return RepModule(tower.base(), m.group(), m.dim() * tower.relative_degree(), std::move(gens), m.label);
}

std::optional<Matrix> contract_matrix(const Matrix& a, const FieldTower& tower) {
  Matrix out(tower.base(), a.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (!tower.in_base(a(i, j))) return std::nullopt;
      out(i, j) = tower.contract(a(i, j));
    }
  return out;
}

bool DescentCertificate::verify(const FieldTower& tower) const {
  if (*form.field() != *tower.base() || *target.field() != *tower.ext()) return false;
  if (form.dim() != target.dim()) return false;
  if (iso.rows() != target.dim() || iso.cols() != form.dim() || rank(iso) != form.dim()) return false;
  return ModuleMap{extend_scalars(form, tower), target, iso}.is_equivariant();
}

DescentCertificate descend_module(const RepModule& m, const FieldTower& tower, Rng& rng) {
  require_tower(m, tower, true);
  DescentCertificate cert;
  cert.target = m;
  Stability st = is_gamma_stable(m, tower, rng);
  if (!st.stable) throw PreconditionFailed("module is not Gamma-stable");
  cert.stability = st.witnesses;
  if (m.dim() == 0) {
    cert.form = zero_module(tower.base(), m.group());
    cert.iso = Matrix(tower.ext(), 0, 0);
    return cert;
  }
  std::vector<Summand> parts = decompose(m, rng);
  std::vector<bool> used(parts.size(), false);
  std::size_t remaining = parts.size();
  std::optional<RepModule> form;
  for (const auto& cand : decompose(restrict_scalars(m, tower), rng)) {
    if (remaining == 0) break;
    std::vector<bool> trial = used;
    bool fits = true;
    for (const auto& piece : decompose(extend_scalars(cand.module, tower), rng)) {
      bool found = false;
      for (std::size_t i = 0; i < parts.size() && !found; ++i) {
        if (trial[i] || parts[i].module.dim() != piece.module.dim()) continue;
        if (iso_test(piece.module, parts[i].module, rng)) trial[i] = found = true;
      }
      if (!found) {
        fits = false;
        break;
      }
    }
    if (!fits) continue;
    for (std::size_t i = 0; i < parts.size(); ++i)
      if (trial[i] && !used[i]) --remaining;
    used = std::move(trial);
    form = form ? direct_sum(*form, cand.module) : cand.module;
  }
  if (remaining != 0) throw Inconsistency("no k-form assembles the Gamma-stable module");
  auto iso = iso_test(extend_scalars(*form, tower), m, rng);
  if (!iso) throw Inconsistency("assembled k-form does not extend to the module");
  form->label = m.label;
  cert.form = std::move(*form);
  cert.iso = std::move(*iso);
  return cert;
}

// ---------------------------------------------------------------- complexes

BoundedComplex extend_complex(const BoundedComplex& x, const FieldTower& tower) {
  BoundedComplex y = x;
  for (auto& t : y.terms) t = extend_scalars(t, tower);
  for (auto& d : y.diffs) d = extend_matrix(d, tower);
  return y;
}

std::optional<std::vector<Matrix>> chain_isomorphism(const BoundedComplex& a, const BoundedComplex& b, Rng& rng) {
  if (a.lo != b.lo || a.hi() != b.hi()) return std::nullopt;
  const FieldPtr& f = b.terms.front().field();
  const Field& F = *f;
  const int lo = a.lo, hi = a.hi();
  std::vector<std::vector<Matrix>> homs;
  std::vector<std::size_t> first;
  std::size_t unknowns = 0;
  for (int n = lo; n <= hi; ++n) {
    if (a.dim(n) != b.dim(n)) return std::nullopt;
    first.push_back(unknowns);
    homs.push_back(a.dim(n) ? hom_space(a.term(n), b.term(n)) : std::vector<Matrix>{});
    unknowns += homs.back().size();
  }
  // Row block n (lo < n <= hi) holds b.d(n) f_n - f_{n-1} a.d(n).
  std::vector<std::size_t> row0;
  std::size_t rows = 0;
  for (int n = lo + 1; n <= hi; ++n) {
    row0.push_back(rows);
    rows += b.dim(n - 1) * a.dim(n);
  }
  Matrix sys(f, rows, unknowns);
  auto put = [&](std::size_t r0, std::size_t col, const Matrix& m, bool negate) {
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j)
        if (m(i, j)) sys(r0 + i * m.cols() + j, col) = negate ? F.neg(m(i, j)) : m(i, j);
  };
  for (int n = lo; n <= hi; ++n) {
    std::size_t k = static_cast<std::size_t>(n - lo);
    for (std::size_t i = 0; i < homs[k].size(); ++i) {
      std::size_t col = first[k] + i;
      if (n > lo && b.dim(n - 1) && a.dim(n)) put(row0[k - 1], col, b.d(n) * homs[k][i], false);
      if (n < hi && b.dim(n) && a.dim(n + 1)) put(row0[k], col, homs[k][i] * a.d(n + 1), true);
    }
  }
  Matrix sol = rows ? nullspace(sys) : Matrix::identity(f, unknowns);
  auto assemble = [&](std::span<const Elt> c) {
    std::vector<Matrix> fs;
    for (int n = lo; n <= hi; ++n) {
      std::size_t k = static_cast<std::size_t>(n - lo);
      Matrix m(f, b.dim(n), a.dim(n));
      for (std::size_t i = 0; i < homs[k].size(); ++i)
        if (c[first[k] + i]) m = m + homs[k][i].scaled(c[first[k] + i]);
      fs.push_back(std::move(m));
    }
    return fs;
  };
  if (unknowns == 0) {
    std::vector<Matrix> fs = assemble(Vec{});
    if (invertible_all(fs)) return fs;
    return std::nullopt;
  }
  for (std::size_t s = 0; s < sol.cols(); ++s) {
    auto fs = assemble(sol.column(s));
    if (invertible_all(fs)) return fs;
  }
  for (int attempt = 0; attempt < 64 && sol.cols(); ++attempt) {
    Vec c(unknowns, 0);
    for (std::size_t s = 0; s < sol.cols(); ++s) {
      Elt w = static_cast<Elt>(rng.below(F.order()));
      if (w) vec_axpy(F, w, sol.column(s), c);
    }
    auto fs = assemble(c);
    if (invertible_all(fs)) return fs;
  }
  return std::nullopt;
}

bool ComplexDescent::verify(const FieldTower& tower) const {
  if (form.lo != target.lo || form.hi() != target.hi() || iso.size() != target.terms.size()) return false;
  BoundedComplex ext = extend_complex(form, tower);
  for (int n = form.lo; n <= form.hi(); ++n) {
    const Matrix& f = iso[static_cast<std::size_t>(n - form.lo)];
    if (f.rows() != target.dim(n) || f.cols() != ext.dim(n) || rank(f) != f.rows()) return false;
    if (!ModuleMap{ext.term(n), target.term(n), f}.is_equivariant()) return false;
    if (n > form.lo && target.d(n) * f != iso[static_cast<std::size_t>(n - 1 - form.lo)] * ext.d(n)) return false;
  }
  return true;
}

namespace {

// Transports the differentials of x along the certificates; succeeds when
// every transported differential has entries in k.
std::optional<ComplexDescent> descend_by_transport(const BoundedComplex& x, std::vector<DescentCertificate> certs,
                                                   const FieldTower& tower) {
  ComplexDescent out;
  out.target = x;
  out.form.lo = x.lo;
  out.form.left_block = x.left_block;
  out.form.right_block = x.right_block;
  for (const auto& c : certs) {
    out.form.terms.push_back(c.form);
    out.iso.push_back(c.iso);
  }
  for (int n = x.lo + 1; n <= x.hi(); ++n) {
    const Matrix& src = out.iso[static_cast<std::size_t>(n - x.lo)];
    const Matrix& dst = out.iso[static_cast<std::size_t>(n - 1 - x.lo)];
    Matrix t = dst.rows() ? *inverse(dst) * x.d(n) * src : Matrix(tower.ext(), 0, src.cols());
    auto k = contract_matrix(t, tower);
    if (!k) return std::nullopt;
    out.form.diffs.push_back(std::move(*k));
  }
  out.terms = std::move(certs);
  return out;
}

}  // namespace

ComplexDescent descend_map(const BoundedComplex& x, const DescentCertificate& q, const DescentCertificate& m,
                           const PimLibrary& lib, Rng& rng) {
  if (x.terms.size() != 2) throw PreconditionFailed("descend_map expects a two-term complex");
  const int lo = x.lo;
  if (auto t = descend_by_transport(x, {m, q}, FieldTower(m.form.field(), m.target.field()))) return *t;

  ProjectiveCover pc = projective_cover(m.form, lib, rng);
  std::vector<bool> taken(pc.pim_index.size(), false);
  std::vector<std::size_t> cols;
  for (const auto& part : decompose(q.form, rng)) {
    bool found = false;
    for (std::size_t t = 0; t < pc.pim_index.size() && !found; ++t) {
      const RepModule& pim = lib.pims[pc.pim_index[t]].module;
      if (taken[t] || pim.dim() != part.module.dim() || !iso_test(part.module, pim, rng)) continue;
      taken[t] = found = true;
      for (std::size_t k = 0; k < pim.dim(); ++k) cols.push_back(pc.offsets[t] + k);
    }
    if (!found) throw Inconsistency("no cover summand matches a summand of the upper term");
  }
  std::sort(cols.begin(), cols.end());
  RowSpace keep(m.form.field(), pc.cover.dim());
  keep.insert_rows(unit_columns(m.form.field(), pc.cover.dim(), cols).transpose());
  Matrix incl;
  RepModule qk = submodule(pc.cover, keep, &incl);
  BoundedComplex y = two_term(qk, m.form, pc.map * incl);
  y.lo = lo;
  y.left_block = x.left_block;
  y.right_block = x.right_block;

  FieldTower tower(m.form.field(), m.target.field());
  auto iso = chain_isomorphism(extend_complex(y, tower), x, rng);
  if (!iso) throw Inconsistency("descended complex is not isomorphic after extension");
  ComplexDescent out;
  out.form = std::move(y);
  out.target = x;
  out.iso = std::move(*iso);
  out.terms = {m, q};
  return out;
}

ComplexDescent descend_complex(const BoundedComplex& x, const FieldTower& tower, const PimLibrary* lib, Rng& rng) {
  std::vector<DescentCertificate> certs;
  for (const auto& t : x.terms) certs.push_back(descend_module(t, tower, rng));
  if (auto t = descend_by_transport(x, certs, tower)) return *t;
  if (x.terms.size() == 2 && lib) return descend_map(x, certs[1], certs[0], *lib, rng);
  throw Inconsistency("differentials do not descend along the termwise forms");
}

}  // namespace bd
