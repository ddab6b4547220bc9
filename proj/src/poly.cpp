#include "blockdescent/poly.hpp"

#include <algorithm>
#include <tuple>

namespace bd {

Poly::Poly(FieldPtr f, std::vector<Elt> coeffs) : field_(std::move(f)), c_(std::move(coeffs)) { trim(); }

Poly Poly::constant(FieldPtr f, Elt c) { return Poly(std::move(f), {c}); }

Poly Poly::monomial(FieldPtr f, std::size_t degree, Elt c) {
  std::vector<Elt> v(degree + 1, 0);
  v[degree] = c;
  return Poly(std::move(f), std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

Poly Poly::operator+(const Poly& o) const {
  const Field& F = *field_;
  std::vector<Elt> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.add((*this)[i], o[i]);
  return Poly(field_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  const Field& F = *field_;
  std::vector<Elt> r(std::max(c_.size(), o.c_.size()), 0);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = F.sub((*this)[i], o[i]);
  return Poly(field_, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly(field_, {});
  const Field& F = *field_;
  std::vector<Elt> r(c_.size() + o.c_.size() - 1, 0);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = F.add(r[i + j], F.mul(c_[i], o.c_[j]));
  }
  return Poly(field_, std::move(r));
}

Poly Poly::scaled(Elt s) const {
  std::vector<Elt> r(c_);
  for (auto& x : r) x = field_->mul(x, s);
  return Poly(field_, std::move(r));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(field_->inv(leading()));
}

Poly Poly::derivative() const {
  std::vector<Elt> r;
  for (std::size_t i = 1; i < c_.size(); ++i) {
    Elt m = field_->from_int(static_cast<long long>(i));
    r.push_back(field_->mul(m, c_[i]));
  }
  return Poly(field_, std::move(r));
}

bool Poly::operator<(const Poly& o) const {
  if (degree() != o.degree()) return degree() < o.degree();
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
  return false;
}

Elt Poly::eval(Elt x) const {
  Elt acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;) acc = field_->add(field_->mul(acc, x), c_[i]);
  return acc;
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error("polynomial division by zero");
  const Field& F = *a.field();
  std::vector<Elt> r = a.coeffs();
  const auto& bc = b.coeffs();
  if (r.size() < bc.size()) return {Poly(a.field(), {}), a};
  std::vector<Elt> q(r.size() - bc.size() + 1, 0);
  Elt linv = F.inv(b.leading());
  const std::size_t m = bc.size() - 1;
  for (std::size_t top = r.size(); top-- > m;) {
    Elt c = F.mul(r[top], linv);
    const std::size_t shift = top - m;
    q[shift] = c;
    if (c != 0)
      for (std::size_t j = 0; j < bc.size(); ++j) r[shift + j] = F.sub(r[shift + j], F.mul(c, bc[j]));
  }
  r.resize(bc.size() - 1);
  return {Poly(a.field(), std::move(q)), Poly(a.field(), std::move(r))};
}

Poly gcd(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = divmod(x, y).second;
    x = y;
    y = r;
  }
  return x.monic();
}

std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b) {
  auto F = a.field();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(F, 1), s1(F, {});
  Poly t0(F, {}), t1 = Poly::constant(F, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = r1;
    r1 = r;
    Poly s2 = s0 - q * s1;
    s0 = s1;
    s1 = s2;
    Poly t2 = t0 - q * t1;
    t0 = t1;
    t1 = t2;
  }
  Elt inv = F->inv(r0.leading());
  return {r0.scaled(inv), s0.scaled(inv), t0.scaled(inv)};
}

Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod) {
  Poly result = Poly::constant(base.field(), 1);
  Poly b = divmod(base, mod).second;
  while (e > 0) {
    if (e & 1) result = divmod(result * b, mod).second;
    b = divmod(b * b, mod).second;
    e >>= 1;
  }
  return divmod(result, mod).second;
}

namespace {

// p-th root of a polynomial whose derivative vanishes.
Poly pth_root(const Poly& f) {
  const Field& F = *f.field();
  const unsigned p = F.characteristic();
  std::vector<Elt> r;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) r.push_back(F.frobenius_inverse(f.coeffs()[i]));
  return Poly(f.field(), std::move(r));
}

// Square-free factorization: list of (g, m) with f = prod g^m, g squarefree.
void squarefree(const Poly& f, unsigned mult, std::vector<std::pair<Poly, unsigned>>& out) {
  const unsigned p = f.field()->characteristic();
  if (f.degree() <= 0) return;
  Poly d = f.derivative();
  if (d.is_zero()) {
    squarefree(pth_root(f), mult * p, out);
    return;
  }
  Poly c = gcd(f, d);
  Poly w = divmod(f, c).first;
  unsigned i = 1;
  while (w.degree() > 0) {
    Poly y = gcd(w, c);
    Poly z = divmod(w, y).first;
    if (z.degree() > 0) out.emplace_back(z.monic(), i * mult);
    ++i;
    w = y;
    c = divmod(c, y).first;
  }
  if (c.degree() > 0) squarefree(pth_root(c), mult * p, out);
}

void equal_degree(const Poly& f, unsigned d, Rng& rng, std::vector<Poly>& out) {
  if (f.degree() == static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const auto& F = f.field();
  const std::uint64_t q = F->order();
  const unsigned p = F->characteristic();
  for (int attempt = 0; attempt < 1000; ++attempt) {
    std::vector<Elt> rc(static_cast<std::size_t>(f.degree()));
    for (auto& c : rc) c = static_cast<Elt>(rng.below(q));
    Poly u(F, rc);
    if (u.degree() <= 0) continue;
    Poly g;
    if (p == 2) {
      // Trace map u + u^2 + ... + u^(2^(n d - 1)).
      const unsigned m = F->degree() * d;
      Poly t = u, acc = u;
      for (unsigned i = 1; i < m; ++i) {
        t = divmod(t * t, f).second;
        acc = acc + t;
      }
      g = gcd(f, acc);
    } else {
      // u^((q^d - 1)/2) = (u^(1 + q + ... + q^(d-1)))^((q - 1)/2)
      Poly w = Poly::constant(F, 1), t = u;
      for (unsigned i = 0; i < d; ++i) {
        w = divmod(w * t, f).second;
        t = powmod(t, q, f);
      }
      w = powmod(w, (q - 1) / 2, f);
      g = gcd(f, w - Poly::constant(F, 1));
    }
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree(g, d, rng, out);
      equal_degree(divmod(f, g).first, d, rng, out);
      return;
    }
  }
  throw RetryBudgetExceeded("equal-degree factorization did not split");
}

}  // namespace

std::vector<std::pair<Poly, unsigned>> factor(const Poly& f, Rng& rng) {
  if (f.is_zero()) throw Error("cannot factor the zero polynomial");
  std::vector<std::pair<Poly, unsigned>> sqf;
  squarefree(f.monic(), 1, sqf);
  std::vector<std::pair<Poly, unsigned>> result;
  const auto& F = f.field();
  Poly x = Poly::monomial(F, 1);
  for (auto& [g, m] : sqf) {
    Poly rest = g;
    Poly h = x;
    for (unsigned d = 1; rest.degree() >= static_cast<int>(2 * d); ++d) {
      h = powmod(h, F->order(), rest);
      Poly part = gcd(rest, h - x);
      if (part.degree() > 0) {
        std::vector<Poly> pieces;
        equal_degree(part, d, rng, pieces);
        for (auto& pc : pieces) result.emplace_back(pc, m);
        rest = divmod(rest, part).first;
        h = divmod(h, rest).second;
      }
    }
    if (rest.degree() > 0) result.emplace_back(rest.monic(), m);
  }
  // Merge equal factors coming from different square-free parts.
  std::sort(result.begin(), result.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<Poly, unsigned>> merged;
  for (auto& [g, m] : result) {
    if (!merged.empty() && merged.back().first == g)
      merged.back().second += m;
    else
      merged.emplace_back(g, m);
  }
  return merged;
}

bool is_irreducible(const Poly& f) {
  if (f.degree() <= 0) return false;
  const auto& F = f.field();
  const unsigned n = static_cast<unsigned>(f.degree());
  Poly x = Poly::monomial(F, 1);
  Poly h = x;
  for (unsigned d = 1; d <= n / 2; ++d) {
    h = powmod(h, F->order(), f);
    if (gcd(f, h - x).degree() > 0) return false;
  }
  return true;
}

}  // namespace bd
