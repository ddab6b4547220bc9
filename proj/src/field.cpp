#include "blockdescent/field.hpp"

#include <map>
#include <sstream>
#include <utility>

namespace bd {

namespace {

// Conway polynomials, coefficients low to high.
const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>>& conway_table() {
  static const std::map<std::pair<unsigned, unsigned>, std::vector<unsigned>> table = {
      {{2, 1}, {1, 1}},
      {{2, 2}, {1, 1, 1}},
      {{2, 3}, {1, 1, 0, 1}},
      {{2, 4}, {1, 1, 0, 0, 1}},
      {{2, 5}, {1, 0, 1, 0, 0, 1}},
      {{2, 6}, {1, 1, 0, 1, 1, 0, 1}},
      {{2, 7}, {1, 1, 0, 0, 0, 0, 0, 1}},
      {{2, 8}, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
      {{3, 1}, {1, 1}},
      {{3, 2}, {2, 2, 1}},
      {{3, 3}, {1, 2, 0, 1}},
      {{3, 4}, {2, 0, 0, 2, 1}},
      {{3, 5}, {1, 2, 0, 0, 0, 1}},
      {{3, 6}, {2, 2, 1, 0, 2, 0, 1}},
      {{3, 7}, {1, 0, 2, 0, 0, 0, 0, 1}},
      {{3, 8}, {2, 2, 2, 0, 1, 2, 0, 0, 1}},
      {{5, 1}, {3, 1}},
      {{5, 2}, {2, 4, 1}},
      {{5, 3}, {3, 3, 0, 1}},
      {{5, 4}, {2, 4, 4, 0, 1}},
      {{5, 5}, {3, 4, 0, 0, 0, 1}},
      {{5, 6}, {2, 0, 1, 4, 1, 0, 1}},
  };
  return table;
}

unsigned smallest_primitive_root(unsigned p) {
  if (p == 2) return 1;
  for (unsigned g = 2; g < p; ++g) {
    unsigned x = 1;
    unsigned ord = 0;
    do {
      x = x * g % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) return g;
  }
  return 1;
}

}  // namespace

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Field::Field(unsigned p, unsigned n, std::vector<unsigned> poly)
    : p_(p), n_(n), q_(1), poly_(std::move(poly)) {
  for (unsigned i = 0; i < n; ++i) q_ *= p;
  if (p_ != 2) {
    neg_.resize(q_);
    if (q_ <= 1024) add_.resize(static_cast<std::size_t>(q_) * q_);
    for (unsigned a = 0; a < q_; ++a) {
      unsigned r = 0, pw = 1, t = a;
      for (unsigned i = 0; i < n_; ++i) {
        r += ((p_ - t % p_) % p_) * pw;
        t /= p_;
        pw *= p_;
      }
      neg_[a] = static_cast<Elt>(r);
    }
    if (!add_.empty())
      for (unsigned a = 0; a < q_; ++a)
        for (unsigned b = 0; b < q_; ++b)
          add_[static_cast<std::size_t>(a) * q_ + b] = add_digits(static_cast<Elt>(a), static_cast<Elt>(b));
  }
  // Locate the smallest primitive element and build exp/log tables.
  log_.assign(q_, 0);
  exp_.assign(2 * static_cast<std::size_t>(q_), 0);
  for (unsigned g = 1; g < q_; ++g) {
    Elt x = 1;
    unsigned k = 0;
    bool ok = true;
    for (; k < q_ - 1; ++k) {
      exp_[k] = x;
      x = mul_slow(x, static_cast<Elt>(g));
      if (x == 1 && k + 1 < q_ - 1) {
        ok = false;
        break;
      }
    }
    if (ok) break;
  }
  for (unsigned k = 0; k < q_ - 1; ++k) {
    log_[exp_[k]] = k;
    exp_[k + q_ - 1] = exp_[k];
  }
}

Elt Field::add_digits(Elt a, Elt b) const {
  unsigned r = 0, pw = 1, x = a, y = b;
  for (unsigned i = 0; i < n_; ++i) {
    r += ((x % p_ + y % p_) % p_) * pw;
    x /= p_;
    y /= p_;
    pw *= p_;
  }
  return static_cast<Elt>(r);
}

Elt Field::mul_slow(Elt a, Elt b) const {
  std::vector<unsigned> x(n_), y(n_), z(2 * n_, 0);
  unsigned s = a, t = b;
  for (unsigned i = 0; i < n_; ++i) {
    x[i] = s % p_;
    s /= p_;
    y[i] = t % p_;
    t /= p_;
  }
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) z[i + j] = (z[i + j] + x[i] * y[j]) % p_;
  for (unsigned d = 2 * n_ - 1; d >= n_; --d) {
    unsigned c = z[d];
    if (c == 0) continue;
    for (unsigned i = 0; i <= n_; ++i) z[d - n_ + i] = (z[d - n_ + i] + p_ * p_ - c * poly_[i] % p_) % p_;
  }
  unsigned r = 0, pw = 1;
  for (unsigned i = 0; i < n_; ++i) {
    r += z[i] * pw;
    pw *= p_;
  }
  return static_cast<Elt>(r);
}

Elt Field::inv(Elt a) const {
  if (a == 0) throw Error("division by zero in " + name());
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elt Field::pow(Elt a, std::uint64_t e) const {
  if (e == 0) return 1;
  if (a == 0) return 0;
  return exp_[static_cast<unsigned>((static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1))) % (q_ - 1))];
}

Elt Field::from_int(long long m) const {
  long long r = m % static_cast<long long>(p_);
  if (r < 0) r += p_;
  return static_cast<Elt>(r);
}

std::string Field::name() const {
  std::ostringstream os;
  os << "GF(" << q_ << ")";
  return os.str();
}

FieldPtr make_field(unsigned p, unsigned n) {
  if (!is_prime(p)) throw UnsupportedField("characteristic " + std::to_string(p) + " is not prime");
  if (n == 0) throw UnsupportedField("field degree must be positive");
  auto it = conway_table().find({p, n});
  if (it != conway_table().end()) return std::make_shared<const Field>(p, n, it->second);
  if (n == 1 && p < 256) {
    unsigned r = smallest_primitive_root(p);
    return std::make_shared<const Field>(p, 1, std::vector<unsigned>{(p - r) % p, 1});
  }
  throw UnsupportedField("no built-in defining polynomial for GF(" + std::to_string(p) + "^" +
                         std::to_string(n) + ")");
}

FieldTower::FieldTower(FieldPtr base, FieldPtr ext) : base_(std::move(base)), ext_(std::move(ext)) {
  if (base_->characteristic() != ext_->characteristic() || ext_->degree() % base_->degree() != 0)
    throw FieldMismatch(base_->name() + " is not a subfield of " + ext_->name());
  const Field& k = *base_;
  const Field& K = *ext_;
  const unsigned p = k.characteristic();
  // Image of the generator x of k: a root of k's polynomial in K, preferring
  // the norm-compatible choice.
  Elt beta = 0;
  if (k.degree() == 1) {
    beta = K.from_int(static_cast<long long>(k.primitive()));
  } else {
    auto eval = [&](Elt z) {
      Elt acc = 0;
      for (std::size_t i = k.polynomial().size(); i-- > 0;)
        acc = K.add(K.mul(acc, z), K.from_int(k.polynomial()[i]));
      return acc;
    };
    Elt cand = K.pow(K.primitive(), (K.order() - 1) / (k.order() - 1));
    if (eval(cand) == 0) {
      beta = cand;
    } else {
      bool found = false;
      for (unsigned z = 0; z < K.order() && !found; ++z)
        if (eval(static_cast<Elt>(z)) == 0) {
          beta = static_cast<Elt>(z);
          found = true;
        }
      if (!found) throw Inconsistency("no embedding of " + k.name() + " into " + K.name());
    }
  }
  embed_.resize(k.order());
  contract_.assign(K.order(), kNone);
  for (unsigned a = 0; a < k.order(); ++a) {
    Elt img = 0, pw = 1;
    unsigned t = a;
    for (unsigned i = 0; i < k.degree(); ++i) {
      img = K.add(img, K.mul(K.from_int(t % p), pw));
      t /= p;
      pw = K.mul(pw, beta);
    }
    if (k.degree() == 1) img = K.from_int(a);
    embed_[a] = img;
    contract_[img] = static_cast<Elt>(a);
  }
  const unsigned e = relative_degree();
  basis_.resize(e);
  Elt w = K.degree() == 1 ? Elt{1} : static_cast<Elt>(p);
  Elt pw = 1;
  for (unsigned i = 0; i < e; ++i) {
    basis_[i] = pw;
    pw = K.mul(pw, w);
  }
  coords_.assign(K.order(), std::vector<Elt>(e, 0));
  std::vector<Elt> c(e, 0);
  for (unsigned idx = 0; idx < K.order(); ++idx) {
    unsigned t = idx;
    Elt val = 0;
    for (unsigned i = 0; i < e; ++i) {
      c[i] = static_cast<Elt>(t % k.order());
      t /= k.order();
      val = K.add(val, K.mul(embed_[c[i]], basis_[i]));
    }
    coords_[val] = c;
  }
}

Elt FieldTower::sigma(Elt a, unsigned power) const {
  Elt r = a;
  for (unsigned i = 0; i < power % galois_order(); ++i) r = ext_->pow(r, base_->order());
  return r;
}

Elt FieldTower::contract(Elt a) const {
  if (contract_[a] == kNone) throw PreconditionFailed("element not in the base field");
  return contract_[a];
}

}  // namespace bd
