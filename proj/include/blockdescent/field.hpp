#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "blockdescent/error.hpp"

namespace bd {

using Elt = std::uint16_t;

/// The finite field GF(p^n), p^n <= 2^16.
///
/// An element is stored as the base-p integer encoding of its residue
/// polynomial modulo the defining polynomial: coefficient of x^i is the i-th
/// base-p digit.  0 and 1 are the additive and multiplicative identities.  In
/// characteristic 2 addition is XOR and bit i is the x^i coefficient, which is
/// what the bit-plane matrix kernels rely on.
class Field {
 public:
  Field(unsigned p, unsigned n, std::vector<unsigned> poly);

  unsigned characteristic() const { return p_; }
  unsigned degree() const { return n_; }
  unsigned order() const { return q_; }
  /// Defining polynomial, coefficients low to high, monic of degree n.
  const std::vector<unsigned>& polynomial() const { return poly_; }

  Elt add(Elt a, Elt b) const {
    if (p_ == 2) return static_cast<Elt>(a ^ b);
    if (!add_.empty()) return add_[static_cast<std::size_t>(a) * q_ + b];
    return add_digits(a, b);
  }
  Elt neg(Elt a) const { return p_ == 2 ? a : neg_[a]; }
  Elt sub(Elt a, Elt b) const { return add(a, neg(b)); }
  Elt mul(Elt a, Elt b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }
  Elt inv(Elt a) const;
  Elt div(Elt a, Elt b) const { return mul(a, inv(b)); }
  Elt pow(Elt a, std::uint64_t e) const;

  /// x -> x^p.
  Elt frobenius(Elt a) const { return pow(a, p_); }
  /// Inverse of the Frobenius automorphism.
  Elt frobenius_inverse(Elt a) const { return pow(a, q_ / p_); }

  /// A fixed primitive element (generator of the multiplicative group).
  Elt primitive() const { return exp_[1]; }
  /// Discrete log base primitive(); a must be nonzero.
  unsigned log(Elt a) const { return log_[a]; }
  Elt exp(unsigned k) const { return exp_[k % (q_ - 1)]; }

  /// Image of the prime-field integer m.
  Elt from_int(long long m) const;

  bool operator==(const Field& o) const { return p_ == o.p_ && n_ == o.n_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string name() const;

 private:
  Elt add_digits(Elt a, Elt b) const;
  Elt mul_slow(Elt a, Elt b) const;

  unsigned p_, n_, q_;
  std::vector<unsigned> poly_;
  std::vector<Elt> exp_;
  std::vector<unsigned> log_;
  std::vector<Elt> add_;
  std::vector<Elt> neg_;
};

using FieldPtr = std::shared_ptr<const Field>;

/// GF(p^n) with the built-in defining polynomial (Conway polynomials for
/// p in {2, 3, 5}; prime fields of any prime p < 256).
FieldPtr make_field(unsigned p, unsigned n);

bool is_prime(unsigned p);

/// A tower k <= k' of finite fields with an explicit embedding and the
/// generator of Gal(k'/k) (the |k|-power Frobenius).
class FieldTower {
 public:
  FieldTower(FieldPtr base, FieldPtr ext);

  const FieldPtr& base() const { return base_; }
  const FieldPtr& ext() const { return ext_; }
  /// Relative degree [k':k] = |Gal(k'/k)|.
  unsigned relative_degree() const { return ext_->degree() / base_->degree(); }
  unsigned galois_order() const { return relative_degree(); }

  Elt embed(Elt a) const { return embed_[a]; }
  /// sigma^power applied to an element of k'.
  Elt sigma(Elt a, unsigned power = 1) const;
  /// Preimage in k of an element of the embedded subfield; throws otherwise.
  Elt contract(Elt a) const;
  bool in_base(Elt a) const { return contract_[a] != kNone; }

  /// Coordinates of a in k over the k-basis 1, w, ..., w^(e-1) of k' where w
  /// is the generator x of k'.
  const std::vector<Elt>& coordinates(Elt a) const { return coords_[a]; }
  /// The k-basis of k' used by coordinates().
  const std::vector<Elt>& basis() const { return basis_; }

 private:
  static constexpr Elt kNone = 0xFFFF;
  FieldPtr base_, ext_;
  std::vector<Elt> embed_;
  std::vector<Elt> contract_;
  std::vector<Elt> basis_;
  std::vector<std::vector<Elt>> coords_;
};

}  // namespace bd
