#pragma once

#include <tuple>
#include <utility>
#include <vector>

#include "blockdescent/field.hpp"

namespace bd {

/// Univariate polynomial over a finite field, coefficients low to high, with
/// no trailing zeros (the zero polynomial is the empty vector).
class Poly {
 public:
  Poly() = default;
  Poly(FieldPtr f, std::vector<Elt> coeffs);

  static Poly constant(FieldPtr f, Elt c);
  static Poly monomial(FieldPtr f, std::size_t degree, Elt c = 1);

  const FieldPtr& field() const { return field_; }
  const std::vector<Elt>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// Degree; -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  Elt operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Elt{0}; }
  Elt leading() const { return c_.empty() ? Elt{0} : c_.back(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(Elt s) const;
  Poly monic() const;
  Poly derivative() const;
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }
  bool operator<(const Poly& o) const;

  Elt eval(Elt x) const;

 private:
  void trim();
  FieldPtr field_;
  std::vector<Elt> c_;
};

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly gcd(const Poly& a, const Poly& b);
/// Extended gcd: returns (g, s, t) with s*a + t*b = g, g monic.
std::tuple<Poly, Poly, Poly> xgcd(const Poly& a, const Poly& b);
Poly powmod(const Poly& base, std::uint64_t e, const Poly& mod);

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by (degree, coefficients).  Equal-degree splitting is randomized
/// (Cantor-Zassenhaus); the result does not depend on the generator.
std::vector<std::pair<Poly, unsigned>> factor(const Poly& f, Rng& rng);

bool is_irreducible(const Poly& f);

}  // namespace bd
