#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "frobtrace/error.hpp"

namespace frobtrace {

using Residue = std::uint32_t;

namespace detail {

// Dense univariate polynomials over F_p, coefficients stored low degree first.
// Only used to build and validate extension fields.
using UPoly = std::vector<Residue>;

inline void trim(UPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline Residue pow_mod(Residue base, std::uint64_t exp, Residue p) {
  std::uint64_t result = 1 % p;
  std::uint64_t b = base % p;
  while (exp > 0) {
    if (exp & 1) result = result * b % p;
    b = b * b % p;
    exp >>= 1;
  }
  return static_cast<Residue>(result);
}

inline Residue inv_mod(Residue a, Residue p) {
  if (a % p == 0) throw DivisionByZero();
  return pow_mod(a, p - 2, p);
}

inline UPoly upoly_sub(UPoly a, const UPoly& b, Residue p) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] = (a[i] + p - b[i]) % p;
  trim(a);
  return a;
}

inline UPoly upoly_mul(const UPoly& a, const UPoly& b, Residue p) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint64_t> acc(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      acc[i + j] = (acc[i + j] + std::uint64_t{a[i]} * b[j]) % p;
    }
  }
  UPoly out(acc.begin(), acc.end());
  trim(out);
  return out;
}

// Returns (quotient, remainder); b must be non-zero.
inline std::pair<UPoly, UPoly> upoly_divmod(UPoly a, const UPoly& b, Residue p) {
  trim(a);
  if (b.empty()) throw DivisionByZero();
  const Residue lead_inv = inv_mod(b.back(), p);
  UPoly q;
  if (a.size() >= b.size()) q.assign(a.size() - b.size() + 1, 0);
  while (a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const Residue c = static_cast<Residue>(std::uint64_t{a.back()} * lead_inv % p);
    q[shift] = c;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const std::uint64_t sub = std::uint64_t{c} * b[j] % p;
      a[shift + j] = static_cast<Residue>((a[shift + j] + p - sub) % p);
    }
    trim(a);
  }
  trim(q);
  return {q, a};
}

inline UPoly upoly_mod(const UPoly& a, const UPoly& m, Residue p) {
  return upoly_divmod(a, m, p).second;
}

inline UPoly upoly_gcd(UPoly a, UPoly b, Residue p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPoly r = upoly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    const Residue inv = inv_mod(a.back(), p);
    for (auto& c : a) c = static_cast<Residue>(std::uint64_t{c} * inv % p);
  }
  return a;
}

// a^exp mod m
inline UPoly upoly_powmod(UPoly a, std::uint64_t exp, const UPoly& m, Residue p) {
  UPoly result = upoly_mod(UPoly{1}, m, p);
  a = upoly_mod(a, m, p);
  while (exp > 0) {
    if (exp & 1) result = upoly_mod(upoly_mul(result, a, p), m, p);
    a = upoly_mod(upoly_mul(a, a, p), m, p);
    exp >>= 1;
  }
  return result;
}

// Inverse of a modulo m by the extended Euclidean algorithm.
inline UPoly upoly_invmod(const UPoly& a, const UPoly& m, Residue p) {
  UPoly r0 = m, r1 = upoly_mod(a, m, p);
  UPoly s0, s1{1};
  if (r1.empty()) throw DivisionByZero();
  while (!r1.empty()) {
    auto [q, r2] = upoly_divmod(r0, r1, p);
    UPoly s2 = upoly_sub(s0, upoly_mul(q, s1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r2);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r0 is a non-zero constant when m is irreducible.
  if (r0.size() != 1) throw DivisionByZero("element is not invertible modulo the field modulus");
  const Residue inv = inv_mod(r0[0], p);
  for (auto& c : s0) c = static_cast<Residue>(std::uint64_t{c} * inv % p);
  return upoly_mod(s0, m, p);
}

}  // namespace detail

/// Description of a finite field F_{p^s}.
///
/// For s > 1 the field is F_p[t]/(modulus) and elements are stored in the
/// power basis 1, t, ..., t^{s-1}. Construction validates that p is a prime
/// below 2^16 and that the modulus is monic and irreducible.
class FieldSpec {
 public:
  static std::shared_ptr<const FieldSpec> prime(Residue p) {
    return std::shared_ptr<const FieldSpec>(new FieldSpec(p, {}));
  }

  /// `modulus` lists coefficients from the constant term up to the leading 1.
  static std::shared_ptr<const FieldSpec> extension(Residue p, std::vector<Residue> modulus) {
    if (modulus.size() <= 2) {
      // Degree 0 and 1 moduli describe F_p itself.
      if (modulus.size() == 2 && modulus[1] % p == 1) return prime(p);
      throw UsageError("field modulus must be monic of degree >= 1");
    }
    return std::shared_ptr<const FieldSpec>(new FieldSpec(p, std::move(modulus)));
  }

  Residue p() const noexcept { return p_; }
  unsigned s() const noexcept { return s_; }
  /// Empty when s == 1.
  const std::vector<Residue>& modulus() const noexcept { return modulus_; }

  bool same_as(const FieldSpec& other) const noexcept {
    return this == &other || (p_ == other.p_ && modulus_ == other.modulus_);
  }

  std::string describe() const {
    std::ostringstream os;
    os << "F_" << p_;
    if (s_ > 1) os << "^" << s_;
    return os.str();
  }

 private:
  FieldSpec(Residue p, std::vector<Residue> modulus) : p_(p), s_(1), modulus_(std::move(modulus)) {
    if (p < 2 || p >= (1u << 16)) throw UsageError("characteristic must satisfy 2 <= p < 65536");
    for (Residue d = 2; d * d <= p; ++d) {
      if (p % d == 0) throw UsageError("characteristic " + std::to_string(p) + " is not prime");
    }
    if (modulus_.empty()) return;
    for (auto& c : modulus_) {
      if (c >= p) throw UsageError("modulus coefficients must lie in [0, p)");
    }
    if (modulus_.back() != 1) throw UsageError("field modulus must be monic");
    s_ = static_cast<unsigned>(modulus_.size() - 1);
    if (!irreducible()) throw UsageError("field modulus is reducible over F_" + std::to_string(p));
  }

  // gcd(x^{p^i} - x, m) = 1 for 1 <= i <= s/2.
  bool irreducible() const {
    const detail::UPoly x{0, 1};
    detail::UPoly frob = x;
    for (unsigned i = 1; i <= s_ / 2; ++i) {
      frob = detail::upoly_powmod(frob, p_, modulus_, p_);
      const auto g = detail::upoly_gcd(detail::upoly_sub(frob, x, p_), modulus_, p_);
      if (g.size() != 1) return false;
    }
    return true;
  }

  Residue p_;
  unsigned s_;
  std::vector<Residue> modulus_;
};

using FieldRef = std::shared_ptr<const FieldSpec>;

/// An element of F_{p^s}, stored as s residues in the power basis.
class Scalar {
 public:
  explicit Scalar(FieldRef field) : field_(std::move(field)), c_(field_->s(), 0) {}

  static Scalar from_int(const FieldRef& field, std::int64_t value) {
    Scalar out(field);
    const auto p = static_cast<std::int64_t>(field->p());
    std::int64_t r = value % p;
    if (r < 0) r += p;
    out.c_[0] = static_cast<Residue>(r);
    return out;
  }

  static Scalar from_coeffs(const FieldRef& field, std::vector<Residue> coeffs) {
    if (coeffs.size() > field->s()) throw UsageError("too many coordinates for " + field->describe());
    Scalar out(field);
    for (std::size_t i = 0; i < coeffs.size(); ++i) out.c_[i] = coeffs[i] % field->p();
    return out;
  }

  static Scalar zero(const FieldRef& field) { return Scalar(field); }
  static Scalar one(const FieldRef& field) { return from_int(field, 1); }

  const FieldRef& field() const noexcept { return field_; }
  const std::vector<Residue>& coeffs() const noexcept { return c_; }

  bool is_zero() const noexcept {
    for (auto c : c_)
      if (c != 0) return false;
    return true;
  }
  bool is_one() const noexcept {
    if (c_[0] != 1) return false;
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    a.check_same(b);
    return a.c_ == b.c_;
  }

  Scalar operator-() const {
    Scalar out(field_);
    const Residue p = field_->p();
    for (std::size_t i = 0; i < c_.size(); ++i) out.c_[i] = c_[i] == 0 ? 0 : p - c_[i];
    return out;
  }

  Scalar& operator+=(const Scalar& b) {
    check_same(b);
    const Residue p = field_->p();
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = (c_[i] + b.c_[i]) % p;
    return *this;
  }
  Scalar& operator-=(const Scalar& b) {
    check_same(b);
    const Residue p = field_->p();
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] = (c_[i] + p - b.c_[i]) % p;
    return *this;
  }
  Scalar& operator*=(const Scalar& b) {
    check_same(b);
    const Residue p = field_->p();
    if (c_.size() == 1) {
      c_[0] = static_cast<Residue>(std::uint64_t{c_[0]} * b.c_[0] % p);
      return *this;
    }
    auto prod = detail::upoly_mul(trimmed(), b.trimmed(), p);
    set_from(detail::upoly_mod(prod, field_->modulus(), p));
    return *this;
  }
  Scalar& operator/=(const Scalar& b) { return *this *= b.inverse(); }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const {
    if (is_zero()) throw DivisionByZero();
    const Residue p = field_->p();
    Scalar out(field_);
    if (c_.size() == 1) {
      out.c_[0] = detail::inv_mod(c_[0], p);
    } else {
      out.set_from(detail::upoly_invmod(trimmed(), field_->modulus(), p));
    }
    return out;
  }

  Scalar pow(std::uint64_t exp) const {
    Scalar result = one(field_);
    Scalar base = *this;
    while (exp > 0) {
      if (exp & 1) result *= base;
      base *= base;
      exp >>= 1;
    }
    return result;
  }

  /// a^{p^e}. Frobenius has order s on F_{p^s}, so e is reduced mod s first.
  Scalar frobenius(unsigned e) const {
    Scalar out = *this;
    for (unsigned i = 0; i < e % field_->s(); ++i) out = out.pow(field_->p());
    return out;
  }

  /// The unique b with b^{p^e} = a, obtained from e applications of a -> a^{p^{s-1}}.
  Scalar inverse_frobenius(unsigned e) const {
    const unsigned s = field_->s();
    if (s == 1) return *this;
    // a -> a^{p^{s-1}} is the inverse of a -> a^p; applying it e times equals
    // applying Frobenius (s-1)*e times.
    return frobenius(static_cast<unsigned>((std::uint64_t{s - 1} * (e % s)) % s));
  }

  /// A residue for elements of the prime field, otherwise "[c0,c1,...]" in the power basis.
  std::string to_string() const {
    if (std::all_of(c_.begin() + 1, c_.end(), [](Residue r) { return r == 0; })) return std::to_string(c_[0]);
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? "," : "") << c_[i];
    os << "]";
    return os.str();
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& a) { return os << a.to_string(); }

 private:
  void check_same(const Scalar& b) const {
    if (field_ != b.field_ && !field_->same_as(*b.field_)) {
      throw UsageError("scalar operands belong to different fields: " + field_->describe() + " vs " +
                       b.field_->describe());
    }
  }
  detail::UPoly trimmed() const {
    detail::UPoly v(c_.begin(), c_.end());
    detail::trim(v);
    return v;
  }
  void set_from(const detail::UPoly& v) {
    std::fill(c_.begin(), c_.end(), 0);
    for (std::size_t i = 0; i < v.size() && i < c_.size(); ++i) c_[i] = v[i];
  }

  FieldRef field_;
  std::vector<Residue> c_;
};

}  // namespace frobtrace
