#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "frobtrace/error.hpp"
#include "frobtrace/field.hpp"

namespace frobtrace {

/// Total degree reported for the zero polynomial.
inline constexpr int kNegInfinity = std::numeric_limits<int>::min();

/// p^e as a 64-bit integer; throws when it does not fit comfortably in an exponent.
inline std::uint64_t prime_power(Residue p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > (std::uint64_t{1} << 30)) throw UsageError("p^e exceeds the supported exponent range");
  }
  return q;
}

struct Monomial {
  std::vector<std::uint32_t> exps;

  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t nvars() const noexcept { return exps.size(); }
  std::uint64_t degree() const noexcept {
    return std::accumulate(exps.begin(), exps.end(), std::uint64_t{0});
  }

  friend bool operator==(const Monomial&, const Monomial&) = default;

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial out = a;
    for (std::size_t i = 0; i < out.exps.size(); ++i) out.exps[i] += b.exps[i];
    return out;
  }

  bool divides(const Monomial& other) const noexcept {
    for (std::size_t i = 0; i < exps.size(); ++i)
      if (exps[i] > other.exps[i]) return false;
    return true;
  }
};

/// Graded lexicographic order, larger first (x > y > z, higher degree first).
struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    const auto da = a.degree(), db = b.degree();
    if (da != db) return da > db;
    return a.exps > b.exps;
  }
};

/// Sparse multivariate polynomial over F_{p^s} in a fixed number of variables.
///
/// Terms are kept in graded-lex order with the leading term first and no
/// zero coefficients stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, Scalar, GrlexGreater>;

  Poly(FieldRef field, std::size_t nvars) : field_(std::move(field)), nvars_(nvars) {}

  static Poly constant(const FieldRef& field, std::size_t nvars, const Scalar& c) {
    Poly out(field, nvars);
    out.add_term(Monomial(nvars), c);
    return out;
  }
  static Poly constant(const FieldRef& field, std::size_t nvars, std::int64_t c) {
    return constant(field, nvars, Scalar::from_int(field, c));
  }
  static Poly variable(const FieldRef& field, std::size_t nvars, std::size_t index) {
    if (index >= nvars) throw UsageError("variable index out of range");
    Monomial m(nvars);
    m.exps[index] = 1;
    return term(field, std::move(m), Scalar::one(field));
  }
  static Poly term(const FieldRef& field, Monomial m, const Scalar& c) {
    Poly out(field, m.nvars());
    out.add_term(std::move(m), c);
    return out;
  }

  const FieldRef& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t num_terms() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }

  bool is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.degree() == 0);
  }
  Scalar constant_term() const { return coefficient(Monomial(nvars_)); }

  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar::zero(field_) : it->second;
  }

  /// Adds c*m to the polynomial, pruning a cancelled term.
  void add_term(Monomial m, const Scalar& c) {
    if (m.nvars() != nvars_) throw UsageError("monomial arity does not match polynomial");
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  int total_degree() const noexcept {
    if (terms_.empty()) return kNegInfinity;
    return static_cast<int>(terms_.begin()->first.degree());
  }

  bool is_homogeneous() const noexcept {
    if (terms_.empty()) return true;
    const auto d = terms_.begin()->first.degree();
    for (const auto& [m, c] : terms_)
      if (m.degree() != d) return false;
    return true;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    return a.terms_ == b.terms_;
  }

  Poly operator-() const {
    Poly out(field_, nvars_);
    for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, -c);
    return out;
  }

  Poly& operator+=(const Poly& b) {
    check_compatible(b);
    for (const auto& [m, c] : b.terms_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& b) {
    check_compatible(b);
    for (const auto& [m, c] : b.terms_) add_term(m, -c);
    return *this;
  }
  Poly& operator*=(const Poly& b) { return *this = *this * b; }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    a.check_compatible(b);
    Poly out(a.field_, a.nvars_);
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
    return out;
  }

  Poly scaled(const Scalar& c) const {
    Poly out(field_, nvars_);
    if (c.is_zero()) return out;
    for (const auto& [m, a] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, a * c);
    return out;
  }

  Poly times_monomial(const Monomial& shift) const {
    Poly out(field_, nvars_);
    for (const auto& [m, a] : terms_) out.terms_.emplace(m * shift, a);
    return out;
  }

  /// f^n by repeated squaring.
  Poly pow(std::uint64_t n) const {
    Poly result = constant(field_, nvars_, 1);
    Poly base = *this;
    while (n > 0) {
      if (n & 1) result = result * base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }

  /// f^{p^e}, using that the p^e-th power map is additive in characteristic p.
  Poly frobenius_power(unsigned e) const {
    const auto q = prime_power(field_->p(), e);
    Poly out(field_, nvars_);
    for (const auto& [m, c] : terms_) {
      Monomial mm = m;
      for (auto& x : mm.exps) x = static_cast<std::uint32_t>(x * q);
      out.terms_.emplace(std::move(mm), c.frobenius(e));
    }
    return out;
  }

  /// Formal partial derivative with respect to variable `index`.
  Poly derivative(std::size_t index) const {
    if (index >= nvars_) throw UsageError("variable index out of range");
    Poly out(field_, nvars_);
    for (const auto& [m, c] : terms_) {
      if (m.exps[index] == 0) continue;
      Monomial mm = m;
      const auto k = mm.exps[index]--;
      out.add_term(std::move(mm), c * Scalar::from_int(field_, k));
    }
    return out;
  }

  void check_compatible(const Poly& b) const {
    if (nvars_ != b.nvars_)
      throw UsageError("polynomials have different variable counts (" + std::to_string(nvars_) + " vs " +
                       std::to_string(b.nvars_) + ")");
    if (field_ != b.field_ && !field_->same_as(*b.field_))
      throw UsageError("polynomials live over different fields");
  }

 private:
  FieldRef field_;
  std::size_t nvars_;
  TermMap terms_;
};

/// All monomials in `nvars` variables of total degree <= bound, ordered by
/// degree and, within one degree, with x0 powers first (1, x, y, z, x^2, ...).
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, int bound) {
  std::vector<Monomial> out;
  if (bound < 0) return out;
  for (int d = 0; d <= bound; ++d) {
    // Compositions of d into nvars parts, lexicographically largest first.
    Monomial m(nvars);
    auto fill = [&](auto&& self, std::size_t pos, std::uint32_t left) -> void {
      if (nvars == 0) {
        if (left == 0) out.push_back(m);
        return;
      }
      if (pos + 1 == nvars) {
        m.exps[pos] = left;
        out.push_back(m);
        return;
      }
      for (std::uint32_t k = left + 1; k-- > 0;) {
        m.exps[pos] = k;
        self(self, pos + 1, left - k);
      }
    };
    fill(fill, 0, static_cast<std::uint32_t>(d));
  }
  return out;
}

/// Sets the chart variable to 1 and drops it. Input must be homogeneous.
inline Poly dehomogenize(const Poly& f, std::size_t chart) {
  if (chart >= f.nvars()) throw UsageError("chart variable index out of range");
  if (!f.is_homogeneous()) throw UsageError("dehomogenize requires a homogeneous polynomial");
  Poly out(f.field(), f.nvars() - 1);
  for (const auto& [m, c] : f.terms()) {
    Monomial mm;
    mm.exps.reserve(f.nvars() - 1);
    for (std::size_t i = 0; i < f.nvars(); ++i)
      if (i != chart) mm.exps.push_back(m.exps[i]);
    out.add_term(std::move(mm), c);
  }
  return out;
}

/// g with g^{p^e} = f, or nullopt when some exponent is not divisible by p^e.
inline std::optional<Poly> pe_th_root(const Poly& f, unsigned e) {
  const auto q = prime_power(f.field()->p(), e);
  Poly out(f.field(), f.nvars());
  for (const auto& [m, c] : f.terms()) {
    Monomial mm = m;
    for (auto& x : mm.exps) {
      if (x % q != 0) return std::nullopt;
      x = static_cast<std::uint32_t>(x / q);
    }
    out.add_term(std::move(mm), c.inverse_frobenius(e));
  }
  return out;
}

using FrobeniusBuckets = std::map<Monomial, Poly, GrlexGreater>;

/// Writes f = sum_r g_r^{p^e} x^r with every entry of r in [0, p^e).
///
/// Only residues that actually occur in f get a bucket.
inline FrobeniusBuckets frobenius_decompose(const Poly& f, unsigned e) {
  const auto q = prime_power(f.field()->p(), e);
  std::map<Monomial, Poly, GrlexGreater> grouped;
  for (const auto& [m, c] : f.terms()) {
    Monomial residue = m;
    Monomial rest = m;
    for (std::size_t i = 0; i < m.nvars(); ++i) {
      residue.exps[i] = static_cast<std::uint32_t>(m.exps[i] % q);
      rest.exps[i] = m.exps[i] - residue.exps[i];
    }
    auto it = grouped.try_emplace(residue, f.field(), f.nvars()).first;
    it->second.add_term(std::move(rest), c);
  }
  FrobeniusBuckets out;
  for (auto& [r, bucket] : grouped) {
    auto root = pe_th_root(bucket, e);
    if (!root) throw ConsistencyError("frobenius bucket is not a p^e-th power");
    out.emplace(r, std::move(*root));
  }
  return out;
}

/// f / g when g divides f exactly, otherwise nullopt.
///
/// Division with remainder by a single polynomial; {g} is a Groebner basis of
/// (g), so the remainder vanishes exactly when g | f.
inline std::optional<Poly> divide_exact(const Poly& f, const Poly& g) {
  f.check_compatible(g);
  if (g.is_zero()) throw DivisionByZero("polynomial division by zero");
  const auto& [lead_m, lead_c] = *g.terms().begin();
  const Scalar lead_inv = lead_c.inverse();
  Poly rem = f;
  Poly quot(f.field(), f.nvars());
  while (!rem.is_zero()) {
    const auto& [m, c] = *rem.terms().begin();
    if (!lead_m.divides(m)) return std::nullopt;
    Monomial shift = m;
    for (std::size_t i = 0; i < shift.nvars(); ++i) shift.exps[i] -= lead_m.exps[i];
    const Scalar factor = c * lead_inv;
    quot.add_term(shift, factor);
    rem -= g.times_monomial(shift).scaled(factor);
  }
  return quot;
}

/// Default variable names x0, x1, ...
inline std::vector<std::string> default_names(std::size_t nvars) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < nvars; ++i) out.push_back("x" + std::to_string(i));
  return out;
}

inline std::string monomial_to_string(const Monomial& m, const std::vector<std::string>& names) {
  std::string out;
  for (std::size_t i = 0; i < m.nvars(); ++i) {
    if (m.exps[i] == 0) continue;
    if (!out.empty()) out += "*";
    out += names.at(i);
    if (m.exps[i] > 1) out += "^" + std::to_string(m.exps[i]);
  }
  return out.empty() ? "1" : out;
}

inline std::string to_string(const Poly& f, const std::vector<std::string>& names) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : f.terms()) {
    if (!out.empty()) out += " + ";
    const bool unit = c.is_one();
    if (m.degree() == 0) {
      out += c.to_string();
    } else if (unit) {
      out += monomial_to_string(m, names);
    } else {
      out += c.to_string() + "*" + monomial_to_string(m, names);
    }
  }
  return out;
}

inline std::string to_string(const Poly& f) { return to_string(f, default_names(f.nvars())); }

/// Quotient num/den of polynomials, never reduced to lowest terms.
///
/// Equality compares by cross-multiplication.
class RationalFn {
 public:
  explicit RationalFn(Poly num) : num_(std::move(num)), den_(Poly::constant(num_.field(), num_.nvars(), 1)) {}
  RationalFn(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
    num_.check_compatible(den_);
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
  }

  const Poly& num() const noexcept { return num_; }
  const Poly& den() const noexcept { return den_; }
  const FieldRef& field() const noexcept { return num_.field(); }
  std::size_t nvars() const noexcept { return num_.nvars(); }
  bool is_zero() const noexcept { return num_.is_zero(); }

  /// True when the denominator is a non-zero constant.
  bool is_polynomial() const noexcept { return den_.is_constant(); }

  /// The polynomial equal to this function, when the denominator divides the numerator.
  std::optional<Poly> as_polynomial() const {
    if (den_.is_constant()) return num_.scaled(den_.constant_term().inverse());
    return divide_exact(num_, den_);
  }

  friend bool operator==(const RationalFn& a, const RationalFn& b) {
    return a.num_ * b.den_ == b.num_ * a.den_;
  }

  RationalFn operator-() const { return RationalFn(-num_, den_); }

  friend RationalFn operator+(const RationalFn& a, const RationalFn& b) {
    if (a.den_ == b.den_) return RationalFn(a.num_ + b.num_, a.den_);
    return RationalFn(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RationalFn operator-(const RationalFn& a, const RationalFn& b) { return a + (-b); }
  friend RationalFn operator*(const RationalFn& a, const RationalFn& b) {
    return RationalFn(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend RationalFn operator/(const RationalFn& a, const RationalFn& b) {
    if (b.is_zero()) throw DivisionByZero("division by the zero rational function");
    return RationalFn(a.num_ * b.den_, a.den_ * b.num_);
  }

  RationalFn pow(std::uint64_t n) const { return RationalFn(num_.pow(n), den_.pow(n)); }

 private:
  Poly num_;
  Poly den_;
};

inline std::string to_string(const RationalFn& r, const std::vector<std::string>& names) {
  if (r.is_zero()) return "0";
  if (r.den().is_constant() && r.den().constant_term().is_one()) return to_string(r.num(), names);
  return "(" + to_string(r.num(), names) + ")/(" + to_string(r.den(), names) + ")";
}

}  // namespace frobtrace
