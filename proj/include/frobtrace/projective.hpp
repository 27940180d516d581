#pragma once

#include <cstddef>
#include <future>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobtrace/cartier.hpp"
#include "frobtrace/error.hpp"
#include "frobtrace/forms.hpp"
#include "frobtrace/linalg.hpp"
#include "frobtrace/poly.hpp"

namespace frobtrace {

struct Hypersurface {
  Poly f;  // homogeneous in n+1 variables
  unsigned mult;
};

/// The divisor sum_j a_j V(f_j) + k H on P^n, H the hyperplane class.
class DivisorSpec {
 public:
  DivisorSpec(FieldRef field, std::size_t n, int k = 0) : field_(std::move(field)), n_(n), k_(k) {}

  const FieldRef& field() const noexcept { return field_; }
  std::size_t n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  void set_k(int k) noexcept { k_ = k; }
  const std::vector<Hypersurface>& hypersurfaces() const noexcept { return hypersurfaces_; }

  /// Adds mult * V(f), merging with an identical polynomial already present.
  void add(const Poly& f, unsigned mult) {
    if (f.nvars() != n_ + 1)
      throw UsageError("hypersurface must be given in " + std::to_string(n_ + 1) + " homogeneous variables");
    if (f.is_zero()) throw UsageError("hypersurface equation must be non-zero");
    if (!f.is_homogeneous()) throw UsageError("hypersurface equation must be homogeneous");
    if (mult == 0) return;
    for (auto& h : hypersurfaces_) {
      if (h.f == f) {
        h.mult += mult;
        return;
      }
    }
    hypersurfaces_.push_back({f, mult});
  }

  /// Degree of the divisor as a multiple of H.
  long degree() const noexcept {
    long d = k_;
    for (const auto& h : hypersurfaces_) d += static_cast<long>(h.mult) * h.f.total_degree();
    return d;
  }

  friend DivisorSpec operator+(const DivisorSpec& a, const DivisorSpec& b) {
    if (a.n_ != b.n_) throw UsageError("divisors live on different projective spaces");
    DivisorSpec out = a;
    out.k_ += b.k_;
    for (const auto& h : b.hypersurfaces_) out.add(h.f, h.mult);
    return out;
  }

  DivisorSpec scaled(std::uint64_t factor) const {
    DivisorSpec out(field_, n_, static_cast<int>(k_ * static_cast<long>(factor)));
    for (const auto& h : hypersurfaces_) out.add(h.f, static_cast<unsigned>(h.mult * factor));
    return out;
  }

  std::string describe(const std::vector<std::string>& names) const {
    std::string out;
    for (const auto& h : hypersurfaces_) {
      if (!out.empty()) out += " + ";
      out += (h.mult == 1 ? "" : std::to_string(h.mult) + "*") + "V(" + to_string(h.f, names) + ")";
    }
    if (k_ != 0) {
      const int mag = k_ < 0 ? -k_ : k_;
      if (!out.empty()) out += k_ < 0 ? " - " : " + ";
      else if (k_ < 0) out += "-";
      out += (mag == 1 ? "" : std::to_string(mag) + "*") + "H";
    }
    return out.empty() ? "0" : out;
  }

 private:
  FieldRef field_;
  std::size_t n_;
  int k_;
  std::vector<Hypersurface> hypersurfaces_;
};

/// E + p^e D.
inline DivisorSpec pe_twist(const DivisorSpec& divisor, const DivisorSpec& effective_part, unsigned e) {
  if (effective_part.k() < 0) throw UsageError("E must be effective");
  return effective_part + divisor.scaled(prime_power(divisor.field()->p(), e));
}

/// Global sections of omega_{P^n}(D) modelled on the chart {x_chart != 0}.
///
/// A section is (h / prod_j fhat_j^{a_j}) dX_1 ^ ... ^ dX_n with deg h <= bound,
/// where fhat_j is the dehomogenized equation and
/// bound = sum_j a_j deg f_j + k - (n+1), from omega_{P^n} = O(-(n+1)).
class SectionSpace {
 public:
  SectionSpace(DivisorSpec divisor, std::size_t chart)
      : divisor_(std::move(divisor)), chart_(chart), den_(Poly::constant(divisor_.field(), divisor_.n(), 1)) {
    const std::size_t n = divisor_.n();
    if (chart_ > n) throw ChartError("chart variable index " + std::to_string(chart_) + " out of range for P^" +
                                     std::to_string(n));
    for (const auto& h : divisor_.hypersurfaces()) {
      Poly fhat = dehomogenize(h.f, chart_);
      if (fhat.is_zero()) throw ChartError("hypersurface " + to_string(h.f) + " vanishes identically on the chart");
      den_ = den_ * fhat.pow(h.mult);
    }
    bound_ = static_cast<int>(divisor_.degree()) - static_cast<int>(n + 1);
    basis_ = monomials_up_to(n, bound_);
  }

  const DivisorSpec& divisor() const noexcept { return divisor_; }
  std::size_t chart() const noexcept { return chart_; }
  const Poly& den() const noexcept { return den_; }
  int bound() const noexcept { return bound_; }
  const std::vector<Monomial>& basis() const noexcept { return basis_; }
  std::size_t dim() const noexcept { return basis_.size(); }

  TopForm form(std::size_t index) const {
    const auto& field = divisor_.field();
    return TopForm(Poly::term(field, basis_.at(index), Scalar::one(field)), den_);
  }

  /// Coordinates of (h/den) dX, or nullopt when deg h exceeds the bound.
  std::optional<std::vector<Scalar>> coordinates(const Poly& h) const {
    if (h.total_degree() > bound_) return std::nullopt;
    std::vector<Scalar> out;
    out.reserve(basis_.size());
    for (const auto& m : basis_) out.push_back(h.coefficient(m));
    return out;
  }

 private:
  DivisorSpec divisor_;
  std::size_t chart_;
  Poly den_;
  int bound_ = -1;
  std::vector<Monomial> basis_;
};

inline SectionSpace section_space(const DivisorSpec& divisor, std::size_t chart) {
  return SectionSpace(divisor, chart);
}

/// The last homogeneous variable, i.e. the chart {x_n != 0}.
inline std::size_t default_chart(const DivisorSpec& divisor) { return divisor.n(); }

/// A p^{-e}-linear map between section spaces.
///
/// Column b of the matrix holds the coordinates of the image of basis
/// element b; a coordinate vector c maps to M * phi^{-e}(c), where phi^{-e}
/// is the inverse Frobenius applied entrywise. Hence T(u^{p^e} v) = u T(v).
class SemilinearMap {
 public:
  SemilinearMap(SectionSpace src, SectionSpace tgt, unsigned e, Matrix matrix)
      : src_(std::move(src)), tgt_(std::move(tgt)), e_(e), matrix_(std::move(matrix)) {
    if (matrix_.rows() != tgt_.dim() || matrix_.cols() != src_.dim())
      throw UsageError("matrix shape does not match the section spaces");
  }

  const SectionSpace& src() const noexcept { return src_; }
  const SectionSpace& tgt() const noexcept { return tgt_; }
  unsigned e() const noexcept { return e_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  std::vector<Scalar> apply(std::vector<Scalar> coords) const {
    for (auto& c : coords) c = c.inverse_frobenius(e_);
    return matrix_ * coords;
  }

 private:
  SectionSpace src_;
  SectionSpace tgt_;
  unsigned e_;
  Matrix matrix_;
};

/// outer o inner. With inner = (M1, e1) and outer = (M2, e2):
/// M2 phi^{-e2}(M1 phi^{-e1}(c)) = (M2 phi^{-e2}(M1)) phi^{-(e1+e2)}(c).
inline SemilinearMap compose(const SemilinearMap& outer, const SemilinearMap& inner) {
  if (outer.src().dim() != inner.tgt().dim()) throw UsageError("cannot compose maps of mismatched dimensions");
  Matrix twisted = inner.matrix();
  for (std::size_t i = 0; i < twisted.rows(); ++i)
    for (std::size_t j = 0; j < twisted.cols(); ++j) twisted(i, j) = twisted(i, j).inverse_frobenius(outer.e());
  return SemilinearMap(inner.src(), outer.tgt(), outer.e() + inner.e(), outer.matrix() * twisted);
}

struct MapVerdict {
  std::size_t rank;
  bool surjective;
  bool zero;
};

/// Rank over F_q of the matrix. The image of a semilinear map is the F_q-span
/// of the columns because phi^{-e} permutes F_q^m, so ordinary rank is the
/// dimension of the image.
inline MapVerdict map_verdict(const SemilinearMap& map) {
  const auto r = rank(map.matrix());
  return {r, r == map.tgt().dim(), map.matrix().is_zero()};
}

/// Matrix of Tr^e_{P^n,E}(D): H^0(omega(E + p^e D)) -> H^0(omega(E + D)) on a chart.
///
/// Each source basis form is traced with trace_rational_top and rewritten
/// over the target denominator. A result outside the target space raises
/// ConsistencyError. Columns are independent and may be computed on
/// `threads` workers; the assembled matrix does not depend on the schedule.
inline SemilinearMap trace_matrix(const DivisorSpec& effective_part, const DivisorSpec& divisor, unsigned e,
                                  std::size_t chart, unsigned threads = 1) {
  if (e == 0) throw UsageError("Frobenius exponent must be positive");
  const SectionSpace src = section_space(pe_twist(divisor, effective_part, e), chart);
  const SectionSpace tgt = section_space(effective_part + divisor, chart);
  const auto& field = divisor.field();

  auto column = [&](std::size_t b) -> std::vector<Scalar> {
    const TopForm traced = trace_rational_top(src.form(b), e);
    const auto h = divide_exact(traced.coeff().num() * tgt.den(), traced.coeff().den());
    std::optional<std::vector<Scalar>> coords;
    if (h) coords = tgt.coordinates(*h);
    if (!coords) {
      throw ConsistencyError("trace of source basis element " + monomial_to_string(src.basis()[b], default_names(divisor.n())) +
                             " does not lie in the target section space");
    }
    return *coords;
  };

  std::vector<std::vector<Scalar>> columns(src.dim());
  if (threads <= 1 || src.dim() < 2) {
    for (std::size_t b = 0; b < src.dim(); ++b) columns[b] = column(b);
  } else {
    std::vector<std::future<void>> workers;
    for (unsigned t = 0; t < threads; ++t) {
      workers.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t b = t; b < src.dim(); b += threads) columns[b] = column(b);
      }));
    }
    for (auto& w : workers) w.get();
  }

  Matrix m(field, tgt.dim(), src.dim());
  for (std::size_t b = 0; b < src.dim(); ++b)
    for (std::size_t r = 0; r < tgt.dim(); ++r) m(r, b) = columns[b][r];
  return SemilinearMap(src, tgt, e, std::move(m));
}

}  // namespace frobtrace
