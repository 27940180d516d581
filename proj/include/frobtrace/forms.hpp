#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobtrace/error.hpp"
#include "frobtrace/linalg.hpp"
#include "frobtrace/poly.hpp"

namespace frobtrace {

/// Strictly increasing list of variable indices; J in dx_J.
using IndexSet = std::vector<std::size_t>;

/// All k-element subsets of {0, ..., n-1} in lexicographic order.
inline std::vector<IndexSet> index_subsets(std::size_t n, std::size_t k) {
  std::vector<IndexSet> out;
  if (k > n) return out;
  IndexSet cur(k);
  for (std::size_t i = 0; i < k; ++i) cur[i] = i;
  while (true) {
    out.push_back(cur);
    std::size_t i = k;
    while (i > 0 && cur[i - 1] == n - k + i - 1) --i;
    if (i == 0) break;
    ++cur[i - 1];
    for (std::size_t j = i; j < k; ++j) cur[j] = cur[j - 1] + 1;
  }
  return out;
}

/// A differential i-form sum_J f_J dx_J on affine n-space with rational coefficients.
class DiffForm {
 public:
  using CoeffMap = std::map<IndexSet, RationalFn>;

  DiffForm(FieldRef field, std::size_t nvars, std::size_t degree)
      : field_(std::move(field)), nvars_(nvars), degree_(degree) {
    if (degree > nvars) throw UsageError("form degree exceeds the number of variables");
  }

  static DiffForm single(IndexSet index, const RationalFn& coeff) {
    DiffForm out(coeff.field(), coeff.nvars(), index.size());
    out.add(std::move(index), coeff);
    return out;
  }
  static DiffForm single(IndexSet index, const Poly& coeff) { return single(std::move(index), RationalFn(coeff)); }

  const FieldRef& field() const noexcept { return field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  std::size_t degree() const noexcept { return degree_; }
  const CoeffMap& coeffs() const noexcept { return coeffs_; }
  bool is_zero() const noexcept { return coeffs_.empty(); }

  RationalFn coefficient(const IndexSet& index) const {
    auto it = coeffs_.find(index);
    return it == coeffs_.end() ? RationalFn(Poly(field_, nvars_)) : it->second;
  }

  /// Adds f dx_J for a strictly increasing J.
  void add(IndexSet index, const RationalFn& f) {
    check_index(index);
    if (f.nvars() != nvars_) throw UsageError("coefficient arity does not match form");
    if (f.is_zero()) return;
    auto it = coeffs_.find(index);
    if (it == coeffs_.end()) {
      coeffs_.emplace(std::move(index), f);
      return;
    }
    it->second = it->second + f;
    if (it->second.is_zero()) coeffs_.erase(it);
  }

  /// Adds f dx_{j1} ^ ... ^ dx_{ji} for indices in any order, sorting with the
  /// permutation sign. Repeated indices give zero.
  void add_wedge(std::vector<std::size_t> order, const RationalFn& f) {
    int sign = 1;
    for (std::size_t i = 0; i < order.size(); ++i)
      for (std::size_t j = i + 1; j < order.size(); ++j) {
        if (order[i] == order[j]) return;
        if (order[i] > order[j]) sign = -sign;
      }
    std::sort(order.begin(), order.end());
    add(std::move(order), sign > 0 ? f : -f);
  }

  bool is_polynomial() const noexcept {
    for (const auto& [j, f] : coeffs_)
      if (!f.is_polynomial()) return false;
    return true;
  }

  friend bool operator==(const DiffForm& a, const DiffForm& b) {
    if (a.nvars_ != b.nvars_ || a.degree_ != b.degree_) return false;
    for (const auto& [j, f] : a.coeffs_)
      if (!(b.coefficient(j) == f)) return false;
    for (const auto& [j, f] : b.coeffs_)
      if (!a.coeffs_.count(j)) return false;
    return true;
  }

  friend DiffForm operator+(DiffForm a, const DiffForm& b) {
    a.check_same_shape(b);
    for (const auto& [j, f] : b.coeffs_) a.add(j, f);
    return a;
  }
  DiffForm operator-() const {
    DiffForm out(field_, nvars_, degree_);
    for (const auto& [j, f] : coeffs_) out.coeffs_.emplace(j, -f);
    return out;
  }
  friend DiffForm operator-(const DiffForm& a, const DiffForm& b) { return a + (-b); }

  DiffForm scaled(const RationalFn& u) const {
    DiffForm out(field_, nvars_, degree_);
    for (const auto& [j, f] : coeffs_) out.add(j, f * u);
    return out;
  }

 private:
  void check_index(const IndexSet& index) const {
    if (index.size() != degree_) throw UsageError("index set size does not match form degree");
    for (std::size_t i = 0; i < index.size(); ++i) {
      if (index[i] >= nvars_) throw UsageError("index set refers to a missing variable");
      if (i > 0 && index[i - 1] >= index[i]) throw UsageError("index set must be strictly increasing");
    }
  }
  void check_same_shape(const DiffForm& b) const {
    if (nvars_ != b.nvars_ || degree_ != b.degree_) throw UsageError("forms have different shapes");
  }

  FieldRef field_;
  std::size_t nvars_;
  std::size_t degree_;
  CoeffMap coeffs_;
};

/// A top-degree form f dx_1 ^ ... ^ dx_n.
class TopForm {
 public:
  explicit TopForm(RationalFn coeff) : coeff_(std::move(coeff)) {}
  explicit TopForm(const Poly& coeff) : coeff_(coeff) {}
  TopForm(const Poly& num, const Poly& den) : coeff_(num, den) {}

  static TopForm from_form(const DiffForm& form) {
    if (form.degree() != form.nvars()) throw UsageError("form is not of top degree");
    IndexSet all(form.nvars());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return TopForm(form.coefficient(all));
  }

  DiffForm to_form() const {
    IndexSet all(nvars());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
    return DiffForm::single(std::move(all), coeff_);
  }

  const RationalFn& coeff() const noexcept { return coeff_; }
  const FieldRef& field() const noexcept { return coeff_.field(); }
  std::size_t nvars() const noexcept { return coeff_.nvars(); }
  bool is_zero() const noexcept { return coeff_.is_zero(); }

  friend bool operator==(const TopForm& a, const TopForm& b) { return a.coeff_ == b.coeff_; }
  friend TopForm operator+(const TopForm& a, const TopForm& b) { return TopForm(a.coeff_ + b.coeff_); }

 private:
  RationalFn coeff_;
};

inline Poly require_polynomial(const RationalFn& f, const char* what) {
  if (!f.is_polynomial()) throw UsageError(std::string(what) + " requires polynomial coefficients");
  return *f.as_polynomial();
}

/// d(f dx_J) = sum_j (df/dx_j) dx_j ^ dx_J.
///
/// dx_j ^ dx_J carries the sign (-1)^{#{k in J : k < j}}.
inline DiffForm exterior_derivative(const DiffForm& form) {
  if (form.degree() >= form.nvars()) throw UsageError("exterior derivative of a top-degree form");
  DiffForm out(form.field(), form.nvars(), form.degree() + 1);
  for (const auto& [index, coeff] : form.coeffs()) {
    const Poly f = require_polynomial(coeff, "exterior_derivative");
    for (std::size_t j = 0; j < form.nvars(); ++j) {
      if (std::binary_search(index.begin(), index.end(), j)) continue;
      Poly df = f.derivative(j);
      if (df.is_zero()) continue;
      const auto below = std::lower_bound(index.begin(), index.end(), j) - index.begin();
      IndexSet merged = index;
      merged.insert(merged.begin() + below, j);
      out.add(std::move(merged), below % 2 == 0 ? RationalFn(df) : RationalFn(-df));
    }
  }
  return out;
}

/// Coordinates for polynomial i-forms of bounded degree: the pairs (J, m) with
/// |J| = i and deg m <= bound, numbered J-major.
class FormBasis {
 public:
  FormBasis(std::size_t nvars, std::size_t degree, int bound)
      : nvars_(nvars), degree_(degree), subsets_(index_subsets(nvars, degree)),
        monomials_(monomials_up_to(nvars, bound)) {
    for (std::size_t k = 0; k < subsets_.size(); ++k) subset_pos_.emplace(subsets_[k], k);
    for (std::size_t k = 0; k < monomials_.size(); ++k) monomial_pos_.emplace(monomials_[k], k);
  }

  std::size_t size() const noexcept { return subsets_.size() * monomials_.size(); }
  std::size_t degree() const noexcept { return degree_; }

  std::pair<IndexSet, Monomial> element(std::size_t k) const {
    return {subsets_[k / monomials_.size()], monomials_[k % monomials_.size()]};
  }

  DiffForm form(const FieldRef& field, std::size_t k) const {
    auto [index, m] = element(k);
    return DiffForm::single(std::move(index), Poly::term(field, std::move(m), Scalar::one(field)));
  }

  /// Coordinates of a polynomial form; nullopt when some term falls outside the basis.
  std::optional<std::vector<Scalar>> coordinates(const DiffForm& form) const {
    std::vector<Scalar> out(size(), Scalar::zero(form.field()));
    for (const auto& [index, coeff] : form.coeffs()) {
      auto sit = subset_pos_.find(index);
      if (sit == subset_pos_.end()) return std::nullopt;
      const Poly f = require_polynomial(coeff, "form coordinates");
      for (const auto& [m, c] : f.terms()) {
        auto mit = monomial_pos_.find(m);
        if (mit == monomial_pos_.end()) return std::nullopt;
        out[sit->second * monomials_.size() + mit->second] = c;
      }
    }
    return out;
  }

 private:
  std::size_t nvars_;
  std::size_t degree_;
  std::vector<IndexSet> subsets_;
  std::vector<Monomial> monomials_;
  std::map<IndexSet, std::size_t> subset_pos_;
  std::map<Monomial, std::size_t, GrlexGreater> monomial_pos_;
};

/// Whether a polynomial i-form with coefficients of degree <= dbound equals
/// d(eta) for some (i-1)-form eta with coefficients of degree <= dbound + 1.
///
/// Decided exactly by a linear solve over F_{p^s}.
inline bool is_exact_bounded(const DiffForm& form, int dbound) {
  if (form.degree() == 0) throw UsageError("exactness is defined for forms of degree >= 1");
  if (form.is_zero()) return true;
  const FormBasis domain(form.nvars(), form.degree() - 1, dbound + 1);
  const FormBasis codomain(form.nvars(), form.degree(), dbound);
  const auto rhs = codomain.coordinates(form);
  if (!rhs) throw UsageError("form has coefficients above the degree bound");
  Matrix system(form.field(), codomain.size(), domain.size());
  for (std::size_t k = 0; k < domain.size(); ++k) {
    const auto col = codomain.coordinates(exterior_derivative(domain.form(form.field(), k)));
    if (!col) throw ConsistencyError("exterior derivative left the bounded-degree codomain");
    for (std::size_t r = 0; r < col->size(); ++r) system(r, k) = (*col)[r];
  }
  return solve(system, *rhs).has_value();
}

}  // namespace frobtrace
