#ifndef OBSRG_LAURENT_HPP
#define OBSRG_LAURENT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

#include "obsrg/errors.hpp"

namespace obsrg {

// Truncated two-sided power series in the regularization parameter eps, with
// explicit tracking of the highest order whose coefficient is still
// trustworthy after truncating operations.  Coefficients below min_order are
// exactly zero (canonical form: min_order points at a nonzero coefficient).
//
// The zero series is the conventional empty representation: no coefficients,
// min_order 0, max_reliable_order -1 (so the entry-count formula yields 0).
// It acts as an exact additive identity / multiplicative annihilator, and its
// coefficient at every order is exactly 0.
//
// The value type is a template parameter so tests can rerun the same algebra
// in extended precision; production code uses the double alias below.
template <class T = double>
class BasicLaurentSeries {
 public:
  BasicLaurentSeries() = default;  // zero series

  static BasicLaurentSeries make(int min_order, std::vector<T> coeffs) {
    if (coeffs.empty()) {
      throw ConstructionError("series coefficients must be non-empty");
    }
    for (const T& c : coeffs) {
      if (!std::isfinite(static_cast<double>(c))) {
        throw ConstructionError("series coefficient is not finite");
      }
    }
    // Trim leading zeros; the reliable order is unchanged by the trim.
    std::size_t lead = 0;
    while (lead < coeffs.size() && coeffs[lead] == T(0)) ++lead;
    if (lead == coeffs.size()) return BasicLaurentSeries();  // zero series
    BasicLaurentSeries s;
    s.min_order_ = min_order + static_cast<int>(lead);
    s.coeffs_.assign(coeffs.begin() + static_cast<std::ptrdiff_t>(lead), coeffs.end());
    return s;
  }

  static BasicLaurentSeries zero() { return BasicLaurentSeries(); }
  static BasicLaurentSeries constant(T c) { return make(0, {c}); }

  bool is_zero() const { return coeffs_.empty(); }
  int min_order() const { return min_order_; }
  int max_reliable_order() const {
    return min_order_ + static_cast<int>(coeffs_.size()) - 1;
  }
  const std::vector<T>& coeffs() const { return coeffs_; }

  // Coefficient of eps^k.  Reading outside [min_order, max_reliable_order] is
  // an error: coefficients beyond the reliable window are unknown, never 0.
  // The exact zero series is the one exception (0 at every order).
  T at(int k) const {
    if (is_zero()) return T(0);
    if (k < min_order_ || k > max_reliable_order()) {
      throw OutOfRangeError("coefficient order outside the reliable window")
          .with("requested_order", static_cast<long long>(k))
          .with("min_order", static_cast<long long>(min_order_))
          .with("max_reliable_order", static_cast<long long>(max_reliable_order()));
    }
    return coeffs_[static_cast<std::size_t>(k - min_order_)];
  }

 private:
  int min_order_ = 0;
  std::vector<T> coeffs_;
};

using LaurentSeries = BasicLaurentSeries<double>;

template <class T>
BasicLaurentSeries<T> add(const BasicLaurentSeries<T>& a, const BasicLaurentSeries<T>& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  const int lo = std::min(a.min_order(), b.min_order());
  const int hi = std::min(a.max_reliable_order(), b.max_reliable_order());
  // hi >= lo always: each reliable order is >= its own min_order.
  std::vector<T> out(static_cast<std::size_t>(hi - lo + 1), T(0));
  for (int k = lo; k <= hi; ++k) {
    T v = T(0);
    if (k >= a.min_order() && k <= a.max_reliable_order()) v += a.at(k);
    if (k >= b.min_order() && k <= b.max_reliable_order()) v += b.at(k);
    out[static_cast<std::size_t>(k - lo)] = v;
  }
  return BasicLaurentSeries<T>::make(lo, std::move(out));
}

// Cauchy product.  Orders up to min(a.rel + b.min, b.rel + a.min) use only
// coefficients inside both reliable windows, so they are exact; anything
// higher would need coefficients neither operand can vouch for.
template <class T>
BasicLaurentSeries<T> mul(const BasicLaurentSeries<T>& a, const BasicLaurentSeries<T>& b) {
  if (a.is_zero() || b.is_zero()) return BasicLaurentSeries<T>::zero();
  const int lo = a.min_order() + b.min_order();
  const int hi = std::min(a.max_reliable_order() + b.min_order(),
                          b.max_reliable_order() + a.min_order());
  std::vector<T> out(static_cast<std::size_t>(hi - lo + 1), T(0));
  for (int n = lo; n <= hi; ++n) {
    const int i_lo = std::max(a.min_order(), n - b.max_reliable_order());
    const int i_hi = std::min(a.max_reliable_order(), n - b.min_order());
    T v = T(0);
    for (int i = i_lo; i <= i_hi; ++i) v += a.at(i) * b.at(n - i);
    out[static_cast<std::size_t>(n - lo)] = v;
  }
  return BasicLaurentSeries<T>::make(lo, std::move(out));
}

// Exact scalar multiple: scaling never shrinks the reliable window.
template <class T>
BasicLaurentSeries<T> scale(const BasicLaurentSeries<T>& a, T c) {
  if (a.is_zero() || c == T(0)) return BasicLaurentSeries<T>::zero();
  std::vector<T> out = a.coeffs();
  for (T& v : out) v *= c;
  return BasicLaurentSeries<T>::make(a.min_order(), std::move(out));
}

template <class T>
BasicLaurentSeries<T> pow_int(const BasicLaurentSeries<T>& a, int p) {
  if (p < 0) throw ContractError("series power must be non-negative");
  if (p == 0) {
    // Empty product: exactly 1.  The reliable window is capped at the width of
    // the input's window (a.max_reliable_order - a.min_order); for the zero
    // series we fall back to the minimal constant window.
    const int width = a.is_zero() ? 0 : a.max_reliable_order() - a.min_order();
    std::vector<T> out(static_cast<std::size_t>(width + 1), T(0));
    out[0] = T(1);
    return BasicLaurentSeries<T>::make(0, std::move(out));
  }
  BasicLaurentSeries<T> acc = a;
  for (int i = 1; i < p; ++i) acc = mul(acc, a);
  return acc;
}

// Taylor expansion of mu^(-a*eps): coefficients (-a ln mu)^j / j!.
template <class T = double>
BasicLaurentSeries<T> mu_power_factor(double mu, int a, int order) {
  if (mu <= 0.0 || !std::isfinite(mu)) {
    throw DomainError("mu must be positive and finite").with("mu", mu);
  }
  if (a < 1) throw ContractError("exponent multiplier must be a positive integer");
  if (order < 0) throw ContractError("expansion order must be non-negative");
  const T x = T(-a) * T(std::log(mu));
  std::vector<T> out(static_cast<std::size_t>(order + 1));
  T term = T(1);
  out[0] = term;
  for (int j = 1; j <= order; ++j) {
    term *= x / T(j);
    out[static_cast<std::size_t>(j)] = term;
  }
  return BasicLaurentSeries<T>::make(0, std::move(out));
}

// Finite-part extraction and friends; free-function spelling of at().
template <class T>
T coeff_at(const BasicLaurentSeries<T>& a, int k) {
  return a.at(k);
}

}  // namespace obsrg

#endif  // OBSRG_LAURENT_HPP
