#ifndef OBSRG_DETAIL_POLYROOTS_HPP
#define OBSRG_DETAIL_POLYROOTS_HPP

#include <cmath>
#include <vector>

namespace obsrg::detail {

// Horner evaluation; c[i] is the coefficient of x^i.
inline double poly_eval(const std::vector<double>& c, double x) {
  double acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
  return acc;
}

// Real roots of the polynomial in [lo, hi], isolated by sign changes on a
// uniform grid of `cells` intervals and refined by bisection to width xtol.
// Grid points where the polynomial is exactly zero count as roots.  Tangent
// roots the grid cannot see (no sign change) are not reported — callers use
// this for open-region boundary detection, where a touch without a crossing
// does not bound a region.
inline std::vector<double> isolate_roots(const std::vector<double>& c, double lo,
                                         double hi, int cells, double xtol) {
  std::vector<double> roots;
  if (!(hi > lo) || cells < 1) return roots;
  auto push_unique = [&roots, xtol](double r) {
    if (roots.empty() || std::fabs(roots.back() - r) > 4.0 * xtol) roots.push_back(r);
  };
  double x_prev = lo;
  double f_prev = poly_eval(c, lo);
  if (f_prev == 0.0) push_unique(lo);
  for (int i = 1; i <= cells; ++i) {
    const double x_next = lo + (hi - lo) * (static_cast<double>(i) / cells);
    const double f_next = poly_eval(c, x_next);
    if (f_next == 0.0) {
      push_unique(x_next);
    } else if (f_prev != 0.0 && std::signbit(f_prev) != std::signbit(f_next)) {
      double a = x_prev, b = x_next, fa = f_prev;
      while (b - a > xtol) {
        const double m = 0.5 * (a + b);
        if (m <= a || m >= b) break;  // ran out of floating-point resolution
        const double fm = poly_eval(c, m);
        if (fm == 0.0) {
          a = b = m;
          break;
        }
        if (std::signbit(fa) != std::signbit(fm)) {
          b = m;
        } else {
          a = m;
          fa = fm;
        }
      }
      push_unique(0.5 * (a + b));
    }
    x_prev = x_next;
    f_prev = f_next;
  }
  return roots;
}

}  // namespace obsrg::detail

#endif  // OBSRG_DETAIL_POLYROOTS_HPP
