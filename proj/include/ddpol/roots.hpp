#pragma once

#include <cmath>
#include <limits>

#include "ddpol/errors.hpp"

namespace ddpol {

/// Root of a continuous function on [lo, hi] with a sign change.
///
/// Regula falsi with the Illinois modification, falling back to bisection
/// whenever the bracket fails to shrink by half in two steps. Stops when the
/// bracket is narrower than `xtol` (absolute) or an exact zero is hit.
template <class Real, class F>
Real bracketed_root(F&& f, Real lo, Real hi, Real xtol, int max_iter = 400) {
  using std::abs;
  Real flo = f(lo);
  Real fhi = f(hi);
  if (flo == 0) return lo;
  if (fhi == 0) return hi;
  if ((flo < 0) == (fhi < 0)) throw ConvergenceError("bracketed_root: no sign change on the bracket");

  int side = 0;
  Real width = hi - lo;
  for (int it = 0; it < max_iter; ++it) {
    Real x = (lo * fhi - hi * flo) / (fhi - flo);
    if (!(x > lo && x < hi)) x = (lo + hi) / 2;
    Real fx = f(x);
    if (fx == 0) return x;
    if ((fx < 0) == (flo < 0)) {
      lo = x;
      flo = fx;
      if (side == -1) fhi /= 2;
      side = -1;
    } else {
      hi = x;
      fhi = fx;
      if (side == +1) flo /= 2;
      side = +1;
    }
    if (hi - lo <= xtol) return (lo + hi) / 2;
    // every other step, force bisection if the bracket is shrinking slowly
    if (it % 2 == 1) {
      if (hi - lo > width / 2) {
        Real mid = (lo + hi) / 2;
        Real fm = f(mid);
        if (fm == 0) return mid;
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
          fhi = fm;
        }
        side = 0;
      }
      width = hi - lo;
    }
  }
  throw ConvergenceError("bracketed_root: iteration limit reached");
}

}  // namespace ddpol
