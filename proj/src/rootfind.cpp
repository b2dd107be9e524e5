#include "nucollapse/rootfind.hpp"

#include <cmath>

namespace nucollapse {

double bisect(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
              int max_iter) {
  if (!(lo < hi)) throw RootFindingError("bisect: invalid bracket ordering");
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) throw RootFindingError("bisect: root not bracketed");
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return mid;
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
    if (hi - lo <= rel_tol * std::abs(mid)) return 0.5 * (lo + hi);
  }
  throw RootFindingError("bisect: iteration cap reached before convergence");
}

double bisect_from_guess(const std::function<double(double)>& f, double guess, double rel_tol,
                         int max_expand) {
  if (!(guess > 0.0)) throw RootFindingError("bisect_from_guess: guess must be positive");
  const double fg = f(guess);
  if (fg == 0.0) return guess;
  double lo = guess, hi = guess;
  if (fg > 0.0) {
    // walk in both directions until the sign flips on one side
    for (int i = 0; i < max_expand; ++i) {
      lo *= 0.5;
      if (f(lo) < 0.0) return bisect(f, lo, guess, rel_tol);
      hi *= 2.0;
      if (f(hi) < 0.0) return bisect(f, guess, hi, rel_tol);
    }
  } else {
    for (int i = 0; i < max_expand; ++i) {
      lo *= 0.5;
      if (f(lo) > 0.0) return bisect(f, lo, guess, rel_tol);
      hi *= 2.0;
      if (f(hi) > 0.0) return bisect(f, guess, hi, rel_tol);
    }
  }
  throw RootFindingError("bisect_from_guess: failed to bracket a sign change");
}

}  // namespace nucollapse
