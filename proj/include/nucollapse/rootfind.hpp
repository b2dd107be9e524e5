#pragma once

#include <functional>
#include <stdexcept>

namespace nucollapse {

struct RootFindingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Bisection on [lo, hi]; f(lo) and f(hi) must differ in sign. Converges to
// relative tolerance rel_tol on the root with a hard iteration cap.
double bisect(const std::function<double(double)>& f, double lo, double hi,
              double rel_tol = 1e-10, int max_iter = 200);

// Grows a bracket around an initial positive guess by repeated doubling and
// halving until f changes sign, then bisects.
double bisect_from_guess(const std::function<double(double)>& f, double guess,
                         double rel_tol = 1e-10, int max_expand = 200);

}  // namespace nucollapse
