#pragma once

#include "bumpfn/coefficients.hpp"

namespace bumpfn {

// Differentiates exp(1/t) i times by brute force and reads the coefficient
// row back out of the result. The expression is held as a finite sum of
// c_m t^m exp(1/t) with exact rational c_m, and only two rules are used:
//   d/dt exp(1/t) = -t^-2 exp(1/t),   d/dt t^m = m t^(m-1).
// Independent of the closed form and of the recurrence; intended for
// cross-checking them at modest orders (i <= ~30).
CoefficientRow symbolic_diff_oracle(int i);

}  // namespace bumpfn
