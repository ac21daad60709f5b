#pragma once

#include "rhb/problem.hpp"
#include "rhb/types.hpp"

namespace rhb {

inline constexpr int kMaxConsecutiveBacktracks = 200;

// Gradient descent with Armijo-type backtracking on the Lipschitz estimate.
// Proposes x - ∇f(x)/ℓ; on a failed descent test ℓ <- αℓ and re-proposes,
// on acceptance moves and shrinks ℓ <- βℓ. One trace record per accepted
// step (k == K, grad_norm_xbar repeats grad_norm_x). The gradient is tested
// at x_init before the first proposal.
RunResult run_gradient_descent(const Problem& problem, const DenseVector& x_init, const HBConfig& config);

}  // namespace rhb
