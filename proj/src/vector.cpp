#include "rhb/vector.hpp"

#include "rhb/kernels.hpp"
#include "rhb/errors.hpp"

namespace rhb {

bool DenseVector::all_finite() const { return kernels::all_finite(data_); }

void DenseVector::fill(double value) { kernels::fill(data_, value); }

double vector_norm(const DenseVector& x) { return kernels::norm(x.span()); }

DenseVector running_average_update(const DenseVector& xbar, const DenseVector& x, std::size_t k) {
  if (xbar.dim() != x.dim()) throw InvalidInput("running_average_update: dimension mismatch");
  if (k == 0) throw InvalidInput("running_average_update: k must be >= 1");
  DenseVector out = xbar;
  kernels::blend(1.0 / static_cast<double>(k + 1), x.span(), out.span());
  return out;
}

}  // namespace rhb
