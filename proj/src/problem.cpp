#include "rhb/problem.hpp"

#include <cmath>

#include "rhb/errors.hpp"
#include "rhb/kernels.hpp"

namespace rhb {

double Problem::oracle(std::span<const double> x, std::span<double> grad) const {
  if (x.size() != dim() || grad.size() != dim())
    throw InvalidInput(name() + ": oracle called with dimension " + std::to_string(x.size()) +
                       ", expected " + std::to_string(dim()));
  const double f = evaluate(x, grad);
  if (!std::isfinite(f)) throw OracleFailure(name() + ": non-finite objective value");
  if (!kernels::all_finite(grad)) throw OracleFailure(name() + ": non-finite gradient component");
  return f;
}

OracleResult Problem::oracle(const DenseVector& x) const {
  OracleResult r{0.0, DenseVector(dim())};
  r.value = oracle(x.span(), r.gradient.span());
  return r;
}

double Problem::value(const DenseVector& x) const { return oracle(x).value; }

}  // namespace rhb
