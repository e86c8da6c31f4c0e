#include "casimir/summation.hpp"

#include "casimir/errors.hpp"

namespace casimir {

void SummationControl::validate() const {
  if (!(tol > 0.0 && tol < 1.0))
    throw DomainError("summation tolerance must lie in (0, 1)");
  if (n_max < 1)
    throw DomainError("n_max must be at least 1");
}

} // namespace casimir
