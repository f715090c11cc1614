#include "fkm/verification.hpp"

#include <cmath>
#include <limits>

namespace fkm {

void VerificationRecord::observe(double deviation) {
  if (std::isnan(deviation)) {
    max_deviation = std::numeric_limits<double>::infinity();
    return;
  }
  if (deviation > max_deviation) max_deviation = deviation;
}

void VerificationRecord::finalize() {
  if (tolerance == 0.0)
    pass = max_deviation == 0.0;
  else
    pass = max_deviation < tolerance;
}

}  // namespace fkm
