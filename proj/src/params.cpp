#include "chemo/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace chemo {

namespace {

void require_coefficient(const char* name, double value, bool test_mode) {
  if (!std::isfinite(value)) throw std::invalid_argument(std::string(name) + " must be finite");
  if (test_mode) {
    if (value < 0.0) throw std::invalid_argument(std::string(name) + " must be >= 0");
  } else if (!(value > 0.0)) {
    throw std::invalid_argument(std::string(name) + " must be > 0");
  }
}

void require_exponent(const char* name, double value) {
  if (!std::isfinite(value) || !(value >= 1.0)) {
    throw std::invalid_argument(std::string(name) + " must be >= 1");
  }
}

}  // namespace

void ModelParams::validate() const {
  require_coefficient("chi", chi, test_mode);
  require_coefficient("a", a, test_mode);
  require_coefficient("b", b, test_mode);
  require_coefficient("c", c, test_mode);
  require_exponent("rho", rho);
  require_exponent("beta", beta);
  require_exponent("delta", delta);
  require_exponent("gamma", gamma);
  if (tau != 0 && tau != 1) throw std::invalid_argument("tau must be 0 or 1");
}

}  // namespace chemo
