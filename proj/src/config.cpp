#include "cylwig/config.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "cylwig/error.hpp"

namespace cylwig {

void Config::validate() const {
  if (!(hbar > 0.0) || !std::isfinite(hbar))
    throw InvalidArgument("config: hbar must be a positive finite number");
  if (!(tol > 0.0) || !std::isfinite(tol))
    throw InvalidArgument("config: tol must be a positive finite number");
  if (quad_nodes < 3 || quad_nodes % 2 == 0)
    throw InvalidArgument("config: quad_nodes must be odd and at least 3");
}

Config Config::from_env() {
  Config cfg;
  if (const char* s = std::getenv("CYLWIG_TOL"); s != nullptr && *s != '\0') {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != std::string(s).size())
      throw InvalidArgument(std::string("CYLWIG_TOL is not a number: ") + s);
    cfg.tol = v;
  }
  cfg.validate();
  return cfg;
}

}  // namespace cylwig
