#include "floq/config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace floq {

double power_law_coupling(double J, double exponent, int distance) {
  if (distance < 1) throw std::invalid_argument("power_law_coupling: distance < 1");
  if (nearest_neighbor_only(exponent)) return distance == 1 ? J : 0.0;
  return J / std::pow(static_cast<double>(distance), exponent);
}

void validate_config(const ChainConfig& config) {
  if (config.L < 2 || config.L > kMaxSites)
    throw std::invalid_argument("config: L must be in [2, " + std::to_string(kMaxSites) + "]");
  if (!(config.a > 0.0))
    throw std::invalid_argument("config: a must be > 0");
  if (!(config.b > 0.0))
    throw std::invalid_argument("config: b must be > 0");
  if (std::isnan(config.J_x) || std::isnan(config.J_z))
    throw std::invalid_argument("config: J_x/J_z must be finite");
  if (!(config.theta >= 0.0 && config.theta <= std::numbers::pi))
    throw std::invalid_argument("config: theta must be in [0, pi]");
  if (!(config.tau >= 0.0) || std::isinf(config.tau))
    throw std::invalid_argument("config: tau must be finite and >= 0");
}

}  // namespace floq
