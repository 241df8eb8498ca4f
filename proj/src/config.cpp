#include "diracbag/config.hpp"
#include "diracbag/errors.hpp"
#include <cmath>
#include <string>

namespace diracbag {

BagConfig::BagConfig(double a, double mass, double lambda)
    : m_a(a), m_mass(mass), m_lambda(lambda) {
  if (!std::isfinite(a) || !std::isfinite(mass) || !std::isfinite(lambda))
    throw DomainError("BagConfig: parameters must be finite");
  if (a <= 0.0)
    throw DomainError("BagConfig: half-width a must be > 0, got " +
                      std::to_string(a));
  if (mass < 0.0)
    throw DomainError("BagConfig: mass must be >= 0, got " +
                      std::to_string(mass));
}

} // namespace diracbag
