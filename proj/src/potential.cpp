#include "ddpol/potential.hpp"

#include <cmath>

#include "ddpol/errors.hpp"

namespace ddpol {

DeltaPotential::DeltaPotential(std::vector<Well> wells) : wells_(std::move(wells)) {
  if (wells_.empty()) throw ConfigError("delta potential needs at least one well");
  for (std::size_t i = 0; i < wells_.size(); ++i) {
    if (!(wells_[i].strength > 0.0) || !std::isfinite(wells_[i].strength))
      throw ConfigError("well strengths must be positive (attractive wells only)");
    if (!std::isfinite(wells_[i].position)) throw ConfigError("well position must be finite");
    if (i > 0 && !(wells_[i].position > wells_[i - 1].position))
      throw ConfigError("well positions must be strictly increasing");
  }
}

DeltaPotential DeltaPotential::single(double strength, double position) {
  return DeltaPotential({{position, strength}});
}

DeltaPotential DeltaPotential::symmetric_double(double a, double strength) {
  if (!(a > 0.0)) throw ConfigError("half separation must be positive");
  return DeltaPotential({{-a, strength}, {a, strength}});
}

double DeltaPotential::total_strength() const {
  double s = 0.0;
  for (const auto& w : wells_) s += w.strength;
  return s;
}

bool DeltaPotential::is_symmetric(double rel_tol) const {
  const double c = center();
  const std::size_t n = wells_.size();
  const double scale = std::max(1.0, wells_.back().position - wells_.front().position);
  for (std::size_t i = 0; i < n; ++i) {
    const Well& l = wells_[i];
    const Well& r = wells_[n - 1 - i];
    if (std::abs((l.position - c) + (r.position - c)) > rel_tol * scale) return false;
    if (std::abs(l.strength - r.strength) > rel_tol * std::max(l.strength, r.strength)) return false;
  }
  return true;
}

}  // namespace ddpol
