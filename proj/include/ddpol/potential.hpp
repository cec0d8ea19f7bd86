#pragma once

#include <cstddef>
#include <vector>

namespace ddpol {

/// One attractive delta well -g' delta(x - position) in scaled units.
struct Well {
  double position = 0.0;  ///< bohr
  double strength = 0.0;  ///< g' = m g / hbar^2, bohr^-1
};

/// Ordered list of attractive delta wells.
class DeltaPotential {
 public:
  /// Positions must be strictly increasing, strengths strictly positive.
  explicit DeltaPotential(std::vector<Well> wells);

  static DeltaPotential single(double strength, double position = 0.0);
  /// Wells at -a and +a with equal strength.
  static DeltaPotential symmetric_double(double a, double strength);

  const std::vector<Well>& wells() const { return wells_; }
  std::size_t size() const { return wells_.size(); }
  const Well& operator[](std::size_t i) const { return wells_[i]; }

  double total_strength() const;
  /// Mirror-symmetric about the midpoint of the outermost wells.
  bool is_symmetric(double rel_tol = 1e-12) const;
  double center() const { return 0.5 * (wells_.front().position + wells_.back().position); }

 private:
  std::vector<Well> wells_;
};

}  // namespace ddpol
