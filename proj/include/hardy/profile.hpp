#pragma once

#include <cmath>
#include <stdexcept>

namespace hardy {

/// f(r) = amplitude * ((r - r_inner)(r_outer - r))^power on [r_inner, r_outer],
/// zero elsewhere. power >= 2 makes f and f' vanish at both radii.
struct BumpProfile {
  double r_inner = 0.5;
  double r_outer = 1.5;
  int power = 2;
  double amplitude = 1.0;

  BumpProfile() = default;
  BumpProfile(double inner, double outer, int p = 2, double amp = 1.0)
      : r_inner(inner), r_outer(outer), power(p), amplitude(amp) {
    if (!(inner > 0.0 && outer > inner)) throw std::invalid_argument("BumpProfile: need 0 < r_inner < r_outer");
    if (p < 2) throw std::invalid_argument("BumpProfile: power must be >= 2");
  }

  bool inside(double r) const { return r > r_inner && r < r_outer; }

  double value(double r) const {
    if (!inside(r)) return 0.0;
    return amplitude * std::pow((r - r_inner) * (r_outer - r), power);
  }

  double derivative(double r) const {
    if (!inside(r)) return 0.0;
    const double q = (r - r_inner) * (r_outer - r);
    return amplitude * power * std::pow(q, power - 1) * (r_outer + r_inner - 2.0 * r);
  }

  /// r -> f(lambda r), written again as a bump.
  BumpProfile dilated(double lambda) const {
    return BumpProfile(r_inner / lambda, r_outer / lambda, power,
                       amplitude * std::pow(lambda, 2 * power));
  }
};

}  // namespace hardy
