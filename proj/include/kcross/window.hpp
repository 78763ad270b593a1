#pragma once

#include <stdexcept>

#include "kcross/model.hpp"

namespace kcross {

/// Axis-aligned box [i_min, i_max] x [c_min, c_max] in the phase plane.
struct Window {
  double i_min;
  double i_max;
  double c_min;
  double c_max;

  Window(double i_lo, double i_hi, double c_lo, double c_hi)
      : i_min(i_lo), i_max(i_hi), c_min(c_lo), c_max(c_hi) {
    if (!(i_min < i_max) || !(c_min < c_max))
      throw std::invalid_argument("window requires i_min < i_max and c_min < c_max");
  }

  bool contains(const EconState& s) const {
    return s.x() >= i_min && s.x() <= i_max && s.y() >= c_min && s.y() <= c_max;
  }

  double width() const { return i_max - i_min; }
  double height() const { return c_max - c_min; }

  friend bool operator==(const Window&, const Window&) = default;
};

}  // namespace kcross
