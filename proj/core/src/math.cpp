#include "aip/math.hpp"

namespace aip {

SinCos SinCosDeg(double deg) {
  double wrapped = std::fmod(deg, 360.0);
  if (wrapped < 0) wrapped += 360.0;
  if (wrapped == 0.0) return {0.0, 1.0};
  if (wrapped == 90.0) return {1.0, 0.0};
  if (wrapped == 180.0) return {0.0, -1.0};
  if (wrapped == 270.0) return {-1.0, 0.0};
  const double rad = DegToRad(wrapped);
  return {std::sin(rad), std::cos(rad)};
}

double WrapDegrees(double deg) {
  double wrapped = std::fmod(deg, 360.0);
  if (wrapped < 0) wrapped += 360.0;
  // fmod of a tiny negative value can round up to exactly 360.
  if (wrapped >= 360.0) wrapped = 0.0;
  return wrapped;
}

}  // namespace aip
