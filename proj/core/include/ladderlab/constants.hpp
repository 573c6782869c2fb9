// constants.hpp

#pragma once

#include <numbers>

namespace ladderlab {

inline constexpr double kEulerGamma = std::numbers::egamma;
inline constexpr double kOneMinusEuler = 1.0 - kEulerGamma;  // ~0.42
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kLnTwoPi = 1.8378770664093454835606594728112;

// Lowest height at which the critical-line engine is used directly.
inline constexpr double kCriticalMinT = 10.0;

}  // namespace ladderlab
