#pragma once

#include <cmath>
#include <numbers>

namespace vrtile {

inline constexpr double kPi = std::numbers::pi;

inline double deg_to_rad(double deg) { return deg * kPi / 180.0; }
inline double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Maps any yaw onto [-180, 180).
inline double normalize_yaw(double yaw_deg) {
    double y = std::fmod(yaw_deg + 180.0, 360.0);
    if (y < 0.0) y += 360.0;
    return y - 180.0;
}

// Arc on the yaw circle. Start is normalized to [-180, 180); the span may be
// anything in (0, 360], so an arc can cross the +/-180 seam.
struct YawArc {
    double start_deg = 0.0;
    double span_deg = 0.0;

    static YawArc from_bounds(double min_deg, double max_deg) {
        return {normalize_yaw(min_deg), max_deg - min_deg};
    }

    double end_deg() const { return start_deg + span_deg; }

    // Half-open membership [start, start+span), wrap-aware.
    bool contains(double yaw_deg) const {
        if (span_deg >= 360.0) return true;
        double d = std::fmod(normalize_yaw(yaw_deg) - start_deg, 360.0);
        if (d < 0.0) d += 360.0;
        return d < span_deg;
    }

    // Overlap length in degrees with another arc.
    double overlap(const YawArc& other) const {
        if (span_deg >= 360.0) return other.span_deg;
        if (other.span_deg >= 360.0) return span_deg;
        double total = 0.0;
        for (int k = -1; k <= 1; ++k) {
            double lo = std::max(start_deg, other.start_deg + 360.0 * k);
            double hi = std::min(end_deg(), other.end_deg() + 360.0 * k);
            if (hi > lo) total += hi - lo;
        }
        return total;
    }
};

}  // namespace vrtile
