#pragma once

#include <string>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/units.hpp"

namespace biphoton {

/// What the coordinate of an axis physically is. Fourier transforms flip
/// frequency <-> time and momentum <-> position.
enum class AxisDomain { frequency, time, position, momentum };

inline AxisDomain conjugate_domain(AxisDomain d) {
    switch (d) {
        case AxisDomain::frequency: return AxisDomain::time;
        case AxisDomain::time: return AxisDomain::frequency;
        case AxisDomain::position: return AxisDomain::momentum;
        case AxisDomain::momentum: return AxisDomain::position;
    }
    return d;
}

inline const char* axis_domain_name(AxisDomain d) {
    switch (d) {
        case AxisDomain::frequency: return "frequency";
        case AxisDomain::time: return "time";
        case AxisDomain::position: return "position";
        case AxisDomain::momentum: return "momentum";
    }
    return "?";
}

/// A uniform, origin-centered sampling axis. For frequency axes the stored
/// coordinate is the relative frequency nu = omega - Omega_center; `center`
/// keeps the absolute reference (rad/fs) for unit conversions at the I/O
/// boundary. Covers [-(n/2) d, +(n/2 - 1) d] for even n.
struct Axis {
    int n = 0;
    double spacing = 0.0;
    double center = 0.0;  // absolute coordinate that the relative origin maps to
    AxisDomain domain = AxisDomain::frequency;

    double value(int i) const { return (i - n / 2) * spacing; }
    double span() const { return n * spacing; }
    double min() const { return value(0); }
    double max() const { return value(n - 1); }

    /// Conjugate axis under the centered Fourier transform.
    Axis conjugate() const {
        return Axis{n, units::two_pi / (n * spacing), 0.0, conjugate_domain(domain)};
    }

    bool operator==(const Axis&) const = default;
};

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

/// Relative-frequency grid nu = omega - Omega around a carrier Omega.
struct FrequencyGrid {
    double center_angular_frequency = 0.0;  // rad/fs
    int n_points = 256;
    double spacing = 2.5e-4;  // rad/fs

    void validate() const {
        if (n_points < 8 || !is_power_of_two(n_points))
            throw ContractError("FrequencyGrid: n_points must be a power of two >= 8, got " +
                                std::to_string(n_points));
        if (!(spacing > 0.0))
            throw ContractError("FrequencyGrid: spacing must be > 0");
    }

    double value(int i) const { return (i - n_points / 2) * spacing; }
    double span() const { return n_points * spacing; }

    Axis axis() const {
        validate();
        return Axis{n_points, spacing, center_angular_frequency, AxisDomain::frequency};
    }

    bool operator==(const FrequencyGrid&) const = default;
};

/// Transverse detection-plane raster. Default is the 7x7, 0.5 mm scan.
struct SpatialGrid {
    int n_x = 7;
    int n_y = 7;
    double pitch = 0.5;  // mm

    void validate() const {
        if (n_x < 1 || n_y < 1) throw ContractError("SpatialGrid: sizes must be >= 1");
        if (!(pitch > 0.0)) throw ContractError("SpatialGrid: pitch must be > 0");
    }

    double x(int i) const { return (i - (n_x - 1) / 2.0) * pitch; }
    double y(int j) const { return (j - (n_y - 1) / 2.0) * pitch; }

    Axis axis_x() const { return Axis{n_x, pitch, 0.0, AxisDomain::position}; }
    Axis axis_y() const { return Axis{n_y, pitch, 0.0, AxisDomain::position}; }

    bool operator==(const SpatialGrid&) const = default;
};

}  // namespace biphoton
