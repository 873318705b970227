#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/grid.hpp"

namespace biphoton {

using complexd = std::complex<double>;

/// Dense 2D field sampled on two uniform axes. Index (a, b): a is the first
/// (row) index, storage is row-major. Immutable by convention once built;
/// operations return new fields.
template <class T>
struct Field2D {
    Axis axis_a;
    Axis axis_b;
    std::vector<T> values;

    Field2D() = default;
    Field2D(Axis a, Axis b) : axis_a(a), axis_b(b), values(static_cast<size_t>(a.n) * b.n) {}
    Field2D(Axis a, Axis b, std::vector<T> v) : axis_a(a), axis_b(b), values(std::move(v)) {
        if (values.size() != static_cast<size_t>(a.n) * b.n)
            throw ContractError("Field2D: value count does not match axes");
    }

    int na() const { return axis_a.n; }
    int nb() const { return axis_b.n; }
    size_t size() const { return values.size(); }

    T& at(int i, int j) { return values[static_cast<size_t>(i) * axis_b.n + j]; }
    const T& at(int i, int j) const { return values[static_cast<size_t>(i) * axis_b.n + j]; }

    double cell_area() const { return axis_a.spacing * axis_b.spacing; }

    /// Discrete L2 norm with cell-area weighting.
    double norm() const {
        double s = 0.0;
        for (const T& v : values) s += std::norm(complexd(v));
        return std::sqrt(s * cell_area());
    }

    double max_abs() const {
        double m = 0.0;
        for (const T& v : values) m = std::max(m, std::abs(complexd(v)));
        return m;
    }

    bool all_finite() const {
        for (const T& v : values) {
            complexd c(v);
            if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
        }
        return true;
    }

    bool same_shape(const Field2D& o) const {
        return axis_a.n == o.axis_a.n && axis_b.n == o.axis_b.n;
    }

    template <class F>
    auto map(F&& f) const -> Field2D<decltype(f(values[0]))> {
        Field2D<decltype(f(values[0]))> out(axis_a, axis_b);
        for (size_t k = 0; k < values.size(); ++k) out.values[k] = f(values[k]);
        return out;
    }
};

using ComplexField2D = Field2D<complexd>;
using RealField2D = Field2D<double>;
using MaskField2D = Field2D<std::uint8_t>;

/// Largest |value| on the four boundary lines of the field, relative to the
/// global peak. The edge-energy preconditions of the shift/build operations
/// test against this.
template <class T>
double relative_edge_magnitude(const Field2D<T>& f) {
    double peak = f.max_abs();
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    for (int j = 0; j < f.nb(); ++j) {
        edge = std::max(edge, std::abs(complexd(f.at(0, j))));
        edge = std::max(edge, std::abs(complexd(f.at(f.na() - 1, j))));
    }
    for (int i = 0; i < f.na(); ++i) {
        edge = std::max(edge, std::abs(complexd(f.at(i, 0))));
        edge = std::max(edge, std::abs(complexd(f.at(i, f.nb() - 1))));
    }
    return edge / peak;
}

/// Same check restricted to the two boundary lines perpendicular to one axis.
template <class T>
double relative_edge_magnitude_along(const Field2D<T>& f, int axis) {
    double peak = f.max_abs();
    if (peak == 0.0) return 0.0;
    double edge = 0.0;
    if (axis == 0) {
        for (int j = 0; j < f.nb(); ++j) {
            edge = std::max(edge, std::abs(complexd(f.at(0, j))));
            edge = std::max(edge, std::abs(complexd(f.at(f.na() - 1, j))));
        }
    } else {
        for (int i = 0; i < f.na(); ++i) {
            edge = std::max(edge, std::abs(complexd(f.at(i, 0))));
            edge = std::max(edge, std::abs(complexd(f.at(i, f.nb() - 1))));
        }
    }
    return edge / peak;
}

}  // namespace biphoton
