#pragma once

// Shared oracles and helpers for the test suites. Everything here is kept
// independent of the library's transform/solver code paths: the DFT oracle is
// a direct O(N^2) sum, the linear-algebra oracle is dense Gaussian
// elimination, and statistics are computed from first principles.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "biphoton/core/field.hpp"
#include "biphoton/core/grid.hpp"
#include "biphoton/core/units.hpp"

namespace oracle {

using biphoton::Axis;
using biphoton::ComplexField2D;
using biphoton::complexd;

/// Direct centered continuum-normalized DFT of one line (O(N^2) sum):
/// F(T_m) = d/sqrt(2 pi) * sum_k f_k exp(-+ i nu_k T_m).
inline std::vector<complexd> dft_line(const std::vector<complexd>& x, double spacing,
                                      bool inverse) {
    const int n = static_cast<int>(x.size());
    const double dconj = biphoton::units::two_pi / (n * spacing);
    const double scale = spacing / std::sqrt(biphoton::units::two_pi);
    std::vector<complexd> out(n);
    for (int m = 0; m < n; ++m) {
        const double t = (m - n / 2) * dconj;
        complexd acc = 0.0;
        for (int k = 0; k < n; ++k) {
            const double nu = (k - n / 2) * spacing;
            const double ang = (inverse ? 1.0 : -1.0) * nu * t;
            acc += x[k] * complexd(std::cos(ang), std::sin(ang));
        }
        out[m] = acc * scale;
    }
    return out;
}

/// Direct 2D centered DFT oracle.
inline ComplexField2D dft2(const ComplexField2D& f, bool inverse) {
    ComplexField2D tmp = f;
    // along axis b
    for (int i = 0; i < f.na(); ++i) {
        std::vector<complexd> line(f.nb());
        for (int j = 0; j < f.nb(); ++j) line[j] = f.at(i, j);
        auto out = dft_line(line, f.axis_b.spacing, inverse);
        for (int j = 0; j < f.nb(); ++j) tmp.at(i, j) = out[j];
    }
    ComplexField2D res = tmp;
    for (int j = 0; j < f.nb(); ++j) {
        std::vector<complexd> line(f.na());
        for (int i = 0; i < f.na(); ++i) line[i] = tmp.at(i, j);
        auto out = dft_line(line, f.axis_a.spacing, inverse);
        for (int i = 0; i < f.na(); ++i) res.at(i, j) = out[i];
    }
    res.axis_a = f.axis_a.conjugate();
    res.axis_b = f.axis_b.conjugate();
    return res;
}

/// Dense least squares via normal equations + Gaussian elimination with
/// partial pivoting. Rows of `a` are equations.
inline std::vector<double> dense_lstsq(const std::vector<std::vector<double>>& a,
                                       const std::vector<double>& b) {
    const size_t m = a.size(), n = a[0].size();
    std::vector<std::vector<double>> ata(n, std::vector<double>(n, 0.0));
    std::vector<double> atb(n, 0.0);
    for (size_t r = 0; r < m; ++r) {
        for (size_t i = 0; i < n; ++i) {
            atb[i] += a[r][i] * b[r];
            for (size_t j = 0; j < n; ++j) ata[i][j] += a[r][i] * a[r][j];
        }
    }
    // eliminate
    std::vector<double> x(n, 0.0);
    for (size_t col = 0; col < n; ++col) {
        size_t piv = col;
        for (size_t r = col + 1; r < n; ++r)
            if (std::abs(ata[r][col]) > std::abs(ata[piv][col])) piv = r;
        std::swap(ata[col], ata[piv]);
        std::swap(atb[col], atb[piv]);
        for (size_t r = col + 1; r < n; ++r) {
            double f = ata[r][col] / ata[col][col];
            for (size_t c = col; c < n; ++c) ata[r][c] -= f * ata[col][c];
            atb[r] -= f * atb[col];
        }
    }
    for (size_t i = n; i-- > 0;) {
        double s = atb[i];
        for (size_t j = i + 1; j < n; ++j) s -= ata[i][j] * x[j];
        x[i] = s / ata[i][i];
    }
    return x;
}

/// Deterministic pseudo-random complex field (std::mt19937_64; independent of
/// the library's RNG).
inline ComplexField2D random_field(Axis a, Axis b, unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    ComplexField2D f(a, b);
    for (auto& v : f.values) v = complexd(d(gen), d(gen));
    return f;
}

inline double max_abs_diff(const ComplexField2D& x, const ComplexField2D& y) {
    double m = 0.0;
    for (size_t k = 0; k < x.values.size(); ++k)
        m = std::max(m, std::abs(x.values[k] - y.values[k]));
    return m;
}

inline double rms(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return v.empty() ? 0.0 : std::sqrt(s / v.size());
}

/// Gaussian test amplitude exp(-nu^2 / (4 sigma^2)) (intensity std = sigma).
inline double gauss_amp(double nu, double sigma) {
    return std::exp(-nu * nu / (4.0 * sigma * sigma));
}

}  // namespace oracle
