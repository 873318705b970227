#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/fft.hpp"
#include "biphoton/core/field.hpp"
#include "biphoton/core/units.hpp"
#include "biphoton/sim/interferometer.hpp"

namespace biphoton {

/// Joint spectral phase gradient along one frequency axis:
/// values = dphi(nu) = phi(nu) - phi(nu + Omega) on the validity mask.
struct GradientField {
    InterferometerArm axis = InterferometerArm::signal;
    RealField2D values;
    MaskField2D mask;
    double shear = 0.0;      // Omega of this arm, rad/fs
    double threshold = 0.05;
    int excluded_cells = 0;  // unwrap-flagged and dropped from the mask

    int sheared_axis() const { return axis == InterferometerArm::signal ? 0 : 1; }
};

struct SidebandOptions {
    double window_order = 6.0;      // super-Gaussian exponent (even)
    double window_halfwidth = 0.0;  // fs; 0 -> tau/2
    bool window_autocenter = true;  // center on the measured lobe rather than +tau
    double denoise_cutoff = 0.15;   // fraction of Nyquist kept by denoise()
    double mask_threshold = 0.05;   // fraction of peak |sideband|
};

namespace detail {

inline double supergauss(double t, double center, double halfwidth, double order) {
    double x = (t - center) / halfwidth;
    return std::exp(-std::log(2.0) * std::pow(std::abs(x), order));
}

/// rms width of the conjugate-domain intensity of the zero-order lobe,
/// measured inside |T| < tau/2.
inline double dc_lobe_width(const ComplexField2D& spec, int axis, double tau) {
    const Axis& conj = (axis == 0) ? spec.axis_a : spec.axis_b;
    double w = 0.0, m2 = 0.0;
    for (int i = 0; i < spec.na(); ++i)
        for (int j = 0; j < spec.nb(); ++j) {
            double t = conj.value(axis == 0 ? i : j);
            if (std::abs(t) >= 0.5 * tau) continue;
            double p = std::norm(spec.at(i, j));
            w += p;
            m2 += p * t * t;
        }
    return w > 0.0 ? std::sqrt(m2 / w) : 0.0;
}

/// mean power density over a |T| band (both signs), summed across the other
/// axis
inline double band_power(const ComplexField2D& spec, int axis, double t_lo, double t_hi) {
    const Axis& conj = (axis == 0) ? spec.axis_a : spec.axis_b;
    double p = 0.0;
    int n = 0;
    for (int i = 0; i < spec.na(); ++i)
        for (int j = 0; j < spec.nb(); ++j) {
            double t = std::abs(conj.value(axis == 0 ? i : j));
            if (t < t_lo || t > t_hi) continue;
            p += std::norm(spec.at(i, j));
            ++n;
        }
    return n ? p / n : 0.0;
}

inline ComplexField2D to_complex(const RealField2D& f) {
    ComplexField2D c(f.axis_a, f.axis_b);
    for (size_t k = 0; k < f.values.size(); ++k) c.values[k] = f.values[k];
    return c;
}

}  // namespace detail

/// Shot-noise reduction: drop conjugate-domain content outside an elliptical
/// low-pass region, except for a preserved band around the +-tau sidebands
/// along the sheared axis (the carrier of the phase information). Negative
/// excursions of the filtered pattern are clamped to zero.
inline Interferogram denoise(const Interferogram& ig, double cutoff,
                             double sideband_halfwidth = 0.0) {
    if (!(cutoff > 0.0) || cutoff > 1.0)
        throw ContractError("denoise: cutoff must be in (0, 1]");
    const double tau = ig.shear.delay;
    const int axis = ig.shear.sheared_axis();
    if (sideband_halfwidth == 0.0) sideband_halfwidth = 0.5 * tau;

    ComplexField2D spec = fft2_centered(detail::to_complex(ig.values), FftDirection::forward);
    const Axis& ca = spec.axis_a;
    const Axis& cb = spec.axis_b;
    const double nyq_a = 0.5 * ca.span();
    const double nyq_b = 0.5 * cb.span();
    double sheared_nyq = (axis == 0) ? nyq_a : nyq_b;
    if (tau + sideband_halfwidth > sheared_nyq)
        throw ConfigError("denoise: the preserved +-tau band does not fit inside the "
                          "conjugate axis; the tau_s sideband would be erased");

    // "radius" is per-axis (Chebyshev), so cutoff = 1 keeps everything
    for (int i = 0; i < spec.na(); ++i)
        for (int j = 0; j < spec.nb(); ++j) {
            double ta = ca.value(i), tb = cb.value(j);
            double ra = std::abs(ta) / nyq_a, rb = std::abs(tb) / nyq_b;
            bool keep = ra <= cutoff && rb <= cutoff;
            if (!keep) {
                double ts = (axis == 0) ? ta : tb;
                double ro = (axis == 0) ? rb : ra;
                keep = (std::abs(std::abs(ts) - tau) <= sideband_halfwidth) && ro <= cutoff;
            }
            if (!keep) spec.at(i, j) = 0.0;
        }

    Interferogram out = ig;
    ComplexField2D back = fft2_centered(spec, FftDirection::inverse);
    for (size_t k = 0; k < back.values.size(); ++k)
        out.values.values[k] = std::max(0.0, back.values[k].real());
    return out;
}

/// Isolate the +tau interference term of Eq. M1/M2: Fourier transform along
/// the sheared axis, apply a super-Gaussian window centered at T = +tau,
/// transform back. Yields |psi(nu) psi*(nu + Omega)| exp(i [nu tau + dphi]).
inline ComplexField2D sideband_extract(const Interferogram& ig,
                                       const SidebandOptions& opt = {}) {
    const int axis = ig.shear.sheared_axis();
    const double tau = ig.shear.delay;
    const double hw = (opt.window_halfwidth > 0.0) ? opt.window_halfwidth : 0.5 * tau;

    ComplexField2D spec = fft1_along_axis(detail::to_complex(ig.values), axis,
                                          FftDirection::forward);
    double lobe = detail::dc_lobe_width(spec, axis, tau);
    if (!(tau > 3.0 * lobe))
        throw PreconditionError(
            "sideband_extract: lobes overlap; delay " + std::to_string(tau) +
            " fs is not > 3x the conjugate-domain lobe width " + std::to_string(lobe) + " fs");
    // the width rule alone goes blind once the lobes merge, so also require a
    // power valley between the 0 and +-tau lobes
    double valley = detail::band_power(spec, axis, 0.4 * tau, 0.6 * tau);
    double lobes = std::max(detail::band_power(spec, axis, 0.0, 0.2 * tau),
                            detail::band_power(spec, axis, 0.8 * tau, 1.2 * tau));
    if (lobes > 0.0 && valley > 1e-2 * lobes)
        throw PreconditionError(
            "sideband_extract: lobes overlap; valley-to-lobe power ratio " +
            std::to_string(valley / lobes) + " exceeds 1e-2 (separation ratio " +
            std::to_string(lobe > 0.0 ? tau / lobe : 0.0) + ")");

    // Dispersion displaces the +tau lobe by -dphi/dnu; a window pinned at
    // +tau then shaves the lobe asymmetrically, which bends the extracted
    // phase. Centering on the measured lobe centroid keeps the shaving
    // symmetric (magnitude-only to first order).
    const Axis& conj = (axis == 0) ? spec.axis_a : spec.axis_b;
    double center = tau;
    if (opt.window_autocenter) {
        double w = 0.0, m1 = 0.0;
        for (int i = 0; i < spec.na(); ++i)
            for (int j = 0; j < spec.nb(); ++j) {
                double t = conj.value(axis == 0 ? i : j);
                if (std::abs(t - tau) > 0.6 * tau) continue;
                double p = std::norm(spec.at(i, j));
                w += p;
                m1 += p * t;
            }
        if (w > 0.0) center = m1 / w;
    }
    for (int i = 0; i < spec.na(); ++i)
        for (int j = 0; j < spec.nb(); ++j) {
            double t = conj.value(axis == 0 ? i : j);
            spec.at(i, j) *= detail::supergauss(t, center, hw, opt.window_order);
        }
    ComplexField2D out = fft1_along_axis(spec, axis, FftDirection::inverse);
    out.axis_a = ig.values.axis_a;
    out.axis_b = ig.values.axis_b;
    return out;
}

namespace detail {

inline double wrap_pi(double x) {
    x = std::remainder(x, units::two_pi);
    return x;
}

struct LineView {
    // walks the field along `axis` at fixed other-index `line`
    const ComplexField2D* f;
    int axis, line;
    int length() const { return axis == 0 ? f->na() : f->nb(); }
    const complexd& at(int k) const { return axis == 0 ? f->at(k, line) : f->at(line, k); }
};

}  // namespace detail

/// Recover the gradient dphi = phi(nu) - phi(nu+Omega) from the extracted
/// sideband: unwrap arg() along the sheared axis, remove the known nu*tau
/// ramp, then fix the 2 pi branch that arg() cannot see. Per-line branches
/// are reconciled by rounding inter-line mean differences to 2 pi (the true
/// gradient varies smoothly across lines), and the single remaining global
/// 2 pi multiple is pinned by forcing the peak-magnitude cell into the
/// principal branch -- the zero-order-fringe convention of a calibrated
/// shearing interferometer.
inline GradientField gradient_from_sideband(const ComplexField2D& sb, const ShearConfig& cfg,
                                            double threshold = 0.05) {
    cfg.validate(/*for_gradient=*/true);
    const int axis = cfg.sheared_axis();
    const int nlines = (axis == 0) ? sb.nb() : sb.na();
    const int len = (axis == 0) ? sb.na() : sb.nb();
    const Axis& ax = (axis == 0) ? sb.axis_a : sb.axis_b;

    GradientField g;
    g.axis = cfg.arm;
    g.shear = cfg.shear;
    g.threshold = threshold;
    g.values = RealField2D(sb.axis_a, sb.axis_b);
    g.mask = MaskField2D(sb.axis_a, sb.axis_b);

    const double peak = sb.max_abs();
    if (peak == 0.0) throw PreconditionError("gradient_from_sideband: sideband is zero");
    const double cut = threshold * peak;

    auto at = [&](int line, int k) -> const complexd& {
        return axis == 0 ? sb.at(k, line) : sb.at(line, k);
    };
    auto set_val = [&](int line, int k, double v) {
        (axis == 0 ? g.values.at(k, line) : g.values.at(line, k)) = v;
    };
    auto set_mask = [&](int line, int k, std::uint8_t v) {
        (axis == 0 ? g.mask.at(k, line) : g.mask.at(line, k)) = v;
    };

    std::vector<std::vector<double>> line_vals(nlines, std::vector<double>(len, 0.0));
    std::vector<std::vector<char>> line_valid(nlines, std::vector<char>(len, 0));

    // pass 1: per-line unwrap + ramp removal (each contiguous run starts from
    // its own principal value)
    for (int l = 0; l < nlines; ++l) {
        double prev = 0.0;
        bool in_run = false;
        for (int k = 0; k < len; ++k) {
            if (std::abs(at(l, k)) <= cut) {
                in_run = false;
                continue;
            }
            double raw = std::arg(at(l, k));
            double tot = in_run ? prev + detail::wrap_pi(raw - prev) : raw;
            prev = tot;
            in_run = true;
            line_vals[l][k] = tot - ax.value(k) * cfg.delay;
            line_valid[l][k] = 1;
        }
    }

    // pass 2: reconcile the 2 pi branch across lines
    int prev_line = -1;
    for (int l = 0; l < nlines; ++l) {
        bool any = std::any_of(line_valid[l].begin(), line_valid[l].end(),
                               [](char c) { return c != 0; });
        if (!any) continue;
        if (prev_line >= 0) {
            double acc = 0.0;
            int n = 0;
            for (int k = 0; k < len; ++k)
                if (line_valid[l][k] && line_valid[prev_line][k]) {
                    acc += line_vals[l][k] - line_vals[prev_line][k];
                    ++n;
                }
            if (n > 0) {
                double corr = units::two_pi * std::round((acc / n) / units::two_pi);
                for (int k = 0; k < len; ++k)
                    if (line_valid[l][k]) line_vals[l][k] -= corr;
            }
        }
        prev_line = l;
    }

    // pass 3: global branch from the principal value at the peak cell
    int pl = 0, pk = 0;
    double best = -1.0;
    for (int l = 0; l < nlines; ++l)
        for (int k = 0; k < len; ++k)
            if (line_valid[l][k] && std::abs(at(l, k)) > best) {
                best = std::abs(at(l, k));
                pl = l;
                pk = k;
            }
    double global = units::two_pi * std::round(line_vals[pl][pk] / units::two_pi);
    for (int l = 0; l < nlines; ++l)
        for (int k = 0; k < len; ++k)
            if (line_valid[l][k]) line_vals[l][k] -= global;

    // pass 4: flag residual jumps > pi between adjacent valid cells
    for (int l = 0; l < nlines; ++l) {
        for (int k = 1; k < len; ++k) {
            if (!line_valid[l][k] || !line_valid[l][k - 1]) continue;
            if (std::abs(line_vals[l][k] - line_vals[l][k - 1]) > units::pi) {
                line_valid[l][k] = 0;
                ++g.excluded_cells;
            }
        }
    }

    for (int l = 0; l < nlines; ++l)
        for (int k = 0; k < len; ++k)
            if (line_valid[l][k]) {
                set_val(l, k, line_vals[l][k]);
                set_mask(l, k, 1);
            }
    return g;
}

}  // namespace biphoton
