#include "biphoton/sim/interferometer.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

using namespace biphoton;
namespace u = biphoton::units;

namespace {

JointSpectralField default_jsa(double c2 = 0.0, double c3 = 0.0) {
    PumpSpec pump;
    pump.c2 = c2;
    pump.c3 = c3;
    return build_jsa(pump, CrystalSpec{}, default_signal_grid(), default_idler_grid(), {});
}

// Direct |a + b|^2 evaluation, independent of ssi_pattern's internals except
// for the shared shift primitive.
RealField2D direct_sum_oracle(const JointSpectralField& jsa, const ShearConfig& cfg) {
    int axis = cfg.sheared_axis();
    ComplexField2D shifted = resample_shift(jsa.psi, axis, cfg.shear);
    const Axis& ax = (axis == 0) ? jsa.psi.axis_a : jsa.psi.axis_b;
    RealField2D out(jsa.psi.axis_a, jsa.psi.axis_b);
    for (int i = 0; i < out.na(); ++i)
        for (int j = 0; j < out.nb(); ++j) {
            double nu = ax.value(axis == 0 ? i : j);
            out.at(i, j) = std::norm(jsa.psi.at(i, j) * std::polar(1.0, nu * cfg.delay) +
                                     shifted.at(i, j));
        }
    return out;
}

// The M1 three-term expansion, using the same shifted field.
RealField2D three_term_oracle(const JointSpectralField& jsa, const ShearConfig& cfg) {
    int axis = cfg.sheared_axis();
    ComplexField2D shifted = resample_shift(jsa.psi, axis, cfg.shear);
    const Axis& ax = (axis == 0) ? jsa.psi.axis_a : jsa.psi.axis_b;
    RealField2D out(jsa.psi.axis_a, jsa.psi.axis_b);
    for (int i = 0; i < out.na(); ++i)
        for (int j = 0; j < out.nb(); ++j) {
            double nu = ax.value(axis == 0 ? i : j);
            complexd cross = jsa.psi.at(i, j) * std::conj(shifted.at(i, j)) *
                             std::polar(1.0, nu * cfg.delay);
            out.at(i, j) =
                std::norm(jsa.psi.at(i, j)) + std::norm(shifted.at(i, j)) + 2.0 * cross.real();
        }
    return out;
}

double max_abs_diff(const RealField2D& a, const RealField2D& b) {
    double m = 0.0;
    for (size_t k = 0; k < a.values.size(); ++k)
        m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

}  // namespace

TEST(SsiPattern, ZeroShearGivesDelayFringesOnJsi) {
    auto jsa = default_jsa();
    ShearConfig cfg;
    cfg.shear = 0.0;
    auto ig = ssi_pattern(jsa, cfg);
    for (int i = 0; i < ig.values.na(); i += 3)
        for (int j = 0; j < ig.values.nb(); j += 3) {
            double nu = ig.values.axis_a.value(i);
            double expect = 2.0 * std::norm(jsa.psi.at(i, j)) * (1.0 + std::cos(nu * cfg.delay));
            ASSERT_NEAR(ig.values.at(i, j), expect, 1e-12 * jsa.psi.max_abs() * jsa.psi.max_abs());
        }
}

TEST(SsiPattern, BlockedReferenceGivesJsi) {
    auto jsa = default_jsa(-1.33e5);
    ShearConfig cfg;
    cfg.reference_blocked = true;
    auto ig = ssi_pattern(jsa, cfg);
    for (size_t k = 0; k < ig.values.values.size(); ++k)
        ASSERT_EQ(ig.values.values[k], std::norm(jsa.psi.values[k]));
}

TEST(SsiPattern, ThreeTermExpansionIdentity) {
    auto jsa = default_jsa(-1.33e5, 5e6);
    ShearConfig cfg;
    auto ig = ssi_pattern(jsa, cfg);
    auto oracle3 = three_term_oracle(jsa, cfg);
    auto direct = direct_sum_oracle(jsa, cfg);
    double scale = ig.values.max_abs();
    EXPECT_LT(max_abs_diff(ig.values, direct), 1e-12 * scale);
    EXPECT_LT(max_abs_diff(ig.values, oracle3), 1e-12 * scale);
}

TEST(SsiPattern, ArmSwapEqualsTransposeOfTransposedField) {
    PumpSpec pump;
    pump.c2 = -6e4;
    CrystalSpec crystal;
    auto grid = default_signal_grid();  // same grid both axes so transpose is meaningful
    auto jsa = build_jsa(pump, crystal, grid, grid, {});

    ShearConfig sig;
    sig.arm = InterferometerArm::signal;
    auto ig_signal = ssi_pattern(jsa, sig);

    JointSpectralField transposed = jsa;
    for (int i = 0; i < jsa.psi.na(); ++i)
        for (int j = 0; j < jsa.psi.nb(); ++j) transposed.psi.at(j, i) = jsa.psi.at(i, j);
    ShearConfig idl = sig;
    idl.arm = InterferometerArm::idler;
    auto ig_idler = ssi_pattern(transposed, idl);

    for (int i = 0; i < ig_signal.values.na(); ++i)
        for (int j = 0; j < ig_signal.values.nb(); ++j)
            ASSERT_EQ(ig_signal.values.at(i, j), ig_idler.values.at(j, i));
}

TEST(ApplyDetector, ZeroWidthIsIdentity) {
    auto jsa = default_jsa(-1.33e5);
    auto ig = ssi_pattern(jsa, {});
    ig.detector.resolution_ssi_fwhm_nm = 0.0;
    ig.detector.resolution_direct_fwhm_nm = 0.0;
    auto out = apply_detector(ig);
    EXPECT_EQ(max_abs_diff(out.values, ig.values), 0.0);
}

TEST(ApplyDetector, DeltaBecomesGaussianOfConfiguredFwhm) {
    // fine grid so the kernel (0.169 nm -> 1.33e-4 rad/fs) is well resolved
    FrequencyGrid fine{u::angular_frequency_from_wavelength_nm(1544.0), 1024, 4e-6};
    Axis a = default_signal_grid().axis();
    Interferogram ig;
    ig.values = RealField2D(Axis{8, 2.5e-4, a.center, AxisDomain::frequency}, fine.axis());
    ig.shear.arm = InterferometerArm::signal;  // axis b = idler = direct arm
    ig.detector.resolution_ssi_fwhm_nm = 0.0;
    ig.values.at(4, 512) = 1.0;
    auto out = apply_detector(ig);

    double lambda = 1544.0;
    double fwhm = u::bandwidth_rad_fs_from_nm(0.169, lambda);
    double sigma = u::sigma_from_fwhm(fwhm);
    double dv = fine.spacing;
    double norm = dv / (std::sqrt(u::two_pi) * sigma);  // discrete delta of unit mass
    for (int j = 412; j <= 612; ++j) {
        double nu = fine.value(j);
        double expect = norm * std::exp(-0.5 * nu * nu / (sigma * sigma));
        ASSERT_NEAR(out.values.at(4, j), expect, 0.01 * norm);
    }
}

TEST(ApplyDetector, FringeVisibilityMatchesAnalyticFactor) {
    // visibility after blur = exp(-(pi fwhm / period)^2 / (4 ln 2))
    FrequencyGrid grid{u::angular_frequency_from_wavelength_nm(1548.0), 512, 2.5e-4};
    Interferogram ig;
    ig.values = RealField2D(grid.axis(), Axis{8, 2.5e-4, 1.0, AxisDomain::frequency});
    ig.shear.arm = InterferometerArm::idler;  // axis a = signal = direct arm
    ig.detector.resolution_ssi_fwhm_nm = 0.0;
    ig.detector.resolution_direct_fwhm_nm = 8.0;  // coarse on purpose
    double period = 8.0 * grid.spacing;
    for (int i = 0; i < grid.n_points; ++i)
        for (int j = 0; j < 8; ++j)
            ig.values.at(i, j) = 1.0 + std::cos(u::two_pi * grid.value(i) / period);
    auto out = apply_detector(ig);

    double fwhm = u::bandwidth_rad_fs_from_nm(8.0, 1548.0);
    double expect_vis = std::exp(-std::pow(u::pi * fwhm / period, 2) / (4.0 * std::log(2.0)));
    // measure visibility away from wrap edges
    double lo = 1e9, hi = -1e9;
    for (int i = 128; i < 384; ++i) {
        lo = std::min(lo, out.values.at(i, 4));
        hi = std::max(hi, out.values.at(i, 4));
    }
    double vis = (hi - lo) / (hi + lo);
    EXPECT_NEAR(vis, expect_vis, 0.02 * expect_vis + 1e-4);
    EXPECT_LT(vis, 0.05);  // period << resolution kills the fringes
}

TEST(ApplyDetector, PreservesTotalIntensity) {
    auto jsa = default_jsa(-1.33e5);
    auto ig = ssi_pattern(jsa, {});
    auto out = apply_detector(ig);
    EXPECT_NEAR(out.sum(), ig.sum(), 1e-10 * ig.sum());
}

TEST(ApplyDetector, CommutesWithIntensityScaling) {
    auto jsa = default_jsa(-8e4);
    auto ig = ssi_pattern(jsa, {});
    auto blurred_then_scaled = apply_detector(ig);
    for (auto& v : blurred_then_scaled.values.values) v *= 7.5;
    auto scaled = ig;
    for (auto& v : scaled.values.values) v *= 7.5;
    auto scaled_then_blurred = apply_detector(scaled);
    EXPECT_LT(max_abs_diff(blurred_then_scaled.values, scaled_then_blurred.values),
              1e-12 * blurred_then_scaled.values.max_abs());
}

TEST(ApplyDetector, KernelTooWideRejected) {
    auto jsa = default_jsa();
    auto ig = ssi_pattern(jsa, {});
    ig.detector.resolution_direct_fwhm_nm = 40.0;  // ~ grid span
    EXPECT_THROW(apply_detector(ig), PreconditionError);
}

TEST(Measure, ZeroCountsGiveZeros) {
    auto jsa = default_jsa();
    auto ig = ssi_pattern(jsa, {});
    ig.detector.total_counts = 0.0;
    auto out = measure(ig, RandomStream(5));
    for (double v : out.values.values) EXPECT_EQ(v, 0.0);
}

TEST(Measure, NoiselessFlagPassesThrough) {
    auto jsa = default_jsa();
    auto ig = ssi_pattern(jsa, {});
    ig.detector.noiseless = true;
    auto out = measure(ig, RandomStream(5));
    EXPECT_EQ(max_abs_diff(out.values, ig.values), 0.0);
    EXPECT_FALSE(out.noise_seed.has_value());
}

TEST(Measure, SeedRecordedAndDeterministic) {
    auto jsa = default_jsa();
    auto ig = ssi_pattern(jsa, {});
    auto a = measure(ig, RandomStream(77));
    auto b = measure(ig, RandomStream(77));
    EXPECT_EQ(a.values.values, b.values.values);
    EXPECT_EQ(a.noise_seed.value(), 77u);
}

TEST(Measure, CellMeansWithinPoissonBands) {
    // Monte-Carlo oracle: over 100 seeds, >= 99% of bright cells sit within
    // 4 sigma of the scaled input.
    auto jsa = default_jsa();
    ShearConfig cfg;
    auto ig = ssi_pattern(jsa, cfg);
    ig.detector.total_counts = 2e5;
    const int n_seeds = 100;
    RealField2D acc(ig.values.axis_a, ig.values.axis_b);
    for (int s = 0; s < n_seeds; ++s) {
        auto counts = measure(ig, RandomStream(1000 + s));
        for (size_t k = 0; k < acc.values.size(); ++k) acc.values[k] += counts.values.values[k];
    }
    double scale = ig.detector.total_counts / ig.sum();
    size_t checked = 0, inside = 0;
    for (size_t k = 0; k < acc.values.size(); ++k) {
        double mean = ig.values.values[k] * scale;
        if (mean < 5.0) continue;  // normal approximation regime only
        ++checked;
        double got = acc.values[k] / n_seeds;
        double sigma = std::sqrt(mean / n_seeds);
        if (std::abs(got - mean) <= 4.0 * sigma) ++inside;
    }
    ASSERT_GT(checked, 500u);
    EXPECT_GE(static_cast<double>(inside) / checked, 0.99);
}

TEST(SpatialFringe, FlatWavefrontGivesIdenticalFringePositions) {
    JointSpatialSpec spec;
    SpatialGrid grid;
    auto amp = conditional_signal_amplitude(spec, grid, {0.0, 0.0});
    FrequencyGrid sg = default_signal_grid();
    std::vector<double> mag(sg.n_points);
    for (int k = 0; k < sg.n_points; ++k) mag[k] = oracle::gauss_amp(sg.value(k), 5e-3);
    auto pat = spatial_fringe_pattern(amp, grid, mag, sg, {});
    // fringe positions identical at every position: the phase of the fringe
    // component (Fourier coefficient at the delay) does not move, even though
    // the contrast varies with the local signal/reference ratio
    auto fringe_phase = [&](const std::vector<double>& s) {
        complexd acc = 0.0;
        for (int k = 0; k < sg.n_points; ++k)
            acc += s[k] * std::polar(1.0, -sg.value(k) * pat.delay);
        return std::arg(acc);
    };
    double ref = fringe_phase(pat.spectra[0]);
    for (const auto& spec_k : pat.spectra)
        ASSERT_NEAR(std::remainder(fringe_phase(spec_k) - ref, 2 * u::pi), 0.0, 1e-9);
}

TEST(SpatialFringe, TooFewPeriodsRejected) {
    JointSpatialSpec spec;
    SpatialGrid grid;
    auto amp = conditional_signal_amplitude(spec, grid, {0.0, 0.0});
    FrequencyGrid sg = default_signal_grid();
    std::vector<double> mag(sg.n_points);
    for (int k = 0; k < sg.n_points; ++k) mag[k] = oracle::gauss_amp(sg.value(k), 5e-3);
    SpatialFringeConfig cfg;
    cfg.delay = 150.0;  // way below 3 periods in-band
    EXPECT_THROW(spatial_fringe_pattern(amp, grid, mag, sg, cfg), ConfigError);
}
