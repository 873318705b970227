#include "biphoton/model/pump.hpp"

#include <gtest/gtest.h>

#include <cmath>

#include "biphoton/core/units.hpp"
#include "test_support.hpp"

using namespace biphoton;
namespace u = biphoton::units;

namespace {

FrequencyGrid pump_grid(int n = 256, double spacing = 5e-4) {
    return FrequencyGrid{PumpSpec{}.center_angular_frequency(), n, spacing};
}

}  // namespace

TEST(PumpEnvelope, ZeroCoefficientsGiveRealPositiveSymmetricGaussian) {
    PumpSpec spec;  // c0..c3 = 0
    auto grid = pump_grid();
    auto env = pump_envelope(spec, grid);
    for (int i = 0; i < grid.n_points; ++i) {
        EXPECT_EQ(env[i].imag(), 0.0);
        EXPECT_GT(env[i].real(), 0.0);
    }
    for (int i = 1; i < grid.n_points / 2; ++i)
        EXPECT_NEAR(env[grid.n_points / 2 + i].real(), env[grid.n_points / 2 - i].real(),
                    1e-12 * env[grid.n_points / 2].real());
    // unit L2 norm with the grid measure
    double power = 0.0;
    for (auto& e : env) power += std::norm(e);
    EXPECT_NEAR(power * grid.spacing, 1.0, 1e-12);
}

TEST(PumpEnvelope, MagnitudeFwhmMatchesSpec) {
    PumpSpec spec;
    double s = spec.magnitude_sigma();
    double fwhm = spec.bandwidth_fwhm_rad_fs();
    // |E(fwhm/2)| = |E(0)| / 2 by construction
    EXPECT_NEAR(std::abs(spec.amplitude(fwhm / 2.0)), 0.5 * std::abs(spec.amplitude(0.0)), 1e-12);
    EXPECT_NEAR(4.0 * s * std::sqrt(std::log(2.0)), fwhm, 1e-12 * fwhm);
}

TEST(PumpEnvelope, PaperGddCoefficient) {
    // c2 = -1.33e5 fs^2  =>  phi''(0) = 2 c2 = -2.66e5 fs^2 (the paper's
    // experimental GDD figure), checked by central finite differences.
    PumpSpec spec;
    spec.c2 = -1.33e5;
    double h = 1e-4;
    double second = (spec.phase(h) - 2.0 * spec.phase(0.0) + spec.phase(-h)) / (h * h);
    EXPECT_NEAR(second, -2.66e5, 1e-3 * 2.66e5);
    EXPECT_DOUBLE_EQ(spec.gdd(), -2.66e5);
}

TEST(PumpEnvelope, LinearPhaseMovesTemporalCentroid) {
    // c1 = +500 fs puts the pulse centroid at t = +500 fs under the module's
    // time-domain convention (forward transform). Oracle: direct DFT sum plus
    // an intensity-weighted centroid.
    PumpSpec spec;
    spec.c1 = 500.0;
    auto grid = pump_grid(512, 5e-4);
    auto env = pump_envelope(spec, grid);

    auto time = oracle::dft_line(env, grid.spacing, /*inverse=*/false);
    double dt = u::two_pi / (grid.n_points * grid.spacing);
    double w = 0.0, m = 0.0;
    for (int k = 0; k < grid.n_points; ++k) {
        double inten = std::norm(time[k]);
        w += inten;
        m += inten * (k - grid.n_points / 2) * dt;
    }
    EXPECT_NEAR(m / w, 500.0, dt);
}

TEST(PumpEnvelope, NarrowGridRejected) {
    PumpSpec spec;
    FrequencyGrid grid{spec.center_angular_frequency(), 32, 1e-4};  // span 3.2e-3 << 4 fwhm
    EXPECT_THROW(pump_envelope(spec, grid), PreconditionError);
}

TEST(PumpSpec, InvalidValuesRejected) {
    PumpSpec bad;
    bad.bandwidth_fwhm_nm = 0.0;
    EXPECT_THROW(bad.validate(), ConfigError);
    PumpSpec nan;
    nan.c2 = std::nan("");
    EXPECT_THROW(nan.validate(), ConfigError);
}
