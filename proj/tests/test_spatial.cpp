#include "biphoton/model/spatial.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace biphoton;

namespace {

Point2 intensity_centroid(const ComplexField2D& amp, const SpatialGrid& grid) {
    double w = 0.0, mx = 0.0, my = 0.0;
    for (int i = 0; i < grid.n_x; ++i)
        for (int j = 0; j < grid.n_y; ++j) {
            double p = std::norm(amp.at(i, j));
            w += p;
            mx += p * grid.x(i);
            my += p * grid.y(j);
        }
    return {mx / w, my / w};
}

// Fine grid so that the discrete centroid is a faithful stand-in for the
// continuous conditional-Gaussian mean (default conditional spot: ~0.47 mm
// rms; 0.025 mm pitch and +-3.2 mm span leave discretization far below 1e-6).
SpatialGrid fine_grid() { return SpatialGrid{257, 257, 0.025}; }

}  // namespace

TEST(JointSpatialSpec, AntiCorrelationRegimeEnforced) {
    JointSpatialSpec bad;
    bad.sigma_sum = 20.0;
    bad.sigma_diff = 1.0;
    EXPECT_THROW(bad.validate(), ConfigError);
}

TEST(JointSpatialAmplitude, IdlerAtOriginGivesCenteredSignal) {
    JointSpatialSpec spec;
    auto amp = conditional_signal_amplitude(spec, fine_grid(), {0.0, 0.0});
    Point2 c = intensity_centroid(amp, fine_grid());
    EXPECT_NEAR(c.x, 0.0, 1e-9);
    EXPECT_NEAR(c.y, 0.0, 1e-9);
}

TEST(JointSpatialAmplitude, SignalShiftsOppositeToIdler) {
    JointSpatialSpec spec;
    auto amp = conditional_signal_amplitude(spec, fine_grid(), {0.5, 0.5});
    Point2 c = intensity_centroid(amp, fine_grid());
    EXPECT_LT(c.x, 0.0);
    EXPECT_LT(c.y, 0.0);
}

TEST(JointSpatialAmplitude, CentroidMatchesClosedForm) {
    JointSpatialSpec spec;
    for (Point2 idler : {Point2{0.5, 0.5}, Point2{-0.5, -0.5}, Point2{0.3, -0.2}}) {
        auto amp = conditional_signal_amplitude(spec, fine_grid(), idler);
        Point2 c = intensity_centroid(amp, fine_grid());
        Point2 expect = conditional_centroid_closed_form(spec, idler);
        EXPECT_NEAR(c.x, expect.x, 1e-6);
        EXPECT_NEAR(c.y, expect.y, 1e-6);
    }
}

TEST(JointSpatialAmplitude, AntiCorrelationSignPattern) {
    // sign(signal centroid) = -sign(idler offset) componentwise whenever
    // sigma_sum < sigma_diff; exercised over several width ratios.
    for (double sd : {12.0, 30.0, 80.0}) {
        JointSpatialSpec spec;
        spec.sigma_sum = 10.0;
        spec.sigma_diff = sd;
        auto amp = conditional_signal_amplitude(spec, fine_grid(), {0.4, -0.6});
        Point2 c = intensity_centroid(amp, fine_grid());
        EXPECT_LT(c.x, 0.0) << "sigma_diff=" << sd;
        EXPECT_GT(c.y, 0.0) << "sigma_diff=" << sd;
    }
}

TEST(JointSpatialAmplitude, FlatWavefrontGivesConstantPhase) {
    JointSpatialSpec spec;
    auto amp = conditional_signal_amplitude(spec, SpatialGrid{}, {0.5, 0.5});
    for (const auto& v : amp.values) EXPECT_EQ(v.imag(), 0.0);
}

TEST(JointSpatialAmplitude, QuadraticWavefrontPhase) {
    JointSpatialSpec spec;
    spec.wavefront = WavefrontModel::quadratic;
    spec.wavefront_coefficient = 0.3;
    SpatialGrid grid;
    auto amp = conditional_signal_amplitude(spec, grid, {0.0, 0.0});
    for (int i = 0; i < grid.n_x; ++i)
        for (int j = 0; j < grid.n_y; ++j) {
            double expect = 0.3 * (grid.x(i) * grid.x(i) + grid.y(j) * grid.y(j));
            EXPECT_NEAR(std::arg(amp.at(i, j)), std::remainder(expect, 2 * units::pi), 1e-12);
        }
}

TEST(JointSpatialAmplitude, FullFourIndexAmplitudeConsistentWithConditional) {
    JointSpatialSpec spec;
    SpatialGrid grid;
    auto joint = joint_spatial_amplitude(spec, grid, grid);
    // conditioning on an on-raster idler cell must reproduce the conditional
    // builder up to the common normalization
    int iix = 5, iiy = 1;
    auto cond = conditional_signal_amplitude(spec, grid, {grid.x(iix), grid.y(iiy)});
    for (int i = 0; i < grid.n_x; ++i)
        for (int j = 0; j < grid.n_y; ++j)
            ASSERT_NEAR(std::abs(joint.at(i, j, iix, iiy) - cond.at(i, j)), 0.0, 1e-14);
}
