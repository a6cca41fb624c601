#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ncps/gaussian_family.hpp"
#include "ncps/nc_phase_space.hpp"
#include "oracles.hpp"

namespace ncps {
namespace {

ErrorKind kind_of(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "expected ncps::Error";
    return ErrorKind::InvalidArgument;
}

TEST(SubsystemForm, OneModeIsStandard) {
    const auto f = build_subsystem_form(1, RealMatrix::Zero(1, 1), RealMatrix::Zero(1, 1));
    EXPECT_EQ(f.form().matrix(), standard_symplectic_form(1).matrix());
}

TEST(SubsystemForm, CommutativePlanarIsStandard) {
    EXPECT_EQ(build_planar_form(NCParams{0.0, 0.0}).form().matrix(),
              standard_symplectic_form(2).matrix());
}

TEST(SubsystemForm, PlanarDeterminantMatchesDirectEvaluation) {
    const auto f = build_planar_form(NCParams{0.25, 0.5});
    // Cofactor expansion of [[0, t, 1, 0], [-t, 0, 0, 1], [-1, 0, 0, e], [0, -1, -e, 0]]
    // gives (1 - t e)^2.
    EXPECT_NEAR(f.form().matrix().determinant(), 0.765625, 1e-14);
    EXPECT_NEAR(f.form().matrix().determinant(), std::pow(1.0 - 0.125, 2), 1e-14);
}

TEST(SubsystemForm, PlanarEntries) {
    const auto f = build_planar_form(NCParams{0.25, 0.0});
    EXPECT_DOUBLE_EQ(f.form().matrix()(0, 1), 0.25);
    EXPECT_DOUBLE_EQ(f.form().matrix()(1, 0), -0.25);
    EXPECT_TRUE(f.upsilon_block().isZero(0));
    EXPECT_TRUE(f.form().matrix().bottomRightCorner(2, 2).isZero(0));
}

TEST(SubsystemForm, Rejections) {
    EXPECT_EQ(kind_of([] { build_planar_form(NCParams{0.5, 2.0}); }), ErrorKind::InvalidDomain);
    EXPECT_EQ(kind_of([] { build_planar_form(NCParams{-0.1, 0.0}); }), ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] {
                  build_subsystem_form(2, RealMatrix::Identity(2, 2), RealMatrix::Zero(2, 2));
              }),
              ErrorKind::NotSkew);
    // Theta = eps, Upsilon = eps gives det (1 - 1)^2 = 0.
    EXPECT_EQ(kind_of([] { build_subsystem_form(2, levi_civita_2(), levi_civita_2()); }),
              ErrorKind::SingularForm);
    EXPECT_EQ(kind_of([] {
                  build_subsystem_form(2, RealMatrix::Zero(1, 1), RealMatrix::Zero(2, 2));
              }),
              ErrorKind::DimensionMismatch);
}

TEST(Darboux, CommutativeLimitIsIdentity) {
    const auto map = build_darboux_map(NCParams{0.0, 0.0}, 1.0);
    EXPECT_DOUBLE_EQ(*map.mu(), 1.0);
    EXPECT_EQ(map.matrix(), RealMatrix::Identity(8, 8));
}

TEST(Darboux, ReproducesTargetForm) {
    const NCParams p{0.25, 0.5};
    const auto map = build_darboux_map(p, 1.0);
    EXPECT_NEAR(*map.mu(), 0.5 * (1.0 + std::sqrt(7.0 / 8.0)), 1e-15);
    const RealMatrix j4 = standard_symplectic_form(2).matrix();
    const RealMatrix image = map.s_a() * j4 * map.s_a().transpose();
    EXPECT_LT(max_abs_diff(image, build_planar_form(p).form().matrix()), 1e-14);
    EXPECT_TRUE(validate_darboux(map, planar_composite(p)));
}

TEST(Darboux, PrintedSignPlacementFailsConstraint) {
    // With +eta/(2 mu) in the (4,1) slot the image has the wrong momentum block.
    const NCParams p{0.25, 0.5};
    RealMatrix s = planar_darboux_block(p, 1.0);
    s(3, 0) = -s(3, 0);
    const RealMatrix image = s * standard_symplectic_form(2).matrix() * s.transpose();
    EXPECT_GT(max_abs_diff(image, build_planar_form(p).form().matrix()), 0.1);
}

TEST(Darboux, DeterminantOracle) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    std::uniform_real_distribution<double> lam(0.2, 3.0);
    for (int trial = 0; trial < 100; ++trial) {
        double theta, eta;
        do {
            theta = u(rng);
            eta = u(rng);
        } while (theta * eta >= 1.0);
        const NCParams p{theta, eta};
        const double l = lam(rng);
        const auto map = build_darboux_map(p, l);
        const double lm = l * *map.mu();
        EXPECT_NEAR(lm, planar_scale_product(p), 1e-12);
        const double expected = std::pow(lm - theta * eta / (4.0 * lm), 2);
        EXPECT_NEAR(map.s_a().determinant(), expected, 1e-12 * std::max(1.0, expected));
        // lambda*mu solves x^2 - x + theta*eta/4 = 0, so the determinant is 1 - theta*eta.
        EXPECT_NEAR(map.s_a().determinant(), 1.0 - theta * eta, 1e-12);
    }
}

TEST(Darboux, RejectsBadInputs) {
    EXPECT_EQ(kind_of([] { build_darboux_map(NCParams{0.25, 0.5}, 0.0); }),
              ErrorKind::InvalidArgument);
    EXPECT_EQ(kind_of([] { build_darboux_map(NCParams{1.0, 1.0}, 1.0); }), ErrorKind::InvalidDomain);
}

TEST(Darboux, Validation) {
    const CompositeForm commutative = commutative_composite(2, 2);
    EXPECT_TRUE(validate_darboux(DarbouxMap::identity(2, 2), commutative));
    const auto map = build_darboux_map(NCParams{0.25, 0.5});
    EXPECT_TRUE(validate_darboux(map, planar_composite(NCParams{0.25, 0.5})));
    EXPECT_FALSE(validate_darboux(map, planar_composite(NCParams{0.3, 0.5})));
    EXPECT_FALSE(validate_darboux(map, commutative));
    EXPECT_FALSE(validate_darboux(DarbouxMap(RealMatrix::Zero(4, 4), RealMatrix::Identity(4, 4)),
                                  commutative));
    EXPECT_EQ(kind_of([&] { validate_darboux(DarbouxMap::identity(1, 1), commutative); }),
              ErrorKind::DimensionMismatch);
}

TEST(Darboux, UserSuppliedMapForGeneralDeformation) {
    // One mode per party: Omega^K = [[0, 1], [-1, 0]] only, so any symplectic
    // 2x2 (det 1) is a valid Darboux block; det != 1 is not.
    RealMatrix s(2, 2);
    s << 2.0, 1.0, 1.0, 1.0;
    const CompositeForm target = commutative_composite(1, 1);
    EXPECT_TRUE(validate_darboux(DarbouxMap(s, s), target));
    EXPECT_FALSE(validate_darboux(DarbouxMap(RealMatrix(2.0 * s), s), target));
}

TEST(Covariance, IdentityMapAndRoundTrip) {
    std::mt19937_64 rng(11);
    const CovarianceMatrix sigma_tilde(oracle::random_spd(rng, 8, 0.5, 2.0));
    EXPECT_LT(max_abs_diff(transform_covariance(DarbouxMap::identity(2, 2), sigma_tilde).matrix(),
                           sigma_tilde.matrix()),
              1e-15);
    const auto map = build_darboux_map(NCParams{0.6, 0.9}, 1.7);
    const auto sigma = transform_covariance(map, sigma_tilde);
    const auto back = inverse_transform_covariance(map, sigma);
    EXPECT_LT(max_abs_diff(back.matrix(), sigma_tilde.matrix()), 1e-10);
}

TEST(Covariance, SpectrumPreservedUnderDarboux) {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(0.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        double theta, eta;
        do {
            theta = u(rng);
            eta = u(rng);
        } while (theta * eta >= 1.0);
        const NCParams p{theta, eta};
        const CovarianceMatrix sigma_tilde(oracle::random_spd(rng, 8, 0.3, 3.0));
        const auto sigma = transform_covariance(build_darboux_map(p, 1.3), sigma_tilde);
        const auto nc = nc_williamson_spectrum(sigma, planar_composite(p).form());
        const auto brute = oracle::brute_spectrum(sigma_tilde.matrix(),
                                                  commutative_composite(2, 2).form().matrix());
        EXPECT_LT(oracle::max_rel_diff(nc.invariants, brute.positive), 1e-9);
    }
}

TEST(Covariance, GaugeIndependence) {
    std::mt19937_64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const NCParams p{0.4, 1.2};
        const CovarianceMatrix sigma_tilde(oracle::random_spd(rng, 8, 0.3, 3.0));
        const auto s1 = nc_williamson_spectrum(
            transform_covariance(build_darboux_map(p, 0.5), sigma_tilde), planar_composite(p).form());
        const auto s2 = nc_williamson_spectrum(
            transform_covariance(build_darboux_map(p, 2.5), sigma_tilde), planar_composite(p).form());
        EXPECT_LT(oracle::max_rel_diff(s1.invariants, s2.invariants), 1e-9);
    }
}

TEST(Covariance, DimensionMismatch) {
    EXPECT_EQ(kind_of([] {
                  transform_covariance(DarbouxMap::identity(1, 1),
                                       CovarianceMatrix(RealMatrix::Identity(8, 8)));
              }),
              ErrorKind::DimensionMismatch);
}

}  // namespace
}  // namespace ncps
