#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "c3b/coords.hpp"
#include "oracle.hpp"

using namespace c3b;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kDeg = kPi / 180.0;

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

Distances measured(const oracle::Bodies& x) {
    return {(x[0] - x[1]).norm(), (x[0] - x[2]).norm(), (x[1] - x[2]).norm()};
}

}  // namespace

TEST(BodySystem, PresetsAndFileFormat) {
    BodySystem g = preset("gravity-demo");
    EXPECT_EQ(g.masses, (std::array<double, 3>{1.6, 1.2, 1.0}));
    EXPECT_EQ(g.alphas, (std::array<double, 3>{1.2, 1.6, 1.92}));
    BodySystem h = parse_system("# helium\nmasses 1 1 7289.56\nalphas 2 2 -1\n");
    EXPECT_TRUE(h == preset("helium"));
    EXPECT_THROW(preset("lithium"), PreconditionError);
    EXPECT_THROW(parse_system("masses 1 0 1\nalphas 1 1 1\n"), PreconditionError);
    EXPECT_THROW(parse_system("masses 1 1 1\n"), PreconditionError);
}

TEST(JacobiFrame, Examples) {
    auto f = jacobi_frame(preset("eep"));
    EXPECT_NEAR(f.mu1, 0.5, 1e-15);
    EXPECT_NEAR(f.mu2, 2.0 / 3.0, 1e-15);
    EXPECT_NEAR(jacobi_frame(preset("helium")).mu1, 7289.56 / 7290.56, 1e-15);
    // 2 mu1 alpha^2 with alpha = 2 reproduces the reference co-rotating value.
    EXPECT_NEAR(0.5 * jacobi_frame(preset("helium")).mu1 * 4.0, 1.999725672, 1e-9);
    EXPECT_NEAR(jacobi_frame(preset("gravity-demo")).mu1, 1.6 / 2.6, 1e-15);
}

TEST(WCoords, FromJacobiExamples) {
    WCoords a = w_from_jacobi({1, 1, kPi / 2});
    EXPECT_NEAR(a.w1, 0, 1e-15);
    EXPECT_NEAR(a.w2, 0, 1e-15);
    EXPECT_NEAR(a.w3, 2, 1e-15);
    WCoords b = w_from_jacobi({1, 0, 1.234});
    EXPECT_EQ(b.w1, 1.0);
    EXPECT_EQ(b.w2, 0.0);
    EXPECT_EQ(b.w3, 0.0);
    WCoords c = w_from_jacobi({1, 1, 0});
    EXPECT_EQ(c.w1, 0.0);
    EXPECT_EQ(c.w2, 2.0);
    EXPECT_EQ(c.w3, 0.0);
}

TEST(WCoords, ToJacobiExamples) {
    JacobiShapeCoords a = jacobi_from_w({0, 0, 2});
    EXPECT_NEAR(a.rho1, 1, 1e-15);
    EXPECT_NEAR(a.rho2, 1, 1e-15);
    EXPECT_NEAR(a.phi, kPi / 2, 1e-15);
    EXPECT_FALSE(a.degenerate);
    JacobiShapeCoords b = jacobi_from_w({1, 0, 0});
    EXPECT_EQ(b.rho1, 1.0);
    EXPECT_EQ(b.rho2, 0.0);
    EXPECT_EQ(b.phi, 0.0);
    EXPECT_TRUE(b.degenerate);
    JacobiShapeCoords c = jacobi_from_w({-1, 0, 0});
    EXPECT_EQ(c.rho1, 0.0);
    EXPECT_EQ(c.phi, 0.0);
    EXPECT_TRUE(c.degenerate);
}

TEST(Dragt, Examples) {
    DragtCoords p = dragt_from_w({0, 0, 2});
    EXPECT_EQ(p.omega, 2.0);
    EXPECT_NEAR(p.chi, kPi / 2, 1e-15);
    EXPECT_EQ(p.psi, 0.0);
    EXPECT_TRUE(p.degenerate);
    DragtCoords e = dragt_from_w({1, 0, 0});
    EXPECT_EQ(e.omega, 1.0);
    EXPECT_EQ(e.chi, 0.0);
    EXPECT_EQ(e.psi, 0.0);
    // psi is the polar angle of (w1, w2): the negative w1 axis is pi, the negative w2 axis 3 pi / 2.
    EXPECT_NEAR(dragt_from_w({-1, 0, 0}).psi, kPi, 1e-15);
    EXPECT_NEAR(dragt_from_w({0, -1, 0}).psi, 1.5 * kPi, 1e-15);
}

TEST(Coords, RoundTripsOnRandomInputs) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int n = 0; n < 10000; ++n) {
        double scale = std::exp(12.0 * u(rng) - 6.0);
        JacobiShapeCoords j{scale * (0.01 + u(rng)), scale * (0.01 + u(rng)), 0.01 + (kPi - 0.02) * u(rng)};
        WCoords w = w_from_jacobi(j);
        EXPECT_NEAR(w.norm(), j.rho1 * j.rho1 + j.rho2 * j.rho2, 1e-12 * w.norm());
        JacobiShapeCoords j2 = jacobi_from_w(w);
        worst = std::max({worst, rel(j2.rho1, j.rho1) / scale, rel(j2.rho2, j.rho2) / scale, rel(j2.phi, j.phi)});
        DragtCoords d = dragt_from_w(w);
        WCoords w2 = w_from_dragt(d);
        double wn = w.norm();
        worst = std::max({worst, std::abs(w2.w1 - w.w1) / wn, std::abs(w2.w2 - w.w2) / wn, std::abs(w2.w3 - w.w3) / wn});
        DragtCoords d2 = dragt_from_w(w2);
        worst = std::max({worst, std::abs(d2.omega - d.omega) / d.omega, std::abs(d2.chi - d.chi),
                          std::abs(std::remainder(d2.psi - d.psi, 2 * kPi))});
        EXPECT_GE(d.psi, 0.0);
        EXPECT_LT(d.psi, 2 * kPi);
    }
    EXPECT_LT(worst, 1e-10);
}

TEST(Distances, HeliumDiabolicShape) {
    BodySystem he = preset("helium");
    Distances d = distances_from_dragt(he, {1, kPi / 2, 0});
    EXPECT_NEAR(d.r12, 1.0, 1e-12);
    EXPECT_NEAR(d.r13, 0.70715, 1e-5);
    EXPECT_NEAR(d.r23, d.r13, 1e-12);
    Distances o = measured(oracle::bodies_of_shape(he, 0, 0));
    EXPECT_NEAR(d.r12, o.r12, 1e-12);
    EXPECT_NEAR(d.r13, o.r13, 1e-12);
    EXPECT_NEAR(d.r23, o.r23, 1e-12);
}

TEST(Distances, EqualMassesAreEquilateralAtDiabolicShape) {
    Distances d = distances_from_dragt(preset("eep"), {1, kPi / 2, 0});
    EXPECT_NEAR(d.r12, 1.0, 1e-12);
    EXPECT_NEAR(d.r13, 1.0, 1e-12);
    EXPECT_NEAR(d.r23, 1.0, 1e-12);
}

TEST(Distances, AgreeWithReconstructedPositions) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 2000; ++n) {
        BodySystem sys = oracle::random_system(rng);
        auto [w1, w2] = oracle::random_shape(rng, 0.999);
        double omega = std::exp(4.0 * u(rng) - 2.0);
        oracle::Bodies x = oracle::bodies_of_shape(sys, w1, w2);
        for (auto& xi : x) xi *= std::sqrt(omega);
        Distances o = measured(x);
        Distances d = distances_from_w(sys, omega, omega * w1, omega * w2);
        double s = std::sqrt(omega);
        ASSERT_NEAR(d.r12, o.r12, 1e-10 * s);
        ASSERT_NEAR(d.r13, o.r13, 1e-10 * s);
        ASSERT_NEAR(d.r23, o.r23, 1e-10 * s);
        EXPECT_LE(d.r23, d.r12 + d.r13 + 1e-10 * s);
        EXPECT_LE(d.r12, d.r13 + d.r23 + 1e-10 * s);
        EXPECT_LE(d.r13, d.r12 + d.r23 + 1e-10 * s);
    }
}

TEST(CollisionAngles, ReferenceValues) {
    CollisionAngles he = collision_angles(preset("helium"));
    EXPECT_NEAR(he.psi12 / kDeg, 89.99214109, 1e-6);
    EXPECT_NEAR(he.psi23 / kDeg, -0.01571780034, 1e-6);
    EXPECT_EQ(he.psi13, kPi);
    CollisionAngles eep = collision_angles(preset("eep"));
    EXPECT_NEAR(eep.psi12 / kDeg, 60.0, 1e-12);
    EXPECT_NEAR(eep.psi23 / kDeg, -60.0, 1e-12);
    CollisionAngles g = collision_angles(preset("gravity-demo"));
    EXPECT_NEAR(g.psi12 / kDeg, 48.0, 0.5);
    EXPECT_NEAR(g.psi23 / kDeg, -71.0, 0.5);
}

TEST(CollisionAngles, DistanceVanishesOnTheCircle) {
    std::mt19937_64 rng(7);
    for (int n = 0; n < 500; ++n) {
        BodySystem sys = oracle::random_system(rng);
        CollisionAngles c = collision_angles(sys);
        auto at = [&](double psi) { return distances_from_dragt(sys, {1.0, 0.0, psi < 0 ? psi + 2 * kPi : psi}); };
        // The radicand cancels to rounding at a collision, so r^2 vanishes to a few ulps of O(1) terms.
        EXPECT_LT(std::pow(at(c.psi12).r12, 2), 1e-14);
        EXPECT_LT(std::pow(at(c.psi23).r23, 2), 1e-14);
        EXPECT_LT(std::pow(at(c.psi13).r13, 2), 1e-14);
    }
}

TEST(NormalizeShape, Examples) {
    NormalizedShape n = normalize_shape({1, 1, kPi / 2});
    EXPECT_NEAR(n.shape.w1(), 0.0, 1e-15);
    EXPECT_NEAR(n.shape.w2(), 0.0, 1e-15);
    EXPECT_NEAR(n.lambda, 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_THROW(normalize_shape({2, 0, 0.3}), CollinearError);
    EXPECT_THROW(normalize_shape({0, 0, 0.3}), TripleCollisionError);
    EXPECT_THROW(Shape(0.6, 0.8), CollinearError);
}

TEST(NormalizeShape, DilationInvariance) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int n = 0; n < 1000; ++n) {
        JacobiShapeCoords j{0.05 + u(rng), 0.05 + u(rng), 0.05 + 3.0 * u(rng)};
        double lam = std::exp(6.0 * u(rng) - 3.0);
        JacobiShapeCoords jl = dilate(j, lam);
        EXPECT_NEAR(jl.rho1 * jl.rho1 + jl.rho2 * jl.rho2, lam * lam * (j.rho1 * j.rho1 + j.rho2 * j.rho2),
                    1e-12 * lam * lam * 4);
        Shape a = normalize_shape(j).shape, b = normalize_shape(jl).shape;
        EXPECT_NEAR(a.w1(), b.w1(), 1e-12);
        EXPECT_NEAR(a.w2(), b.w2(), 1e-12);
    }
}

TEST(XxySection, Examples) {
    XxySection a = xxy_section({1, 1, kPi / 2});
    EXPECT_TRUE(a.r1.isApprox(Vec3(1, 0, 0)));
    EXPECT_NEAR((a.r2 - Vec3(0, 1, 0)).norm(), 0.0, 1e-15);
    XxySection b = xxy_section({1, 2, 0});
    EXPECT_EQ(b.r2, Vec3(2, 0, 0));
    XxySection c = xxy_section({2, 1, kPi});
    EXPECT_EQ(c.r1, Vec3(2, 0, 0));
    EXPECT_NEAR((c.r2 - Vec3(-1, 0, 0)).norm(), 0.0, 1e-15);
}

TEST(JacobiVectors, InvertBodyPositions) {
    BodySystem sys = preset("gravity-demo");
    Vec3 s1(0.3, -0.2, 0.9), s2(-1.1, 0.4, 0.2);
    auto x = body_positions(sys, s1, s2);
    Vec3 cm = sys.masses[0] * x[0] + sys.masses[1] * x[1] + sys.masses[2] * x[2];
    EXPECT_LT(cm.norm(), 1e-15);
    auto s = jacobi_vectors(sys, x);
    EXPECT_LT((s[0] - s1).norm(), 1e-15);
    EXPECT_LT((s[1] - s2).norm(), 1e-15);
    // Kinetic metric: sum m |x|^2 = |s1|^2 + |s2|^2.
    double I = 0.0;
    for (int i = 0; i < 3; ++i) I += sys.masses[i] * x[i].squaredNorm();
    EXPECT_NEAR(I, s1.squaredNorm() + s2.squaredNorm(), 1e-14);
}
