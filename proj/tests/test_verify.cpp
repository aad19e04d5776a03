#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "c3b/critical.hpp"
#include "c3b/reduction.hpp"
#include "c3b/verify.hpp"

using namespace c3b;

namespace {

CriticalValue entry(const BodySystem& sys, Family f) {
    for (const auto& c : critical_catalog(sys))
        if (c.family == f) return c;
    throw std::runtime_error("family missing from catalog");
}

double residual_norm(const BodySystem& sys, const RovibState& s) {
    RelequilResidual r = relequil_residual(sys, s.q, s.J);
    return std::max(r.res1.norm(), r.res3.norm());
}

}  // namespace

TEST(BuildRelequilState, HeliumLangmuirAtUnitMomentum) {
    BodySystem sys = preset("helium");
    CriticalValue cv = entry(sys, Family::Langmuir);
    RovibState s = build_relequil_state(sys, cv, 1.0);
    EXPECT_NEAR(s.J.norm(), 1.0, 1e-15);
    EXPECT_LT(residual_norm(sys, s), 1e-8);
    // The state is stationary under the flow.
    RovibState d = eom(sys, s);
    EXPECT_LT(d.q.norm(), 1e-8);
    EXPECT_LT(d.p.norm(), 1e-8);
}

TEST(BuildRelequilState, GravityLagrangeSatisfiesTheVirial) {
    BodySystem sys = preset("gravity-demo");
    CriticalValue cv = entry(sys, Family::Lagrange);
    const double r = 2.0;
    RovibState s = build_relequil_state(sys, cv, r);
    EXPECT_LT(residual_norm(sys, s), 1e-8);
    double E = hamiltonian(sys, s), V = potential_jacobi(sys, s.q);
    EXPECT_LT(std::abs(E - V / 2) / std::abs(E), 1e-10);
    EXPECT_LT(std::abs(-E * r * r - cv.nu) / cv.nu, 1e-9);
}

TEST(BuildRelequilState, NuIsRecoveredForEveryShapedEntry) {
    for (const char* p : {"gravity-demo", "helium", "eep"}) {
        BodySystem sys = preset(p);
        for (const auto& cv : critical_catalog(sys)) {
            if (cv.family != Family::Lagrange && cv.family != Family::Langmuir) continue;
            for (double r : {0.5, 1.0, 3.0}) {
                RovibState s = build_relequil_state(sys, cv, r);
                EXPECT_LT(std::abs(-hamiltonian(sys, s) * r * r - cv.nu) / cv.nu, 1e-9) << p;
            }
        }
    }
}

TEST(BuildRelequilState, RejectsEntriesWithoutShape) {
    BodySystem sys = preset("gravity-demo");
    EXPECT_THROW(build_relequil_state(sys, entry(sys, Family::Infinity), 1.0), PreconditionError);
    EXPECT_THROW(build_relequil_state(sys, entry(sys, Family::Zero), 1.0), PreconditionError);
    EXPECT_THROW(build_relequil_state(sys, entry(sys, Family::Lagrange), 0.0), PreconditionError);
}

TEST(CharacteristicPeriod, ScalesWithMomentumCubed) {
    // q scales as r^2 and V as r^-2, so 2 pi r / |V| scales as r^3.
    BodySystem sys = preset("eep");
    CriticalValue cv = entry(sys, Family::Langmuir);
    double t1 = characteristic_period(sys, build_relequil_state(sys, cv, 1.0));
    double t2 = characteristic_period(sys, build_relequil_state(sys, cv, 2.0));
    EXPECT_NEAR(t2 / t1, 8.0, 1e-10);
}

TEST(VerifyAll, GravityDemoPasses) {
    VerificationReport rep = verify_all(preset("gravity-demo"));
    EXPECT_TRUE(rep.all_pass()) << rep.text();
}

TEST(VerifyAll, EepPassesIncludingTheMerge) {
    VerificationReport rep = verify_all(preset("eep"));
    EXPECT_TRUE(rep.all_pass()) << rep.text();
    bool merge = false;
    for (const auto& c : rep.checks) merge |= c.name == "regression.eep.merge_multiplicity" && c.pass;
    EXPECT_TRUE(merge);
}

// Expected to fail: the reference Langmuir value differs from the closed form in
// the ninth digit, and the Langmuir equilibrium is linearly unstable, so
// rounding noise grows past the drift tolerance within 10^4 steps.
TEST(VerifyAll, HeliumPasses) {
    VerificationReport rep = verify_all(preset("helium"));
    EXPECT_TRUE(rep.all_pass()) << rep.text();
}

TEST(VerifyAll, HeliumFailuresAreConfinedToThoseTwoCauses) {
    VerificationReport rep = verify_all(preset("helium"));
    for (const auto& c : rep.checks) {
        bool known = c.name == "regression.helium.closed_form" || c.name.rfind("dynamics.Langmuir.", 0) == 0;
        if (!known) {
            EXPECT_TRUE(c.pass) << c.name;
        }
    }
    bool theta = false;
    for (const auto& c : rep.checks) theta |= c.name == "regression.helium.langmuir_theta_deg" && c.pass;
    EXPECT_TRUE(theta);
}

TEST(VerifyAll, ReportFormat) {
    VerificationReport rep = verify_all(preset("eep"));
    std::istringstream in(rep.text());
    std::string line;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag, name, status, measured, tol;
        ls >> tag >> name >> status >> measured >> tol;
        EXPECT_EQ(tag, "CHECK");
        EXPECT_TRUE(status == "PASS" || status == "FAIL");
        EXPECT_EQ(measured.rfind("measured=", 0), 0u);
        EXPECT_EQ(tol.rfind("tol=", 0), 0u);
        EXPECT_EQ(name, rep.checks[n].name);
        ++n;
    }
    EXPECT_EQ(n, rep.checks.size());
}

TEST(VerifyAll, ReportOrderIsFixed) {
    EXPECT_EQ(verify_all(preset("eep")).text(), verify_all(preset("eep")).text());
}
