// Reduced ro-vibrational dynamics in the xxy gauge.
//
// Internal coordinates are Jacobi (rho1, rho2, phi); J is the body-frame angular
// momentum in the frame of xxy_section.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "c3b/coords.hpp"

namespace c3b {

struct InertiaData {
    Mat3 tensor;
    std::array<double, 3> principal;  // ascending; principal[0] + principal[1] == principal[2]
    double I;
};

InertiaData inertia(const JacobiShapeCoords& j);

// Principal axes in the xxy body frame, columns ordered like InertiaData::principal.
// At the diabolic point the in-plane pair defaults to e1, e2.
Mat3 principal_axes(const JacobiShapeCoords& j);

// Analytic d tensor / d q_mu, mu = rho1, rho2, phi.
std::array<Mat3, 3> inertia_derivatives(const JacobiShapeCoords& j);

struct KineticGeometry {
    Mat3 metric;
    Mat3 metric_inv;
    std::array<Vec3, 3> gauge;  // A_mu
};

// Throws CollinearError where the metric is singular.
KineticGeometry kinetic_geometry(const JacobiShapeCoords& j);
KineticGeometry kinetic_geometry(const DragtCoords& d);

struct RovibState {
    Vec3 q;  // rho1, rho2, phi
    Vec3 p;
    Vec3 J;
};

double potential_jacobi(const BodySystem& sys, const Vec3& q);
Vec3 potential_gradient_jacobi(const BodySystem& sys, const Vec3& q);

double hamiltonian(const BodySystem& sys, const RovibState& s);
RovibState eom(const BodySystem& sys, const RovibState& s);

struct HamiltonianGradient {
    Vec3 dq;
    Vec3 dp;
    Vec3 dJ;
};
HamiltonianGradient hamiltonian_gradient(const BodySystem& sys, const RovibState& s);

struct RelequilResidual {
    Vec3 res1;  // J x (M^-1 J)
    Vec3 res3;  // d/dq (J.M^-1.J / 2 + V)
};
RelequilResidual relequil_residual(const BodySystem& sys, const Vec3& q, const Vec3& J);

struct ConservationReport {
    double max_energy_error = 0.0;
    double max_J_error = 0.0;
    double max_q_drift = 0.0;
    double max_p_drift = 0.0;
    std::size_t steps_taken = 0;
    bool truncated = false;
    std::string diagnostic;
};

struct Trajectory {
    std::vector<double> t;
    std::vector<RovibState> states;
    std::vector<double> energy;
    ConservationReport report;
};

// Fixed-step RK4; stops early (report.truncated) if the state comes within
// collinear_tol of the collinear chart boundary.
Trajectory integrate(const BodySystem& sys, const RovibState& s0, double dt, std::size_t nsteps,
                     bool keep_states = true, double collinear_tol = 1e-10);

std::string trajectory_csv(const Trajectory& traj);

}  // namespace c3b
