#include "c3b/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include <Eigen/Dense>

namespace c3b {

namespace {

JacobiShapeCoords as_jacobi(const Vec3& q) { return {q[0], q[1], q[2], false}; }

bool near_collinear(const Vec3& q, double tol) {
    return q[0] <= tol || q[1] <= tol || q[2] <= tol || q[2] >= std::numbers::pi - tol;
}

void require_noncollinear(const Vec3& q) {
    if (near_collinear(q, 0.0)) throw CollinearError("collinear state: reduced chart is singular");
}

// Inverse of the inertia tensor in the xxy gauge, via its 2x2 block.
Mat3 inertia_inverse(const JacobiShapeCoords& j) {
    double s = std::sin(j.phi), c = std::cos(j.phi);
    double r1s = j.rho1 * j.rho1, r2s = j.rho2 * j.rho2;
    double det = r1s * r2s * s * s;
    if (!(det > 0.0)) throw CollinearError("inertia tensor is singular at a collinear configuration");
    Mat3 inv = Mat3::Zero();
    inv(0, 0) = (r1s + r2s * c * c) / det;
    inv(0, 1) = inv(1, 0) = r2s * s * c / det;
    inv(1, 1) = r2s * s * s / det;
    inv(2, 2) = 1.0 / (r1s + r2s);
    return inv;
}

// Pair geometry r^2 = c11 rho1^2 + c22 rho2^2 + c12 rho1 rho2 cos(phi).
struct PairQuad {
    double c11, c22, c12, alpha;
};

std::array<PairQuad, 3> pair_quads(const BodySystem& sys) {
    const auto& m = sys.masses;
    auto [mu1, mu2] = jacobi_frame(sys);
    double a = m[2] / (m[0] + m[2]);
    double b = m[0] / (m[0] + m[2]);
    double k = 2.0 / std::sqrt(mu1 * mu2);
    return {{{a * a / mu1, 1.0 / mu2, -a * k, sys.alphas[2]},  // 1-2
             {1.0 / mu1, 0.0, 0.0, sys.alphas[1]},            // 1-3
             {b * b / mu1, 1.0 / mu2, b * k, sys.alphas[0]}}};  // 2-3
}

}  // namespace

InertiaData inertia(const JacobiShapeCoords& j) {
    double s = std::sin(j.phi), c = std::cos(j.phi);
    double r1s = j.rho1 * j.rho1, r2s = j.rho2 * j.rho2;
    Mat3 M = Mat3::Zero();
    M(0, 0) = r2s * s * s;
    M(0, 1) = M(1, 0) = -r2s * s * c;
    M(1, 1) = r1s + r2s * c * c;
    M(2, 2) = r1s + r2s;
    double I = r1s + r2s;
    WCoords w = w_from_jacobi(j);
    double D = std::hypot(w.w1, w.w2);
    // M1 = (I - D)/2 rewritten to stay accurate near collinear shapes.
    double M1 = I + D > 0.0 ? 0.5 * w.w3 * w.w3 / (I + D) : 0.0;
    return {M, {M1, I - M1, I}, I};
}

Mat3 principal_axes(const JacobiShapeCoords& j) {
    InertiaData in = inertia(j);
    double a = in.tensor(0, 0), b = in.tensor(0, 1), c = in.tensor(1, 1);
    double lam = in.principal[0];
    Eigen::Vector2d v1(b, lam - a), v2(lam - c, b);
    Eigen::Vector2d v = v1.squaredNorm() >= v2.squaredNorm() ? v1 : v2;
    Mat3 R = Mat3::Identity();
    if (v.norm() > 1e-300 && in.principal[1] - in.principal[0] > 1e-15 * in.I) {
        v.normalize();
        R(0, 0) = v[0];
        R(1, 0) = v[1];
        R(0, 1) = -v[1];
        R(1, 1) = v[0];
    }
    return R;
}

std::array<Mat3, 3> inertia_derivatives(const JacobiShapeCoords& j) {
    double s = std::sin(j.phi), c = std::cos(j.phi);
    double r1 = j.rho1, r2 = j.rho2;
    std::array<Mat3, 3> d{Mat3::Zero(), Mat3::Zero(), Mat3::Zero()};
    d[0](1, 1) = 2.0 * r1;
    d[0](2, 2) = 2.0 * r1;
    d[1](0, 0) = 2.0 * r2 * s * s;
    d[1](0, 1) = d[1](1, 0) = -2.0 * r2 * s * c;
    d[1](1, 1) = 2.0 * r2 * c * c;
    d[1](2, 2) = 2.0 * r2;
    double s2 = std::sin(2.0 * j.phi), c2 = std::cos(2.0 * j.phi);
    d[2](0, 0) = r2 * r2 * s2;
    d[2](0, 1) = d[2](1, 0) = -r2 * r2 * c2;
    d[2](1, 1) = -r2 * r2 * s2;
    return d;
}

KineticGeometry kinetic_geometry(const JacobiShapeCoords& j) {
    double r1s = j.rho1 * j.rho1, r2s = j.rho2 * j.rho2;
    if (!(r1s > 0.0 && r2s > 0.0)) throw CollinearError("Jacobi metric is singular at rho1 = 0 or rho2 = 0");
    KineticGeometry g;
    g.metric = Vec3(1.0, 1.0, r1s * r2s / (r1s + r2s)).asDiagonal();
    g.metric_inv = Vec3(1.0, 1.0, (r1s + r2s) / (r1s * r2s)).asDiagonal();
    g.gauge = {Vec3::Zero(), Vec3::Zero(), Vec3(0.0, 0.0, r2s / (r1s + r2s))};
    return g;
}

KineticGeometry kinetic_geometry(const DragtCoords& d) {
    double c = std::cos(d.chi);
    double g33 = 0.25 * d.omega * c * c;
    if (!(d.omega > 0.0) || !(g33 > 1e-300) || d.chi >= std::numbers::pi / 2)
        throw CollinearError("Dragt metric is singular at the pole or at omega = 0");
    KineticGeometry g;
    g.metric = Vec3(0.25 / d.omega, 0.25 * d.omega, g33).asDiagonal();
    g.metric_inv = Vec3(4.0 * d.omega, 4.0 / d.omega, 1.0 / g33).asDiagonal();
    g.gauge = {Vec3::Zero(), Vec3::Zero(), Vec3(0.0, 0.0, -0.5 * std::sin(d.chi))};
    return g;
}

double potential_jacobi(const BodySystem& sys, const Vec3& q) {
    double cphi = std::cos(q[2]);
    double V = 0.0;
    for (const auto& pq : pair_quads(sys)) {
        double r2 = pq.c11 * q[0] * q[0] + pq.c22 * q[1] * q[1] + pq.c12 * q[0] * q[1] * cphi;
        V -= pq.alpha / std::sqrt(r2);
    }
    return V;
}

Vec3 potential_gradient_jacobi(const BodySystem& sys, const Vec3& q) {
    double cphi = std::cos(q[2]), sphi = std::sin(q[2]);
    Vec3 g = Vec3::Zero();
    for (const auto& pq : pair_quads(sys)) {
        double r2 = pq.c11 * q[0] * q[0] + pq.c22 * q[1] * q[1] + pq.c12 * q[0] * q[1] * cphi;
        // d(-alpha/r) = alpha/(2 r^3) d(r^2)
        double f = 0.5 * pq.alpha / (r2 * std::sqrt(r2));
        g[0] += f * (2.0 * pq.c11 * q[0] + pq.c12 * q[1] * cphi);
        g[1] += f * (2.0 * pq.c22 * q[1] + pq.c12 * q[0] * cphi);
        g[2] += f * (-pq.c12 * q[0] * q[1] * sphi);
    }
    return g;
}

double hamiltonian(const BodySystem& sys, const RovibState& s) {
    require_noncollinear(s.q);
    JacobiShapeCoords j = as_jacobi(s.q);
    Mat3 Minv = inertia_inverse(j);
    KineticGeometry g = kinetic_geometry(j);
    Vec3 P;
    for (int mu = 0; mu < 3; ++mu) P[mu] = s.p[mu] - s.J.dot(g.gauge[mu]);
    return 0.5 * s.J.dot(Minv * s.J) + 0.5 * P.dot(g.metric_inv * P) + potential_jacobi(sys, s.q);
}

HamiltonianGradient hamiltonian_gradient(const BodySystem& sys, const RovibState& s) {
    require_noncollinear(s.q);
    JacobiShapeCoords j = as_jacobi(s.q);
    Mat3 Minv = inertia_inverse(j);
    kinetic_geometry(j);  // rejects rho1 = 0 or rho2 = 0
    auto dM = inertia_derivatives(j);

    double r1 = s.q[0], r2 = s.q[1];
    double r1s = r1 * r1, r2s = r2 * r2, I = r1s + r2s;
    double A = r2s / I;  // only nonzero gauge component, A_phi along J3
    double G = I / (r1s * r2s);
    double P3 = s.p[2] - s.J[2] * A;

    HamiltonianGradient out;
    Vec3 omega = Minv * s.J;
    out.dp = Vec3(s.p[0], s.p[1], G * P3);
    out.dJ = omega - Vec3(0.0, 0.0, G * P3 * A);

    double dA[2] = {-2.0 * r1 * r2s / (I * I), 2.0 * r2 * r1s / (I * I)};
    double dG[2] = {-2.0 / (r1s * r1), -2.0 / (r2s * r2)};
    Vec3 dV = potential_gradient_jacobi(sys, s.q);
    for (int mu = 0; mu < 3; ++mu) {
        // d(M^-1) = -M^-1 dM M^-1
        double rot = -0.5 * omega.dot(dM[mu] * omega);
        double vib = 0.0;
        if (mu < 2) vib = 0.5 * dG[mu] * P3 * P3 - G * P3 * s.J[2] * dA[mu];
        out.dq[mu] = rot + vib + dV[mu];
    }
    return out;
}

RovibState eom(const BodySystem& sys, const RovibState& s) {
    HamiltonianGradient h = hamiltonian_gradient(sys, s);
    return {h.dp, -h.dq, s.J.cross(h.dJ)};
}

RelequilResidual relequil_residual(const BodySystem& sys, const Vec3& q, const Vec3& J) {
    require_noncollinear(q);
    JacobiShapeCoords j = as_jacobi(q);
    Mat3 Minv = inertia_inverse(j);
    auto dM = inertia_derivatives(j);
    Vec3 omega = Minv * J;
    Vec3 dV = potential_gradient_jacobi(sys, q);
    RelequilResidual r;
    r.res1 = J.cross(omega);
    for (int mu = 0; mu < 3; ++mu) r.res3[mu] = -0.5 * omega.dot(dM[mu] * omega) + dV[mu];
    return r;
}

namespace {

using Vec9 = Eigen::Matrix<double, 9, 1>;

Vec9 pack(const RovibState& s) {
    Vec9 v;
    v << s.q, s.p, s.J;
    return v;
}

RovibState unpack(const Vec9& v) { return {v.segment<3>(0), v.segment<3>(3), v.segment<3>(6)}; }

}  // namespace

Trajectory integrate(const BodySystem& sys, const RovibState& s0, double dt, std::size_t nsteps, bool keep_states,
                     double collinear_tol) {
    if (!(dt > 0.0)) throw PreconditionError("dt must be positive");
    if (near_collinear(s0.q, collinear_tol)) throw CollinearError("initial state is on the collinear boundary");
    Trajectory tr;
    double H0 = hamiltonian(sys, s0);
    double J0 = s0.J.norm();
    auto f = [&](const Vec9& y) { return pack(eom(sys, unpack(y))); };
    auto record = [&](double t, const RovibState& s, double H) {
        if (!keep_states) return;
        tr.t.push_back(t);
        tr.states.push_back(s);
        tr.energy.push_back(H);
    };
    record(0.0, s0, H0);
    Vec9 y = pack(s0);
    Vec9 y0 = y;
    auto& rep = tr.report;
    for (std::size_t n = 0; n < nsteps; ++n) {
        bool stage_ok = true;
        try {
            Vec9 k1 = f(y);
            Vec9 k2 = f(y + 0.5 * dt * k1);
            Vec9 k3 = f(y + 0.5 * dt * k2);
            Vec9 k4 = f(y + dt * k3);
            y += dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        } catch (const CollinearError&) {
            stage_ok = false;  // an intermediate stage left the chart
        }
        RovibState s = unpack(y);
        if (!stage_ok || !y.allFinite() || near_collinear(s.q, collinear_tol)) {
            rep.truncated = true;
            rep.diagnostic = "trajectory reached the collinear chart boundary at step " + std::to_string(n + 1);
            break;
        }
        double H = hamiltonian(sys, s);
        rep.max_energy_error = std::max(rep.max_energy_error, std::abs(H - H0));
        rep.max_J_error = std::max(rep.max_J_error, std::abs(s.J.norm() - J0));
        rep.max_q_drift = std::max(rep.max_q_drift, (y.segment<3>(0) - y0.segment<3>(0)).cwiseAbs().maxCoeff());
        rep.max_p_drift = std::max(rep.max_p_drift, (y.segment<3>(3) - y0.segment<3>(3)).cwiseAbs().maxCoeff());
        rep.steps_taken = n + 1;
        record(dt * static_cast<double>(n + 1), s, H);
    }
    return tr;
}

std::string trajectory_csv(const Trajectory& traj) {
    std::string out = "t,q1,q2,q3,p1,p2,p3,J1,J2,J3,H\n";
    char buf[32];
    auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out += buf;
        out += sep;
    };
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
        const auto& s = traj.states[i];
        put(traj.t[i], ',');
        for (int k = 0; k < 3; ++k) put(s.q[k], ',');
        for (int k = 0; k < 3; ++k) put(s.p[k], ',');
        for (int k = 0; k < 3; ++k) put(s.J[k], ',');
        put(traj.energy[i], '\n');
    }
    return out;
}

}  // namespace c3b
