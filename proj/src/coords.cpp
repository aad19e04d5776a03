#include "c3b/coords.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

namespace c3b {

namespace {

constexpr double kPi = std::numbers::pi;

// Radicands above -kClamp * scale are rounding noise at a collision.
constexpr double kClamp = 1e-12;

double clamped_sqrt(double x, double scale) {
    if (x >= 0.0) return std::sqrt(x);
    if (x >= -kClamp * scale) return 0.0;
    throw ConsistencyError("negative radicand in distance formula: " + std::to_string(x));
}

}  // namespace

void BodySystem::validate() const {
    for (double m : masses)
        if (!(m > 0.0) || !std::isfinite(m)) throw PreconditionError("masses must be positive and finite");
    for (double a : alphas)
        if (!std::isfinite(a)) throw PreconditionError("couplings must be finite");
}

bool operator==(const BodySystem& a, const BodySystem& b) {
    return a.masses == b.masses && a.alphas == b.alphas;
}

BodySystem preset(const std::string& name) {
    if (name == "gravity-demo") return {{1.6, 1.2, 1.0}, {1.2, 1.6, 1.92}};
    if (name == "helium") return {{1.0, 1.0, 7289.56}, {2.0, 2.0, -1.0}};
    if (name == "eep") return {{1.0, 1.0, 1.0}, {1.0, 1.0, -1.0}};
    throw PreconditionError("unknown preset: " + name);
}

BodySystem parse_system(const std::string& text) {
    BodySystem sys;
    bool have_m = false, have_a = false;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key)) continue;
        std::array<double, 3> v{};
        if (!(ls >> v[0] >> v[1] >> v[2]))
            throw PreconditionError("line " + std::to_string(lineno) + ": expected three numbers");
        std::string extra;
        if (ls >> extra) throw PreconditionError("line " + std::to_string(lineno) + ": trailing input");
        if (key == "masses") {
            sys.masses = v;
            have_m = true;
        } else if (key == "alphas") {
            sys.alphas = v;
            have_a = true;
        } else {
            throw PreconditionError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        }
    }
    if (!have_m || !have_a) throw PreconditionError("system file needs both 'masses' and 'alphas'");
    sys.validate();
    return sys;
}

BodySystem load_system(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw PreconditionError("cannot open system file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_system(ss.str());
}

double WCoords::norm() const { return std::sqrt(w1 * w1 + w2 * w2 + w3 * w3); }

Shape::Shape(double w1, double w2) : w1_(w1), w2_(w2) {
    if (!(w1 * w1 + w2 * w2 < 1.0)) throw CollinearError("shape outside the open unit disk");
}

double Shape::radius() const { return std::hypot(w1_, w2_); }

double Shape::collinear_gap() const {
    double r2 = w1_ * w1_ + w2_ * w2_;
    return (1.0 - r2) / (1.0 + std::sqrt(r2));
}

double Shape::w3() const {
    double r2 = w1_ * w1_ + w2_ * w2_;
    return std::sqrt(1.0 - r2);
}

JacobiFrame jacobi_frame(const BodySystem& sys) {
    const auto& m = sys.masses;
    return {m[0] * m[2] / (m[0] + m[2]), m[1] * (m[0] + m[2]) / sys.total_mass()};
}

WCoords w_from_jacobi(const JacobiShapeCoords& j) {
    double t = 2.0 * j.rho1 * j.rho2;
    return {j.rho1 * j.rho1 - j.rho2 * j.rho2, t * std::cos(j.phi), t * std::sin(j.phi)};
}

JacobiShapeCoords jacobi_from_w(const WCoords& w) {
    double omega = w.norm();
    double perp2 = w.w2 * w.w2 + w.w3 * w.w3;
    // (omega + w1)(omega - w1) = w2^2 + w3^2; take the branch without cancellation.
    double r1sq, r2sq;
    if (w.w1 >= 0.0) {
        r1sq = 0.5 * (omega + w.w1);
        r2sq = omega + w.w1 > 0.0 ? 0.5 * perp2 / (omega + w.w1) : 0.0;
    } else {
        r2sq = 0.5 * (omega - w.w1);
        r1sq = 0.5 * perp2 / (omega - w.w1);
    }
    JacobiShapeCoords j{std::sqrt(r1sq), std::sqrt(r2sq), 0.0, false};
    if (perp2 == 0.0 && (j.rho1 == 0.0 || j.rho2 == 0.0)) {
        j.degenerate = true;
    } else {
        j.phi = std::atan2(w.w3, w.w2);
    }
    return j;
}

DragtCoords dragt_from_w(const WCoords& w) {
    double h = std::hypot(w.w1, w.w2);
    DragtCoords d{w.norm(), std::atan2(w.w3, h), 0.0, false};
    if (h == 0.0) {
        d.degenerate = true;
        if (d.omega == 0.0) d.chi = 0.0;
        return d;
    }
    double psi = std::atan2(w.w2, w.w1);
    if (psi < 0.0) psi += 2.0 * kPi;
    if (psi >= 2.0 * kPi) psi = 0.0;
    d.psi = psi;
    return d;
}

WCoords w_from_dragt(const DragtCoords& d) {
    double c = std::cos(d.chi);
    return {d.omega * c * std::cos(d.psi), d.omega * c * std::sin(d.psi), d.omega * std::sin(d.chi)};
}

Distances distances_from_w(const BodySystem& sys, double omega, double w1, double w2) {
    const auto& m = sys.masses;
    auto [mu1, mu2] = jacobi_frame(sys);
    double a = m[2] / (m[0] + m[2]);
    double b = m[0] / (m[0] + m[2]);
    double k = 1.0 / std::sqrt(mu1 * mu2);
    double p1 = 0.5 * (omega + w1) / mu1;  // |x1 - x3|^2
    double p2 = 0.5 * (omega - w1) / mu2;  // |x2 - cm13|^2
    double scale = std::abs(omega) * (1.0 / mu1 + 1.0 / mu2);
    return {clamped_sqrt(a * a * p1 + p2 - a * k * w2, scale), clamped_sqrt(p1, scale),
            clamped_sqrt(b * b * p1 + p2 + b * k * w2, scale)};
}

Distances distances_from_dragt(const BodySystem& sys, const DragtCoords& d) {
    WCoords w = w_from_dragt(d);
    return distances_from_w(sys, d.omega, w.w1, w.w2);
}

Distances distances_from_jacobi(const BodySystem& sys, const JacobiShapeCoords& j) {
    WCoords w = w_from_jacobi(j);
    return distances_from_w(sys, j.rho1 * j.rho1 + j.rho2 * j.rho2, w.w1, w.w2);
}

CollisionAngles collision_angles(const BodySystem& sys) {
    const auto& m = sys.masses;
    double M = sys.total_mass();
    double s = 2.0 * std::sqrt(m[0] * m[1] * m[2] * M);
    return {std::atan2(s, m[0] * M - m[1] * m[2]), std::atan2(-s, m[2] * M - m[0] * m[1]), kPi};
}

NormalizedShape normalize_shape(const JacobiShapeCoords& j) {
    WCoords w = w_from_jacobi(j);
    double omega = j.rho1 * j.rho1 + j.rho2 * j.rho2;
    if (!(omega > 0.0)) throw TripleCollisionError("triple collision has no shape");
    if (!(w.w3 > 0.0)) throw CollinearError("collinear configuration is on the shape-space boundary");
    return {Shape(w.w1 / omega, w.w2 / omega), 1.0 / std::sqrt(omega)};
}

JacobiShapeCoords jacobi_from_shape(const Shape& s) { return jacobi_from_w(s.w()); }

JacobiShapeCoords dilate(const JacobiShapeCoords& j, double lambda) {
    return {lambda * j.rho1, lambda * j.rho2, j.phi, j.degenerate};
}

XxySection xxy_section(const JacobiShapeCoords& j) {
    return {Vec3(j.rho1, 0.0, 0.0), Vec3(j.rho2 * std::cos(j.phi), j.rho2 * std::sin(j.phi), 0.0)};
}

std::array<Vec3, 3> body_positions(const BodySystem& sys, const Vec3& s1, const Vec3& s2) {
    const auto& m = sys.masses;
    auto [mu1, mu2] = jacobi_frame(sys);
    Vec3 x13 = s1 / std::sqrt(mu1);
    Vec3 u = s2 / std::sqrt(mu2);
    Vec3 cm13 = -m[1] / sys.total_mass() * u;
    return {cm13 + m[2] / (m[0] + m[2]) * x13, cm13 + u, cm13 - m[0] / (m[0] + m[2]) * x13};
}

std::array<Vec3, 2> jacobi_vectors(const BodySystem& sys, const std::array<Vec3, 3>& x) {
    const auto& m = sys.masses;
    auto [mu1, mu2] = jacobi_frame(sys);
    Vec3 cm13 = (m[0] * x[0] + m[2] * x[2]) / (m[0] + m[2]);
    return {std::sqrt(mu1) * (x[0] - x[2]), std::sqrt(mu2) * (x[1] - cm13)};
}

JacobiShapeCoords jacobi_coords(const Vec3& s1, const Vec3& s2) {
    JacobiShapeCoords j{s1.norm(), s2.norm(), 0.0, false};
    if (j.rho1 == 0.0 || j.rho2 == 0.0)
        j.degenerate = true;
    else
        j.phi = std::atan2(s1.cross(s2).norm(), s1.dot(s2));
    return j;
}

}  // namespace c3b
