// Coordinates on the translation-reduced configuration space of three bodies.
//
// Jacobi vectors are mass weighted: s1 = sqrt(mu1) (x1 - x3) and
// s2 = sqrt(mu2) (x2 - cm13), where cm13 is the centre of mass of bodies 1, 3.
#pragma once

#include <array>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace c3b {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Configuration lies on the collinear boundary of shape space.
struct CollinearError : Error {
    using Error::Error;
};
struct TripleCollisionError : Error {
    using Error::Error;
};
struct PreconditionError : Error {
    using Error::Error;
};
// A closed-form family does not exist for the given couplings.
struct UnsupportedFamilyError : Error {
    using Error::Error;
};
struct ConsistencyError : Error {
    using Error::Error;
};

// alphas[2] couples bodies 1-2, alphas[1] couples 1-3, alphas[0] couples 2-3.
struct BodySystem {
    std::array<double, 3> masses{1.0, 1.0, 1.0};
    std::array<double, 3> alphas{0.0, 0.0, 0.0};

    double total_mass() const { return masses[0] + masses[1] + masses[2]; }
    // Throws PreconditionError unless all masses are positive and finite.
    void validate() const;
};

bool operator==(const BodySystem& a, const BodySystem& b);

BodySystem preset(const std::string& name);  // gravity-demo, helium, eep
BodySystem parse_system(const std::string& text);
BodySystem load_system(const std::string& path);

struct JacobiFrame {
    double mu1;
    double mu2;
};

struct JacobiShapeCoords {
    double rho1;
    double rho2;
    double phi;  // [0, pi]
    bool degenerate = false;
};

struct WCoords {
    double w1;
    double w2;
    double w3;  // >= 0
    double norm() const;
};

struct DragtCoords {
    double omega;
    double chi;  // latitude, [0, pi/2]
    double psi;  // [0, 2 pi)
    bool degenerate = false;
};

struct Distances {
    double r12;
    double r13;
    double r23;
};

// Dilation-normalised interior shape, I = 1.
class Shape {
public:
    Shape(double w1, double w2);  // throws CollinearError unless w1^2 + w2^2 < 1
    double w1() const { return w1_; }
    double w2() const { return w2_; }
    double radius() const;  // |(w1, w2)|
    double w3() const;
    // 1 - |(w1,w2)|, computed without cancellation.
    double collinear_gap() const;
    WCoords w() const { return {w1_, w2_, w3()}; }

private:
    double w1_;
    double w2_;
};

JacobiFrame jacobi_frame(const BodySystem& sys);

WCoords w_from_jacobi(const JacobiShapeCoords& j);
JacobiShapeCoords jacobi_from_w(const WCoords& w);
DragtCoords dragt_from_w(const WCoords& w);
WCoords w_from_dragt(const DragtCoords& d);

// Distances are affine in (w1, w2) at fixed omega; these are the shared kernels.
Distances distances_from_w(const BodySystem& sys, double omega, double w1, double w2);
Distances distances_from_dragt(const BodySystem& sys, const DragtCoords& d);
Distances distances_from_jacobi(const BodySystem& sys, const JacobiShapeCoords& j);

// Polar angles in (-pi, pi] of the double-collision points on the collinear circle.
struct CollisionAngles {
    double psi12;
    double psi23;
    double psi13;
};
CollisionAngles collision_angles(const BodySystem& sys);

struct NormalizedShape {
    Shape shape;
    double lambda;
};
NormalizedShape normalize_shape(const JacobiShapeCoords& j);

// Jacobi coordinates of the I = 1 configuration with the given shape.
JacobiShapeCoords jacobi_from_shape(const Shape& s);
// d_lambda: scales lengths by lambda, so I scales by lambda^2.
JacobiShapeCoords dilate(const JacobiShapeCoords& j, double lambda);

struct XxySection {
    Vec3 r1;
    Vec3 r2;
};
XxySection xxy_section(const JacobiShapeCoords& j);

// Body positions with centre of mass at the origin, from mass-weighted Jacobi vectors.
std::array<Vec3, 3> body_positions(const BodySystem& sys, const Vec3& s1, const Vec3& s2);
// Mass-weighted Jacobi vectors of arbitrary body positions.
std::array<Vec3, 2> jacobi_vectors(const BodySystem& sys, const std::array<Vec3, 3>& x);
// Jacobi coordinates (rho1, rho2, phi) of two Jacobi vectors.
JacobiShapeCoords jacobi_coords(const Vec3& s1, const Vec3& s2);

}  // namespace c3b
