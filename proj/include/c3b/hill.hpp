// Hill regions on shape-orientation space.
//
// Orientations J_hat are unit vectors in the principal frame of the shape,
// components ordered by ascending principal moment.
#pragma once

#include <array>
#include <optional>
#include <string>

#include "c3b/coords.hpp"

namespace c3b {

// +inf / -inf at a collision of a repulsive / attractive pair.
double potential(const BodySystem& sys, const Distances& d);

struct ShapeEvaluation {
    Shape shape;
    double V_tilde;
    std::array<double, 3> M_tilde;     // ascending, M1 + M2 = M3 = 1
    std::array<double, 3> thresholds;  // (E_R3, E_R2, E_R1) = 1 / (2 M_k), ascending
};

ShapeEvaluation shape_eval(const BodySystem& sys, const Shape& shape);
// Potential of the I = 1 configuration; finite-or-infinite also on the closed disk.
double potential_on_disk(const BodySystem& sys, double w1, double w2);

enum class RegionCase { I, IIa, IIb, IIIa, IIIb, IV, AxisDegenerate };
std::string to_string(RegionCase c);

struct HillMembership {
    bool member;
    RegionCase region_case;
    double discriminant;
    std::optional<double> lambda_minus;
    std::optional<double> lambda_plus;
};

double f_lambda(double E, double E_R, double V_tilde, double lambda);
HillMembership f_analysis(double E, double E_R, double V_tilde);

// Normalised rotational energy J_hat . M_tilde^-1 . J_hat / 2.
double normalized_rotational_energy(const ShapeEvaluation& ev, const Vec3& J_hat);

HillMembership membership(const BodySystem& sys, double E, double r, const Shape& shape, const Vec3& J_hat);

enum class OrientationClass { Empty = 0, Caps = 1, Ring = 2, Full = 3 };
std::string to_string(OrientationClass c);

OrientationClass orientation_class(const BodySystem& sys, double nu, const Shape& shape);
OrientationClass orientation_class(const ShapeEvaluation& ev, double nu);
// Class from raw (V_tilde, M1) data; M2 = 1 - M1, M3 = 1.  M1 may be 0.
OrientationClass orientation_class(double V_tilde, double M1, double nu);

double bif_function(const BodySystem& sys, const Shape& shape, const Vec3& J_hat);

}  // namespace c3b
