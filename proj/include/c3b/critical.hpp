// Critical values of nu = -E r^2.
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "c3b/coords.hpp"

namespace c3b {

enum class Family { Zero, Infinity, Diabolic, Lagrange, Langmuir, Collinear };
std::string to_string(Family f);

struct CriticalValue {
    double nu;
    Family family;
    int axis = 0;  // principal axis k in 1..3, 0 if not applicable
    int multiplicity = 1;
    // I = 1 shape; |w| = 1 for collinear entries.
    std::optional<std::array<double, 2>> w;
    std::string detail;
    std::vector<Family> merged;  // families folded into this entry, including its own
};

struct LangmuirGeometry {
    double theta;
    double a, b, c, d;  // at a = 1
    double mu;
};

// nu = M_k V^2 / 2 at an I = 1 shape, k in 1..3; valid on the closed disk away from collisions.
double nu_of_shape(const BodySystem& sys, double w1, double w2, int k);

std::vector<CriticalValue> nu_infinity(const BodySystem& sys);
CriticalValue nu_diabolic(const BodySystem& sys);
// Diabolic value with the 1-2 term weighted by sqrt((m1+m2)/(m1 m2)) instead of
// sqrt(m1 m2/(m1+m2)); kept only to show that this variant is wrong.
double nu_diabolic_inverse_mass_term(const BodySystem& sys);
CriticalValue nu_lagrange(const BodySystem& sys);
LangmuirGeometry langmuir_geometry(const BodySystem& sys);
CriticalValue nu_langmuir(const BodySystem& sys);
std::vector<CriticalValue> collinear_configs(const BodySystem& sys);

struct CriticalShape {
    Shape shape;
    double nu;
    double residual;  // relative relequil residual of the constructed state
};
std::vector<CriticalShape> find_critical_shapes(const BodySystem& sys, int k);
// Single-threaded reference for the multi-start search.
std::vector<CriticalShape> find_critical_shapes_serial(const BodySystem& sys, int k);

// Relative relequil residual of the I = 1 state at shape w rotating about axis k.
double relequil_shape_residual(const BodySystem& sys, const Shape& s, int k);

std::vector<CriticalValue> critical_catalog(const BodySystem& sys);
std::string catalog_csv(const std::vector<CriticalValue>& cat);

// I = 1 shape of three body positions in a plane; throws CollinearError for collinear input.
std::array<double, 2> shape_of_positions(const BodySystem& sys, const std::array<Vec3, 3>& x);

}  // namespace c3b
