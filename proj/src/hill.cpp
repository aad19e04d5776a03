#include "c3b/hill.hpp"

#include <cmath>
#include <limits>

namespace c3b {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double pair_term(double alpha, double r) {
    if (r > 0.0) return -alpha / r;
    if (alpha == 0.0) return 0.0;
    return alpha > 0.0 ? -kInf : kInf;
}

}  // namespace

double potential(const BodySystem& sys, const Distances& d) {
    return pair_term(sys.alphas[2], d.r12) + pair_term(sys.alphas[1], d.r13) + pair_term(sys.alphas[0], d.r23);
}

double potential_on_disk(const BodySystem& sys, double w1, double w2) {
    return potential(sys, distances_from_w(sys, 1.0, w1, w2));
}

ShapeEvaluation shape_eval(const BodySystem& sys, const Shape& shape) {
    double V = potential_on_disk(sys, shape.w1(), shape.w2());
    double M1 = 0.5 * shape.collinear_gap();
    double M2 = 1.0 - M1;
    return {shape, V, {M1, M2, 1.0}, {0.5, 0.5 / M2, 0.5 / M1}};
}

std::string to_string(RegionCase c) {
    switch (c) {
        case RegionCase::I: return "I";
        case RegionCase::IIa: return "IIa";
        case RegionCase::IIb: return "IIb";
        case RegionCase::IIIa: return "IIIa";
        case RegionCase::IIIb: return "IIIb";
        case RegionCase::IV: return "IV";
        case RegionCase::AxisDegenerate: return "axis-degenerate";
    }
    return "?";
}

double f_lambda(double E, double E_R, double V_tilde, double lambda) {
    return lambda * lambda * E - E_R - lambda * V_tilde;
}

HillMembership f_analysis(double E, double E_R, double V_tilde) {
    if (!(E_R > 0.0)) throw PreconditionError("rotational energy E_R must be positive");
    double V = V_tilde;
    double disc = 4.0 * E * E_R + V * V;
    HillMembership h{false, RegionCase::AxisDegenerate, disc, std::nullopt, std::nullopt};
    if (E != 0.0 && V != 0.0) {
        bool real = disc >= 0.0;
        if (E > 0.0)
            h.region_case = V > 0.0 ? RegionCase::I : RegionCase::IV;
        else if (V > 0.0)
            h.region_case = real ? RegionCase::IIa : RegionCase::IIb;
        else
            h.region_case = real ? RegionCase::IIIa : RegionCase::IIIb;
    }
    if (E > 0.0)
        h.member = true;
    else if (E == 0.0)
        h.member = V < 0.0;
    else
        h.member = V < 0.0 && disc >= 0.0;

    if (E == 0.0) {
        if (V != 0.0) h.lambda_minus = -E_R / V;
    } else if (disc >= 0.0) {
        // E l^2 - V l - E_R = 0 without cancellation
        double b = -V;
        double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
        double l1 = q / E, l2 = -E_R / q;
        h.lambda_minus = std::min(l1, l2);
        h.lambda_plus = std::max(l1, l2);
    }
    return h;
}

double normalized_rotational_energy(const ShapeEvaluation& ev, const Vec3& J_hat) {
    double e = 0.0;
    for (int k = 0; k < 3; ++k) e += J_hat[k] * J_hat[k] / ev.M_tilde[k];
    return 0.5 * e;
}

namespace {

void require_unit(const Vec3& J_hat) {
    if (!(std::abs(J_hat.norm() - 1.0) <= 1e-12)) throw PreconditionError("J_hat must be a unit vector");
}

}  // namespace

HillMembership membership(const BodySystem& sys, double E, double r, const Shape& shape, const Vec3& J_hat) {
    if (!(r > 0.0)) throw PreconditionError("angular momentum magnitude r must be positive");
    require_unit(J_hat);
    ShapeEvaluation ev = shape_eval(sys, shape);
    return f_analysis(E, r * r * normalized_rotational_energy(ev, J_hat), ev.V_tilde);
}

std::string to_string(OrientationClass c) {
    switch (c) {
        case OrientationClass::Empty: return "Empty";
        case OrientationClass::Caps: return "Caps";
        case OrientationClass::Ring: return "Ring";
        case OrientationClass::Full: return "Full";
    }
    return "?";
}

OrientationClass orientation_class(double V, double M1, double nu) {
    if (nu < 0.0) return OrientationClass::Full;
    if (nu == 0.0) return V < 0.0 ? OrientationClass::Full : OrientationClass::Empty;
    if (!(V < 0.0)) return OrientationClass::Empty;
    // Axis k is accessible iff V^2 / (4 nu) >= 1 / (2 M_k), i.e. M_k V^2 / 2 >= nu.
    double h = 0.5 * V * V;
    if (M1 * h >= nu) return OrientationClass::Full;
    if ((1.0 - M1) * h >= nu) return OrientationClass::Ring;
    if (h >= nu) return OrientationClass::Caps;
    return OrientationClass::Empty;
}

OrientationClass orientation_class(const ShapeEvaluation& ev, double nu) {
    return orientation_class(ev.V_tilde, ev.M_tilde[0], nu);
}

OrientationClass orientation_class(const BodySystem& sys, double nu, const Shape& shape) {
    return orientation_class(shape_eval(sys, shape), nu);
}

double bif_function(const BodySystem& sys, const Shape& shape, const Vec3& J_hat) {
    require_unit(J_hat);
    ShapeEvaluation ev = shape_eval(sys, shape);
    return ev.V_tilde / (2.0 * std::sqrt(normalized_rotational_energy(ev, J_hat)));
}

}  // namespace c3b
