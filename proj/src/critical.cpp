#include "c3b/critical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include <Eigen/Dense>

#include "c3b/hill.hpp"
#include "c3b/reduction.hpp"

namespace c3b {

namespace {

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

bool rel_equal(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b)); }

// Pair (a, b), zero based, to the index of its coupling in BodySystem::alphas.
int alpha_index(int a, int b) { return 3 - (a + b); }

double reduced_mass(double a, double b) { return a * b / (a + b); }

// Principal moment M_k of the I = 1 shape at (w1, w2); M1 may be 0 on the circle.
double principal_on_disk(double w1, double w2, int k) {
    double r2 = w1 * w1 + w2 * w2;
    double M1 = r2 >= 1.0 ? 0.0 : 0.5 * (1.0 - r2) / (1.0 + std::sqrt(r2));
    if (k == 1) return M1;
    if (k == 2) return 1.0 - M1;
    return 1.0;
}

std::array<double, 2> w_of_positions(const BodySystem& sys, const std::array<Vec3, 3>& x) {
    auto s = jacobi_vectors(sys, x);
    WCoords w = w_from_jacobi(jacobi_coords(s[0], s[1]));
    double om = w.norm();
    if (!(om > 0.0)) throw TripleCollisionError("triple collision has no shape");
    return {w.w1 / om, w.w2 / om};
}

}  // namespace

std::string to_string(Family f) {
    switch (f) {
        case Family::Zero: return "Zero";
        case Family::Infinity: return "Infinity";
        case Family::Diabolic: return "Diabolic";
        case Family::Lagrange: return "Lagrange";
        case Family::Langmuir: return "Langmuir";
        case Family::Collinear: return "Collinear";
    }
    return "?";
}

double nu_of_shape(const BodySystem& sys, double w1, double w2, int k) {
    double V = potential_on_disk(sys, w1, w2);
    return 0.5 * principal_on_disk(w1, w2, k) * V * V;
}

std::array<double, 2> shape_of_positions(const BodySystem& sys, const std::array<Vec3, 3>& x) {
    auto s = jacobi_vectors(sys, x);
    Shape sh = normalize_shape(jacobi_coords(s[0], s[1])).shape;
    return {sh.w1(), sh.w2()};
}

std::vector<CriticalValue> nu_infinity(const BodySystem& sys) {
    const auto& m = sys.masses;
    std::vector<CriticalValue> out;
    const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
    for (const auto& pr : pairs) {
        double alpha = sys.alphas[alpha_index(pr[0], pr[1])];
        if (!(alpha > 0.0)) continue;
        CriticalValue cv;
        cv.nu = 0.5 * reduced_mass(m[pr[0]], m[pr[1]]) * alpha * alpha;
        cv.family = Family::Infinity;
        cv.axis = 1;
        cv.detail = "pair " + std::to_string(pr[0] + 1) + "-" + std::to_string(pr[1] + 1);
        out.push_back(cv);
    }
    return out;
}

CriticalValue nu_diabolic(const BodySystem& sys) {
    const auto& m = sys.masses;
    const auto& al = sys.alphas;
    double s = al[0] * std::sqrt(reduced_mass(m[1], m[2])) + al[1] * std::sqrt(reduced_mass(m[0], m[2])) +
               al[2] * std::sqrt(reduced_mass(m[0], m[1]));
    CriticalValue cv;
    cv.nu = 0.5 * s * s;
    cv.family = Family::Diabolic;
    cv.axis = 1;
    cv.w = std::array<double, 2>{0.0, 0.0};
    cv.detail = "perpendicular equal-length Jacobi vectors";
    return cv;
}

double nu_diabolic_inverse_mass_term(const BodySystem& sys) {
    const auto& m = sys.masses;
    const auto& al = sys.alphas;
    double s = al[0] * std::sqrt(reduced_mass(m[1], m[2])) + al[1] * std::sqrt(reduced_mass(m[0], m[2])) +
               al[2] * std::sqrt((m[0] + m[1]) / (m[0] * m[1]));
    return 0.5 * s * s;
}

CriticalValue nu_lagrange(const BodySystem& sys) {
    const auto& m = sys.masses;
    const auto& al = sys.alphas;
    double G1 = al[0] / (m[1] * m[2]), G2 = al[1] / (m[0] * m[2]), G3 = al[2] / (m[0] * m[1]);
    if (!(G1 > 0.0 && G2 > 0.0 && G3 > 0.0) || !rel_equal(G1, G2, 1e-12) || !rel_equal(G1, G3, 1e-12))
        throw UnsupportedFamilyError("Lagrange family needs gravitational couplings alpha_k = G m_i m_j");
    double G = (G1 + G2 + G3) / 3.0;
    double S = m[0] * m[1] + m[1] * m[2] + m[0] * m[2];
    CriticalValue cv;
    cv.nu = 0.5 * G * G * S * S * S / sys.total_mass();
    cv.family = Family::Lagrange;
    cv.axis = 3;
    cv.w = shape_of_positions(sys, {Vec3(0, 0, 0), Vec3(1, 0, 0), Vec3(0.5, std::sqrt(3.0) / 2.0, 0)});
    cv.detail = "equilateral G=" + fmt("%.12g", G);
    return cv;
}

LangmuirGeometry langmuir_geometry(const BodySystem& sys) {
    const auto& m = sys.masses;
    const auto& al = sys.alphas;
    if (!rel_equal(m[0], m[1], 1e-12) || !rel_equal(al[0], al[1], 1e-12) || !(al[1] > 0.0) || !(al[2] < 0.0))
        throw UnsupportedFamilyError("Langmuir family needs m1 = m2, alpha1 = alpha2 > 0, alpha3 < 0");
    double ratio = -al[2] / (4.0 * al[1]);
    if (!(ratio > 0.0 && ratio < 1.0)) throw UnsupportedFamilyError("no Langmuir angle: -alpha3/(4 alpha2) not in (0,1)");
    LangmuirGeometry g;
    double sn = std::cbrt(ratio);
    g.theta = std::asin(sn);
    double cs = std::cos(g.theta);
    g.a = 1.0;
    g.b = sn;
    g.c = 2.0 * m[0] * cs / (2.0 * m[0] + m[2]);
    g.d = m[2] * cs / (2.0 * m[0] + m[2]);
    g.mu = 2.0 * m[0] * m[2] / (2.0 * m[0] + m[2]);
    return g;
}

CriticalValue nu_langmuir(const BodySystem& sys) {
    LangmuirGeometry g = langmuir_geometry(sys);
    const auto& al = sys.alphas;
    double sn = std::sin(g.theta), cs = std::cos(g.theta);
    CriticalValue cv;
    cv.nu = 0.5 * g.mu * (cs * cs * cs * cs / sn) * (4.0 * al[1] * al[1] * sn + al[1] * al[2]);
    cv.family = Family::Langmuir;
    // Bodies 1 and 2 mirror each other across the rotation axis.
    cv.w = shape_of_positions(sys, {Vec3(g.d, g.b, 0), Vec3(g.d, -g.b, 0), Vec3(-g.c, 0, 0)});
    double best = 1e300;
    for (int k = 1; k <= 2; ++k) {
        double err = std::abs(nu_of_shape(sys, (*cv.w)[0], (*cv.w)[1], k) - cv.nu);
        if (err < best) {
            best = err;
            cv.axis = k;
        }
    }
    if (best > 1e-9 * cv.nu) throw ConsistencyError("Langmuir shape does not reproduce the closed-form value");
    cv.detail = "theta_deg=" + fmt("%.12g", g.theta * 180.0 / std::numbers::pi) + " b/a=" + fmt("%.12g", g.b) +
                " c/a=" + fmt("%.12g", g.c) + " d/a=" + fmt("%.12g", g.d);
    return cv;
}

std::vector<CriticalValue> collinear_configs(const BodySystem& sys) {
    const auto& m = sys.masses;
    double M = sys.total_mass();
    std::vector<CriticalValue> out;
    for (int j = 0; j < 3; ++j) {
        int i = j == 0 ? 1 : 0;
        int k = j == 2 ? 1 : 2;
        double aij = sys.alphas[alpha_index(i, j)], ajk = sys.alphas[alpha_index(j, k)],
               aik = sys.alphas[alpha_index(i, k)];
        // i at 0, j at s, k at 1.
        auto V = [&](double s) { return -aij / s - ajk / (1.0 - s) - aik; };
        auto dV = [&](double s) { return aij / (s * s) - ajk / ((1.0 - s) * (1.0 - s)); };
        auto I = [&](double s) { return (m[i] * m[j] * s * s + m[j] * m[k] * (1.0 - s) * (1.0 - s) + m[i] * m[k]) / M; };
        auto dI = [&](double s) { return (2.0 * m[i] * m[j] * s - 2.0 * m[j] * m[k] * (1.0 - s)) / M; };
        // d nu / ds = V h(s); roots of h are the critical points with V != 0.
        auto h = [&](double s) { return 0.5 * dI(s) * V(s) + I(s) * dV(s); };

        constexpr int n = 10000;
        std::vector<double> roots;
        double s_prev = 1.0 / n, h_prev = h(s_prev);
        if (h_prev == 0.0) roots.push_back(s_prev);
        for (int g = 2; g < n; ++g) {
            double s = static_cast<double>(g) / n, hs = h(s);
            if (hs == 0.0) {
                roots.push_back(s);
            } else if (h_prev != 0.0 && (h_prev < 0.0) != (hs < 0.0)) {
                double lo = s_prev, hi = s, hlo = h_prev;
                while (hi - lo > 1e-12) {
                    double mid = 0.5 * (lo + hi), hm = h(mid);
                    if (hm == 0.0) {
                        lo = hi = mid;
                        break;
                    }
                    if ((hm < 0.0) == (hlo < 0.0)) {
                        lo = mid;
                        hlo = hm;
                    } else {
                        hi = mid;
                    }
                }
                roots.push_back(0.5 * (lo + hi));
            }
            s_prev = s;
            h_prev = hs;
        }
        for (double s : roots) {
            double v = V(s);
            if (!(v < 0.0)) continue;
            std::array<Vec3, 3> x;
            x[i] = Vec3(0, 0, 0);
            x[j] = Vec3(s, 0, 0);
            x[k] = Vec3(1, 0, 0);
            CriticalValue cv;
            cv.nu = 0.5 * I(s) * v * v;
            cv.family = Family::Collinear;
            cv.axis = 3;
            cv.w = w_of_positions(sys, x);
            cv.detail = "middle=" + std::to_string(j + 1) + " r" + std::to_string(i + 1) + std::to_string(j + 1) +
                        "/r" + std::to_string(i + 1) + std::to_string(k + 1) + "=" + fmt("%.12g", s);
            out.push_back(cv);
        }
    }
    return out;
}

double relequil_shape_residual(const BodySystem& sys, const Shape& s, int k) {
    JacobiShapeCoords j = jacobi_from_shape(s);
    Vec3 q(j.rho1, j.rho2, j.phi);
    InertiaData in = inertia(j);
    double V = potential_jacobi(sys, q);
    double Mk = in.principal[k - 1];
    if (!(V < 0.0)) return std::numeric_limits<double>::infinity();
    double r = std::sqrt(-Mk * V);
    Vec3 J = r * principal_axes(j).col(k - 1);
    RelequilResidual res = relequil_residual(sys, q, J);
    return std::max(res.res1.norm() / (r * r / Mk), res.res3.norm() / std::abs(V));
}

namespace {

struct DiskPotential {
    std::array<double, 3> c0, c1, c2, alpha;

    explicit DiskPotential(const BodySystem& sys) {
        const auto& m = sys.masses;
        auto [mu1, mu2] = jacobi_frame(sys);
        double a = m[2] / (m[0] + m[2]), b = m[0] / (m[0] + m[2]);
        double kk = 1.0 / std::sqrt(mu1 * mu2);
        double h1 = 0.5 / mu1, h2 = 0.5 / mu2;
        c0 = {a * a * h1 + h2, h1, b * b * h1 + h2};
        c1 = {a * a * h1 - h2, h1, b * b * h1 - h2};
        c2 = {-a * kk, 0.0, b * kk};
        alpha = {sys.alphas[2], sys.alphas[1], sys.alphas[0]};
    }

    // f = sqrt(M_k) V and its gradient in (w1, w2).
    double eval(const Eigen::Vector2d& w, int k, Eigen::Vector2d* grad) const {
        double V = 0.0;
        Eigen::Vector2d dV(0.0, 0.0);
        for (int p = 0; p < 3; ++p) {
            double r2 = c0[p] + c1[p] * w[0] + c2[p] * w[1];
            double ir = 1.0 / std::sqrt(r2);
            V -= alpha[p] * ir;
            dV += 0.5 * alpha[p] * ir * ir * ir * Eigen::Vector2d(c1[p], c2[p]);
        }
        double rho = w.norm();
        double Mk = principal_on_disk(w[0], w[1], k);
        Eigen::Vector2d dM(0.0, 0.0);
        if (k == 1) dM = -w / (2.0 * rho);
        if (k == 2) dM = w / (2.0 * rho);
        double sq = std::sqrt(Mk);
        if (grad) *grad = sq * dV + V * dM / (2.0 * sq);
        return sq * V;
    }
};

struct SeedResult {
    bool ok = false;
    Eigen::Vector2d w;
};

SeedResult newton_from(const DiskPotential& P, Eigen::Vector2d w, int k, double r_max, double r_min) {
    SeedResult out;
    Eigen::Vector2d g;
    double f = P.eval(w, k, &g);
    auto inside = [&](const Eigen::Vector2d& x) {
        double r = x.norm();
        return r < r_max && r > r_min;
    };
    for (int it = 0; it < 200; ++it) {
        double gn = g.norm();
        if (!std::isfinite(gn)) return out;
        if (gn <= 1e-13 * (1.0 + std::abs(f))) break;
        double hstep = 1e-6 * std::min(1.0, 1.0 - w.norm());
        Eigen::Matrix2d H;
        for (int c = 0; c < 2; ++c) {
            Eigen::Vector2d e = Eigen::Vector2d::Zero();
            e[c] = hstep;
            Eigen::Vector2d gp, gm;
            P.eval(w + e, k, &gp);
            P.eval(w - e, k, &gm);
            H.col(c) = (gp - gm) / (2.0 * hstep);
        }
        H = 0.5 * (H + H.transpose()).eval();
        Eigen::Vector2d step = -H.fullPivLu().solve(g);
        if (!step.allFinite()) return out;
        double t = 1.0;
        bool moved = false;
        for (int ls = 0; ls < 40; ++ls, t *= 0.5) {
            Eigen::Vector2d wn = w + t * step;
            if (!inside(wn)) continue;
            Eigen::Vector2d gn2;
            double fn = P.eval(wn, k, &gn2);
            if (std::isfinite(fn) && gn2.norm() < gn) {
                w = wn;
                g = gn2;
                f = fn;
                moved = true;
                break;
            }
        }
        if (!moved) break;
        if (t * step.norm() < 1e-15) break;
    }
    if (!inside(w) || !(g.norm() <= 1e-9 * (1.0 + std::abs(f)))) return out;
    out.ok = true;
    out.w = w;
    return out;
}

std::vector<CriticalShape> find_critical_shapes_impl(const BodySystem& sys, int k, bool parallel) {
    if (k < 1 || k > 3) throw PreconditionError("axis k must be 1, 2 or 3");
    DiskPotential P(sys);
    constexpr int N = 64;
    const double r_max = 1.0 - 1e-3;
    const double r_min = k < 3 ? 1e-3 : -1.0;
    std::vector<SeedResult> results(N * N);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int idx = 0; idx < N * N; ++idx) {
        int i = idx % N, j = idx / N;
        Eigen::Vector2d w(-1.0 + (2.0 * i + 1.0) / N, -1.0 + (2.0 * j + 1.0) / N);
        double r = w.norm();
        if (r >= r_max || r <= r_min) continue;
        results[idx] = newton_from(P, w, k, r_max, r_min);
    }
    std::vector<CriticalShape> out;
    for (const auto& res : results) {
        if (!res.ok) continue;
        bool dup = false;
        for (const auto& c : out)
            if (std::hypot(c.shape.w1() - res.w[0], c.shape.w2() - res.w[1]) < 1e-6) dup = true;
        if (dup) continue;
        Shape s(res.w[0], res.w[1]);
        double V = potential_on_disk(sys, s.w1(), s.w2());
        if (!(V < 0.0)) continue;
        double resid = relequil_shape_residual(sys, s, k);
        if (!(resid < 1e-6)) continue;
        out.push_back({s, nu_of_shape(sys, s.w1(), s.w2(), k), resid});
    }
    std::sort(out.begin(), out.end(), [](const CriticalShape& a, const CriticalShape& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        if (a.shape.w1() != b.shape.w1()) return a.shape.w1() < b.shape.w1();
        return a.shape.w2() < b.shape.w2();
    });
    return out;
}

}  // namespace

std::vector<CriticalShape> find_critical_shapes(const BodySystem& sys, int k) {
    return find_critical_shapes_impl(sys, k, true);
}

std::vector<CriticalShape> find_critical_shapes_serial(const BodySystem& sys, int k) {
    return find_critical_shapes_impl(sys, k, false);
}

std::vector<CriticalValue> critical_catalog(const BodySystem& sys) {
    sys.validate();
    std::vector<CriticalValue> all;
    CriticalValue zero;
    zero.nu = 0.0;
    zero.family = Family::Zero;
    zero.detail = "E = 0";
    all.push_back(zero);
    for (auto& cv : nu_infinity(sys)) all.push_back(cv);
    all.push_back(nu_diabolic(sys));
    try {
        all.push_back(nu_lagrange(sys));
    } catch (const UnsupportedFamilyError&) {
    }
    try {
        all.push_back(nu_langmuir(sys));
    } catch (const UnsupportedFamilyError&) {
    }
    for (auto& cv : collinear_configs(sys)) all.push_back(cv);

    std::stable_sort(all.begin(), all.end(), [](const CriticalValue& a, const CriticalValue& b) {
        if (a.nu != b.nu) return a.nu < b.nu;
        return a.family < b.family;
    });
    std::vector<CriticalValue> out;
    for (auto& cv : all) {
        if (cv.merged.empty()) cv.merged.push_back(cv.family);
        if (!out.empty() && std::abs(cv.nu - out.back().nu) <= 1e-9) {
            auto& head = out.back();
            head.multiplicity += cv.multiplicity;
            head.merged.push_back(cv.family);
            head.detail += "; " + to_string(cv.family) + ": " + cv.detail;
            if (!head.w && cv.w) {
                head.w = cv.w;
                head.axis = cv.axis;
            }
            continue;
        }
        out.push_back(cv);
    }
    return out;
}

std::string catalog_csv(const std::vector<CriticalValue>& cat) {
    std::string out = "nu,family,axis,multiplicity,w1,w2,detail\n";
    for (const auto& cv : cat) {
        std::string fam;
        for (Family f : cv.merged.empty() ? std::vector<Family>{cv.family} : cv.merged) {
            std::string name = to_string(f);
            if (fam.find(name) != std::string::npos) continue;
            if (!fam.empty()) fam += "+";
            fam += name;
        }
        out += fmt("%.12g", cv.nu) + "," + fam + "," + std::to_string(cv.axis) + "," +
               std::to_string(cv.multiplicity) + ",";
        if (cv.w)
            out += fmt("%.12g", (*cv.w)[0]) + "," + fmt("%.12g", (*cv.w)[1]);
        else
            out += ",";
        out += "," + cv.detail + "\n";
    }
    return out;
}

}  // namespace c3b
