// c3b: critical values, Hill-region scans and reduced dynamics of charged three-body systems.
//
// Sign convention: nu = -E r^2, so nu > 0 means E < 0 and nu <= 0 means E >= 0 at r > 0.
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "c3b/critical.hpp"
#include "c3b/hill.hpp"
#include "c3b/reduction.hpp"
#include "c3b/scan.hpp"
#include "c3b/verify.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kCompute = 1;

struct Source {
    std::string preset;
    std::string path;
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void add_source(CLI::App* cmd, Source& src) {
    auto* p = cmd->add_option("--preset", src.preset, "gravity-demo | helium | eep");
    auto* f = cmd->add_option("--system", src.path, "system file with 'masses' and 'alphas' lines");
    p->excludes(f);
    f->excludes(p);
}

c3b::BodySystem resolve(const Source& src) {
    if (src.preset.empty() == src.path.empty()) throw UsageError("exactly one of --preset or --system is required");
    try {
        return src.preset.empty() ? c3b::load_system(src.path) : c3b::preset(src.preset);
    } catch (const c3b::PreconditionError& e) {
        throw UsageError(e.what());
    }
}

std::string g12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void write_out(const std::string& path, const std::string& data) {
    if (path.empty() || path == "-") {
        std::cout << data;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw c3b::Error("cannot open output file: " + path);
    f << data;
    if (!f) throw c3b::Error("write failed: " + path);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Critical values and Hill regions of charged three-body systems"};
    app.require_subcommand(1);

    Source src;
    double nu = 0.0, r = 1.0, dt = 0.0;
    int res = 400, axis = 1;
    std::size_t steps = 10000;
    std::string ppm, csv;
    std::vector<double> shape, jhat;
    bool chi_psi = false;

    auto* critical = app.add_subcommand("critical", "catalog of critical values as CSV");
    add_source(critical, src);
    critical->add_option("--csv", csv, "output path (default stdout)");

    auto* classify = app.add_subcommand("classify", "evaluate one shape, optionally one orientation");
    add_source(classify, src);
    classify->add_option("--nu", nu, "bifurcation parameter -E r^2")->required();
    classify->add_option("--shape", shape, "w1 w2")->expected(2)->required();
    classify->add_option("--jhat", jhat, "unit angular momentum in the principal frame")->expected(3);
    classify->add_option("--r", r, "angular momentum magnitude");

    auto* scan = app.add_subcommand("scan", "classify the shape disk");
    add_source(scan, src);
    scan->add_option("--nu", nu, "bifurcation parameter -E r^2")->required();
    scan->add_option("--res", res, "pixels per side");
    scan->add_option("--ppm", ppm, "PPM output path");
    scan->add_option("--csv", csv, "CSV output path");

    auto* contours = app.add_subcommand("contours", "grid of sqrt(M_k) V over the disk or the (chi, psi) rectangle");
    add_source(contours, src);
    contours->add_option("--axis", axis, "principal axis k")->check(CLI::Range(1, 3));
    contours->add_option("--res", res, "pixels per side");
    contours->add_option("--ppm", ppm, "PPM output path");
    contours->add_option("--csv", csv, "CSV output path");
    contours->add_flag("--chi-psi", chi_psi, "sample psi in [0, 2 pi) and chi in [0, pi/2]");

    auto* simulate = app.add_subcommand("simulate", "integrate the reduced equations of motion");
    add_source(simulate, src);
    simulate->add_option("--shape", shape, "initial shape w1 w2 (default: first relative equilibrium)")->expected(2);
    simulate->add_option("--jhat", jhat, "angular momentum direction in the principal frame")->expected(3);
    simulate->add_option("--r", r, "angular momentum magnitude");
    simulate->add_option("--dt", dt, "time step (default 1e-3 characteristic period)");
    simulate->add_option("--steps", steps, "number of RK4 steps");
    simulate->add_option("--csv", csv, "trajectory CSV path (default stdout)");

    auto* verify = app.add_subcommand("verify", "run the verification report");
    add_source(verify, src);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        c3b::BodySystem sys = resolve(src);
        if (res < 2) throw UsageError("--res must be at least 2");

        if (critical->parsed()) {
            write_out(csv, c3b::catalog_csv(c3b::critical_catalog(sys)));
        } else if (classify->parsed()) {
            c3b::Shape sh(shape[0], shape[1]);
            c3b::ShapeEvaluation ev = c3b::shape_eval(sys, sh);
            std::cout << "w1=" << g12(sh.w1()) << " w2=" << g12(sh.w2()) << "\n"
                      << "V=" << g12(ev.V_tilde) << "\n"
                      << "M=" << g12(ev.M_tilde[0]) << "," << g12(ev.M_tilde[1]) << "," << g12(ev.M_tilde[2]) << "\n"
                      << "class=" << c3b::to_string(c3b::orientation_class(ev, nu)) << "\n";
            if (!jhat.empty()) {
                if (!(r > 0.0)) throw UsageError("--r must be positive");
                c3b::Vec3 J(jhat[0], jhat[1], jhat[2]);
                double E = -nu / (r * r);
                c3b::HillMembership m = c3b::membership(sys, E, r, sh, J);
                std::cout << "E=" << g12(E) << "\n"
                          << "member=" << (m.member ? "true" : "false") << "\n"
                          << "region=" << c3b::to_string(m.region_case) << "\n"
                          << "discriminant=" << g12(m.discriminant) << "\n"
                          << "bif=" << g12(c3b::bif_function(sys, sh, J)) << "\n";
                if (m.lambda_minus) std::cout << "lambda_minus=" << g12(*m.lambda_minus) << "\n";
                if (m.lambda_plus) std::cout << "lambda_plus=" << g12(*m.lambda_plus) << "\n";
            }
        } else if (scan->parsed()) {
            c3b::ShapeScan s = c3b::scan_disk(sys, nu, res);
            if (!ppm.empty()) write_out(ppm, c3b::render_ppm(s));
            if (!csv.empty()) write_out(csv, c3b::render_csv(s));
            std::cout << "nu=" << g12(nu) << " N=" << res << " " << c3b::to_string(c3b::component_census(s)) << "\n";
        } else if (contours->parsed()) {
            c3b::ValueGrid g = c3b::contour_grid(sys, axis, res, chi_psi);
            if (!ppm.empty()) write_out(ppm, c3b::render_ppm(g));
            if (!csv.empty() || ppm.empty()) write_out(csv, c3b::render_csv(g));
        } else if (simulate->parsed()) {
            if (!(r > 0.0)) throw UsageError("--r must be positive");
            c3b::RovibState s0;
            if (shape.empty()) {
                std::optional<c3b::CriticalValue> pick;
                for (const auto& cv : c3b::critical_catalog(sys))
                    if (cv.w && cv.axis > 0 && std::hypot((*cv.w)[0], (*cv.w)[1]) < 1.0 &&
                        (cv.family == c3b::Family::Lagrange || cv.family == c3b::Family::Langmuir)) {
                        pick = cv;
                        break;
                    }
                if (!pick) throw c3b::Error("no non-collinear relative equilibrium in the catalog; pass --shape");
                s0 = c3b::build_relequil_state(sys, *pick, r);
            } else {
                c3b::Shape sh(shape[0], shape[1]);
                c3b::JacobiShapeCoords j = c3b::jacobi_from_shape(sh);
                c3b::Vec3 dir = jhat.empty() ? c3b::Vec3(0, 0, 1) : c3b::Vec3(jhat[0], jhat[1], jhat[2]);
                if (!(dir.norm() > 0.0)) throw UsageError("--jhat must be nonzero");
                s0.q = c3b::Vec3(j.rho1, j.rho2, j.phi);
                s0.J = r * (c3b::principal_axes(j) * dir.normalized());
                c3b::KineticGeometry kg = c3b::kinetic_geometry(j);
                for (int mu = 0; mu < 3; ++mu) s0.p[mu] = s0.J.dot(kg.gauge[mu]);
            }
            double step = dt > 0.0 ? dt : 1e-3 * c3b::characteristic_period(sys, s0);
            c3b::Trajectory tr = c3b::integrate(sys, s0, step, steps);
            write_out(csv, c3b::trajectory_csv(tr));
            const auto& rep = tr.report;
            std::cerr << "steps=" << rep.steps_taken << " dt=" << g12(step) << " max_dH=" << g12(rep.max_energy_error)
                      << " max_dJ=" << g12(rep.max_J_error) << " max_dq=" << g12(rep.max_q_drift)
                      << " max_dp=" << g12(rep.max_p_drift) << "\n";
            if (rep.truncated) std::cerr << "truncated: " << rep.diagnostic << "\n";
        } else if (verify->parsed()) {
            c3b::VerificationReport rep = c3b::verify_all(sys);
            std::cout << rep.text();
            return rep.all_pass() ? 0 : kCompute;
        }
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCompute;
    }
    return 0;
}
