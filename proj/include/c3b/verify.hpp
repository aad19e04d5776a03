// Relative-equilibrium initial conditions and the end-to-end verification report.
#pragma once

#include <string>
#include <vector>

#include "c3b/critical.hpp"
#include "c3b/reduction.hpp"

namespace c3b {

// Throws PreconditionError if the entry has no interior shape or no axis.
RovibState build_relequil_state(const BodySystem& sys, const CriticalValue& cv, double r);

// 2 pi r / |V| at the state.
double characteristic_period(const BodySystem& sys, const RovibState& s);

struct Check {
    std::string name;
    bool pass;
    double measured;
    double tol;
};

struct VerificationReport {
    std::vector<Check> checks;
    bool all_pass() const;
    std::string text() const;  // one "CHECK <name> <PASS|FAIL> measured=<v> tol=<t>" line per check
};

VerificationReport verify_all(const BodySystem& sys);

}  // namespace c3b
