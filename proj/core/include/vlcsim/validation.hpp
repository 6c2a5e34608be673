#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "vlcsim/montecarlo.hpp"

namespace vlcsim {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

struct ValidationOptions {
    std::uint64_t seed = 1;
    unsigned workers = 0;
};

/// Statistical agreement helper: |analytic - mc| within three binomial
/// standard errors, evaluated at whichever of the two proportions gives the
/// wider (more conservative) interval. Handles the zero-error-count tail.
bool agrees_within_3sigma(double analytic, const SerEstimate& mc);

/// Runs the full acceptance suite; one result per criterion.
std::vector<CriterionResult> run_acceptance_suite(const ValidationOptions& options = {});

/// Prints one pass/fail line per criterion; returns the failure count.
int run_validation_report(const ValidationOptions& options, std::ostream& out);

}  // namespace vlcsim
