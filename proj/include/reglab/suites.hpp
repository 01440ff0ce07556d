#pragma once

#include <string>
#include <vector>

#include "reglab/report.hpp"

namespace reglab {

struct RunConfig {
    int N = 2;
    long p = 5;
    long m = 6;
    int D = 10;            // z-degree bound for the group-algebra layer
    int weil_degree = 6;   // total-degree bound for Weil slices
    int max_level = 4;     // cosimplicial levels
    unsigned long seed = 20240513;
    bool extended = false;

    void validate() const;  // throws DomainError on bad values
};

SuiteResult suite_ce(const RunConfig& cfg);
SuiteResult suite_weil(const RunConfig& cfg);
SuiteResult suite_suspension(const RunConfig& cfg);
SuiteResult suite_normalization(const RunConfig& cfg);
SuiteResult suite_phi_psi(const RunConfig& cfg);
SuiteResult suite_lazard(const RunConfig& cfg);
SuiteResult suite_shadow(const RunConfig& cfg);
SuiteResult suite_engine(const RunConfig& cfg);

/// Suites for `verify all` in a deterministic order.
std::vector<std::string> all_suite_names();
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

/// t^k coefficients of prod_{i=1..N} (1 + t^(2i-1)), degrees 0..N^2.
std::vector<int> expected_betti(int N);

}  // namespace reglab
