#pragma once

#include "ghecke/homology.hpp"

namespace ghecke {

struct CheckLine {
    std::string id;
    std::string expected;
    std::string actual;
    bool pass = false;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckLine> checks;
    std::vector<std::string> notes;                      // informational lines
    std::vector<std::pair<std::string, double>> timing;  // per criterion, seconds
    bool informational = false;                          // conjecture suite never fails

    bool pass() const;
    int exit_code() const { return informational || pass() ? 0 : 1; }
};

SuiteReport run_suite_core(Exec ex = Exec::parallel);
SuiteReport run_suite_paper(Exec ex = Exec::parallel);
SuiteReport run_suite_conjecture(Exec ex = Exec::parallel);
SuiteReport run_suite(const std::string& name, Exec ex = Exec::parallel);

// Deterministic output: wall times are reported only when include_times is
// set (the CLI keeps them off so identical inputs give identical bytes).
void print_report(const SuiteReport& r, std::ostream& os, bool json_format);
// one line per acceptance criterion, [PASS]/[FAIL] prefixed
void print_criterion_summary(const SuiteReport& r, std::ostream& os, bool include_times = false);

}  // namespace ghecke
