// Full verification matrix: endpoint phases, visibility structure,
// closed-form cross-validation for every formula, invariant values,
// preparation fidelity, calibration, and DSL conformance. Backs the
// `check` command.

#pragma once

#include <string>
#include <vector>

namespace topo {

enum class CheckStatus { Pass, Fail, Recorded };

struct CheckRow {
    std::string name;
    double value = 0.0;     // measured deviation (or count)
    double threshold = 0.0; // pass when value <= threshold
    CheckStatus status = CheckStatus::Fail;
    std::string note;
};

struct CheckReport {
    std::vector<CheckRow> rows;
    double elapsed_seconds = 0.0;

    // Recorded rows annotate known discrepancies and do not fail the run.
    bool all_passed() const;
};

// default_tol feeds the rows whose contract tolerance is 1e-9 (the
// TOPOPHASE_TOL override hook); sharper pinned tolerances are fixed.
CheckReport run_checks(double default_tol = 1e-9);

std::string check_table(const CheckReport& report);
std::string check_json(const CheckReport& report);

// Parses n mutated scripts (fixed seed: deterministic); returns how many
// inputs produced anything other than success or a structured script
// error. Zero means the parser is total.
int fuzz_parser(int n, unsigned seed);

} // namespace topo
