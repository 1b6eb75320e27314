#pragma once

// Verification suites run by `halfwave verify`. Each check produces one row
// (identity, quantity, expected, measured, tolerance, pass).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "halfwave/flux.hpp"
#include "halfwave/report.hpp"

namespace halfwave {

enum class Check { Abs, Rel, AtMost, AtLeast, Exact };

struct SuiteRow {
    std::string identity;
    std::string quantity;
    double expected = 0.0;
    double measured = 0.0;
    double tolerance = 0.0;
    Check check = Check::Abs;
    bool pass = false;
    std::string note;  ///< error text when the check could not be evaluated

    static SuiteRow make(std::string identity, std::string quantity, double expected,
                         double measured, double tolerance, Check check);
    static SuiteRow failed(std::string identity, std::string quantity, std::string note);

    std::string tolerance_text() const;
};

struct SuiteSettings {
    std::uint64_t seed = 1;
    /// Levels of the refinement sweeps (at least 2).
    int refine = 3;
    std::size_t audit_samples = 100000;
    /// Extra flux from the run configuration; audited and solved with.
    std::optional<StructuralFlux> configured_flux;
};

/// Names accepted by run_suite.
const std::vector<std::string>& suite_names();

/// Runs one suite ("fraccalc", "seminorms", "flux", "solver", "traces") or
/// all of them ("all"). Throws InvalidArgument for an unknown name.
std::vector<SuiteRow> run_suite(const std::string& name, const SuiteSettings& settings);

CsvTable suite_table(const std::vector<SuiteRow>& rows);

}  // namespace halfwave
