#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace modflow {

// How a check turns (measured, expected, tol) into pass/fail.
enum class CheckKind {
    AtMost,   // measured <= tol          (discrepancies)
    Near,     // |measured - expected| <= tol
    AtLeast,  // measured >= tol          (lower bounds, e.g. positivity)
    Exact     // pass flag set by the caller
};

struct Check {
    std::string id;
    CheckKind kind = CheckKind::AtMost;
    double measured = 0;
    double expected = 0;
    double tol = 0;
    bool pass = false;
    std::string note;

    bool evaluate() const;
};

struct VerificationReport {
    std::string suite;
    std::vector<Check> checks;
    // resolved constants / signs, written as "key" -> "value"
    std::map<std::string, std::string> annotations;
    std::string inputs_digest;
    double wall_time_s = 0;

    bool passed() const;

    Check& at_most(std::string id, double measured, double tol, std::string note = {});
    Check& near(std::string id, double measured, double expected, double tol, std::string note = {});
    Check& at_least(std::string id, double measured, double bound, std::string note = {});
    Check& exact(std::string id, bool ok, double measured = 0, double expected = 0, std::string note = {});

    void annotate(const std::string& key, const std::string& value) { annotations[key] = value; }
    void merge(const VerificationReport& other, const std::string& prefix = {});

    // replaces the tolerance of AtMost/Near checks and re-evaluates
    void override_tolerance(double tol);
};

std::string to_json(const VerificationReport& r, bool include_timing = true);

// deterministic text form of a double
std::string fmt(double v);

struct CsvTable {
    std::vector<std::string> meta;   // written as '# ' lines
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add_row(std::vector<std::string> r) { rows.push_back(std::move(r)); }
    std::string str() const;
};

// FNV-1a, printed as hex; used for config/input digests
std::string digest(const std::string& s);

} // namespace modflow
