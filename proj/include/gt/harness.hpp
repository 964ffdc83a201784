#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

// Parameter sweeps and bound-conformance tables.

namespace gt::harness {

enum class SweepKind { adaptive, nonadaptive, twostage };

std::string to_string(SweepKind k);
SweepKind sweep_kind_from(const std::string& s);

struct SweepSpec {
    SweepKind kind = SweepKind::adaptive;
    std::vector<std::uint64_t> n, d;
    std::vector<std::uint64_t> t, p, s, f;  // optional axes: empty means unset
    std::string strategy = "auto";          // adaptive: auto|individual|staged|hwang
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::uint64_t measure_cap = 2'000'000;  // hidden sets per exhaustive measurement
    std::uint64_t work_cap = 1'000'000;     // subsets per verification
    std::size_t max_attempts = 50;
    std::optional<double> z;
    std::size_t workers = 0;
};

/// Applies one key=value setting; throws DomainError on an unknown key or bad value.
/// Lists accept "1,2,5" and ranges "4..8".
void apply_setting(SweepSpec& spec, const std::string& key, const std::string& value);

/// Parses "1,2,5" or "4..8" (or a mix); `key` names the setting in errors.
std::vector<std::uint64_t> parse_list(const std::string& key, const std::string& value);

/// Reads a key=value file (blank lines, '#' comments and [section] headers ignored,
/// values may be quoted). Keys keep file order.
std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text);

enum class CheckKind { upper, lower, info };

std::string to_string(CheckKind k);

struct Check {
    std::string name;
    CheckKind kind = CheckKind::info;
    std::string measured_key;          // "max_yes", "max_tests", ...
    std::optional<double> bound;       // empty when not applicable; +inf allowed
    std::optional<bool> pass;          // empty for info checks and n/a bounds

    friend bool operator==(const Check&, const Check&) = default;
};

/// Recomputes a check's flag from the measured value and the stored bound.
/// Lower bounds of +inf are degenerate and count as not applicable.
std::optional<bool> evaluate_flag(CheckKind kind, double measured, std::optional<double> bound);

struct ConformanceRow {
    std::size_t index = 0;
    std::map<std::string, std::optional<std::uint64_t>> params;  // n d t p s f
    std::string strategy;
    std::string status = "ok";  // ok | skipped | error
    std::string note;
    std::uint64_t runs = 0;
    bool correct = true;
    std::map<std::string, std::uint64_t> measured;  // max_tests, max_yes, ...
    std::vector<Check> checks;

    /// Correct, and no failing upper or lower check; skipped rows pass.
    bool pass() const;

    friend bool operator==(const ConformanceRow&, const ConformanceRow&) = default;
};

using Table = std::vector<ConformanceRow>;

/// Runs the grid. Rows come back in grid order whatever the completion order.
Table sweep(const SweepSpec& spec);

/// Value rounded to 12 significant digits, as serialized.
double round12(double x);
/// 12 significant digits; infinities as "+inf"/"-inf".
std::string format_number(double x);

/// Fixed header for a sweep kind.
std::vector<std::string> csv_header(SweepKind kind);
void write_csv(std::ostream& os, SweepKind kind, const Table& table);

std::string table_to_json(const Table& table);
Table table_from_json(const std::string& text);

/// 0 when every row passes, 2 otherwise.
int exit_code(const Table& table);

}  // namespace gt::harness
