#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gt/bitvec.hpp"
#include "gt/model.hpp"

namespace gt::adaptive {

struct Budget {
    std::optional<std::size_t> max_tests;
    std::optional<std::size_t> max_yeses;
};

/**
 * Answers pool queries against a hidden defective set and keeps the
 * transcript. Going over budget is recorded, never enforced.
 */
class OracleSession {
public:
    OracleSession(std::size_t n, DefectiveSet hidden, Budget budget = {}, bool record_steps = true);

    /// Tests a pool of item indices; true iff it meets the hidden set.
    bool test(std::span<const std::size_t> pool);

    std::size_t n() const noexcept { return n_; }
    const DefectiveSet& hidden() const noexcept { return hidden_; }
    const Transcript& transcript() const noexcept { return transcript_; }
    const Budget& budget() const noexcept { return budget_; }

    bool tests_over_budget() const noexcept;
    bool yeses_over_budget() const noexcept;

private:
    std::size_t n_;
    DefectiveSet hidden_;
    BitVec mask_;
    Budget budget_;
    Transcript transcript_;
};

struct StagePlan {
    std::size_t f = 1;
    std::vector<std::size_t> k;  // k[0] >= k[1] >= ... >= k[f-1] = 1
};

/// k_i = ceil((n/d)^{(f-i)/f}) for i < f, k_f = 1, clamped to be nonincreasing.
StagePlan plan_stages(std::size_t n, std::size_t d, std::size_t f);

/// Test budget of the staged scheme: f d ceil((n/d)^{1/f}) + f d - 1.
std::size_t staged_test_bound(std::size_t n, std::size_t d, std::size_t f);

DefectiveSet run_staged(OracleSession& session, std::size_t d, const StagePlan& plan);
DefectiveSet run_hwang(OracleSession& session, std::size_t d);
DefectiveSet run_individual(OracleSession& session);

enum class StrategyKind { individual, staged, hwang };

struct Strategy {
    StrategyKind kind = StrategyKind::individual;
    StagePlan plan;  // used by staged only

    std::string name() const;
};

Strategy individual();
Strategy staged(std::size_t n, std::size_t d, std::size_t f);
Strategy hwang();

/// Individual testing when t >= n; otherwise the staged scheme with the
/// fewest stages whose test bound fits t while f d <= t/3; otherwise Hwang.
/// Throws InfeasibleError when t < ceil(log C(n,d)).
Strategy choose_strategy(std::size_t n, std::size_t d, std::size_t t);

DefectiveSet run(const Strategy& strategy, OracleSession& session, std::size_t d);

struct RunResult {
    DefectiveSet found;
    std::size_t tests = 0;
    std::size_t yeses = 0;
};

RunResult run_once(const Strategy& strategy, std::size_t n, std::size_t d, const DefectiveSet& hidden);

struct MeasureMode {
    bool exhaustive = true;
    std::uint64_t seed = 0;
    std::size_t trials = 1000;
    std::uint64_t cap = 2'000'000;  // exhaustive refusal threshold on sum_{i<=d} C(n,i)
    std::size_t workers = 0;        // 0 = hardware concurrency
};

struct Measurement {
    std::size_t max_yes = 0;
    std::size_t max_tests = 0;
    std::size_t runs = 0;
    bool all_correct = true;
    std::optional<DefectiveSet> first_failure;
    DefectiveSet worst_yes_set;    // first hidden set (in enumeration order) reaching max_yes
    DefectiveSet worst_tests_set;  // likewise for max_tests
};

/// Runs the strategy on every hidden set of size <= d (exhaustive) or on a
/// seeded uniform sample of them. Throws WorkCapExceeded when exhaustive
/// enumeration would pass the cap.
Measurement measure_max_yes(const Strategy& strategy, std::size_t n, std::size_t d, const MeasureMode& mode = {});

/// Hidden set number `index` in the order: by size, then colex.
DefectiveSet hidden_set_at(std::size_t n, std::size_t d, std::uint64_t index);

}  // namespace gt::adaptive
