#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Closed-form bound evaluators. Logarithms are base 2 throughout this
// module. Values are extended reals: a ratio whose denominator is <= 0
// (typically the log of something <= 1) evaluates to +inf.

namespace gt::bounds {

struct BoundQuery {
    std::uint64_t n = 1;
    std::uint64_t d = 1;
    std::uint64_t t = 1;
    std::optional<double> y;  // yes budget; selects the case where a theorem splits on it
    std::optional<std::uint64_t> p;
    std::optional<std::uint64_t> s;
};

struct Branch {
    std::string label;
    double value = 0;
};

struct BoundReport {
    std::string theorem_id;
    std::optional<double> value;  // empty when y was needed to pick a case but not supplied
    std::string case_taken;       // "undetermined" when value is empty
    BoundQuery inputs;
    std::vector<Branch> branches;  // every branch that was evaluated, taken one included
};

double binary_entropy(double x);

/// (a/b) log(e b / a), which dominates H(a/b).
double entropy_upper_bound(std::uint64_t a, std::uint64_t b);

/// Smallest y with sum_{i<=y} C(t,i) >= C(n,d) (exact); nullopt when 2^t < C(n,d).
std::optional<std::uint64_t> min_yes_exact(std::uint64_t n, std::uint64_t d, std::uint64_t t);

/// max{d, d log(n/d) / log alpha}: alpha = 4 if y > t/2, else e t / y.
BoundReport adaptive_yes_lower(const BoundQuery& q);
/// Same bound with alpha replaced by e t log(e t/d) / (d log(n/d)) in the y <= t/2 case.
BoundReport adaptive_yes_lower_closed(const BoundQuery& q);
BoundReport adaptive_yes_upper(const BoundQuery& q);

BoundReport cff_pd_size_upper(const BoundQuery& q);
BoundReport cff_size_upper(const BoundQuery& q);
BoundReport sep_size_upper(const BoundQuery& q);
BoundReport nonadaptive_yes_lower(const BoundQuery& q);

BoundReport cff_pd_exists(const BoundQuery& q);
/// The p = 1 existence statement, evaluated from its own formula.
BoundReport cff_exists(const BoundQuery& q);
BoundReport nonadaptive_yes_upper(const BoundQuery& q);

BoundReport twostage_yes_upper(const BoundQuery& q);
/// The p = d specialization, with its own threshold t/2 and constant chi'.
BoundReport twostage_yes_upper_pd(const BoundQuery& q);

/// Union bound on the probability that one sampled matrix is not a
/// union-bounded (p,d)-cover-free family:
/// 2 C(n,d+p) C(d+p,p) (s/(e t))^{s(p/d+1)} sum_{a<=s} C(t,a).
double sampler_failure_bound(std::uint64_t t, std::uint64_t n, std::uint64_t d, std::uint64_t p, std::uint64_t s);

/// Identifiers accepted by evaluate().
const std::vector<std::string>& theorem_ids();

/// Dispatch by identifier; throws DomainError on an unknown id.
BoundReport evaluate(std::string_view theorem_id, const BoundQuery& q);

}  // namespace gt::bounds
