#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gt/bitvec.hpp"
#include "gt/model.hpp"

// Brute-force verifiers over column subsets. Subsets are enumerated in
// colex order; a failing report carries the first violation in that order.

namespace gt::verify {

enum class Status {
    exhaustive,  // every subset was examined
    probable,    // sampled subsets only, no violation among them
    refuted,     // a sampled subset violates the property (the witness is exact)
};

std::string to_string(Status s);

struct Params {
    std::size_t d = 0;
    std::size_t p = 0;
    std::size_t s = 0;
    std::size_t lambda = 0;
};

struct PropertyReport {
    std::string property;
    bool holds = true;
    /// Index sets of the violation (0-indexed), present iff !holds:
    ///   union_bounded: {D}
    ///   cover_free / pd_cover_free: {P, Q} with OR(P) covered by OR(Q)
    ///   separable: {A, B} with equal ORs
    ///   pairwise_intersection: {{i, j}}
    std::optional<std::vector<std::vector<std::size_t>>> witness;
    std::uint64_t work = 0;  // subsets (or pairs) examined
    Status status = Status::exhaustive;
    double coverage = 1.0;   // examined / total
    Params params;
};

struct VerifyOptions {
    std::uint64_t work_cap = 1'000'000;
    bool allow_sampling = false;
    std::uint64_t seed = 0;
    std::uint64_t samples = 200'000;
    std::size_t workers = 0;  // 0 = hardware concurrency
};

/// Every d-subset of columns has OR-weight <= s.
PropertyReport is_union_bounded(const Design& design, std::size_t d, std::size_t s, const VerifyOptions& opts = {});

/// No column is covered by the OR of min(d, n-1) other columns.
PropertyReport is_cover_free(const Design& design, std::size_t d, const VerifyOptions& opts = {});

/// No OR of p columns is covered by the OR of d other columns disjoint from them.
PropertyReport is_pd_cover_free(const Design& design, std::size_t p, std::size_t d, const VerifyOptions& opts = {});

/// ORs of all subsets of size <= d are pairwise distinct.
PropertyReport is_separable(const Design& design, std::size_t d, const VerifyOptions& opts = {});

/// Every pair of distinct columns shares at most lambda pools.
PropertyReport pairwise_intersection_at_most(const Design& design, std::size_t lambda);

/// Union-bounded (d, s) and (p, d)-cover-free; the first failing report, or
/// the pd report with work summed.
PropertyReport verify_design(const Design& design, std::size_t p, std::size_t d, std::size_t s,
                             const VerifyOptions& opts = {});

/// Identifiers accepted by check().
const std::vector<std::string>& property_ids();

PropertyReport check(const Design& design, const std::string& property, const Params& params,
                     const VerifyOptions& opts = {});

/// Sequentially visits the k-subsets of [n] in colex order until `visit`
/// returns false. Over the work cap it visits seeded uniform samples if
/// allowed, else throws WorkCapExceeded. Returns subsets visited and status.
std::pair<std::uint64_t, Status> visit_subsets(std::size_t n, std::size_t k, const VerifyOptions& opts,
                                               const std::function<bool(const std::vector<std::size_t>&)>& visit);

/// Re-evaluates a failing report's witness with the model primitives.
bool replays(const Design& design, const PropertyReport& report);

/// First pair (i, j), i != j, with family[i] a subset of family[j], if any.
std::optional<std::pair<std::size_t, std::size_t>> sperner_violation(const std::vector<BitVec>& family);

/// sum over members of 1 / C(ground, |G|). Throws DomainError naming the
/// witness pair when the family is not an antichain.
double lym_diagnostic(const std::vector<BitVec>& family, std::size_t ground);

}  // namespace gt::verify
