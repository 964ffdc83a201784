#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gt/codes.hpp"
#include "gt/model.hpp"
#include "gt/verify.hpp"

namespace gt::designs {

struct SamplerConfig {
    std::size_t t = 1, n = 1, d = 1, p = 1, s = 1;
    std::optional<double> z;  // probability of a 0 entry; default_z when absent
    std::uint64_t seed = 0;
    std::size_t max_attempts = 1;
};

/// (1 - (s/(e t))^{s(p/d+1)})^{1/d}.
double default_z(std::size_t t, std::size_t d, std::size_t p, std::size_t s);

/// The matrix drawn for (seed, attempt): entry (i, j) reads counter j*t + i
/// of the stream keyed by mix(seed + (attempt+1) * golden), and is 0 iff
/// its uniform value is below z.
Design draw_matrix(std::size_t t, std::size_t n, double z, std::uint64_t seed, std::size_t attempt);

struct SampleResult {
    Design design;
    std::size_t attempts = 0;  // draws made, the returned one included
    double z = 0;
    std::vector<std::string> log;
};

/// Draws until a matrix verifies as union-bounded (d, s) and (p, d)-cover-free.
/// Throws SamplingError with the attempt log when max_attempts run out.
SampleResult sample_design(const SamplerConfig& cfg, const verify::VerifyOptions& opts = {});

/// f(i, a) = i q + a on 0-indexed positions and field elements.
inline std::size_t reduction_index(std::size_t i, std::size_t a, std::size_t q) { return i * q + a; }

/// Family of a code: column j holds f(i, c_j[i]) for every position i.
Design code_to_design(const gf::LinearCode& code);

struct ExplicitOptions {
    std::uint64_t codeword_cap = std::uint64_t{1} << 16;  // limits q^k, hence n
    verify::VerifyOptions verify;
    gf::ConstructOptions construct;
};

struct ExplicitResult {
    Design design;
    gf::LinearCode code;
    std::size_t distance_target = 0;  // ceil(d m / (d+1))
    std::size_t lambda = 0;           // m - distance_target, the pairwise intersection bound
};

/// Default dimension: max(1, min(m - ceil(dm/(d+1)), largest k with q^k <= cap)).
std::size_t explicit_default_k(std::size_t d, std::uint32_t q, std::size_t m, std::uint64_t codeword_cap);

/**
 * Code-based design with t = mq, n = q^k, declared (d, p=1, s=dm). The code
 * has distance >= ceil(dm/(d+1)); without an explicit k the dimension starts
 * at explicit_default_k and steps down while construction fails. Every
 * guaranteed property is re-verified before returning.
 */
ExplicitResult build_explicit(std::size_t d, std::uint32_t q, std::size_t m, std::optional<std::size_t> k = std::nullopt,
                              const ExplicitOptions& opts = {});

struct UnionFloorReport {
    bool holds = true;
    bool precondition_holds = true;
    std::optional<std::pair<std::size_t, std::size_t>> bad_pair;  // intersection above lambda
    std::optional<std::vector<std::size_t>> bad_subset;            // union below the floor
    std::uint64_t work = 0;
    verify::Status status = verify::Status::exhaustive;
};

/// Checks |union of any d columns| >= sum of their weights - d(d-1)/2 lambda,
/// after confirming every pairwise intersection is <= lambda. Exhaustive up
/// to the work cap, seeded sampling beyond it.
UnionFloorReport union_floor_check(const Design& design, std::size_t d, std::size_t lambda,
                                   const verify::VerifyOptions& opts = {});

/// Smallest and largest OR-weight over all min(d, n)-subsets of columns.
std::pair<std::size_t, std::size_t> union_weight_range(const Design& design, std::size_t d,
                                                       const verify::VerifyOptions& opts = {});

}  // namespace gt::designs
