#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gt/field.hpp"

namespace gt::gf {

/// H_q(x) = x log_q((q-1)/x) + (1-x) log_q(1/(1-x)), for 0 < x < 1.
double qary_entropy(double q, double x);

/// floor((1 - H_q(delta)) m); delta must lie in (0, 1 - 1/q].
std::size_t gv_dimension(std::uint32_t q, std::size_t m, double delta);

/// ceil(delta m), with a small tolerance so that e.g. (2/3)*6 gives 4.
std::size_t distance_target(double delta, std::size_t m);

using Generator = std::vector<std::vector<Elem>>;  // k rows of length m

struct LinearCode {
    Field field;
    std::size_t m = 0;
    std::size_t k = 0;
    Generator generator;
    std::size_t min_dist = 0;

    /// q^k, the number of codewords.
    std::uint64_t size() const;
    /// Codeword of the message whose base-q digits (row 0 least significant) spell `index`.
    std::vector<Elem> codeword(std::uint64_t index) const;
};

/// Minimum Hamming weight over all q^k - 1 nonzero codewords. Refuses
/// (DomainError) above 2^20 codewords.
std::size_t minimum_distance(const Field& field, const Generator& generator, std::size_t m);

struct ConstructOptions {
    std::uint64_t node_cap = 5'000'000;  // fallback search budget (tree nodes)
};

/**
 * Deterministic [m, k, >= ceil(delta m)]_q code. Each generator entry is
 * chosen greedily (column by column, rows top to bottom) to minimize the
 * expected number of low-weight codewords when the remaining entries are
 * uniform; ties go to the smallest element. If that misses the distance, a
 * bounded depth-first column search takes over. The distance is verified
 * exhaustively before returning; failure throws ConstructionError carrying
 * the best distance seen.
 */
LinearCode construct_code(std::uint32_t q, std::size_t m, std::size_t k, double delta, const ConstructOptions& opts = {});

/// Same, with the distance target given directly.
LinearCode construct_code_with_distance(std::uint32_t q, std::size_t m, std::size_t k, std::size_t target,
                                        const ConstructOptions& opts = {});

// Code file format: "q m k dist" then k lines of m decimal field indices.
std::string format_code(const LinearCode& code);
LinearCode parse_code(const std::string& text);

}  // namespace gt::gf
