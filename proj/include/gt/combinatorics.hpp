#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace gt {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::uint64_t n, std::uint64_t k);

/// C(n,k) clamped to UINT64_MAX on overflow.
std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k);

/// Sum_{i=0}^{d} C(n,i), clamped.
std::uint64_t subsets_up_to_sat(std::uint64_t n, std::uint64_t d);

/// Smallest e with 2^e >= x; x must be positive.
std::uint64_t ceil_log2(const BigInt& x);

/// Converts a big integer to double (may round, may be +inf).
double to_double(const BigInt& x);

// Colexicographic k-subsets of {0..n-1}. A subset is a strictly increasing
// index vector; colex order compares the largest element first.

/// First subset in colex order: {0..k-1}.
std::vector<std::size_t> first_subset(std::size_t k);

/// Advances to the colex successor. Returns false (subset unchanged) at the end.
bool next_subset(std::vector<std::size_t>& c, std::size_t n);

/// Colex rank: sum C(c_i, i+1). Fits in 64 bits whenever C(n,k) does.
std::uint64_t colex_rank(const std::vector<std::size_t>& c);

/// Inverse of colex_rank for k-subsets.
std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k);

/// Lexicographic comparison of two index vectors, shorter first on prefix ties.
bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

}  // namespace gt
