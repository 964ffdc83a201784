#include "gt/combinatorics.hpp"

#include <algorithm>
#include <limits>

#include "gt/errors.hpp"

namespace gt {

namespace {
__extension__ typedef unsigned __int128 u128;
}

BigInt binomial(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    BigInt r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r *= n - k + i;
        r /= i;
    }
    return r;
}

std::uint64_t binomial_sat(std::uint64_t n, std::uint64_t k)
{
    if (k > n)
        return 0;
    k = std::min(k, n - k);
    u128 r = 1;
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i;  // exact: r*(n-k+i) is divisible by i
        if (r > cap)
            return cap;
    }
    return static_cast<std::uint64_t>(r);
}

std::uint64_t subsets_up_to_sat(std::uint64_t n, std::uint64_t d)
{
    constexpr auto cap = std::numeric_limits<std::uint64_t>::max();
    std::uint64_t total = 0;
    for (std::uint64_t i = 0; i <= std::min(n, d); ++i) {
        const auto c = binomial_sat(n, i);
        if (c == cap || total > cap - c)
            return cap;
        total += c;
    }
    return total;
}

std::uint64_t ceil_log2(const BigInt& x)
{
    if (x <= 0)
        throw DomainError("ceil_log2 of a non-positive value");
    if (x == 1)
        return 0;
    const BigInt y = x - 1;
    return static_cast<std::uint64_t>(boost::multiprecision::msb(y)) + 1;
}

double to_double(const BigInt& x)
{
    return x.convert_to<double>();
}

std::vector<std::size_t> first_subset(std::size_t k)
{
    std::vector<std::size_t> c(k);
    for (std::size_t i = 0; i < k; ++i)
        c[i] = i;
    return c;
}

bool next_subset(std::vector<std::size_t>& c, std::size_t n)
{
    const std::size_t k = c.size();
    for (std::size_t i = 0; i < k; ++i) {
        const std::size_t limit = (i + 1 < k) ? c[i + 1] : n;
        if (c[i] + 1 < limit) {
            ++c[i];
            for (std::size_t j = 0; j < i; ++j)
                c[j] = j;
            return true;
        }
    }
    return false;
}

std::uint64_t colex_rank(const std::vector<std::size_t>& c)
{
    std::uint64_t r = 0;
    for (std::size_t i = 0; i < c.size(); ++i)
        r += binomial_sat(c[i], i + 1);
    return r;
}

std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k)
{
    std::vector<std::size_t> c(k);
    for (std::size_t i = k; i-- > 0;) {
        // largest v with C(v, i+1) <= rank; v >= i
        std::size_t lo = i, hi = i + 1;
        while (binomial_sat(hi, i + 1) <= rank)
            hi *= 2;
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            if (binomial_sat(mid, i + 1) <= rank)
                lo = mid;
            else
                hi = mid;
        }
        c[i] = lo;
        rank -= binomial_sat(lo, i + 1);
    }
    return c;
}

bool lex_less(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace gt
