#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace gt {

/**
 * Fixed-length packed bit vector. Word-parallel OR, cover and popcount are
 * the hot operations of every verifier, so they are kept inline here.
 *
 * Bits past size() in the last word are always zero.
 */
class BitVec {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t bits_per_word = 64;

    BitVec() = default;
    explicit BitVec(std::size_t size) : bits_((size + bits_per_word - 1) / bits_per_word, 0), size_(size) {}

    std::size_t size() const noexcept { return size_; }
    std::size_t num_words() const noexcept { return bits_.size(); }

    bool test(std::size_t i) const noexcept { return (bits_[i / bits_per_word] >> (i % bits_per_word)) & 1U; }

    void set(std::size_t i, bool value = true) noexcept
    {
        const Word mask = Word{1} << (i % bits_per_word);
        if (value)
            bits_[i / bits_per_word] |= mask;
        else
            bits_[i / bits_per_word] &= ~mask;
    }

    void reset() noexcept
    {
        for (auto& w : bits_)
            w = 0;
    }

    std::size_t count() const noexcept
    {
        std::size_t c = 0;
        for (auto w : bits_)
            c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }

    bool none() const noexcept
    {
        for (auto w : bits_)
            if (w != 0)
                return false;
        return true;
    }

    BitVec& operator|=(const BitVec& other) noexcept
    {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            bits_[i] |= other.bits_[i];
        return *this;
    }

    BitVec& operator&=(const BitVec& other) noexcept
    {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            bits_[i] &= other.bits_[i];
        return *this;
    }

    friend BitVec operator|(BitVec a, const BitVec& b) noexcept { return a |= b; }
    friend BitVec operator&(BitVec a, const BitVec& b) noexcept { return a &= b; }

    /// True when every 1 of `other` is a 1 of *this.
    bool covers(const BitVec& other) const noexcept
    {
        for (std::size_t i = 0; i < bits_.size(); ++i)
            if (other.bits_[i] & ~bits_[i])
                return false;
        return true;
    }

    std::size_t intersection_count(const BitVec& other) const noexcept
    {
        std::size_t c = 0;
        for (std::size_t i = 0; i < bits_.size(); ++i)
            c += static_cast<std::size_t>(std::popcount(bits_[i] & other.bits_[i]));
        return c;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;

    const std::vector<Word>& words() const noexcept { return bits_; }

    /// '0'/'1' characters, index 0 first.
    std::string to_string() const
    {
        std::string s(size_, '0');
        for (std::size_t i = 0; i < size_; ++i)
            if (test(i))
                s[i] = '1';
        return s;
    }

    static BitVec from_string(const std::string& s)
    {
        BitVec v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] == '1')
                v.set(i);
        return v;
    }

    std::size_t hash() const noexcept
    {
        std::size_t h = size_ * 0x9e3779b97f4a7c15ULL;
        for (auto w : bits_) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return h;
    }

private:
    std::vector<Word> bits_;
    std::size_t size_ = 0;
};

struct BitVecHash {
    std::size_t operator()(const BitVec& v) const noexcept { return v.hash(); }
};

}  // namespace gt
