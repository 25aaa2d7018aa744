#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace pooltest {

// Fixed-length bit vector packed into 64-bit words, bit i living in word i/64.
// Invariant: unused high bits of the last word are zero, so whole-word loops
// (OR, popcount, subset tests) need no masking.
class BitVec {
public:
    BitVec() = default;

    explicit BitVec(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    // Parses "1100..." where character k is bit k.
    static BitVec from_string(const std::string& bits) {
        BitVec v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bits[i] == '1') {
                v.set(i);
            } else if (bits[i] != '0') {
                throw std::invalid_argument("bit string must contain only '0' and '1'");
            }
        }
        return v;
    }

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

    void set(std::size_t i, bool value = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i % 64);
        if (value) {
            words_[i / 64] |= mask;
        } else {
            words_[i / 64] &= ~mask;
        }
    }

    std::size_t count() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    // Population count of bits in [begin, end).
    std::size_t count_range(std::size_t begin, std::size_t end) const {
        std::size_t n = 0;
        for (std::size_t i = begin / 64; i <= (end - 1) / 64 && end > begin; ++i) {
            std::uint64_t w = words_[i];
            if (i == begin / 64 && begin % 64 != 0) w &= ~std::uint64_t{0} << (begin % 64);
            if (i == (end - 1) / 64 && end % 64 != 0) w &= (std::uint64_t{1} << (end % 64)) - 1;
            n += std::popcount(w);
        }
        return n;
    }

    bool none() const {
        for (std::uint64_t w : words_)
            if (w != 0) return false;
        return true;
    }

    bool is_subset_of(const BitVec& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i] & ~other.words_[i]) return false;
        return true;
    }

    BitVec& operator|=(const BitVec& other) {
        for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
        return *this;
    }

    friend BitVec operator|(BitVec a, const BitVec& b) {
        a |= b;
        return a;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;
    // Arbitrary but deterministic total order; do not read as bitwise-lex.
    friend auto operator<=>(const BitVec&, const BitVec&) = default;

    std::string to_string() const {
        std::string s(nbits_, '0');
        for (std::size_t i = 0; i < nbits_; ++i)
            if (test(i)) s[i] = '1';
        return s;
    }

    // Bits [begin, begin + len) as the low bits of an integer. len <= 64.
    std::uint64_t extract(std::size_t begin, std::size_t len) const {
        std::uint64_t out = 0;
        for (std::size_t i = 0; i < len; ++i)
            if (test(begin + i)) out |= std::uint64_t{1} << i;
        return out;
    }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

}  // namespace pooltest
