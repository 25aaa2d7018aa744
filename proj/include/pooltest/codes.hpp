#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pooltest/bitvec.hpp"

namespace pooltest {

// Binary testing code: column j is the test-membership vector of sample j
// across the rows (tests) of one nonadaptive batch. Columns are stored
// packed so outcome computation is a whole-word OR loop.
// Invariants: columns pairwise distinct and nonzero.
class BinaryCode {
public:
    BinaryCode(std::size_t n_rows, std::vector<BitVec> columns);

    std::size_t rows() const { return n_rows_; }
    std::size_t cols() const { return columns_.size(); }
    const BitVec& column(std::size_t j) const { return columns_[j]; }

    // Samples whose column has row i set, ascending. O(cols) per call.
    std::vector<std::uint32_t> row_members(std::size_t i) const;

private:
    std::size_t n_rows_;
    std::vector<BitVec> columns_;
};

// Bitwise OR of the defective columns; all-zero vector for no defects.
// Defects are 0-based column ids, duplicates not allowed.
BitVec outcome_vector(const BinaryCode& code, const std::vector<std::uint32_t>& defects);

// Per-layer population counts of an outcome split into layers of layer_len
// rows each. Requires bits.size() % layer_len == 0.
std::vector<std::uint32_t> layer_weights(const BitVec& bits, std::size_t layer_len);

// q-ary code: the first `count` words of {0..q-1}^length in lexicographic
// order (first symbol most significant).
class QaryCode {
public:
    static QaryCode lex_prefix(std::uint32_t q, std::size_t length, std::uint64_t count);

    std::uint32_t q() const { return q_; }
    std::size_t length() const { return length_; }
    std::uint64_t size() const { return count_; }
    std::uint32_t symbol(std::uint64_t word, std::size_t pos) const {
        return symbols_[word * length_ + pos];
    }

private:
    QaryCode(std::uint32_t q, std::size_t length, std::uint64_t count)
        : q_(q), length_(length), count_(count) {}
    std::uint32_t q_;
    std::size_t length_;
    std::uint64_t count_;
    std::vector<std::uint32_t> symbols_;
};

// All binary words of given length and weight, ordered lexicographically by
// support set. Word index doubles as the symbol value it encodes.
class ConstantWeightCode {
public:
    static ConstantWeightCode all_words(std::size_t length, std::size_t weight);

    std::size_t length() const { return length_; }
    std::size_t weight() const { return weight_; }
    std::size_t size() const { return words_.size(); }
    const BitVec& word(std::size_t i) const { return words_[i]; }

private:
    ConstantWeightCode(std::size_t length, std::size_t weight) : length_(length), weight_(weight) {}
    std::size_t length_;
    std::size_t weight_;
    std::vector<BitVec> words_;
};

std::vector<BitVec> enumerate_constant_weight(std::size_t length, std::size_t weight);

// Symbol-by-symbol substitution: column j stacks inner.word(outer symbol) for
// each position of outer word j, layer p occupying rows [p*N', (p+1)*N').
// Requires inner.size() >= outer.q().
BinaryCode concatenate(const QaryCode& outer, const ConstantWeightCode& inner);

// Seeded random code with constant column weight, columns pairwise distinct.
// Uses raw engine output only, so identical across platforms.
BinaryCode random_constant_weight_code(std::size_t n_rows, std::size_t n_cols,
                                       std::size_t column_weight, std::mt19937& rng);

}  // namespace pooltest
