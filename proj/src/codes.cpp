#include "pooltest/codes.hpp"

#include <algorithm>
#include <stdexcept>

namespace pooltest {

BinaryCode::BinaryCode(std::size_t n_rows, std::vector<BitVec> columns)
    : n_rows_(n_rows), columns_(std::move(columns)) {
    if (n_rows_ == 0) throw std::invalid_argument("code needs at least one row");
    if (columns_.empty()) throw std::invalid_argument("code needs at least one column");
    for (const BitVec& c : columns_) {
        if (c.size() != n_rows_) throw std::invalid_argument("column length differs from row count");
        if (c.none()) throw std::invalid_argument("all-zero column: sample would be untestable");
    }
    std::vector<BitVec> sorted = columns_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw std::invalid_argument("duplicate columns: samples would be indistinguishable");
}

std::vector<std::uint32_t> BinaryCode::row_members(std::size_t i) const {
    std::vector<std::uint32_t> out;
    for (std::size_t j = 0; j < columns_.size(); ++j)
        if (columns_[j].test(i)) out.push_back(static_cast<std::uint32_t>(j));
    return out;
}

BitVec outcome_vector(const BinaryCode& code, const std::vector<std::uint32_t>& defects) {
    BitVec r(code.rows());
    std::vector<std::uint32_t> seen = defects;
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        throw std::invalid_argument("duplicate defect id");
    for (std::uint32_t d : seen) {
        if (d >= code.cols()) throw std::invalid_argument("defect id out of range");
        r |= code.column(d);
    }
    return r;
}

std::vector<std::uint32_t> layer_weights(const BitVec& bits, std::size_t layer_len) {
    if (layer_len == 0 || bits.size() % layer_len != 0)
        throw std::invalid_argument("outcome length is not a multiple of the layer length");
    std::vector<std::uint32_t> w;
    w.reserve(bits.size() / layer_len);
    for (std::size_t b = 0; b < bits.size(); b += layer_len)
        w.push_back(static_cast<std::uint32_t>(bits.count_range(b, b + layer_len)));
    return w;
}

QaryCode QaryCode::lex_prefix(std::uint32_t q, std::size_t length, std::uint64_t count) {
    if (q < 2) throw std::invalid_argument("alphabet needs at least two symbols");
    if (length == 0) throw std::invalid_argument("outer length must be positive");
    // count <= q^length, checked without overflow.
    unsigned __int128 cap = 1;
    for (std::size_t i = 0; i < length && cap < count; ++i) cap *= q;
    if (count == 0 || cap < count) throw std::invalid_argument("word count exceeds q^length");

    QaryCode code(q, length, count);
    code.symbols_.assign(count * length, 0);
    std::vector<std::uint32_t> word(length, 0);
    for (std::uint64_t w = 0; w < count; ++w) {
        std::copy(word.begin(), word.end(), code.symbols_.begin() + w * length);
        for (std::size_t pos = length; pos-- > 0;) {  // odometer, last symbol fastest
            if (++word[pos] < q) break;
            word[pos] = 0;
        }
    }
    return code;
}

std::vector<BitVec> enumerate_constant_weight(std::size_t length, std::size_t weight) {
    if (weight == 0 || weight >= length)
        throw std::invalid_argument("weight must satisfy 0 < weight < length");
    std::vector<BitVec> words;
    std::vector<std::size_t> support(weight);
    for (std::size_t i = 0; i < weight; ++i) support[i] = i;
    while (true) {
        BitVec w(length);
        for (std::size_t i : support) w.set(i);
        words.push_back(std::move(w));
        // Next support in lexicographic order.
        std::size_t i = weight;
        while (i-- > 0) {
            if (support[i] != i + length - weight) {
                ++support[i];
                for (std::size_t j = i + 1; j < weight; ++j) support[j] = support[j - 1] + 1;
                break;
            }
            if (i == 0) return words;
        }
    }
}

ConstantWeightCode ConstantWeightCode::all_words(std::size_t length, std::size_t weight) {
    ConstantWeightCode code(length, weight);
    code.words_ = enumerate_constant_weight(length, weight);
    return code;
}

BinaryCode concatenate(const QaryCode& outer, const ConstantWeightCode& inner) {
    if (inner.size() < outer.q())
        throw std::invalid_argument("inner code too small for the outer alphabet");
    const std::size_t n_prime = inner.length();
    const std::size_t n_rows = outer.length() * n_prime;
    std::vector<BitVec> columns;
    columns.reserve(outer.size());
    for (std::uint64_t j = 0; j < outer.size(); ++j) {
        BitVec col(n_rows);
        for (std::size_t layer = 0; layer < outer.length(); ++layer) {
            const BitVec& w = inner.word(outer.symbol(j, layer));
            for (std::size_t i = 0; i < n_prime; ++i)
                if (w.test(i)) col.set(layer * n_prime + i);
        }
        columns.push_back(std::move(col));
    }
    return BinaryCode(n_rows, std::move(columns));
}

BinaryCode random_constant_weight_code(std::size_t n_rows, std::size_t n_cols,
                                       std::size_t column_weight, std::mt19937& rng) {
    if (column_weight == 0 || column_weight > n_rows)
        throw std::invalid_argument("column weight must satisfy 0 < weight <= rows");
    std::vector<BitVec> columns;
    std::vector<std::uint32_t> rows(n_rows);
    while (columns.size() < n_cols) {
        for (std::size_t i = 0; i < n_rows; ++i) rows[i] = static_cast<std::uint32_t>(i);
        BitVec col(n_rows);
        for (std::size_t i = 0; i < column_weight; ++i) {
            // Partial Fisher-Yates on raw engine words: reproducible across
            // standard libraries, unlike uniform_int_distribution.
            const std::size_t pick = i + rng() % (n_rows - i);
            std::swap(rows[i], rows[pick]);
            col.set(rows[i]);
        }
        if (std::find(columns.begin(), columns.end(), col) == columns.end())
            columns.push_back(std::move(col));
    }
    return BinaryCode(n_rows, std::move(columns));
}

}  // namespace pooltest
