#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace radoforge {

/// C(n,k) in exact integer arithmetic; throws std::overflow_error if the
/// value does not fit in 64 bits.
std::uint64_t binomial(int n, int k);

/// C(n,k) as long double, for work-budget estimates (never overflows).
long double binomial_ld(int n, int k);

/// base^exp with overflow check.
std::uint64_t ipow_checked(std::uint64_t base, int exp);

/// Advances `c` (a sorted k-subset of 0..n-1) to the lexicographically next
/// k-subset. Returns false when `c` was the last one.
bool next_ksubset(std::vector<int>& c, int n);

/// First k-subset {0,1,...,k-1}.
std::vector<int> first_ksubset(int k);

/// Advances an ordered tuple of pairwise-distinct values over 0..n-1 to the
/// lexicographically next one. Returns false after the last.
bool next_distinct_tuple(std::vector<int>& t, int n);
std::vector<int> first_distinct_tuple(int len);

/// Row-major bit matrix with 64-bit word rows; rows are padded with zeros
/// past `cols`.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(int rows, int cols);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int row_words() const { return words_; }

    bool get(int r, int c) const {
        return (bits_[static_cast<std::size_t>(r) * words_ + (c >> 6)] >> (c & 63)) & 1u;
    }
    void set(int r, int c, bool value) {
        std::uint64_t& w = bits_[static_cast<std::size_t>(r) * words_ + (c >> 6)];
        const std::uint64_t m = 1ULL << (c & 63);
        w = value ? (w | m) : (w & ~m);
    }
    std::span<const std::uint64_t> row(int r) const {
        return {bits_.data() + static_cast<std::size_t>(r) * words_, static_cast<std::size_t>(words_)};
    }

    bool operator==(const BitMatrix&) const = default;

  private:
    int rows_ = 0, cols_ = 0, words_ = 0;
    std::vector<std::uint64_t> bits_;
};

} // namespace radoforge
