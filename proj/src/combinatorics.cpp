#include "radoforge/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace radoforge {

std::uint64_t binomial(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 acc = 1;
    for (int i = 1; i <= k; ++i) {
        acc = acc * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

long double binomial_ld(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0L;
    if (k > n - k) k = n - k;
    long double acc = 1.0L;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

std::uint64_t ipow_checked(std::uint64_t base, int exp) {
    unsigned __int128 acc = 1;
    for (int i = 0; i < exp; ++i) {
        acc *= base;
        if (acc > std::numeric_limits<std::uint64_t>::max())
            throw std::overflow_error("integer power overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

bool next_ksubset(std::vector<int>& c, int n) {
    const int k = static_cast<int>(c.size());
    int i = k - 1;
    while (i >= 0 && c[i] == n - k + i) --i;
    if (i < 0) return false;
    ++c[i];
    for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
    return true;
}

std::vector<int> first_ksubset(int k) {
    std::vector<int> c(k);
    std::iota(c.begin(), c.end(), 0);
    return c;
}

bool next_distinct_tuple(std::vector<int>& t, int n) {
    const int len = static_cast<int>(t.size());
    if (len > n) return false;
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int v : t) used[static_cast<std::size_t>(v)] = 1;
    for (int pos = len - 1; pos >= 0; --pos) {
        used[static_cast<std::size_t>(t[pos])] = 0;
        int v = t[pos] + 1;
        while (v < n && used[static_cast<std::size_t>(v)]) ++v;
        if (v < n) {
            t[pos] = v;
            used[static_cast<std::size_t>(v)] = 1;
            int w = 0;
            for (int j = pos + 1; j < len; ++j) {
                while (used[static_cast<std::size_t>(w)]) ++w;
                t[j] = w;
                used[static_cast<std::size_t>(w)] = 1;
            }
            return true;
        }
    }
    return false;
}

std::vector<int> first_distinct_tuple(int len) {
    std::vector<int> t(len);
    std::iota(t.begin(), t.end(), 0);
    return t;
}

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), cols_(cols), words_((cols + 63) / 64),
      bits_(static_cast<std::size_t>(rows) * static_cast<std::size_t>((cols + 63) / 64), 0) {}

} // namespace radoforge
