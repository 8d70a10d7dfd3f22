#pragma once

#include <bit>
#include <cstddef>
#include <vector>

namespace chromaspan {

/// Sparse table over a fixed sequence: index of the minimum in [lo, hi), leftmost on ties.
template <class T>
class RangeMin {
 public:
  RangeMin() = default;

  explicit RangeMin(std::vector<T> values) : values_(std::move(values)) {
    const std::size_t n = values_.size();
    if (n == 0) return;
    table_.push_back(std::vector<std::size_t>(n));
    for (std::size_t i = 0; i < n; ++i) table_[0][i] = i;
    for (std::size_t w = 1; (std::size_t{1} << w) <= n; ++w) {
      const std::size_t len = std::size_t{1} << w, half = len / 2;
      std::vector<std::size_t> row(n - len + 1);
      for (std::size_t i = 0; i + len <= n; ++i) row[i] = pick(table_[w - 1][i], table_[w - 1][i + half]);
      table_.push_back(std::move(row));
    }
  }

  std::size_t size() const { return values_.size(); }
  const T& operator[](std::size_t i) const { return values_[i]; }

  /// Requires lo < hi <= size().
  std::size_t argmin(std::size_t lo, std::size_t hi) const {
    const std::size_t w = static_cast<std::size_t>(std::bit_width(hi - lo)) - 1;
    return pick(table_[w][lo], table_[w][hi - (std::size_t{1} << w)]);
  }

 private:
  std::size_t pick(std::size_t a, std::size_t b) const {
    if (values_[b] < values_[a]) return b;
    if (values_[a] < values_[b]) return a;
    return a < b ? a : b;
  }

  std::vector<T> values_;
  std::vector<std::vector<std::size_t>> table_;
};

}  // namespace chromaspan
