#include "d2dcache/gf2.hpp"

#include <map>
#include <stdexcept>

namespace d2dcache {

Gf2System::Gf2System(int cols, std::size_t rhs_len)
    : cols_(cols), words_((cols + 63) / 64), rhs_len_(rhs_len),
      pivot_row_(cols, -1) {}

void Gf2System::add_equation(const std::vector<int>& cols_set, Bytes rhs) {
  if (rhs.size() != rhs_len_)
    throw std::invalid_argument("Gf2System: rhs length mismatch");
  Row r;
  r.mask.assign(words_, 0);
  for (int c : cols_set) {
    if (c < 0 || c >= cols_)
      throw std::out_of_range("Gf2System: column out of range");
    r.mask[c >> 6] ^= std::uint64_t(1) << (c & 63);
  }
  r.rhs = std::move(rhs);
  rows_.push_back(std::move(r));
  reduced_ = false;
}

void Gf2System::xor_into(Row& dst, const Row& src) {
  for (std::size_t w = 0; w < src.mask.size(); ++w) dst.mask[w] ^= src.mask[w];
  for (std::size_t b = 0; b < src.rhs.size(); ++b) dst.rhs[b] ^= src.rhs[b];
}

void Gf2System::reduce() {
  pivot_row_.assign(cols_, -1);
  int rank = 0;
  for (int c = 0; c < cols_ && rank < static_cast<int>(rows_.size()); ++c) {
    int p = -1;
    for (int r = rank; r < static_cast<int>(rows_.size()); ++r)
      if (bit(rows_[r], c)) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(rows_[rank], rows_[p]);
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r)
      if (r != rank && bit(rows_[r], c)) xor_into(rows_[r], rows_[rank]);
    pivot_row_[c] = rank;
    ++rank;
  }
  // Zero rows must carry zero rhs, otherwise the system is inconsistent.
  for (int r = rank; r < static_cast<int>(rows_.size()); ++r)
    for (std::uint8_t b : rows_[r].rhs)
      if (b != 0)
        throw std::runtime_error("Gf2System: inconsistent system");
  reduced_ = true;
}

std::optional<Bytes> Gf2System::solved(int c) const {
  if (!reduced_) throw std::logic_error("Gf2System: reduce() not called");
  if (c < 0 || c >= cols_ || pivot_row_[c] < 0) return std::nullopt;
  const Row& row = rows_[pivot_row_[c]];
  // Unique iff the pivot row involves no other column.
  for (int j = 0; j < cols_; ++j)
    if (j != c && bit(row, j)) return std::nullopt;
  return row.rhs;
}

bool in_gf2_span(std::vector<std::uint64_t> target_mask,
                 std::vector<std::vector<std::uint64_t>> row_masks) {
  std::size_t words = target_mask.size();
  auto top_bit = [words](const std::vector<std::uint64_t>& m) -> int {
    for (std::size_t w = words; w-- > 0;)
      if (m[w] != 0)
        return static_cast<int>(w) * 64 + 63 - __builtin_clzll(m[w]);
    return -1;
  };
  std::map<int, std::vector<std::uint64_t>> basis;  // top bit -> vector
  auto sift = [&](std::vector<std::uint64_t>& v) {
    // Repeatedly cancel the leading bit; it strictly decreases.
    while (true) {
      int tb = top_bit(v);
      if (tb < 0) return tb;
      auto it = basis.find(tb);
      if (it == basis.end()) return tb;
      for (std::size_t w = 0; w < words; ++w) v[w] ^= it->second[w];
    }
  };
  for (auto& row : row_masks) {
    int tb = sift(row);
    if (tb >= 0) basis.emplace(tb, row);
  }
  return sift(target_mask) < 0;
}

}  // namespace d2dcache
