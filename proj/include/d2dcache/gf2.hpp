#pragma once

#include <cstdint>
#include <optional>
#include <vector>

namespace d2dcache {

using Bytes = std::vector<std::uint8_t>;

// GF(2) linear system with byte-vector right-hand sides. Columns are
// boolean unknowns, each row states: XOR of the flagged unknowns equals
// rhs. solve() brings the system to reduced row echelon form; a column
// whose pivot row has no other flagged column is uniquely determined.
class Gf2System {
 public:
  Gf2System(int cols, std::size_t rhs_len);

  void add_equation(const std::vector<int>& cols_set, Bytes rhs);
  void reduce();  // full RREF; throws if any rhs of a zero row is nonzero

  // Value of column c if uniquely determined, nullopt otherwise.
  // Valid only after reduce().
  std::optional<Bytes> solved(int c) const;

 private:
  struct Row {
    std::vector<std::uint64_t> mask;
    Bytes rhs;
  };
  bool bit(const Row& r, int c) const {
    return (r.mask[c >> 6] >> (c & 63)) & 1;
  }
  static void xor_into(Row& dst, const Row& src);

  int cols_;
  std::size_t words_;
  std::size_t rhs_len_;
  std::vector<Row> rows_;
  std::vector<int> pivot_row_;  // per column, -1 if none
  bool reduced_ = false;
};

// True iff target (bitmask over cols) lies in the GF(2) row span of rows.
bool in_gf2_span(std::vector<std::uint64_t> target_mask,
                 std::vector<std::vector<std::uint64_t>> row_masks);

}  // namespace d2dcache
