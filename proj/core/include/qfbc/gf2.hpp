#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qfbc {

/// Vector over GF(2). Column j of the textual form is bit (width-1-j), so
/// "1010" has width 4 and bits 0b1010.
struct BitVec {
  std::uint64_t bits = 0;
  int width = 0;

  static BitVec from_string(std::string_view s);
  std::string to_string() const;
  bool is_zero() const { return bits == 0; }
  friend bool operator==(const BitVec&, const BitVec&) = default;
};

int dot(const BitVec& a, const BitVec& b);

class BitMatrix {
 public:
  explicit BitMatrix(int width);
  void add_row(const BitVec& row);
  int width() const { return width_; }
  std::size_t size() const { return rows_.size(); }
  const std::vector<std::uint64_t>& rows() const { return rows_; }

 private:
  int width_;
  std::vector<std::uint64_t> rows_;
};

/// Incrementally maintained row echelon form; leftmost (highest) bit pivots.
class EchelonBasis {
 public:
  explicit EchelonBasis(int width);
  /// Returns true when v increased the rank.
  bool insert(std::uint64_t v);
  int rank() const { return rank_; }
  int width() const { return width_; }
  /// Basis of {x : row . x = 0 for all rows}, one vector per free column in
  /// increasing column order.
  std::vector<BitVec> nullspace() const;

 private:
  int width_;
  int rank_ = 0;
  std::array<std::uint64_t, 64> pivot_row_{};
  std::uint64_t pivots_ = 0;
};

int rank(const BitMatrix& m);
std::vector<BitVec> nullspace_basis(const BitMatrix& m);

}  // namespace qfbc
