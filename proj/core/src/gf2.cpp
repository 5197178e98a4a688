#include "qfbc/gf2.hpp"

#include <bit>

#include "qfbc/errors.hpp"

namespace qfbc {

namespace {
void check_width(int w) {
  if (w < 1 || w > 64) throw ParameterError("GF(2) width outside [1,64]");
}
std::uint64_t full(int w) { return w == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << w) - 1; }
}  // namespace

BitVec BitVec::from_string(std::string_view s) {
  check_width(static_cast<int>(s.size()));
  BitVec v{0, static_cast<int>(s.size())};
  for (char c : s) {
    if (c != '0' && c != '1') throw ParameterError("bit string may only contain 0 and 1");
    v.bits = (v.bits << 1) | static_cast<std::uint64_t>(c == '1');
  }
  return v;
}

std::string BitVec::to_string() const {
  std::string s(width, '0');
  for (int j = 0; j < width; ++j) {
    if ((bits >> (width - 1 - j)) & 1) s[j] = '1';
  }
  return s;
}

int dot(const BitVec& a, const BitVec& b) {
  if (a.width != b.width) throw ParameterError("dot product of vectors with different widths");
  return std::popcount(a.bits & b.bits) & 1;
}

BitMatrix::BitMatrix(int width) : width_(width) { check_width(width); }

void BitMatrix::add_row(const BitVec& row) {
  if (row.width != width_) throw ParameterError("row width does not match matrix width");
  rows_.push_back(row.bits);
}

EchelonBasis::EchelonBasis(int width) : width_(width) { check_width(width); }

bool EchelonBasis::insert(std::uint64_t v) {
  v &= full(width_);
  while (v) {
    const int top = 63 - std::countl_zero(v);
    if (!((pivots_ >> top) & 1)) {
      pivot_row_[top] = v;
      pivots_ |= std::uint64_t{1} << top;
      ++rank_;
      return true;
    }
    v ^= pivot_row_[top];
  }
  return false;
}

std::vector<BitVec> EchelonBasis::nullspace() const {
  // Reduce to RREF: clear every pivot column from all other rows.
  std::array<std::uint64_t, 64> rows = pivot_row_;
  for (int p = 0; p < width_; ++p) {
    if (!((pivots_ >> p) & 1)) continue;
    for (int q = 0; q < width_; ++q) {
      if (q != p && ((pivots_ >> q) & 1) && ((rows[q] >> p) & 1)) rows[q] ^= rows[p];
    }
  }
  std::vector<BitVec> out;
  for (int f = width_ - 1; f >= 0; --f) {
    if ((pivots_ >> f) & 1) continue;
    std::uint64_t v = std::uint64_t{1} << f;
    for (int p = 0; p < width_; ++p) {
      if (((pivots_ >> p) & 1) && ((rows[p] >> f) & 1)) v |= std::uint64_t{1} << p;
    }
    out.push_back({v, width_});
  }
  return out;
}

int rank(const BitMatrix& m) {
  EchelonBasis e(m.width());
  for (auto r : m.rows()) e.insert(r);
  return e.rank();
}

std::vector<BitVec> nullspace_basis(const BitMatrix& m) {
  EchelonBasis e(m.width());
  for (auto r : m.rows()) e.insert(r);
  return e.nullspace();
}

}  // namespace qfbc
