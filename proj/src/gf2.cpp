#include "cscope/gf2.hpp"

#include <algorithm>
#include <iterator>

namespace cscope {

Gf2Column xor_columns(const Gf2Column& a, const Gf2Column& b) {
  Gf2Column out;
  out.reserve(a.size() + b.size());
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Gf2Column Gf2Eliminator::reduce(Gf2Column col) const {
  while (!col.empty()) {
    const int p = pivots_[col.back()];
    if (p < 0) break;
    col = xor_columns(col, basis_[p]);
  }
  return col;
}

bool Gf2Eliminator::insert(Gf2Column col) {
  col = reduce(std::move(col));
  if (col.empty()) return false;
  pivots_[col.back()] = int(basis_.size());
  basis_.push_back(std::move(col));
  return true;
}

std::size_t gf2_rank(const std::vector<Gf2Column>& columns, std::size_t rows) {
  Gf2Eliminator e(rows);
  for (const auto& c : columns) e.insert(c);
  return e.rank();
}

}  // namespace cscope
