#pragma once

#include <cstddef>
#include <vector>

namespace cscope {

/// Sparse GF(2) column: sorted row indices of the nonzero entries.
using Gf2Column = std::vector<int>;

/// Symmetric difference of two sorted columns.
Gf2Column xor_columns(const Gf2Column& a, const Gf2Column& b);

/// Incremental echelon basis over GF(2), keyed by each column's largest row.
class Gf2Eliminator {
 public:
  explicit Gf2Eliminator(std::size_t rows) : pivots_(rows, -1) {}

  /// Reduces col against the stored basis; empty means col is in the span.
  Gf2Column reduce(Gf2Column col) const;
  /// Adds col to the basis; returns false if it was dependent.
  bool insert(Gf2Column col);
  std::size_t rank() const { return basis_.size(); }

 private:
  std::vector<int> pivots_;
  std::vector<Gf2Column> basis_;
};

std::size_t gf2_rank(const std::vector<Gf2Column>& columns, std::size_t rows);

}  // namespace cscope
