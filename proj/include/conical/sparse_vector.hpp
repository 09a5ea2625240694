#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace conical {

struct SparseEntry {
  std::uint32_t index;
  double value;

  friend bool operator==(const SparseEntry&, const SparseEntry&) = default;
};

/// A vector in vocabulary space that stores only its nonzero coordinates,
/// ordered by dimension index. An explicitly stored zero is never kept, so
/// `is_zero()` is exact.
class SparseVector {
 public:
  SparseVector() = default;
  explicit SparseVector(std::size_t dimension) : dimension_(dimension) {}

  /// Entries may arrive in any order; duplicates are an error, zeros are
  /// dropped, indices must be below `dimension`.
  SparseVector(std::size_t dimension, std::vector<SparseEntry> entries);

  static SparseVector from_dense(std::span<const double> values);

  std::size_t dimension() const noexcept { return dimension_; }
  std::size_t nonzeros() const noexcept { return entries_.size(); }
  bool is_zero() const noexcept { return entries_.empty(); }
  std::span<const SparseEntry> entries() const noexcept { return entries_; }

  /// Coordinate lookup, O(log nnz). Unstored dimensions read as 0.
  double at(std::size_t index) const;

  double norm() const;
  double dot(const SparseVector& other) const;
  std::vector<double> to_dense() const;

  friend bool operator==(const SparseVector&, const SparseVector&) = default;

 private:
  std::size_t dimension_ = 0;
  std::vector<SparseEntry> entries_;
};

/// v / ||v||_2, or v itself when it is the zero vector.
SparseVector unit_normalize(const SparseVector& v);

double cosine_similarity(const SparseVector& a, const SparseVector& b);

}  // namespace conical
