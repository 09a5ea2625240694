#include "conical/sparse_vector.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "conical/error.hpp"

namespace conical {

SparseVector::SparseVector(std::size_t dimension, std::vector<SparseEntry> entries)
    : dimension_(dimension), entries_(std::move(entries)) {
  std::erase_if(entries_, [](const SparseEntry& e) { return e.value == 0.0; });
  std::sort(entries_.begin(), entries_.end(),
            [](const SparseEntry& a, const SparseEntry& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].index >= dimension_) {
      throw Error(ErrorKind::dimension_mismatch,
                  "index " + std::to_string(entries_[i].index) + " outside dimension " +
                      std::to_string(dimension_));
    }
    if (i > 0 && entries_[i - 1].index == entries_[i].index) {
      throw Error(ErrorKind::invalid_argument,
                  "duplicate index " + std::to_string(entries_[i].index));
    }
  }
}

SparseVector SparseVector::from_dense(std::span<const double> values) {
  std::vector<SparseEntry> entries;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] != 0.0) entries.push_back({static_cast<std::uint32_t>(i), values[i]});
  }
  return SparseVector(values.size(), std::move(entries));
}

double SparseVector::at(std::size_t index) const {
  auto it = std::lower_bound(
      entries_.begin(), entries_.end(), index,
      [](const SparseEntry& e, std::size_t i) { return e.index < i; });
  return (it != entries_.end() && it->index == index) ? it->value : 0.0;
}

double SparseVector::norm() const {
  double sum = 0.0;
  for (const auto& e : entries_) sum += e.value * e.value;
  return std::sqrt(sum);
}

double SparseVector::dot(const SparseVector& other) const {
  double sum = 0.0;
  auto a = entries_.begin();
  auto b = other.entries_.begin();
  while (a != entries_.end() && b != other.entries_.end()) {
    if (a->index < b->index) {
      ++a;
    } else if (b->index < a->index) {
      ++b;
    } else {
      sum += a->value * b->value;
      ++a;
      ++b;
    }
  }
  return sum;
}

std::vector<double> SparseVector::to_dense() const {
  std::vector<double> out(dimension_, 0.0);
  for (const auto& e : entries_) out[e.index] = e.value;
  return out;
}

SparseVector unit_normalize(const SparseVector& v) {
  const double n = v.norm();
  if (n == 0.0) return v;
  std::vector<SparseEntry> scaled(v.entries().begin(), v.entries().end());
  for (auto& e : scaled) e.value /= n;
  return SparseVector(v.dimension(), std::move(scaled));
}

double cosine_similarity(const SparseVector& a, const SparseVector& b) {
  const double na = a.norm();
  const double nb = b.norm();
  if (na == 0.0 || nb == 0.0) return 0.0;
  return a.dot(b) / (na * nb);
}

}  // namespace conical
