#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "conical/sparse_vector.hpp"
#include "conical/text_pipeline.hpp"
#include "conical/weighting.hpp"

namespace conical {

enum class Label { in_topic, out_of_topic };

std::string_view to_string(Label label);

struct Prediction {
  Label label;
  /// Dimensions examined before the decision was made.
  std::size_t dims_checked;

  friend bool operator==(const Prediction&, const Prediction&) = default;
};

/// Per-dimension upper and lower bounds of a training corpus: the trained
/// conical classifier. Both bounds are stored sparsely; because document
/// weights are nonnegative the lower bound is nonzero only on dimensions that
/// every training document uses.
class BoxBounds {
 public:
  BoxBounds() = default;
  /// `tolerance` widens both bounds symmetrically; 0 means exact comparison.
  BoxBounds(SparseVector max_vector, SparseVector min_vector, double tolerance = 0.0);

  std::size_t dimension() const noexcept { return max_.dimension(); }
  const SparseVector& max_vector() const noexcept { return max_; }
  const SparseVector& min_vector() const noexcept { return min_; }
  double tolerance() const noexcept { return tolerance_; }
  double upper(std::size_t d) const { return upper_dense_[d]; }

  friend bool operator==(const BoxBounds& a, const BoxBounds& b) {
    return a.max_ == b.max_ && a.min_ == b.min_ && a.tolerance_ == b.tolerance_;
  }

 private:
  SparseVector max_;
  SparseVector min_;
  double tolerance_ = 0.0;
  std::vector<double> upper_dense_;
};

/// Elementwise max and min over unit-normalized training vectors.
/// Throws on an empty corpus, a zero vector ("degenerate training document"),
/// a non-unit vector or mixed dimensions.
BoxBounds fit(std::span<const SparseVector> corpus_vectors, double tolerance = 0.0);

/// In-topic iff v is nonzero and min <= v <= max on every dimension. Stops at
/// the first violated dimension. Only dimensions where v is nonzero or the
/// lower bound is positive can be violated, so only those are visited, in
/// ascending index order.
Prediction predict(const BoxBounds& box, const SparseVector& v);

/// Dense full scan of every dimension with no early exit. Testing oracle for
/// predict(); dims_checked is always the full dimension.
Prediction brute_force_membership(const BoxBounds& box, const SparseVector& v);

/// predict() over a batch, partitioned across OpenMP threads. All dimensions
/// are validated before any prediction; a mismatch names the first bad index.
std::vector<Prediction> predict_batch(const BoxBounds& box, std::span<const SparseVector> vectors);

/// Single-threaded reference for predict_batch.
std::vector<Prediction> predict_batch_serial(const BoxBounds& box,
                                             std::span<const SparseVector> vectors);

enum class Weighting { ne_tf, tf_idf };

std::string_view to_string(Weighting w);
/// Accepts "ne-tf" and "tf-idf".
Weighting parse_weighting(std::string_view name);

/// Vocabulary, final term weights and bounds: everything needed to turn raw
/// text into a vector and classify it.
struct ConicalModel {
  Vocabulary vocabulary;
  WeightVector weights;
  Weighting weighting = Weighting::ne_tf;
  double epsilon = kDefaultEpsilon;
  BoxBounds bounds;
  std::size_t training_documents = 0;
  std::size_t skipped_documents = 0;

  SparseVector vectorize(std::span<const std::string> tokens) const;
  SparseVector vectorize_text(std::string_view text) const { return vectorize(tokenize(text)); }
  Prediction predict(const SparseVector& v) const { return conical::predict(bounds, v); }

  friend bool operator==(const ConicalModel&, const ConicalModel&) = default;
};

struct TrainingOptions {
  Weighting weighting = Weighting::ne_tf;
  double epsilon = kDefaultEpsilon;
  /// Required for ne-tf, ignored for tf-idf.
  const WordFrequencyTable* lexicon = nullptr;
  double tolerance = 0.0;
};

/// Builds the vocabulary and weights from the positive corpus, vectorizes it
/// and fits the bounds. Documents whose weighted vector is zero (empty text,
/// or only zero-weight terms) cannot be unit-normalized; they are left out of
/// the fit and counted in `skipped_documents`.
ConicalModel train(std::span<const Tokens> corpus, const TrainingOptions& options);

struct DecompositionResult {
  double lambda_x;
  double lambda_y;
  std::size_t iterations;
};

/// Finds lambda_x, lambda_y >= 0 with lambda_x + lambda_y = 1 such that
/// lambda_x * x + lambda_y * y points along `target`, for a target lying on
/// the arc between unit vectors x and y.
///
/// Bisection on lambda_x with halving steps 2^-level. Each step compares the
/// candidate direction with the target through cosine similarities to both
/// endpoints. The textbook loop that reassigns the midpoint to an endpoint
/// never converges; bisecting the scalar does.
///
/// Throws "target outside segment" when the angles to x and y do not add up
/// to the angle between them (within the tolerance), and a convergence error
/// if 64 iterations do not reach cosine similarity >= 1 - tolerance.
DecompositionResult decompose_between(const SparseVector& x, const SparseVector& y,
                                      const SparseVector& target, double tolerance);

}  // namespace conical
