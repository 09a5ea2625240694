#include "conical/conical.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "conical/error.hpp"

namespace conical {

namespace {

constexpr double kUnitNormSlack = 1e-9;

void require_dimension(const BoxBounds& box, const SparseVector& v) {
  if (v.dimension() != box.dimension()) {
    throw Error(ErrorKind::dimension_mismatch,
                "vector dimension " + std::to_string(v.dimension()) +
                    " does not match model dimension " + std::to_string(box.dimension()));
  }
}

}  // namespace

std::string_view to_string(Label label) {
  return label == Label::in_topic ? "in-topic" : "out-of-topic";
}

BoxBounds::BoxBounds(SparseVector max_vector, SparseVector min_vector, double tolerance)
    : max_(std::move(max_vector)), min_(std::move(min_vector)), tolerance_(tolerance) {
  if (max_.dimension() != min_.dimension()) {
    throw Error(ErrorKind::dimension_mismatch, "max and min vectors differ in dimension");
  }
  if (!(tolerance_ >= 0.0)) throw Error(ErrorKind::invalid_argument, "tolerance must be >= 0");
  upper_dense_ = max_.to_dense();
  for (const auto& e : min_.entries()) {
    if (e.value < 0.0 || e.value > upper_dense_[e.index]) {
      throw Error(ErrorKind::invalid_argument,
                  "min vector exceeds max vector at dimension " + std::to_string(e.index));
    }
  }
  for (double u : upper_dense_) {
    if (u < 0.0) throw Error(ErrorKind::invalid_argument, "bounds must be nonnegative");
  }
}

BoxBounds fit(std::span<const SparseVector> corpus_vectors, double tolerance) {
  if (corpus_vectors.empty()) throw Error(ErrorKind::empty_corpus, "empty corpus");
  const std::size_t dim = corpus_vectors.front().dimension();

  std::vector<double> upper(dim, 0.0);
  std::vector<double> lower(dim, 0.0);
  std::vector<std::size_t> present(dim, 0);
  for (std::size_t i = 0; i < corpus_vectors.size(); ++i) {
    const auto& v = corpus_vectors[i];
    if (v.dimension() != dim) {
      throw Error(ErrorKind::dimension_mismatch,
                  "training vector " + std::to_string(i) + " has a different dimension");
    }
    if (v.is_zero()) {
      throw Error(ErrorKind::degenerate_document,
                  "degenerate training document " + std::to_string(i));
    }
    if (std::abs(v.norm() - 1.0) > kUnitNormSlack) {
      throw Error(ErrorKind::invalid_argument,
                  "training vector " + std::to_string(i) + " is not unit-normalized");
    }
    for (const auto& e : v.entries()) {
      if (e.value < 0.0) {
        throw Error(ErrorKind::invalid_argument, "training weights must be nonnegative");
      }
      upper[e.index] = std::max(upper[e.index], e.value);
      lower[e.index] = present[e.index] == 0 ? e.value : std::min(lower[e.index], e.value);
      ++present[e.index];
    }
  }
  // A dimension some document lacks has a lower bound of 0.
  for (std::size_t d = 0; d < dim; ++d) {
    if (present[d] != corpus_vectors.size()) lower[d] = 0.0;
  }
  return BoxBounds(SparseVector::from_dense(upper), SparseVector::from_dense(lower), tolerance);
}

Prediction predict(const BoxBounds& box, const SparseVector& v) {
  require_dimension(box, v);
  if (v.is_zero()) return {Label::out_of_topic, 0};

  const auto values = v.entries();
  const auto lows = box.min_vector().entries();
  const double tol = box.tolerance();
  std::size_t i = 0;
  std::size_t k = 0;
  std::size_t checked = 0;
  while (i < values.size() || k < lows.size()) {
    std::uint32_t d;
    if (k == lows.size() || (i < values.size() && values[i].index <= lows[k].index)) {
      d = values[i].index;
    } else {
      d = lows[k].index;
    }
    const double value = (i < values.size() && values[i].index == d) ? values[i++].value : 0.0;
    const double low = (k < lows.size() && lows[k].index == d) ? lows[k++].value : 0.0;
    ++checked;
    if (value > box.upper(d) + tol || value < low - tol) return {Label::out_of_topic, checked};
  }
  return {Label::in_topic, checked};
}

Prediction brute_force_membership(const BoxBounds& box, const SparseVector& v) {
  require_dimension(box, v);
  const auto value = v.to_dense();
  const auto upper = box.max_vector().to_dense();
  const auto lower = box.min_vector().to_dense();
  const double tol = box.tolerance();
  bool inside = !v.is_zero();
  for (std::size_t d = 0; d < value.size(); ++d) {
    inside &= value[d] <= upper[d] + tol;
    inside &= value[d] >= lower[d] - tol;
  }
  return {inside ? Label::in_topic : Label::out_of_topic, value.size()};
}

namespace {

void require_batch_dimensions(const BoxBounds& box, std::span<const SparseVector> vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].dimension() != box.dimension()) {
      throw Error(ErrorKind::dimension_mismatch,
                  "vector " + std::to_string(i) + " has dimension " +
                      std::to_string(vectors[i].dimension()) + ", model has " +
                      std::to_string(box.dimension()));
    }
  }
}

}  // namespace

std::vector<Prediction> predict_batch(const BoxBounds& box, std::span<const SparseVector> vectors) {
  require_batch_dimensions(box, vectors);
  std::vector<Prediction> out(vectors.size());
  const auto n = static_cast<std::ptrdiff_t>(vectors.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    out[i] = predict(box, vectors[i]);
  }
  return out;
}

std::vector<Prediction> predict_batch_serial(const BoxBounds& box,
                                             std::span<const SparseVector> vectors) {
  require_batch_dimensions(box, vectors);
  std::vector<Prediction> out;
  out.reserve(vectors.size());
  for (const auto& v : vectors) out.push_back(predict(box, v));
  return out;
}

std::string_view to_string(Weighting w) { return w == Weighting::ne_tf ? "ne-tf" : "tf-idf"; }

Weighting parse_weighting(std::string_view name) {
  if (name == "ne-tf") return Weighting::ne_tf;
  if (name == "tf-idf") return Weighting::tf_idf;
  throw Error(ErrorKind::invalid_argument,
              "unknown weighting '" + std::string(name) + "' (valid: ne-tf, tf-idf)");
}

SparseVector ConicalModel::vectorize(std::span<const std::string> tokens) const {
  return weighted_unit_vector(term_frequencies(tokens, vocabulary), weights);
}

ConicalModel train(std::span<const Tokens> corpus, const TrainingOptions& options) {
  WeightingConfig{options.epsilon, {}}.validate();
  ConicalModel model;
  model.vocabulary = build_vocabulary(corpus);
  if (model.vocabulary.empty()) throw Error(ErrorKind::empty_corpus, "empty corpus");
  model.weighting = options.weighting;
  model.epsilon = options.epsilon;

  const auto stats = document_frequency_rates(corpus, model.vocabulary);
  if (options.weighting == Weighting::ne_tf) {
    if (options.lexicon == nullptr) {
      throw Error(ErrorKind::invalid_argument, "ne-tf weighting requires a lexicon");
    }
    model.weights = ne_weight_vector(model.vocabulary, stats, *options.lexicon, options.epsilon);
  } else {
    model.weights = idf_weight_vector(stats);
  }

  std::vector<SparseVector> vectors;
  vectors.reserve(corpus.size());
  for (const auto& doc : corpus) {
    auto v = model.vectorize(doc);
    if (v.is_zero()) {
      ++model.skipped_documents;
    } else {
      vectors.push_back(std::move(v));
    }
  }
  if (vectors.empty()) {
    throw Error(ErrorKind::degenerate_document, "every training document vectorizes to zero");
  }
  model.training_documents = vectors.size();
  model.bounds = fit(vectors, options.tolerance);
  return model;
}

namespace {

// Angle between unit vectors, accurate near 0 and pi.
double angle_between(const SparseVector& u, const SparseVector& v) {
  double diff = 0.0;
  double sum = 0.0;
  const auto a = u.to_dense();
  const auto b = v.to_dense();
  for (std::size_t i = 0; i < a.size(); ++i) {
    diff += (a[i] - b[i]) * (a[i] - b[i]);
    sum += (a[i] + b[i]) * (a[i] + b[i]);
  }
  return 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
}

SparseVector combine(const SparseVector& x, const SparseVector& y, double lx, double ly) {
  auto a = x.to_dense();
  const auto b = y.to_dense();
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = lx * a[i] + ly * b[i];
  return SparseVector::from_dense(a);
}

void require_unit(const SparseVector& v, const char* name) {
  if (std::abs(v.norm() - 1.0) > kUnitNormSlack) {
    throw Error(ErrorKind::invalid_argument, std::string(name) + " is not a unit vector");
  }
}

}  // namespace

DecompositionResult decompose_between(const SparseVector& x, const SparseVector& y,
                                      const SparseVector& target, double tolerance) {
  if (x.dimension() != y.dimension() || x.dimension() != target.dimension()) {
    throw Error(ErrorKind::dimension_mismatch, "x, y and target differ in dimension");
  }
  if (!(tolerance > 0.0 && tolerance < 1.0)) {
    throw Error(ErrorKind::invalid_argument, "cosine tolerance must lie in (0, 1)");
  }
  require_unit(x, "x");
  require_unit(y, "y");
  require_unit(target, "target");

  const double span_angle = angle_between(x, y);
  if (span_angle >= std::numbers::pi - 1e-12) {
    throw Error(ErrorKind::invalid_argument, "x and y are opposite");
  }
  // 1 - cos(theta) <= tol  <=>  theta <= ~sqrt(2 tol)
  const double angle_slack = std::sqrt(2.0 * tolerance);
  if (angle_between(x, target) + angle_between(target, y) - span_angle > angle_slack) {
    throw Error(ErrorKind::invalid_argument, "target outside segment");
  }

  // g decreases strictly along the arc from x to y.
  auto g = [&](const SparseVector& u) {
    return cosine_similarity(x, u) - cosine_similarity(y, u);
  };
  const double g_target = g(target);
  if (g_target >= g(x)) return {1.0, 0.0, 0};
  if (g_target <= g(y)) return {0.0, 1.0, 0};

  constexpr int kMaxLevel = 46;
  constexpr std::size_t kMaxIterations = 64;
  double lambda_x = 0.5;
  double lambda_y = 0.5;
  int level = 1;
  std::size_t iterations = 0;
  while (level < kMaxLevel) {
    if (iterations == kMaxIterations) break;
    ++iterations;
    const double g_mid = g(combine(x, y, lambda_x, lambda_y));
    if (g_mid == g_target) break;
    ++level;
    const double step = std::ldexp(1.0, -level);
    if (g_mid < g_target) {
      lambda_x += step;
      lambda_y -= step;
    } else {
      lambda_x -= step;
      lambda_y += step;
    }
  }

  const auto reconstructed = combine(x, y, lambda_x, lambda_y);
  if (cosine_similarity(reconstructed, target) < 1.0 - tolerance) {
    throw Error(ErrorKind::convergence,
                "decomposition did not converge after " + std::to_string(iterations) +
                    " iterations");
  }
  return {lambda_x, lambda_y, iterations};
}

}  // namespace conical
