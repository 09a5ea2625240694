#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "conical/conical.hpp"
#include "conical/corpus_io.hpp"
#include "conical/weighting.hpp"

namespace conical {

/// One-vs-all dataset: documents labeled `positive_label` form the positive
/// class, everything else the negative class.
struct LabeledDataset {
  std::vector<LabeledDocument> documents;
  std::string positive_label;

  bool is_positive(std::size_t i) const { return documents[i].label == positive_label; }
  std::size_t positives() const;
  std::size_t negatives() const { return documents.size() - positives(); }
};

struct SplitSpec {
  double train_fraction = 0.70;
  double validation_fraction = 0.15;
  double test_fraction = 0.15;
  double negative_validation_fraction = 0.50;
  double negative_test_fraction = 0.50;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Indices into LabeledDataset::documents. Training holds positives only;
/// validation and test list their positives first.
struct DatasetSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

/// Shuffles each class with the seed, then takes floor(n * train) positives
/// for training and divides the remainder between validation and test,
/// validation receiving the odd document. Negatives are divided the same way
/// between validation and test.
DatasetSplit split_dataset(const LabeledDataset& ds, const SplitSpec& spec);

struct ConfusionMatrix {
  std::size_t tp = 0, fp = 0, tn = 0, fn = 0;
  std::size_t total() const { return tp + fp + tn + fn; }
};

struct MetricSet {
  double accuracy = 0.0;
  double balanced_accuracy = 0.0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

ConfusionMatrix tally(std::span<const Label> predicted, std::span<const Label> truth);

/// Ratios with a zero denominator are 0. Balanced accuracy averages the
/// per-class rates of the classes present in `truth`.
MetricSet metrics_from_confusion(const ConfusionMatrix& cm);
MetricSet compute_metrics(std::span<const Label> predicted, std::span<const Label> truth);

struct EvalOptions {
  std::size_t repetitions = 20;
  Weighting weighting = Weighting::ne_tf;
  double epsilon = kDefaultEpsilon;
  const WordFrequencyTable* lexicon = nullptr;
};

struct RunRecord {
  std::size_t repetition = 0;
  std::uint64_t seed = 0;
  MetricSet test;
  MetricSet validation;
  double wall_seconds = 0.0;
  std::size_t vocabulary_size = 0;
  std::size_t training_documents = 0;
};

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;  ///< sample standard deviation, 0 for a single value
};

MeanStd mean_std(std::span<const double> values);

struct EvalSummary {
  MeanStd accuracy, balanced_accuracy, precision, recall, f1, wall_seconds;
};

struct EvalReport {
  std::string positive_label;
  Weighting weighting = Weighting::ne_tf;
  std::uint64_t seed = 0;
  std::vector<RunRecord> runs;

  std::size_t repetitions() const { return runs.size(); }
  EvalSummary summary() const;
};

/// Repetition i resplits with seed + i, trains on the positive training
/// split and predicts the test split. Wall time covers tokenization,
/// weighting, fitting and test prediction. Validation metrics are recorded
/// but not used for any selection.
EvalReport run_evaluation(const LabeledDataset& ds, const SplitSpec& spec, const EvalOptions& options);

/// Human-readable mean/std table.
std::string format_report_table(const EvalReport& report);

/// One JSON record per repetition (`"type":"run"`) followed by a summary
/// record (`"type":"summary"`). Timing lives only under the `wall_time_s`
/// keys.
std::string report_to_jsonl(const EvalReport& report);

struct ScalingRow {
  std::size_t n = 0;
  double short_circuit_seconds = 0.0;
  double full_scan_seconds = 0.0;
  /// Time ratio to the previous row; empty for the first row and whenever
  /// either size is 0.
  std::optional<double> ratio;
  bool labels_identical = true;
  std::size_t in_topic = 0;
};

/// Times prediction of n random unit vectors (at the model dimension) for
/// each n, with and without short-circuiting. `n_list` must be ascending.
std::vector<ScalingRow> time_scaling_probe(const BoxBounds& model, std::span<const std::size_t> n_list,
                                           std::uint64_t seed, std::size_t nonzeros = 32);

std::string format_scaling_table(std::span<const ScalingRow> rows);

}  // namespace conical
