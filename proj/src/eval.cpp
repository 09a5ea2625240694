#include "conical/eval.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

#include <json.hpp>

#include "conical/error.hpp"
#include "conical/format.hpp"
#include "conical/synthetic.hpp"

namespace conical {

std::size_t LabeledDataset::positives() const {
  return static_cast<std::size_t>(std::count_if(documents.begin(), documents.end(),
                                                [&](const auto& d) { return d.label == positive_label; }));
}

void SplitSpec::validate() const {
  auto near_one = [](double s) { return std::abs(s - 1.0) <= 1e-9; };
  const bool ok = train_fraction > 0.0 && validation_fraction >= 0.0 && test_fraction > 0.0 &&
                  negative_validation_fraction >= 0.0 && negative_test_fraction > 0.0 &&
                  near_one(train_fraction + validation_fraction + test_fraction) &&
                  near_one(negative_validation_fraction + negative_test_fraction);
  if (!ok) throw Error(ErrorKind::invalid_argument, "split fractions must be positive and sum to 1");
}

namespace {

// Share of `n` given to the first of two parts, rounded up.
std::size_t first_share(std::size_t n, double first, double second) {
  const double exact = static_cast<double>(n) * first / (first + second);
  return std::min(n, static_cast<std::size_t>(std::ceil(exact - 1e-9)));
}

}  // namespace

DatasetSplit split_dataset(const LabeledDataset& ds, const SplitSpec& spec) {
  spec.validate();
  std::vector<std::size_t> pos;
  std::vector<std::size_t> neg;
  for (std::size_t i = 0; i < ds.documents.size(); ++i) (ds.is_positive(i) ? pos : neg).push_back(i);
  if (pos.size() < 3) {
    throw Error(ErrorKind::invalid_argument,
                "positive class '" + ds.positive_label + "' has " + std::to_string(pos.size()) +
                    " documents; at least 3 are required");
  }
  if (neg.size() < 2) {
    throw Error(ErrorKind::invalid_argument,
                "negative class has " + std::to_string(neg.size()) +
                    " documents; at least 2 are required");
  }

  std::mt19937_64 rng(spec.seed);
  deterministic_shuffle(pos, rng);
  deterministic_shuffle(neg, rng);

  const auto n_train = static_cast<std::size_t>(
      std::floor(static_cast<double>(pos.size()) * spec.train_fraction + 1e-9));
  const std::size_t remainder = pos.size() - n_train;
  const std::size_t n_val = first_share(remainder, spec.validation_fraction, spec.test_fraction);
  const std::size_t n_neg_val =
      first_share(neg.size(), spec.negative_validation_fraction, spec.negative_test_fraction);

  DatasetSplit split;
  split.train.assign(pos.begin(), pos.begin() + n_train);
  split.validation.assign(pos.begin() + n_train, pos.begin() + n_train + n_val);
  split.test.assign(pos.begin() + n_train + n_val, pos.end());
  split.validation.insert(split.validation.end(), neg.begin(), neg.begin() + n_neg_val);
  split.test.insert(split.test.end(), neg.begin() + n_neg_val, neg.end());
  return split;
}

ConfusionMatrix tally(std::span<const Label> predicted, std::span<const Label> truth) {
  if (predicted.size() != truth.size()) {
    throw Error(ErrorKind::dimension_mismatch, "prediction and truth lengths differ");
  }
  if (predicted.empty()) throw Error(ErrorKind::invalid_argument, "no predictions to score");
  ConfusionMatrix cm;
  for (std::size_t i = 0; i < predicted.size(); ++i) {
    const bool p = predicted[i] == Label::in_topic;
    const bool t = truth[i] == Label::in_topic;
    if (p && t) ++cm.tp;
    else if (p) ++cm.fp;
    else if (t) ++cm.fn;
    else ++cm.tn;
  }
  return cm;
}

MetricSet metrics_from_confusion(const ConfusionMatrix& cm) {
  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  MetricSet m;
  m.accuracy = ratio(cm.tp + cm.tn, cm.total());
  m.precision = ratio(cm.tp, cm.tp + cm.fp);
  m.recall = ratio(cm.tp, cm.tp + cm.fn);
  m.f1 = (m.precision + m.recall) == 0.0 ? 0.0
                                         : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  const bool has_pos = cm.tp + cm.fn > 0;
  const bool has_neg = cm.tn + cm.fp > 0;
  const double tnr = ratio(cm.tn, cm.tn + cm.fp);
  if (has_pos && has_neg) {
    m.balanced_accuracy = 0.5 * (m.recall + tnr);
  } else {
    m.balanced_accuracy = has_pos ? m.recall : tnr;
  }
  return m;
}

MetricSet compute_metrics(std::span<const Label> predicted, std::span<const Label> truth) {
  return metrics_from_confusion(tally(predicted, truth));
}

MeanStd mean_std(std::span<const double> values) {
  MeanStd out;
  if (values.empty()) return out;
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / static_cast<double>(values.size());
  if (values.size() > 1) {
    double sq = 0.0;
    for (double v : values) sq += (v - out.mean) * (v - out.mean);
    out.std = std::sqrt(sq / static_cast<double>(values.size() - 1));
  }
  return out;
}

EvalSummary EvalReport::summary() const {
  auto column = [&](auto field) {
    std::vector<double> xs;
    xs.reserve(runs.size());
    for (const auto& r : runs) xs.push_back(field(r));
    return mean_std(xs);
  };
  EvalSummary s;
  s.accuracy = column([](const RunRecord& r) { return r.test.accuracy; });
  s.balanced_accuracy = column([](const RunRecord& r) { return r.test.balanced_accuracy; });
  s.precision = column([](const RunRecord& r) { return r.test.precision; });
  s.recall = column([](const RunRecord& r) { return r.test.recall; });
  s.f1 = column([](const RunRecord& r) { return r.test.f1; });
  s.wall_seconds = column([](const RunRecord& r) { return r.wall_seconds; });
  return s;
}

namespace {

std::vector<Label> predict_documents(const ConicalModel& model, const LabeledDataset& ds,
                                     std::span<const std::size_t> indices) {
  std::vector<SparseVector> vectors;
  vectors.reserve(indices.size());
  for (auto i : indices) vectors.push_back(model.vectorize_text(ds.documents[i].text));
  const auto predictions = predict_batch(model.bounds, vectors);
  std::vector<Label> labels;
  labels.reserve(predictions.size());
  for (const auto& p : predictions) labels.push_back(p.label);
  return labels;
}

std::vector<Label> truth_labels(const LabeledDataset& ds, std::span<const std::size_t> indices) {
  std::vector<Label> labels;
  labels.reserve(indices.size());
  for (auto i : indices) labels.push_back(ds.is_positive(i) ? Label::in_topic : Label::out_of_topic);
  return labels;
}

}  // namespace

EvalReport run_evaluation(const LabeledDataset& ds, const SplitSpec& spec, const EvalOptions& options) {
  if (options.repetitions < 1) throw Error(ErrorKind::invalid_argument, "repetitions must be >= 1");
  if (ds.positives() == 0) {
    throw Error(ErrorKind::invalid_argument, "positive label '" + ds.positive_label + "' not present");
  }
  EvalReport report;
  report.positive_label = ds.positive_label;
  report.weighting = options.weighting;
  report.seed = spec.seed;

  TrainingOptions training;
  training.weighting = options.weighting;
  training.epsilon = options.epsilon;
  training.lexicon = options.lexicon;

  for (std::size_t rep = 0; rep < options.repetitions; ++rep) {
    SplitSpec rep_spec = spec;
    rep_spec.seed = spec.seed + rep;
    const auto split = split_dataset(ds, rep_spec);

    const auto start = std::chrono::steady_clock::now();
    std::vector<Tokens> corpus;
    corpus.reserve(split.train.size());
    for (auto i : split.train) corpus.push_back(tokenize(ds.documents[i].text));
    const auto model = train(corpus, training);
    const auto test_predictions = predict_documents(model, ds, split.test);
    const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    RunRecord record;
    record.repetition = rep;
    record.seed = rep_spec.seed;
    record.test = compute_metrics(test_predictions, truth_labels(ds, split.test));
    record.validation =
        compute_metrics(predict_documents(model, ds, split.validation), truth_labels(ds, split.validation));
    record.wall_seconds = elapsed.count();
    record.vocabulary_size = model.vocabulary.size();
    record.training_documents = model.training_documents;
    report.runs.push_back(record);
  }
  return report;
}

namespace {

nlohmann::json metrics_json(const MetricSet& m) {
  return {{"accuracy", m.accuracy},   {"balanced_accuracy", m.balanced_accuracy},
          {"precision", m.precision}, {"recall", m.recall},
          {"f1", m.f1}};
}

nlohmann::json mean_std_json(const MeanStd& s) { return {{"mean", s.mean}, {"std", s.std}}; }

}  // namespace

std::string report_to_jsonl(const EvalReport& report) {
  std::string out;
  for (const auto& r : report.runs) {
    nlohmann::json j = {{"type", "run"},
                        {"repetition", r.repetition},
                        {"seed", r.seed},
                        {"test", metrics_json(r.test)},
                        {"validation", metrics_json(r.validation)},
                        {"vocabulary_size", r.vocabulary_size},
                        {"training_documents", r.training_documents},
                        {"wall_time_s", r.wall_seconds}};
    out += j.dump() + "\n";
  }
  const auto s = report.summary();
  nlohmann::json summary = {{"type", "summary"},
                            {"positive_label", report.positive_label},
                            {"weighting", std::string(to_string(report.weighting))},
                            {"seed", report.seed},
                            {"repetitions", report.repetitions()},
                            {"accuracy", mean_std_json(s.accuracy)},
                            {"balanced_accuracy", mean_std_json(s.balanced_accuracy)},
                            {"precision", mean_std_json(s.precision)},
                            {"recall", mean_std_json(s.recall)},
                            {"f1", mean_std_json(s.f1)},
                            {"wall_time_s", mean_std_json(s.wall_seconds)}};
  out += summary.dump() + "\n";
  return out;
}

std::string format_report_table(const EvalReport& report) {
  const auto s = report.summary();
  std::ostringstream os;
  os << "positive label: " << report.positive_label << "  weighting: " << to_string(report.weighting)
     << "  repetitions: " << report.repetitions() << "  seed: " << report.seed << "\n";
  os << "metric              mean      std\n";
  auto row = [&](const char* name, const MeanStd& v, int precision) {
    std::string label = name;
    label.resize(18, ' ');
    os << label << "  " << format_fixed(v.mean, precision) << "  " << format_fixed(v.std, precision)
       << "\n";
  };
  row("accuracy", s.accuracy, 4);
  row("balanced_accuracy", s.balanced_accuracy, 4);
  row("precision", s.precision, 4);
  row("recall", s.recall, 4);
  row("f1", s.f1, 4);
  row("time_s", s.wall_seconds, 4);
  return os.str();
}

std::vector<ScalingRow> time_scaling_probe(const BoxBounds& model, std::span<const std::size_t> n_list,
                                           std::uint64_t seed, std::size_t nonzeros) {
  if (!std::is_sorted(n_list.begin(), n_list.end())) {
    throw Error(ErrorKind::invalid_argument, "n_list must be ascending");
  }
  std::vector<ScalingRow> rows;
  for (std::size_t k = 0; k < n_list.size(); ++k) {
    ScalingRow row;
    row.n = n_list[k];
    const auto vectors = random_unit_vectors(row.n, model.dimension(), nonzeros, seed + k);

    auto t0 = std::chrono::steady_clock::now();
    const auto fast = predict_batch_serial(model, vectors);
    auto t1 = std::chrono::steady_clock::now();
    std::vector<Prediction> full;
    full.reserve(vectors.size());
    for (const auto& v : vectors) full.push_back(brute_force_membership(model, v));
    auto t2 = std::chrono::steady_clock::now();

    row.short_circuit_seconds = std::chrono::duration<double>(t1 - t0).count();
    row.full_scan_seconds = std::chrono::duration<double>(t2 - t1).count();
    for (std::size_t i = 0; i < fast.size(); ++i) {
      row.labels_identical &= fast[i].label == full[i].label;
      row.in_topic += fast[i].label == Label::in_topic;
    }
    if (!rows.empty() && rows.back().n > 0 && rows.back().short_circuit_seconds > 0.0 && row.n > 0) {
      row.ratio = row.short_circuit_seconds / rows.back().short_circuit_seconds;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string format_scaling_table(std::span<const ScalingRow> rows) {
  std::ostringstream os;
  os << "n          short_circuit_s  full_scan_s  ratio      labels\n";
  for (const auto& r : rows) {
    std::string n = std::to_string(r.n);
    n.resize(10, ' ');
    os << n << " " << format_fixed(r.short_circuit_seconds, 6) << "         "
       << format_fixed(r.full_scan_seconds, 6) << "     "
       << (r.ratio ? format_fixed(*r.ratio, 3) : std::string("undefined")) << "  "
       << (r.labels_identical ? "identical" : "DIFFER") << "\n";
  }
  return os.str();
}

}  // namespace conical
