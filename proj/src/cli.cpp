#include "conical/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "conical/conical.hpp"
#include "conical/corpus_io.hpp"
#include "conical/error.hpp"
#include "conical/eval.hpp"
#include "conical/format.hpp"
#include "conical/model_io.hpp"

namespace conical {

namespace {

namespace fs = std::filesystem;

struct CliConfig {
  std::string input;
  std::string second_input;
  std::string lexicon;
  std::string out;
  std::string positive_label;
  std::string weighting = "ne-tf";
  double epsilon = kDefaultEpsilon;
  std::uint64_t seed = 0;
  std::size_t repetitions = 20;
  std::size_t top_k = 20;
};

void require_readable(const std::string& path, const char* what) {
  if (!fs::is_regular_file(path)) {
    throw Error(ErrorKind::file_not_found, std::string(what) + " not found: " + path);
  }
}

void require_writable_target(const std::string& path) {
  const auto parent = fs::absolute(fs::path(path)).parent_path();
  if (!fs::is_directory(parent)) {
    throw Error(ErrorKind::io, "output directory does not exist: " + parent.string());
  }
}

void validate_epsilon(double epsilon) { WeightingConfig{epsilon, {}}.validate(); }

// Writes via a sibling temporary file so a failed run never leaves a
// partial artifact behind.
void write_file_atomically(const std::string& path, const std::string& bytes) {
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
    if (!os) throw Error(ErrorKind::io, "cannot write " + tmp.string());
    os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    os.close();
    if (!os) throw Error(ErrorKind::io, "write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::vector<Tokens> tokenize_corpus(const std::vector<Document>& docs) {
  std::vector<Tokens> corpus;
  corpus.reserve(docs.size());
  for (const auto& d : docs) corpus.push_back(tokenize(d.text));
  return corpus;
}

std::vector<Tokens> load_training_corpus(const std::string& path) {
  const auto docs = read_line_corpus(path);
  if (docs.empty()) throw Error(ErrorKind::empty_corpus, "empty corpus");
  auto corpus = tokenize_corpus(docs);
  if (std::all_of(corpus.begin(), corpus.end(), [](const Tokens& t) { return t.empty(); })) {
    throw Error(ErrorKind::empty_corpus, "empty corpus");
  }
  return corpus;
}

int cmd_train(const CliConfig& cfg, std::ostream& out) {
  const Weighting weighting = parse_weighting(cfg.weighting);
  validate_epsilon(cfg.epsilon);
  require_readable(cfg.input, "corpus");
  if (weighting == Weighting::ne_tf) {
    if (cfg.lexicon.empty()) throw Error(ErrorKind::invalid_argument, "--lexicon is required for ne-tf");
    require_readable(cfg.lexicon, "lexicon");
  }
  require_writable_target(cfg.out);

  std::optional<WordFrequencyTable> lexicon;
  if (weighting == Weighting::ne_tf) lexicon = load_frequency_table(cfg.lexicon);
  const auto corpus = load_training_corpus(cfg.input);

  TrainingOptions options;
  options.weighting = weighting;
  options.epsilon = cfg.epsilon;
  options.lexicon = lexicon ? &*lexicon : nullptr;
  const auto model = train(corpus, options);
  write_file_atomically(cfg.out, serialize_model(model));

  out << "vocabulary_size\t" << model.vocabulary.size() << "\n"
      << "training_documents\t" << model.training_documents << "\n"
      << "skipped_documents\t" << model.skipped_documents << "\n"
      << "nonzero_max_dims\t" << model.bounds.max_vector().nonzeros() << "\n"
      << "nonzero_min_dims\t" << model.bounds.min_vector().nonzeros() << "\n"
      << "model\t" << cfg.out << "\n";
  return 0;
}

int cmd_predict(const CliConfig& cfg, std::ostream& out) {
  require_readable(cfg.input, "model");
  require_readable(cfg.second_input, "documents");
  const auto model = load_model(cfg.input);
  const auto docs = read_line_corpus(cfg.second_input);

  std::vector<SparseVector> vectors;
  vectors.reserve(docs.size());
  for (const auto& d : docs) vectors.push_back(model.vectorize_text(d.text));
  const auto predictions = predict_batch(model.bounds, vectors);

  std::string text;
  for (std::size_t i = 0; i < predictions.size(); ++i) {
    text += docs[i].id + "\t" + std::string(to_string(predictions[i].label)) + "\t" +
            std::to_string(predictions[i].dims_checked) + "\n";
  }
  if (!cfg.out.empty()) {
    require_writable_target(cfg.out);
    write_file_atomically(cfg.out, text);
  } else {
    out << text;
  }
  return 0;
}

int cmd_eval(const CliConfig& cfg, std::ostream& out) {
  const Weighting weighting = parse_weighting(cfg.weighting);
  validate_epsilon(cfg.epsilon);
  if (cfg.repetitions < 1) throw Error(ErrorKind::invalid_argument, "--repetitions must be >= 1");
  require_readable(cfg.input, "labeled corpus");
  if (weighting == Weighting::ne_tf) {
    if (cfg.lexicon.empty()) throw Error(ErrorKind::invalid_argument, "--lexicon is required for ne-tf");
    require_readable(cfg.lexicon, "lexicon");
  }
  if (!cfg.out.empty()) require_writable_target(cfg.out);

  LabeledDataset ds;
  ds.documents = read_labeled_jsonl(cfg.input);
  ds.positive_label = cfg.positive_label;
  if (ds.positives() == 0) {
    throw Error(ErrorKind::invalid_argument,
                "positive label '" + cfg.positive_label + "' does not occur in " + cfg.input);
  }
  std::optional<WordFrequencyTable> lexicon;
  if (weighting == Weighting::ne_tf) lexicon = load_frequency_table(cfg.lexicon);

  SplitSpec spec;
  spec.seed = cfg.seed;
  EvalOptions options;
  options.repetitions = cfg.repetitions;
  options.weighting = weighting;
  options.epsilon = cfg.epsilon;
  options.lexicon = lexicon ? &*lexicon : nullptr;
  const auto report = run_evaluation(ds, spec, options);

  if (!cfg.out.empty()) write_file_atomically(cfg.out, report_to_jsonl(report));
  out << format_report_table(report);
  return 0;
}

int cmd_weights(const CliConfig& cfg, std::ostream& out) {
  validate_epsilon(cfg.epsilon);
  require_readable(cfg.input, "corpus");
  if (cfg.lexicon.empty()) throw Error(ErrorKind::invalid_argument, "--lexicon is required");
  require_readable(cfg.lexicon, "lexicon");

  const auto lexicon = load_frequency_table(cfg.lexicon);
  const auto corpus = load_training_corpus(cfg.input);
  const auto vocab = build_vocabulary(corpus);
  const auto stats = document_frequency_rates(corpus, vocab);
  const auto weights = ne_weight_vector(vocab, stats, lexicon, cfg.epsilon);

  std::vector<std::size_t> order(vocab.size());
  for (std::size_t d = 0; d < order.size(); ++d) order[d] = d;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  order.resize(std::min(order.size(), cfg.top_k));
  for (auto d : order) {
    out << vocab.term(d) << "\t" << format_fixed(stats.rate(d), 6) << "\t"
        << format_fixed(lexicon.frequency(vocab.term(d)), 9) << "\t" << format_fixed(weights[d], 6)
        << "\n";
  }
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"One-class topic classification with conical bounds over NE-TF vectors", "conical"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* train_cmd = app.add_subcommand("train", "Fit a model on a one-document-per-line corpus");
  train_cmd->add_option("corpus", cfg.input, "Positive training corpus")->required();
  train_cmd->add_option("--lexicon", cfg.lexicon, "term<TAB>count frequency lexicon");
  train_cmd->add_option("--out", cfg.out, "Model output path")->required();
  train_cmd->add_option("--epsilon", cfg.epsilon, "Rate offset")->capture_default_str();
  train_cmd->add_option("--weighting", cfg.weighting, "ne-tf or tf-idf")->capture_default_str();

  auto* predict_cmd = app.add_subcommand("predict", "Classify one document per line");
  predict_cmd->add_option("model", cfg.input, "Model file")->required();
  predict_cmd->add_option("documents", cfg.second_input, "Documents, one per line")->required();
  predict_cmd->add_option("--out", cfg.out, "Write predictions here instead of stdout");

  auto* eval_cmd = app.add_subcommand("eval", "Repeated one-vs-all evaluation on labeled JSON lines");
  eval_cmd->add_option("labeled", cfg.input, "JSON-lines file with text and label")->required();
  eval_cmd->add_option("--positive", cfg.positive_label, "Label of the positive topic")->required();
  eval_cmd->add_option("--lexicon", cfg.lexicon, "term<TAB>count frequency lexicon");
  eval_cmd->add_option("--repetitions", cfg.repetitions, "Number of resplits")->capture_default_str();
  eval_cmd->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  eval_cmd->add_option("--weighting", cfg.weighting, "ne-tf or tf-idf")->capture_default_str();
  eval_cmd->add_option("--epsilon", cfg.epsilon, "Rate offset")->capture_default_str();
  eval_cmd->add_option("--out", cfg.out, "JSON-lines report path");

  auto* weights_cmd = app.add_subcommand("weights", "List the highest NE-scored terms of a corpus");
  weights_cmd->add_option("corpus", cfg.input, "Corpus, one document per line")->required();
  weights_cmd->add_option("--lexicon", cfg.lexicon, "term<TAB>count frequency lexicon");
  weights_cmd->add_option("--epsilon", cfg.epsilon, "Rate offset")->capture_default_str();
  weights_cmd->add_option("--top-k", cfg.top_k, "Number of terms to list")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 1;
  }

  try {
    if (train_cmd->parsed()) return cmd_train(cfg, out);
    if (predict_cmd->parsed()) return cmd_predict(cfg, out);
    if (eval_cmd->parsed()) return cmd_eval(cfg, out);
    if (weights_cmd->parsed()) return cmd_weights(cfg, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace conical
