#include "conical/model_io.hpp"

#include <fstream>
#include <sstream>

#include "conical/error.hpp"

namespace conical {

namespace {

constexpr const char* kFormatName = "conical-model";

nlohmann::json sparse_to_json(const SparseVector& v) {
  nlohmann::json indices = nlohmann::json::array();
  nlohmann::json values = nlohmann::json::array();
  for (const auto& e : v.entries()) {
    indices.push_back(e.index);
    values.push_back(e.value);
  }
  return {{"indices", std::move(indices)}, {"values", std::move(values)}};
}

SparseVector sparse_from_json(const nlohmann::json& j, std::size_t dim) {
  const auto indices = j.at("indices").get<std::vector<std::uint32_t>>();
  const auto values = j.at("values").get<std::vector<double>>();
  if (indices.size() != values.size()) {
    throw Error(ErrorKind::malformed_line, "sparse vector indices and values differ in length");
  }
  std::vector<SparseEntry> entries(indices.size());
  for (std::size_t i = 0; i < indices.size(); ++i) entries[i] = {indices[i], values[i]};
  return SparseVector(dim, std::move(entries));
}

}  // namespace

nlohmann::json model_to_json(const ConicalModel& model) {
  nlohmann::json j;
  j["format"] = kFormatName;
  j["format_version"] = kModelFormatVersion;
  j["weighting"] = std::string(to_string(model.weighting));
  j["epsilon"] = model.epsilon;
  j["tolerance"] = model.bounds.tolerance();
  j["training_documents"] = model.training_documents;
  j["skipped_documents"] = model.skipped_documents;
  j["vocabulary"] = std::vector<std::string>(model.vocabulary.terms().begin(),
                                             model.vocabulary.terms().end());
  j["weights"] = std::vector<double>(model.weights.values().begin(), model.weights.values().end());
  j["max"] = sparse_to_json(model.bounds.max_vector());
  j["min"] = sparse_to_json(model.bounds.min_vector());
  return j;
}

ConicalModel model_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format").get<std::string>() != kFormatName) {
      throw Error(ErrorKind::malformed_line, "not a conical model file");
    }
    const int version = j.at("format_version").get<int>();
    if (version > kModelFormatVersion) {
      throw Error(ErrorKind::unsupported_version,
                  "model format version " + std::to_string(version) +
                      " is newer than supported version " + std::to_string(kModelFormatVersion));
    }
    if (version < 1) throw Error(ErrorKind::unsupported_version, "invalid model format version");

    ConicalModel model;
    model.weighting = parse_weighting(j.at("weighting").get<std::string>());
    model.epsilon = j.at("epsilon").get<double>();
    model.training_documents = j.at("training_documents").get<std::size_t>();
    model.skipped_documents = j.at("skipped_documents").get<std::size_t>();
    model.vocabulary = Vocabulary(j.at("vocabulary").get<std::vector<std::string>>());
    model.weights = WeightVector(j.at("weights").get<std::vector<double>>());
    const std::size_t dim = model.vocabulary.size();
    if (model.weights.size() != dim) {
      throw Error(ErrorKind::dimension_mismatch, "weight count does not match vocabulary");
    }
    model.bounds = BoxBounds(sparse_from_json(j.at("max"), dim), sparse_from_json(j.at("min"), dim),
                             j.at("tolerance").get<double>());
    return model;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::malformed_line, std::string("invalid model file: ") + e.what());
  }
}

std::string serialize_model(const ConicalModel& model) { return model_to_json(model).dump() + "\n"; }

void save_model(const ConicalModel& model, const std::filesystem::path& path) {
  const auto bytes = serialize_model(model);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot write " + path.string());
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) throw Error(ErrorKind::io, "write failed for " + path.string());
}

ConicalModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::file_not_found, "cannot open model " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(buffer.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorKind::malformed_line, "invalid model file " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

}  // namespace conical
