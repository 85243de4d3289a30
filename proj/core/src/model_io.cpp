#include "lelm/model_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "lelm/error.hpp"

namespace lelm::elm {

using nlohmann::json;

namespace {

json rows_of(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_of(const json& rows, const char* field) {
  if (!rows.is_array() || rows.empty() || !rows.front().is_array()) {
    throw Error(ErrorCode::ParseError, std::string("model field '") + field +
                                           "' must be a non-empty array of rows");
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  const auto m = static_cast<Eigen::Index>(rows.front().size());
  Matrix out(n, m);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& row = rows[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != m) {
      throw Error(ErrorCode::ParseError, std::string("model field '") + field +
                                             "' has ragged rows");
    }
    for (Eigen::Index j = 0; j < m; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) {
        throw Error(ErrorCode::ParseError,
                    std::string("model field '") + field + "' has a non-numeric entry");
      }
      out(i, j) = v.get<double>();
    }
  }
  return out;
}

}  // namespace

std::string model_to_json(const TrainedModel& model) {
  json doc;
  doc["version"] = kModelFormatVersion;
  doc["activation"] = std::string(name(model.activation));
  doc["chaos"] = {{"z1", model.chaos().z1}, {"mu", model.chaos().mu}};
  json ids = json::array();
  for (auto id : model.feature_ids) ids.push_back(features::to_int(id));
  doc["feature_ids"] = std::move(ids);
  doc["feature_mode"] = std::string(features::name(model.feature_mode));
  doc["class_count"] = model.class_count;
  if (model.normalization) {
    doc["normalization"] = {{"means", model.normalization->means},
                            {"stds", model.normalization->stds}};
  } else {
    doc["normalization"] = nullptr;
  }
  doc["W"] = rows_of(model.input_weights.values());
  doc["beta"] = rows_of(model.output_weights);
  return doc.dump(2) + "\n";
}

TrainedModel model_from_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("model is not valid JSON: ") + e.what());
  }
  try {
    if (doc.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::ParseError,
                  "unsupported model version " + doc.at("version").dump());
    }
    const auto act = parse_activation(doc.at("activation").get<std::string>());
    const chaos::ChaosConfig cfg{doc.at("chaos").at("z1").get<double>(),
                                 doc.at("chaos").at("mu").get<double>()};
    std::vector<features::FeatureId> ids;
    for (const auto& v : doc.at("feature_ids")) ids.push_back(features::from_int(v.get<int>()));
    auto mode = features::FeatureMode::Rectified;
    if (doc.contains("feature_mode")) {
      mode = features::parse_feature_mode(doc["feature_mode"].get<std::string>());
    }
    const int m = doc.at("class_count").get<int>();
    std::optional<features::NormalizationStats> norm;
    if (!doc.at("normalization").is_null()) {
      norm = features::NormalizationStats{
          doc["normalization"].at("means").get<std::vector<double>>(),
          doc["normalization"].at("stds").get<std::vector<double>>()};
      if (norm->means.size() != ids.size() || norm->stds.size() != ids.size()) {
        throw Error(ErrorCode::ParseError, "normalization length differs from feature count");
      }
    }
    const Matrix w = matrix_of(doc.at("W"), "W");
    Matrix beta = matrix_of(doc.at("beta"), "beta");
    if (static_cast<std::size_t>(w.rows()) != ids.size()) {
      throw Error(ErrorCode::ParseError, "W row count differs from feature count");
    }
    if (beta.rows() != w.cols() || beta.cols() != m) {
      throw Error(ErrorCode::ParseError, "beta must be L x class_count");
    }
    auto regenerated =
        chaos::build_weight_matrix(cfg, static_cast<std::size_t>(w.rows()),
                                   static_cast<std::size_t>(w.cols()));
    if (regenerated.values() != w) {
      throw Error(ErrorCode::ParseError,
                  "stored W does not match the matrix generated from its chaos parameters");
    }
    return TrainedModel{std::move(regenerated), std::move(beta), act, std::move(ids), mode,
                        std::move(norm), m};
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed model document: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write model to " + path.string());
  out << model_to_json(model);
  if (!out) throw Error(ErrorCode::IoError, "failed writing model to " + path.string());
}

TrainedModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open model " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return model_from_json(buf.str());
}

}  // namespace lelm::elm
