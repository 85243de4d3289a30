#include "lelm/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include <json.hpp>

namespace lelm::report {

using nlohmann::json;

namespace {

json ids_json(const std::vector<features::FeatureId>& ids) {
  json a = json::array();
  for (auto id : ids) a.push_back(features::to_int(id));
  return a;
}

std::string ids_text(const std::vector<features::FeatureId>& ids) {
  std::string s;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(features::to_int(ids[i]));
  }
  return s;
}

json distribution_json(const eval::Distribution& d) {
  return {{"accuracies", d.accuracies}, {"mean", d.mean},         {"variance", d.variance},
          {"max", d.max},               {"densities", d.densities}};
}

}  // namespace

std::string format_table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& row : rows) {
    if (width.size() < row.size()) width.resize(row.size(), 0);
    for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
  }
  std::ostringstream os;
  for (const auto& row : rows) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      line += row[c];
      if (c + 1 < row.size()) line += std::string(width[c] - row[c].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << "\n";
  }
  return os.str();
}

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string to_json(const eval::SweepResult& sweep) {
  json cells = json::array();
  for (auto [r, c] : sweep.argmax_cells()) {
    cells.push_back({{sweep.row_axis, sweep.row_labels[r]}, {sweep.col_axis, sweep.col_labels[c]}});
  }
  json doc = {{"row_axis", sweep.row_axis},       {"col_axis", sweep.col_axis},
              {"rows", sweep.row_labels},         {"cols", sweep.col_labels},
              {"accuracy", sweep.accuracy},       {"repetitions", sweep.repetitions},
              {"argmax_cells", std::move(cells)}};
  return doc.dump(2) + "\n";
}

std::string to_table(const eval::SweepResult& sweep) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> header{sweep.row_axis + "\\" + sweep.col_axis};
  header.insert(header.end(), sweep.col_labels.begin(), sweep.col_labels.end());
  rows.push_back(std::move(header));
  for (std::size_t r = 0; r < sweep.accuracy.size(); ++r) {
    std::vector<std::string> row{sweep.row_labels[r]};
    for (double a : sweep.accuracy[r]) row.push_back(fixed(a, 4));
    rows.push_back(std::move(row));
  }
  return format_table(rows);
}

std::string to_csv(const eval::SweepResult& sweep) {
  std::ostringstream os;
  os << sweep.row_axis << "," << sweep.col_axis << ",accuracy\n";
  char buf[64];
  for (std::size_t r = 0; r < sweep.accuracy.size(); ++r) {
    for (std::size_t c = 0; c < sweep.accuracy[r].size(); ++c) {
      std::snprintf(buf, sizeof buf, "%.17g", sweep.accuracy[r][c]);
      os << sweep.row_labels[r] << "," << sweep.col_labels[c] << "," << buf << "\n";
    }
  }
  return os.str();
}

std::string to_json(const eval::StabilityReport& report) {
  json bins = json::array();
  for (const auto& b : eval::stability_bins()) bins.push_back(b.label);
  json doc = {{"trials", report.trials},
              {"base_seed", report.base_seed},
              {"bins", std::move(bins)},
              {"logistic_elm", distribution_json(report.logistic)},
              {"random_elm", distribution_json(report.random_baseline)}};
  return doc.dump(2) + "\n";
}

std::string to_table(const eval::StabilityReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"accuracy", "random ELM", "logistic-ELM"});
  const auto& bins = eval::stability_bins();
  for (std::size_t b = 0; b < bins.size(); ++b) {
    rows.push_back({bins[b].label, fixed(report.random_baseline.densities[b], 2),
                    fixed(report.logistic.densities[b], 2)});
  }
  rows.push_back({"highest", fixed(report.random_baseline.max, 3), fixed(report.logistic.max, 3)});
  rows.push_back(
      {"expected", fixed(report.random_baseline.mean, 3), fixed(report.logistic.mean, 3)});
  rows.push_back({"variance", fixed(report.random_baseline.variance, 6),
                  fixed(report.logistic.variance, 6)});
  return format_table(rows);
}

std::string to_json(const eval::LatencyReport& report) {
  json stages = json::array();
  for (const auto& s : report.stages) {
    stages.push_back({{"name", s.name}, {"mean_s", s.mean}, {"min_s", s.min}});
  }
  json doc = {{"samples", report.samples},
              {"repetitions", report.repetitions},
              {"stages", std::move(stages)},
              {"total", {{"mean_s", report.total.mean}, {"min_s", report.total.min}}}};
  return doc.dump(2) + "\n";
}

std::string to_table(const eval::LatencyReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"stage", "mean (s)", "min (s)"});
  for (const auto& s : report.stages) rows.push_back({s.name, fixed(s.mean, 6), fixed(s.min, 6)});
  rows.push_back({"total", fixed(report.total.mean, 6), fixed(report.total.min, 6)});
  return format_table(rows) + std::to_string(report.samples) + " samples, " +
         std::to_string(report.repetitions) + " repetitions\n";
}

std::string to_json(const eval::MultiConditionReport& report) {
  json rows = json::array();
  for (const auto& c : report.conditions) {
    rows.push_back({{"name", c.name},
                    {"features", ids_json(c.features)},
                    {"verify_accuracy", c.verify_accuracy},
                    {"test_accuracy", c.test_accuracy}});
  }
  json doc = {{"conditions", std::move(rows)},
              {"average_test_accuracy", report.average_test_accuracy}};
  return doc.dump(2) + "\n";
}

std::string to_table(const eval::MultiConditionReport& report) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"condition", "features", "verify", "test"});
  for (const auto& c : report.conditions) {
    rows.push_back({c.name, ids_text(c.features), fixed(c.verify_accuracy, 4),
                    fixed(c.test_accuracy, 4)});
  }
  rows.push_back({"average", "", "", fixed(report.average_test_accuracy, 4)});
  return format_table(rows);
}

std::string to_json(const eval::PipelineResult& result) {
  json doc = {{"features", ids_json(result.model.feature_ids)},
              {"activation", std::string(elm::name(result.model.activation))},
              {"neurons", result.model.neurons()},
              {"chaos", {{"z1", result.model.chaos().z1}, {"mu", result.model.chaos().mu}}},
              {"verify_accuracy", result.verify_accuracy},
              {"test_accuracy", result.test_accuracy}};
  doc["sfs"] = result.sfs ? json::parse(sfs::trace_to_json(*result.sfs)) : json();
  return doc.dump(2) + "\n";
}

}  // namespace lelm::report
