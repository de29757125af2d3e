#include "prodigy/libsvm.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace prodigy {

namespace {

[[noreturn]] void fail(const std::string& origin, long line_no, const std::string& what) {
  throw std::runtime_error(origin + ":" + std::to_string(line_no) + ": " + what);
}

bool parse_double(const std::string& token, double& out) {
  const char* begin = token.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  return end != begin && *end == '\0';
}

}  // namespace

Dataset load_libsvm_stream(std::istream& in, const std::string& origin) {
  struct SparseRow {
    double label;
    std::vector<std::pair<long, double>> entries;
  };
  std::vector<SparseRow> rows;
  long max_index = 0;

  std::string line;
  long line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.resize(hash);
    }
    std::istringstream tokens(line);
    std::string token;
    if (!(tokens >> token)) continue;  // blank or comment-only line

    SparseRow row;
    if (!parse_double(token, row.label)) fail(origin, line_no, "bad label '" + token + "'");

    while (tokens >> token) {
      const auto colon = token.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == token.size()) {
        fail(origin, line_no, "bad feature entry '" + token + "'");
      }
      const std::string index_part = token.substr(0, colon);
      const char* ib = index_part.c_str();
      char* ie = nullptr;
      const long index = std::strtol(ib, &ie, 10);
      if (ie == ib || *ie != '\0' || index < 1) {
        fail(origin, line_no, "bad feature index '" + index_part + "'");
      }
      double value = 0.0;
      if (!parse_double(token.substr(colon + 1), value)) {
        fail(origin, line_no, "bad feature value in '" + token + "'");
      }
      row.entries.emplace_back(index, value);
      max_index = std::max(max_index, index);
    }
    rows.push_back(std::move(row));
  }

  if (rows.empty()) throw std::runtime_error(origin + ": no samples");

  // Remap labels to contiguous ids, ordered by original value.
  std::map<double, int> label_ids;
  for (const auto& row : rows) label_ids.emplace(row.label, 0);
  int next_id = 0;
  for (auto& [value, id] : label_ids) id = next_id++;

  Dataset data;
  data.n_samples = static_cast<int>(rows.size());
  data.n_features = static_cast<int>(max_index);
  data.n_classes = next_id;
  data.features.assign(static_cast<std::size_t>(data.n_samples) * data.n_features, 0.0);
  data.labels.resize(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    data.labels[i] = label_ids.at(rows[i].label);
    double* dense = data.features.data() + i * data.n_features;
    for (const auto& [index, value] : rows[i].entries) dense[index - 1] = value;
  }
  return data;
}

Dataset load_libsvm(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open");
  return load_libsvm_stream(in, path);
}

}  // namespace prodigy
