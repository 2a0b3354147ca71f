#include <fstream>
#include <sstream>

#include "json.hpp"
#include "renyikit/dist.hpp"

namespace renyikit {

using nlohmann::json;

namespace {

// Byte offset -> "line L, column C".
std::string locate(std::string_view text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

json parse(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError("malformed JSON at " + locate(text, e.byte) + ": " +
                     e.what());
  }
}

Labels read_labels(const json& j, const char* key, std::size_t fallback) {
  if (!j.contains(key)) return default_labels(fallback);
  const auto& arr = j.at(key);
  if (!arr.is_array()) throw ParseError(std::string("'") + key + "' must be an array");
  Labels out;
  for (const auto& l : arr) {
    if (l.is_string()) {
      out.push_back(l.get<std::string>());
    } else if (l.is_number_integer()) {
      out.push_back(std::to_string(l.get<long long>()));
    } else {
      throw ParseError(std::string("labels in '") + key +
                       "' must be strings or integers");
    }
  }
  return out;
}

std::vector<double> read_reals(const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ParseError(where + " must be an array of numbers");
  std::vector<double> out;
  out.reserve(arr.size());
  for (const auto& v : arr) {
    if (!v.is_number()) throw ParseError(where + " contains a non-number");
    out.push_back(v.get<double>());
  }
  return out;
}

}  // namespace

std::string to_json(const Pmf& pmf) {
  json j;
  j["alphabet"] = pmf.alphabet();
  j["pmf"] = std::vector<double>(pmf.probs().begin(), pmf.probs().end());
  return j.dump();
}

std::string to_json(const JointPmf& joint) {
  json j;
  j["alphabet_x"] = joint.alphabet_x();
  j["alphabet_y"] = joint.alphabet_y();
  json rows = json::array();
  for (std::size_t x = 0; x < joint.nx(); ++x) {
    auto r = joint.row(x);
    rows.push_back(std::vector<double>(r.begin(), r.end()));
  }
  j["pmf"] = std::move(rows);
  return j.dump();
}

Pmf pmf_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("pmf")) {
    throw ParseError("expected an object with key 'pmf'");
  }
  auto probs = read_reals(j.at("pmf"), "'pmf'");
  auto labels = read_labels(j, "alphabet", probs.size());
  return Pmf::make(std::move(labels), std::move(probs));
}

JointPmf joint_from_json(std::string_view text) {
  const json j = parse(text);
  if (!j.is_object() || !j.contains("pmf")) {
    throw ParseError("expected an object with key 'pmf'");
  }
  const auto& rows = j.at("pmf");
  if (!rows.is_array() || rows.empty()) {
    throw ParseError("'pmf' must be a non-empty array of rows");
  }
  std::vector<double> flat;
  std::size_t ny = 0;
  for (std::size_t x = 0; x < rows.size(); ++x) {
    auto r = read_reals(rows[x], "'pmf' row " + std::to_string(x));
    if (x == 0) ny = r.size();
    if (r.size() != ny) {
      throw ShapeMismatch("'pmf' row " + std::to_string(x) + " has " +
                          std::to_string(r.size()) + " entries, expected " +
                          std::to_string(ny));
    }
    flat.insert(flat.end(), r.begin(), r.end());
  }
  auto ax = read_labels(j, "alphabet_x", rows.size());
  auto ay = read_labels(j, "alphabet_y", ny);
  return JointPmf::make(std::move(ax), std::move(ay), std::move(flat));
}

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

JointPmf read_joint_file(const std::string& path) {
  const std::string text = slurp(path);
  try {
    return joint_from_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Pmf read_pmf_file(const std::string& path) {
  const std::string text = slurp(path);
  try {
    return pmf_from_json(text);
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace renyikit
