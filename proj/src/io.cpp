#include "qimet/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qimet::io {

namespace {

using nlohmann::json;

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

json parse(std::istream& in, const char* what) {
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw IoError(std::string("malformed ") + what + ": " + e.what());
  }
  return j;
}

}  // namespace

FiniteMetricSpace read_space_json(std::istream& in, double tol) {
  const json j = parse(in, "space JSON");
  if (!j.is_object() || !j.contains("matrix"))
    throw IoError("space JSON needs a \"matrix\" field");
  Matrix rows;
  std::vector<std::string> labels;
  try {
    rows = j.at("matrix").get<Matrix>();
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
  } catch (const json::exception& e) {
    throw IoError(std::string("bad space JSON field: ") + e.what());
  }
  return FiniteMetricSpace::validated(rows, std::move(labels), tol);
}

FiniteMetricSpace read_space_csv(std::istream& in, double tol) {
  Matrix rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r\n,") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("CSV cell is not a number: '" + cell + "'");
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError("CSV matrix is empty");
  return FiniteMetricSpace::validated(rows, {}, tol);
}

FiniteMetricSpace read_space(const std::filesystem::path& path, double tol) {
  auto in = open_input(path);
  // Sniff the first meaningful byte: '{' means JSON.
  int c = in.peek();
  while (c != EOF && std::isspace(c)) {
    in.get();
    c = in.peek();
  }
  if (c == '{') return read_space_json(in, tol);
  return read_space_csv(in, tol);
}

std::string space_to_json(const FiniteMetricSpace& s) {
  json j;
  j["labels"] = s.labels();
  j["matrix"] = s.rows();
  return j.dump(2) + "\n";
}

void write_space(const FiniteMetricSpace& s, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << space_to_json(s);
}

Correspondence read_correspondence_json(std::istream& in) {
  const json j = parse(in, "correspondence JSON");
  try {
    const auto nX = j.at("nX").get<std::size_t>();
    const auto nY = j.at("nY").get<std::size_t>();
    std::vector<IndexPair> pairs;
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw IoError("pair entries must be [i, j]");
      pairs.push_back({p[0].get<std::uint32_t>(), p[1].get<std::uint32_t>()});
    }
    return Correspondence::from_pairs(nX, nY, std::move(pairs));
  } catch (const json::exception& e) {
    throw IoError(std::string("bad correspondence JSON: ") + e.what());
  }
}

Correspondence read_correspondence(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_correspondence_json(in);
}

std::string correspondence_to_json(const Correspondence& R) {
  json pairs = json::array();
  for (const auto& [i, j] : R.pairs()) pairs.push_back({i, j});
  json j;
  j["nX"] = R.nX();
  j["nY"] = R.nY();
  j["pairs"] = pairs;
  return j.dump(2) + "\n";
}

void write_correspondence(const Correspondence& R, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  out << correspondence_to_json(R);
}

}  // namespace qimet::io
