#include "gramor/model_io.hpp"

#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace gramor {

namespace {

using nlohmann::json;

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": malformed JSON: " + e.what());
  }
}

std::size_t size_field(const json& j, const std::string& field) {
  if (!j.contains(field) || !j[field].is_number_unsigned() || j[field] == 0) {
    throw std::runtime_error(field + ": expected a positive integer");
  }
  return j[field].get<std::size_t>();
}

Matrix matrix_field(const json& rows, const std::string& field, std::size_t want_rows,
                    std::size_t want_cols) {
  if (!rows.is_array()) throw std::runtime_error(field + ": expected an array of rows");
  if (rows.size() != want_rows) {
    throw std::runtime_error(field + ": has " + std::to_string(rows.size()) +
                             " rows, expected " + std::to_string(want_rows));
  }
  Matrix a(want_rows, want_cols);
  for (std::size_t i = 0; i < want_rows; ++i) {
    const json& row = rows[i];
    const std::string where = field + "[" + std::to_string(i) + "]";
    if (!row.is_array()) throw std::runtime_error(where + ": expected an array");
    if (row.size() != want_cols) {
      throw std::runtime_error(where + ": has " + std::to_string(row.size()) +
                               " entries, expected " + std::to_string(want_cols));
    }
    for (std::size_t k = 0; k < want_cols; ++k) {
      if (!row[k].is_number()) {
        throw std::runtime_error(where + "[" + std::to_string(k) + "]: expected a number");
      }
      a(i, k) = row[k].get<double>();
    }
  }
  return a;
}

json matrix_rows(const Matrix& a) {
  json rows = json::array();
  for (std::size_t i = 0; i < a.rows; ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.cols; ++k) row.push_back(a(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

void dump_to(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace

LtiSystem read_system(const std::string& path) {
  const json j = load_json(path);
  if (!j.is_object()) throw std::runtime_error(path + ": expected a JSON object");
  try {
    const std::size_t n = size_field(j, "n");
    const std::size_t m = size_field(j, "m");
    const std::size_t o = size_field(j, "o");
    for (const char* field : {"A", "B", "C"}) {
      if (!j.contains(field)) throw std::runtime_error(std::string(field) + ": missing");
    }
    Matrix a = matrix_field(j["A"], "A", n, n);
    Matrix b = matrix_field(j["B"], "B", n, m);
    Matrix c = matrix_field(j["C"], "C", o, n);
    return make_system(std::move(a), std::move(b), std::move(c));
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_system(const std::string& path, const LtiSystem& sys) {
  json j;
  j["n"] = sys.n;
  j["m"] = sys.m;
  j["o"] = sys.o;
  j["A"] = matrix_rows(sys.a);
  j["B"] = matrix_rows(sys.b);
  j["C"] = matrix_rows(sys.c);
  dump_to(path, j);
}

Matrix read_matrix_file(const std::string& path) {
  const json j = load_json(path);
  if (!j.is_array() || j.empty() || !j[0].is_array() || j[0].empty()) {
    throw std::runtime_error(path + ": expected a non-empty array of rows");
  }
  try {
    return matrix_field(j, "matrix", j.size(), j[0].size());
  } catch (const std::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void write_matrix_file(const std::string& path, const Matrix& a) {
  dump_to(path, matrix_rows(a));
}

}  // namespace gramor
