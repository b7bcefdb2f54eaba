#include "ppi/matrix_io.hpp"

#include <cmath>
#include <fstream>

namespace ppi {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back({m(r, c).real(), m(r, c).imag()});
    }
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Matrix matrix_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("rows") || !doc.contains("cols") ||
      !doc.contains("entries")) {
    throw std::invalid_argument("matrix document needs rows, cols and entries");
  }
  const auto rows = doc.at("rows");
  const auto cols = doc.at("cols");
  if (!rows.is_number_integer() || !cols.is_number_integer()) {
    throw std::invalid_argument("rows/cols must be integers");
  }
  const long long r = rows.get<long long>();
  const long long c = cols.get<long long>();
  if (r < 1 || c < 1) throw std::invalid_argument("rows/cols must be positive");

  const auto& entries = doc.at("entries");
  if (!entries.is_array() || static_cast<long long>(entries.size()) != r) {
    throw std::invalid_argument("entries must hold exactly 'rows' rows");
  }
  Matrix m(r, c);
  for (long long i = 0; i < r; ++i) {
    const auto& row = entries.at(i);
    if (!row.is_array() || static_cast<long long>(row.size()) != c) {
      throw std::invalid_argument("row " + std::to_string(i) + " must hold exactly 'cols' entries");
    }
    for (long long k = 0; k < c; ++k) {
      const auto& pair = row.at(k);
      if (!pair.is_array() || pair.size() != 2 || !pair.at(0).is_number() ||
          !pair.at(1).is_number()) {
        throw std::invalid_argument("entries must be [re, im] number pairs");
      }
      const double re = pair.at(0).get<double>();
      const double im = pair.at(1).get<double>();
      if (!std::isfinite(re) || !std::isfinite(im)) {
        throw std::invalid_argument("entries must be finite");
      }
      m(i, k) = Scalar(re, im);
    }
  }
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw std::invalid_argument("cannot parse " + path + ": " + e.what());
  }
  return matrix_from_json(doc);
}

void write_matrix_file(const Matrix& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << matrix_to_json(m).dump(1) << "\n";
  if (!out) throw std::runtime_error("failed writing " + path);
}

json report_to_json(const IndexReport& r) {
  json doc;
  doc["n"] = r.n;
  if (r.p.infinite) {
    doc["p"] = "inf";
  } else {
    doc["p"] = r.p.value;
  }
  doc["a"] = r.a;
  doc["per_power"] = r.per_power;
  doc["geo0"] = r.geo0;
  doc["alg0"] = r.alg0;
  return doc;
}

}  // namespace ppi
