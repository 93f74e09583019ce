#include "torusq/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace torusq {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, res.ptr);
}

void write_csv(std::ostream& os, const GridSection& g) {
  os << "x,y,re,im\n";
  for (int i = 0; i <= g.gx(); ++i)
    for (int j = 0; j <= g.gy(); ++j)
      os << format_double(g.x(i)) << ',' << format_double(g.y(j)) << ',' << format_double(g(i, j).real()) << ','
         << format_double(g(i, j).imag()) << '\n';
}

void write_csv(std::ostream& os, const ZakSection& s) {
  os << "r,degree,re,im\n";
  for (int r = 0; r < s.components(); ++r)
    for (Eigen::Index d = 0; d < s.basis()->size(); ++d) {
      const Complex c = s.component(r)(d);
      os << r << ',' << d << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
    }
}

void write_csv(std::ostream& os, const OperatorMatrix& op) {
  os << "row,col,re,im\n";
  for (Eigen::Index i = 0; i < op.matrix.rows(); ++i)
    for (Eigen::Index j = 0; j < op.matrix.cols(); ++j)
      os << i << ',' << j << ',' << format_double(op.matrix(i, j).real()) << ','
         << format_double(op.matrix(i, j).imag()) << '\n';
}

ZakSection read_zak_csv(std::istream& is, ChernLevel level, const BasisPtr& basis) {
  std::string line;
  if (!std::getline(is, line) || line.rfind("r,degree,re,im", 0) != 0)
    throw std::invalid_argument("ZakSection CSV: missing header 'r,degree,re,im'");
  Eigen::VectorXcd c = Eigen::VectorXcd::Zero(level.components() * basis->size());
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream fields(line);
    int r = 0, d = 0;
    double re = 0.0, im = 0.0;
    char s1 = 0, s2 = 0, s3 = 0;
    if (!(fields >> r >> s1 >> d >> s2 >> re >> s3 >> im) || s1 != ',' || s2 != ',' || s3 != ',')
      throw std::invalid_argument("ZakSection CSV line " + std::to_string(lineno) + ": malformed");
    if (r < 0 || r >= level.components() || d < 0 || d > basis->max_degree())
      throw std::invalid_argument("ZakSection CSV line " + std::to_string(lineno) + ": index out of range");
    c(r * basis->size() + d) = Complex(re, im);
  }
  return {level, basis, std::move(c)};
}

nlohmann::json matrix_sidecar(const OperatorMatrix& op, const TrigPoly* observable) {
  nlohmann::json j;
  j["label"] = op.label;
  j["N"] = op.level.value();
  j["D"] = op.basis->max_degree();
  j["Q"] = op.basis->quadrature_order();
  j["size"] = op.matrix.rows();
  j["f"] = observable ? nlohmann::json(to_text(*observable)) : nlohmann::json(nullptr);
  return j;
}

nlohmann::json to_json(const CommutantEntry& entry, const std::string& task, int level, const std::string& set_label) {
  nlohmann::json j;
  j["task"] = task;
  j["N"] = level;
  j["D"] = entry.max_degree;
  j["set"] = set_label;
  j["singular_values"] = entry.singular_values;
  j["estimated_dim"] = entry.estimated_dim;
  j["gap_ratio"] = std::isfinite(entry.gap_ratio) ? nlohmann::json(entry.gap_ratio) : nlohmann::json(nullptr);
  j["threshold"] = entry.threshold;
  j["confident"] = entry.confident;
  j["margin"] = entry.margin;
  j["compressed_size"] = entry.compressed_size;
  j["sigma_max"] = entry.sigma_max;
  return j;
}

nlohmann::json to_json(const CommutantReport& report, const std::string& task) {
  nlohmann::json j;
  j["task"] = task;
  j["N"] = report.level;
  j["set"] = report.set_label;
  j["threshold"] = report.threshold;
  j["stable_dimension"] = report.stable_dimension;
  j["gap_nondecreasing"] = report.gap_nondecreasing;
  j["entries"] = nlohmann::json::array();
  for (const auto& e : report.entries) j["entries"].push_back(to_json(e, task, report.level, report.set_label));
  return j;
}

void write_file(const std::filesystem::path& path, const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  if (ec) throw std::runtime_error("cannot create directory " + path.parent_path().string() + ": " + ec.message());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << contents;
  out.close();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

}  // namespace torusq
