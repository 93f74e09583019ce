#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "torusq/commutant.hpp"
#include "torusq/operator_matrix.hpp"
#include "torusq/trigpoly.hpp"
#include "torusq/zakspace.hpp"

namespace torusq {

// CSV layouts:
//   GridSection     x,y,re,im        (x outer, y inner, every stored point)
//   ZakSection      r,degree,re,im
//   OperatorMatrix  row,col,re,im    (dense, row-major)
void write_csv(std::ostream& os, const GridSection& g);
void write_csv(std::ostream& os, const ZakSection& s);
void write_csv(std::ostream& os, const OperatorMatrix& op);

/// Reads the ZakSection CSV layout back; throws std::invalid_argument on malformed input.
ZakSection read_zak_csv(std::istream& is, ChernLevel level, const BasisPtr& basis);

/// Sidecar metadata for an OperatorMatrix CSV: label, N, D, Q and the observable.
nlohmann::json matrix_sidecar(const OperatorMatrix& op, const TrigPoly* observable = nullptr);

/// {"task","N","D","set","singular_values","estimated_dim","gap_ratio","threshold","confident"}.
/// A non-finite gap ratio is written as null.
nlohmann::json to_json(const CommutantEntry& entry, const std::string& task, int level, const std::string& set_label);
nlohmann::json to_json(const CommutantReport& report, const std::string& task);

/// Writes text to path, creating parent directories; throws std::runtime_error naming the path.
void write_file(const std::filesystem::path& path, const std::string& contents);

/// Shortest round-trip decimal for a double.
std::string format_double(double value);

}  // namespace torusq
