#include "hyperpin/csv.hpp"

#include <cmath>
#include <cstdio>

#include "hyperpin/errors.hpp"

namespace hyperpin {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> header)
    : path_(path), out_(path), columns_(header.size()) {
  if (!out_) throw Error("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out_ << ',';
    out_ << header[i];
  }
  out_ << '\n';
}

CsvWriter& CsvWriter::cell(const std::string& text) {
  if (in_row_++) out_ << ',';
  const bool quote = text.find_first_of(",\"\n") != std::string::npos;
  if (!quote) {
    out_ << text;
  } else {
    out_ << '"';
    for (char c : text) {
      if (c == '"') out_ << '"';
      out_ << c;
    }
    out_ << '"';
  }
  return *this;
}

CsvWriter& CsvWriter::cell(double value) { return cell(format_double(value)); }

CsvWriter& CsvWriter::cell(long long value) { return cell(std::to_string(value)); }

void CsvWriter::end_row() {
  if (in_row_ != columns_) throw Error("CSV row width does not match header in " + path_);
  out_ << '\n';
  in_row_ = 0;
}

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix) {
  std::vector<std::string> header;
  for (Eigen::Index j = 0; j < matrix.cols(); ++j) header.push_back("c" + std::to_string(j));
  CsvWriter csv(path, header);
  for (Eigen::Index i = 0; i < matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < matrix.cols(); ++j) csv.cell(matrix(i, j));
    csv.end_row();
  }
}

void write_spectrum_csv(const std::string& path, const std::vector<std::complex<double>>& values) {
  CsvWriter csv(path, {"re", "im"});
  for (const auto& v : values) csv.cell(v.real()).cell(v.imag()).end_row();
}

}  // namespace hyperpin
