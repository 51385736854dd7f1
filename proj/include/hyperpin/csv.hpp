#pragma once

#include <complex>
#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace hyperpin {

/// Round-trippable decimal rendering: 17 significant digits, "nan"/"inf" for
/// non-finite values.
std::string format_double(double value);

/// Minimal CSV writer. Every file gets a header row; floating values are
/// written with format_double.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, std::vector<std::string> header);

  CsvWriter& cell(const std::string& text);
  CsvWriter& cell(const char* text) { return cell(std::string(text)); }
  CsvWriter& cell(double value);
  CsvWriter& cell(long long value);
  CsvWriter& cell(int value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(std::size_t value) { return cell(static_cast<long long>(value)); }
  CsvWriter& cell(bool value) { return cell(value ? "1" : "0"); }
  void end_row();

  const std::string& path() const { return path_; }

 private:
  std::string path_;
  std::ofstream out_;
  std::size_t columns_;
  std::size_t in_row_ = 0;
};

/// Dense matrix dump: row-major with a c0,c1,... header row.
void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& matrix);

/// Eigenvalue dump with columns re,im.
void write_spectrum_csv(const std::string& path, const std::vector<std::complex<double>>& values);

}  // namespace hyperpin
