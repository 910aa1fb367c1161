#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "thermaldrift/sampler.hpp"

namespace thermaldrift {

/// Shortest decimal string that round-trips to the same double; '.' decimal
/// separator, no locale. Keeps CSV and record files byte-stable.
std::string format_double(double value);

/// Line-oriented writer with LF endings; creates parent directories.
class TextWriter {
 public:
  explicit TextWriter(const std::filesystem::path& path);
  void line(const std::string& text);
  std::ostream& stream() { return out_; }

 private:
  std::ofstream out_;
};

std::string csv_row(const std::vector<std::string>& cells);

/// One serialized sample record (the wire form of a ThermalSample; the path
/// is not part of the wire format).
struct SampleRecord {
  int index = 0;
  std::string ensemble;
  int qubits = 0;
  double beta = 0;
  long steps = 0;
  double tau = 0;
  uint64_t seed = 0;
  std::vector<std::pair<std::string, double>> coefficients;
  std::vector<long> endpoint;
  std::optional<double> trace_distance;
  std::vector<Complex> state_row_major;  ///< empty unless dumped
};

void write_sample_records(const std::filesystem::path& path,
                          const Ensemble& ensemble,
                          const std::vector<ThermalSample>& samples,
                          bool dump_states);

std::vector<SampleRecord> read_sample_records(const std::filesystem::path& path);

}  // namespace thermaldrift
