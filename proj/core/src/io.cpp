#include "thermaldrift/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace thermaldrift {

std::string format_double(double value) {
  char buffer[40];
  for (int precision = 15; precision <= 17; ++precision) {
    std::snprintf(buffer, sizeof(buffer), "%.*g", precision, value);
    if (std::strtod(buffer, nullptr) == value) break;
  }
  return buffer;
}

TextWriter::TextWriter(const std::filesystem::path& path) {
  if (path.has_parent_path())
    std::filesystem::create_directories(path.parent_path());
  out_.open(path, std::ios::binary | std::ios::trunc);
  if (!out_)
    throw ValidationError("cannot open output file: " + path.string());
}

void TextWriter::line(const std::string& text) { out_ << text << "\n"; }

std::string csv_row(const std::vector<std::string>& cells) {
  std::string row;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) row += ',';
    row += cells[i];
  }
  return row;
}

void write_sample_records(const std::filesystem::path& path,
                          const Ensemble& ensemble,
                          const std::vector<ThermalSample>& samples,
                          bool dump_states) {
  TextWriter w(path);
  for (const ThermalSample& s : samples) {
    w.line("sample " + std::to_string(s.run_index));
    w.line("ensemble " + ensemble.name);
    w.line("qubits " + std::to_string(ensemble.qubits));
    w.line("beta " + format_double(s.beta));
    w.line("steps " + std::to_string(s.steps));
    w.line("tau " + format_double(s.tau));
    w.line("seed " + std::to_string(s.seed));
    for (int j = 0; j < ensemble.size(); ++j)
      w.line("coeff " + ensemble.words[j].str() + " " +
             format_double(s.coefficients[j]));
    std::string endpoint = "endpoint";
    for (long x : s.endpoint) endpoint += " " + std::to_string(x);
    w.line(endpoint);
    if (s.trace_distance_to_label)
      w.line("trace_distance " + format_double(*s.trace_distance_to_label));
    if (dump_states && s.state.data.size() > 0) {
      const Eigen::Index d = s.state.data.rows();
      w.line("state " + std::to_string(d));
      for (Eigen::Index r = 0; r < d; ++r) {
        std::string row = "state_row";
        for (Eigen::Index c = 0; c < d; ++c) {
          row += " " + format_double(s.state.data(r, c).real());
          row += " " + format_double(s.state.data(r, c).imag());
        }
        w.line(row);
      }
    }
    w.line("end");
  }
}

std::vector<SampleRecord> read_sample_records(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open sample file: " + path.string());
  std::vector<SampleRecord> records;
  SampleRecord current;
  bool open = false;
  std::string line;
  long expected_state_rows = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "sample") {
      current = SampleRecord{};
      ls >> current.index;
      open = true;
      expected_state_rows = 0;
    } else if (key == "ensemble") {
      ls >> current.ensemble;
    } else if (key == "qubits") {
      ls >> current.qubits;
    } else if (key == "beta") {
      ls >> current.beta;
    } else if (key == "steps") {
      ls >> current.steps;
    } else if (key == "tau") {
      ls >> current.tau;
    } else if (key == "seed") {
      ls >> current.seed;
    } else if (key == "coeff") {
      std::string word;
      double value = 0;
      ls >> word >> value;
      current.coefficients.emplace_back(word, value);
    } else if (key == "endpoint") {
      long x;
      while (ls >> x) current.endpoint.push_back(x);
    } else if (key == "trace_distance") {
      double v;
      ls >> v;
      current.trace_distance = v;
    } else if (key == "state") {
      ls >> expected_state_rows;
    } else if (key == "state_row") {
      double re, im;
      while (ls >> re >> im) current.state_row_major.emplace_back(re, im);
    } else if (key == "end") {
      if (!open) throw ValidationError("sample file: stray 'end'");
      if (expected_state_rows > 0 &&
          static_cast<long>(current.state_row_major.size()) !=
              expected_state_rows * expected_state_rows)
        throw ValidationError("sample file: truncated state dump");
      records.push_back(std::move(current));
      open = false;
    }
  }
  if (open) throw ValidationError("sample file: missing final 'end'");
  return records;
}

}  // namespace thermaldrift
