#pragma once

#include <span>
#include <string>
#include <vector>

#include "thermo/diagnostics.hpp"
#include "thermo/field.hpp"

namespace thermo {

/// CSV with a header naming every DiagnosticsRecord field, values printed
/// with 17 significant digits, LF line endings.
std::string format_timeseries(std::span<const DiagnosticsRecord> records);
std::vector<DiagnosticsRecord> parse_timeseries(const std::string& text);

/// Atomic: writes a sibling temporary file and renames it over `path`.
void write_timeseries(std::span<const DiagnosticsRecord> records, const std::string& path);
std::vector<DiagnosticsRecord> read_timeseries(const std::string& path);

/// Contents of a TEFLD1 snapshot file:
///   "TEFLD1" "d=<d> n=<n1,..> len=<l1,..> t=<t> kind=<scalar|vector> comps=<c>\n"
/// followed by little-endian doubles, row-major, one component after another.
struct Snapshot {
  int dim = 2;
  std::vector<int> shape;
  std::vector<double> lengths;
  double t = 0.0;
  bool vector = false;
  /// One buffer per component.
  std::vector<std::vector<double>> components;

  /// Grid described by the header.
  GridPtr make_grid() const;
  /// Field on `grid`; throws GridMismatch when the header disagrees with it.
  ScalarField to_scalar(const GridPtr& grid) const;
  VectorField to_vector(const GridPtr& grid) const;

  bool operator==(const Snapshot&) const = default;
};

Snapshot make_snapshot(const ScalarField& f, double t = 0.0);
Snapshot make_snapshot(const VectorField& f, double t = 0.0);

std::string encode_snapshot(const Snapshot& s);
/// Throws FormatError on a bad magic, header or payload length.
Snapshot decode_snapshot(const std::string& bytes);

void write_snapshot(const Snapshot& s, const std::string& path);
void write_snapshot(const ScalarField& f, const std::string& path, double t = 0.0);
void write_snapshot(const VectorField& f, const std::string& path, double t = 0.0);
Snapshot read_snapshot(const std::string& path);

/// Writes `bytes` to `path` through a temporary file and rename.
void write_file_atomic(const std::string& path, const std::string& bytes);
std::string read_file(const std::string& path);

}  // namespace thermo
