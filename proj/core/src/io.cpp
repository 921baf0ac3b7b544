#include "thermo/io.hpp"

#include <unistd.h>

#include <atomic>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "thermo/error.hpp"

namespace thermo {

namespace {

constexpr std::string_view kMagic = "TEFLD1";

void append_double(std::string& out, double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  out.append(buf, static_cast<std::size_t>(len));
}

double to_double(std::string_view text, const char* what) {
  double x = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw FormatError(std::string(what) + ": bad number '" + std::string(text) + "'");
  }
  return x;
}

int to_int(std::string_view text, const char* what) {
  int x = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, x);
  if (text.empty() || ec != std::errc{} || ptr != end) {
    throw FormatError(std::string(what) + ": bad integer '" + std::string(text) + "'");
  }
  return x;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string_view::npos ? std::string_view::npos : next - pos));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts;
}

std::uint64_t to_little_endian(std::uint64_t x) {
  if constexpr (std::endian::native == std::endian::big) {
    x = __builtin_bswap64(x);
  }
  return x;
}

void check_grid(const Snapshot& s, const TorusGrid& g) {
  bool ok = g.dim() == s.dim && g.shape() == s.shape && g.lengths().size() == s.lengths.size();
  for (std::size_t a = 0; ok && a < s.lengths.size(); ++a) ok = g.lengths()[a] == s.lengths[a];
  if (!ok) throw GridMismatch("snapshot grid does not match the target grid");
}

Snapshot snapshot_header(const TorusGrid& g, double t, bool vector) {
  Snapshot s;
  s.dim = g.dim();
  s.shape = g.shape();
  s.lengths = g.lengths();
  s.t = t;
  s.vector = vector;
  return s;
}

}  // namespace

std::string format_timeseries(std::span<const DiagnosticsRecord> records) {
  std::string out;
  const auto& names = DiagnosticsRecord::field_names();
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ',';
    out += names[i];
  }
  out += '\n';
  for (const auto& r : records) {
    const auto values = r.as_array();
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i > 0) out += ',';
      append_double(out, values[i]);
    }
    out += '\n';
  }
  return out;
}

std::vector<DiagnosticsRecord> parse_timeseries(const std::string& text) {
  std::vector<DiagnosticsRecord> records;
  auto lines = split(text, '\n');
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw FormatError("time series: missing header");
  const auto header = split(lines.front(), ',');
  const auto& names = DiagnosticsRecord::field_names();
  if (header.size() != names.size()) throw FormatError("time series: unexpected header");
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (header[i] != names[i]) throw FormatError("time series: unexpected column '" + std::string(header[i]) + "'");
  }
  for (std::size_t l = 1; l < lines.size(); ++l) {
    const auto cells = split(lines[l], ',');
    if (cells.size() != names.size()) {
      throw FormatError("time series: row " + std::to_string(l) + " has " + std::to_string(cells.size()) + " cells");
    }
    std::array<double, DiagnosticsRecord::kFieldCount> values{};
    for (std::size_t i = 0; i < cells.size(); ++i) values[i] = to_double(cells[i], "time series");
    records.push_back(DiagnosticsRecord::from_array(values));
  }
  return records;
}

void write_timeseries(std::span<const DiagnosticsRecord> records, const std::string& path) {
  write_file_atomic(path, format_timeseries(records));
}

std::vector<DiagnosticsRecord> read_timeseries(const std::string& path) { return parse_timeseries(read_file(path)); }

GridPtr Snapshot::make_grid() const { return thermo::make_grid(dim, shape, lengths); }

ScalarField Snapshot::to_scalar(const GridPtr& grid) const {
  check_grid(*this, *grid);
  if (vector || components.size() != 1) throw GridMismatch("snapshot does not hold a scalar field");
  return ScalarField(grid, components.front());
}

VectorField Snapshot::to_vector(const GridPtr& grid) const {
  check_grid(*this, *grid);
  if (!vector || components.size() != static_cast<std::size_t>(dim)) {
    throw GridMismatch("snapshot does not hold a vector field with one component per axis");
  }
  std::vector<ScalarField> comps;
  for (const auto& c : components) comps.emplace_back(grid, c);
  return VectorField(std::move(comps));
}

Snapshot make_snapshot(const ScalarField& f, double t) {
  Snapshot s = snapshot_header(f.grid(), t, false);
  s.components.emplace_back(f.values().begin(), f.values().end());
  return s;
}

Snapshot make_snapshot(const VectorField& f, double t) {
  Snapshot s = snapshot_header(f.grid(), t, true);
  for (const auto& c : f.components()) s.components.emplace_back(c.values().begin(), c.values().end());
  return s;
}

std::string encode_snapshot(const Snapshot& s) {
  std::string out(kMagic);
  out += "d=" + std::to_string(s.dim) + " n=";
  for (std::size_t a = 0; a < s.shape.size(); ++a) out += (a ? "," : "") + std::to_string(s.shape[a]);
  out += " len=";
  for (std::size_t a = 0; a < s.lengths.size(); ++a) {
    if (a) out += ',';
    append_double(out, s.lengths[a]);
  }
  out += " t=";
  append_double(out, s.t);
  out += s.vector ? " kind=vector" : " kind=scalar";
  out += " comps=" + std::to_string(s.components.size()) + "\n";
  for (const auto& c : s.components) {
    for (double x : c) {
      const auto bits = to_little_endian(std::bit_cast<std::uint64_t>(x));
      char bytes[8];
      std::memcpy(bytes, &bits, 8);
      out.append(bytes, 8);
    }
  }
  return out;
}

Snapshot decode_snapshot(const std::string& bytes) {
  if (bytes.compare(0, kMagic.size(), kMagic) != 0) throw FormatError("snapshot: bad magic");
  const auto nl = bytes.find('\n', kMagic.size());
  if (nl == std::string::npos) throw FormatError("snapshot: unterminated header");
  const std::string_view header(bytes.data() + kMagic.size(), nl - kMagic.size());

  Snapshot s;
  bool seen[6] = {false, false, false, false, false, false};
  std::size_t comps = 0;
  for (const auto field : split(header, ' ')) {
    const auto eq = field.find('=');
    if (eq == std::string_view::npos) throw FormatError("snapshot: bad header field '" + std::string(field) + "'");
    const auto key = field.substr(0, eq);
    const auto value = field.substr(eq + 1);
    if (key == "d") {
      s.dim = to_int(value, "snapshot d");
      seen[0] = true;
    } else if (key == "n") {
      for (auto p : split(value, ',')) s.shape.push_back(to_int(p, "snapshot n"));
      seen[1] = true;
    } else if (key == "len") {
      for (auto p : split(value, ',')) s.lengths.push_back(to_double(p, "snapshot len"));
      seen[2] = true;
    } else if (key == "t") {
      s.t = to_double(value, "snapshot t");
      seen[3] = true;
    } else if (key == "kind") {
      if (value != "scalar" && value != "vector") throw FormatError("snapshot: bad kind");
      s.vector = value == "vector";
      seen[4] = true;
    } else if (key == "comps") {
      comps = static_cast<std::size_t>(to_int(value, "snapshot comps"));
      seen[5] = true;
    } else {
      throw FormatError("snapshot: unknown header field '" + std::string(key) + "'");
    }
  }
  for (bool b : seen) {
    if (!b) throw FormatError("snapshot: incomplete header");
  }
  if (s.dim < 1 || s.shape.size() != static_cast<std::size_t>(s.dim) || s.lengths.size() != s.shape.size()) {
    throw FormatError("snapshot: header dimensions are inconsistent");
  }
  if ((!s.vector && comps != 1) || comps == 0) throw FormatError("snapshot: bad component count");
  std::size_t points = 1;
  for (int n : s.shape) {
    if (n <= 0) throw FormatError("snapshot: bad grid size");
    points *= static_cast<std::size_t>(n);
  }
  const std::size_t payload = bytes.size() - nl - 1;
  if (payload != comps * points * 8) {
    throw FormatError("snapshot: payload has " + std::to_string(payload) + " bytes, expected " +
                      std::to_string(comps * points * 8));
  }
  const char* p = bytes.data() + nl + 1;
  s.components.assign(comps, std::vector<double>(points));
  for (auto& c : s.components) {
    for (auto& x : c) {
      std::uint64_t bits = 0;
      std::memcpy(&bits, p, 8);
      x = std::bit_cast<double>(to_little_endian(bits));
      p += 8;
    }
  }
  return s;
}

void write_snapshot(const Snapshot& s, const std::string& path) { write_file_atomic(path, encode_snapshot(s)); }

void write_snapshot(const ScalarField& f, const std::string& path, double t) {
  write_snapshot(make_snapshot(f, t), path);
}

void write_snapshot(const VectorField& f, const std::string& path, double t) {
  write_snapshot(make_snapshot(f, t), path);
}

Snapshot read_snapshot(const std::string& path) { return decode_snapshot(read_file(path)); }

void write_file_atomic(const std::string& path, const std::string& bytes) {
  static std::atomic<unsigned> counter{0};
  const std::string tmp = path + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      std::filesystem::remove(tmp, ec);
      throw IoError("write to '" + tmp + "' failed");
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto '" + path + "'");
  }
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read from '" + path + "' failed");
  return buf.str();
}

}  // namespace thermo
