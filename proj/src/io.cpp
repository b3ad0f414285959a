#include "lamb/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "lamb/errors.hpp"

namespace lamb {
namespace fs = std::filesystem;
namespace {

std::uint64_t to_le(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int k = 0; k < 8; ++k) r |= ((v >> (8 * k)) & 0xffu) << (8 * (7 - k));
  return r;
}

fs::path sidecar(const fs::path& p) { return fs::path(p.string() + ".json"); }

[[noreturn]] void io_fail(const std::string& what, const fs::path& p) {
  throw std::runtime_error(what + ": " + p.string());
}

}  // namespace

void write_snapshot(const ScalarField& field, const fs::path& path, const SnapshotMeta& meta) {
  std::ofstream out(path, std::ios::binary);
  if (!out) io_fail("cannot open snapshot for writing", path);
  std::vector<std::uint64_t> raw(field.size());
  for (std::size_t k = 0; k < raw.size(); ++k)
    raw[k] = to_le(std::bit_cast<std::uint64_t>(field.values()[k]));
  out.write(reinterpret_cast<const char*>(raw.data()),
            static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  if (!out) io_fail("failed writing snapshot", path);
  const Grid2D& g = field.grid();
  nlohmann::json j = {{"Nx", g.Nx()},         {"Ny", g.Ny()},          {"Lx", g.Lx()},
                      {"Ly", g.Ly()},         {"t", meta.t},           {"quantity", meta.quantity},
                      {"byte-order", "LE"},   {"dtype", "f64"}};
  write_json(sidecar(path), j);
}

ScalarField read_snapshot(const fs::path& path, SnapshotMeta* meta) {
  std::ifstream side(sidecar(path));
  if (!side) io_fail("cannot open snapshot sidecar", sidecar(path));
  nlohmann::json j;
  try {
    side >> j;
  } catch (const nlohmann::json::exception& e) {
    io_fail(std::string("malformed sidecar (") + e.what() + ")", sidecar(path));
  }
  if (j.value("dtype", "") != "f64" || j.value("byte-order", "") != "LE")
    io_fail("unsupported snapshot encoding", path);
  const Grid2D g(j.at("Lx").get<double>(), j.at("Ly").get<double>(), j.at("Nx").get<int>(),
                 j.at("Ny").get<int>());
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail("cannot open snapshot", path);
  std::vector<std::uint64_t> raw(g.size());
  in.read(reinterpret_cast<char*>(raw.data()),
          static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)));
  if (in.gcount() != static_cast<std::streamsize>(raw.size() * sizeof(std::uint64_t)) ||
      in.peek() != std::char_traits<char>::eof())
    io_fail("snapshot payload size does not match its sidecar", path);
  std::vector<double> v(raw.size());
  for (std::size_t k = 0; k < raw.size(); ++k) v[k] = std::bit_cast<double>(to_le(raw[k]));
  if (meta) {
    meta->t = j.at("t").get<double>();
    meta->quantity = j.at("quantity").get<std::string>();
  }
  return ScalarField(g, std::move(v));
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

void write_row(std::ostream& out, const DiagnosticsRecord& d) {
  out << format_double(d.t) << ',' << format_double(d.Z) << ',' << format_double(d.P) << ','
      << format_double(d.E) << ',' << format_double(d.min_zeta) << ','
      << format_double(d.centroid_x1);
}

std::ofstream open_text(const fs::path& path) {
  std::ofstream out(path);
  if (!out) io_fail("cannot open for writing", path);
  return out;
}

}  // namespace

void write_diagnostics_csv(const fs::path& path, const std::vector<DiagnosticsRecord>& rows) {
  std::ofstream out = open_text(path);
  out << "t,Z,P,E,min_zeta,centroid_x1\n";
  for (const auto& d : rows) {
    write_row(out, d);
    out << '\n';
  }
  if (!out) io_fail("failed writing", path);
}

void write_stability_csv(const fs::path& path, const StabilityReport& report) {
  std::ofstream out = open_text(path);
  out << "t,Z,P,E,min_zeta,centroid_x1,d,best_shift\n";
  for (const auto& s : report.samples) {
    write_row(out, s.diagnostics);
    out << ',' << format_double(s.d) << ',' << format_double(s.best_shift) << '\n';
  }
  if (!out) io_fail("failed writing", path);
}

void write_json(const fs::path& path, const nlohmann::json& j) {
  std::ofstream out = open_text(path);
  out << j.dump(2) << '\n';
  if (!out) io_fail("failed writing", path);
}

nlohmann::json to_json(const Grid2D& g) {
  return {{"Lx", g.Lx()}, {"Ly", g.Ly()}, {"Nx", g.Nx()}, {"Ny", g.Ny()}};
}

nlohmann::json to_json(const InequalityReport& r) {
  return {{"ratio", r.ratio},
          {"bound_sharp", r.bound_sharp},
          {"bound_hls", r.bound_hls},
          {"satisfied_sharp", r.satisfied_sharp},
          {"satisfied_hls", r.satisfied_hls}};
}

nlohmann::json to_json(const DiagnosticsRecord& d) {
  return {{"t", d.t}, {"Z", d.Z}, {"P", d.P}, {"E", d.E}, {"min_zeta", d.min_zeta},
          {"centroid_x1", d.centroid_x1}};
}

nlohmann::json to_json(const MinimizeTelemetry& t) {
  return {{"iterations", t.change.size()}, {"change_history", t.change}, {"W_history", t.W},
          {"value_history", t.value},      {"centroid_history", t.centroid},
          {"ascent_steps", t.ascent_steps}};
}

}  // namespace lamb
