#pragma once

// .pwf container: one line of compact JSON (the header, terminated by '\n') followed by
// `payload_bytes` bytes of little-endian IEEE-754 float64. Complex values are stored as
// interleaved (re, im); vector fields are component-major, each plane row-major.

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"
#include "pwf/errors.hpp"
#include "pwf/field.hpp"
#include "pwf/normalization.hpp"
#include "pwf/wigner/lattice.hpp"
#include "pwf/wigner/wigner.hpp"

namespace pwf::io {

using json = nlohmann::json;

inline constexpr int schema_version = 1;
inline constexpr const char* layout_name = "component-major row-major C order";

struct PwfFile {
  json header;
  std::vector<double> payload;
};

namespace detail {

inline std::uint64_t to_little(std::uint64_t v) {
  if constexpr (std::endian::native == std::endian::little) return v;
  std::uint64_t r = 0;
  for (int i = 0; i < 8; ++i) r |= ((v >> (8 * i)) & 0xffu) << (8 * (7 - i));
  return r;
}

inline json units_json(const Units& u) { return {{"hbar", u.hbar()}, {"c", u.c()}}; }

inline Units units_from(const json& h) {
  if (!h.contains("units")) return {};
  return Units(h.at("units").at("hbar").get<double>(), h.at("units").at("c").get<double>());
}

inline json base_header(const std::string& kind) {
  return {{"format", "pwf"},   {"schema_version", schema_version}, {"kind", kind},
          {"dtype", "f64"},    {"layout", layout_name},            {"endianness", "little"}};
}

inline std::vector<double> flatten_complex(std::span<const cplx> v) {
  std::vector<double> out(2 * v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[2 * i] = v[i].real();
    out[2 * i + 1] = v[i].imag();
  }
  return out;
}

inline std::vector<cplx> unflatten_complex(const std::vector<double>& v) {
  std::vector<cplx> out(v.size() / 2);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = cplx(v[2 * i], v[2 * i + 1]);
  return out;
}

inline void expect_kind(const json& h, const std::string& kind) {
  const auto k = h.value("kind", std::string{});
  if (k != kind) throw ValidationError("expected a '" + kind + "' file, found kind '" + k + "'");
}

inline Grid3 grid_from(const json& h) {
  const auto d = h.at("dims").get<std::vector<std::size_t>>();
  const auto l = h.at("lengths").get<std::vector<double>>();
  if (d.size() != 3 || l.size() != 3) throw ValidationError("3D container needs three dims and lengths");
  return Grid3({d[0], d[1], d[2]}, {l[0], l[1], l[2]});
}

inline void expect_payload(const PwfFile& f, std::size_t doubles) {
  if (f.payload.size() != doubles)
    throw IoError("payload holds " + std::to_string(f.payload.size()) + " values, header implies " +
                  std::to_string(doubles));
}

}  // namespace detail

inline void write_pwf(const std::string& path, json header, std::span<const double> payload) {
  header["payload_bytes"] = payload.size() * sizeof(double);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  const std::string line = header.dump() + "\n";
  out.write(line.data(), static_cast<std::streamsize>(line.size()));
  std::vector<std::uint64_t> words(payload.size());
  for (std::size_t i = 0; i < payload.size(); ++i)
    words[i] = detail::to_little(std::bit_cast<std::uint64_t>(payload[i]));
  out.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size() * 8));
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline PwfFile read_pwf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw IoError("'" + path + "' has no header line");
  PwfFile f;
  try {
    f.header = json::parse(line);
  } catch (const json::parse_error& e) {
    throw IoError("'" + path + "': malformed header: " + e.what());
  }
  if (f.header.value("format", std::string{}) != "pwf") throw IoError("'" + path + "' is not a pwf container");
  if (f.header.value("schema_version", 0) != schema_version)
    throw IoError("'" + path + "': unsupported schema_version");
  if (f.header.value("dtype", std::string{}) != "f64") throw IoError("'" + path + "': dtype must be f64");
  const auto bytes = f.header.value("payload_bytes", std::uint64_t{0});
  if (bytes % 8 != 0) throw IoError("'" + path + "': payload_bytes is not a multiple of 8");
  std::vector<std::uint64_t> words(bytes / 8);
  in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(bytes));
  if (static_cast<std::uint64_t>(in.gcount()) != bytes) throw IoError("'" + path + "': truncated payload");
  f.payload.resize(words.size());
  for (std::size_t i = 0; i < words.size(); ++i) f.payload[i] = std::bit_cast<double>(detail::to_little(words[i]));
  return f;
}

inline json field_header(const std::string& kind, const Grid3& g, const Units& u) {
  auto h = detail::base_header(kind);
  h["dims"] = {g.dim(0), g.dim(1), g.dim(2)};
  h["lengths"] = {g.length(0), g.length(1), g.length(2)};
  h["units"] = detail::units_json(u);
  return h;
}

inline void save(const std::string& path, const ComplexVectorField& f, const json& metadata = json::object()) {
  auto h = field_header("field", f.grid, f.units);
  h["time"] = f.time;
  h["helicity"] = static_cast<int>(f.helicity);
  h["space"] = to_string(f.space);
  h["complex"] = true;
  h["components"] = 3;
  h["metadata"] = metadata;
  write_pwf(path, h, detail::flatten_complex(f.data));
}

inline ComplexVectorField field_from(const PwfFile& f) {
  detail::expect_kind(f.header, "field");
  const auto& h = f.header;
  ComplexVectorField out(detail::grid_from(h), space_from_string(h.at("space").get<std::string>()),
                         helicity_from_sign(h.at("helicity").get<int>()), detail::units_from(h),
                         h.at("time").get<double>());
  detail::expect_payload(f, 6 * out.grid.size());
  out.data = detail::unflatten_complex(f.payload);
  return out;
}

inline ComplexVectorField load_field(const std::string& path) { return field_from(read_pwf(path)); }

inline void save(const std::string& path, const MomentumAmplitude& a, WeightChoice w,
                 const json& metadata = json::object()) {
  auto h = field_header("amplitude", a.grid(), a.units());
  h["time"] = a.field.time;
  h["helicity"] = static_cast<int>(a.field.helicity);
  h["space"] = "momentum";
  h["weight"] = to_string(w);
  h["transverse"] = a.transverse;
  h["complex"] = true;
  h["components"] = 3;
  h["metadata"] = metadata;
  write_pwf(path, h, detail::flatten_complex(a.field.data));
}

struct LoadedAmplitude {
  MomentumAmplitude amplitude;
  WeightChoice weight = WeightChoice::sqrt_energy;
};

inline LoadedAmplitude amplitude_from(const PwfFile& f) {
  detail::expect_kind(f.header, "amplitude");
  const auto& h = f.header;
  LoadedAmplitude out{MomentumAmplitude(detail::grid_from(h), detail::units_from(h),
                                        helicity_from_sign(h.value("helicity", 1))),
                      weight_from_string(h.value("weight", std::string("sqrt_energy")))};
  detail::expect_payload(f, 6 * out.amplitude.grid().size());
  out.amplitude.field.data = detail::unflatten_complex(f.payload);
  out.amplitude.field.time = h.value("time", 0.0);
  out.amplitude.transverse = h.value("transverse", false);
  return out;
}

inline void save(const std::string& path, const RealFieldPair& f, const json& metadata = json::object()) {
  auto h = field_header("real_fields", f.grid, f.units);
  h["time"] = f.time;
  h["complex"] = false;
  h["components"] = {"Ex", "Ey", "Ez", "Bx", "By", "Bz"};
  h["metadata"] = metadata;
  std::vector<double> payload(f.e);
  payload.insert(payload.end(), f.b.begin(), f.b.end());
  write_pwf(path, h, payload);
}

inline RealFieldPair real_fields_from(const PwfFile& f) {
  detail::expect_kind(f.header, "real_fields");
  RealFieldPair out(detail::grid_from(f.header), detail::units_from(f.header), f.header.value("time", 0.0));
  const std::size_t n = 3 * out.grid.size();
  detail::expect_payload(f, 2 * n);
  out.e.assign(f.payload.begin(), f.payload.begin() + static_cast<std::ptrdiff_t>(n));
  out.b.assign(f.payload.begin() + static_cast<std::ptrdiff_t>(n), f.payload.end());
  return out;
}

template <std::size_t D>
json lattice_header(const std::string& kind, const std::array<Axis, D>& axes, const Units& u) {
  auto h = detail::base_header(kind);
  json dims = json::array(), lengths = json::array();
  for (const auto& a : axes) {
    dims.push_back(a.size());
    lengths.push_back(a.length());
  }
  h["dims"] = dims;
  h["lengths"] = lengths;
  h["units"] = detail::units_json(u);
  h["lattice"] = "centered: x_i = (i - n/2) * L/n";
  return h;
}

template <std::size_t D>
void save(const std::string& path, const TransverseState<D>& s, const json& metadata = json::object(),
          const std::string& kind = "transverse_state") {
  auto h = lattice_header(kind, s.axes, s.units);
  h["complex"] = true;
  h["interpolated"] = s.interpolated;
  h["metadata"] = metadata;
  write_pwf(path, h, detail::flatten_complex(s.amplitude));
}

inline void save(const std::string& path, const TwoPhotonState& s, const json& metadata = json::object()) {
  save(path, s.state, metadata, "two_photon_state");
}

using AnyTransverseState = std::variant<TransverseState1, TransverseState2>;

template <std::size_t D>
TransverseState<D> transverse_from(const PwfFile& f) {
  const auto& h = f.header;
  const auto dims = h.at("dims").get<std::vector<std::size_t>>();
  const auto lengths = h.at("lengths").get<std::vector<double>>();
  if (dims.size() != D || lengths.size() != D)
    throw ValidationError("expected a " + std::to_string(D) + "D transverse state");
  std::array<Axis, D> axes;
  for (std::size_t a = 0; a < D; ++a) axes[a] = Axis(dims[a], lengths[a]);
  TransverseState<D> s(axes, detail::units_from(h));
  detail::expect_payload(f, 2 * s.total_size());
  s.amplitude = detail::unflatten_complex(f.payload);
  s.interpolated = h.value("interpolated", false);
  return s;
}

inline AnyTransverseState load_transverse_state(const std::string& path) {
  const auto f = read_pwf(path);
  detail::expect_kind(f.header, "transverse_state");
  const auto rank = f.header.at("dims").size();
  if (rank == 1) return transverse_from<1>(f);
  if (rank == 2) return transverse_from<2>(f);
  throw ValidationError("transverse states must be 1D or 2D");
}

inline TwoPhotonState load_two_photon_state(const std::string& path) {
  const auto f = read_pwf(path);
  detail::expect_kind(f.header, "two_photon_state");
  return TwoPhotonState{transverse_from<2>(f)};
}

template <std::size_t D>
void save(const std::string& path, const WignerGrid<D>& w, const json& metadata = json::object()) {
  auto h = lattice_header("wigner", w.axes, Units(w.hbar, 1.0));
  h["complex"] = false;
  h["value_order"] = "x_1..x_D, p_1..p_D (row-major)";
  json p_spacing = json::array();
  for (std::size_t a = 0; a < D; ++a) p_spacing.push_back(w.momentum_spacing(a));
  h["momentum_spacing"] = p_spacing;
  h["momentum_lattice"] = "p_j = (j - n/2) * pi * hbar / L";
  h["imag_residue"] = w.imag_residue;
  h["metadata"] = metadata;
  write_pwf(path, h, w.values);
}

template <std::size_t D>
WignerGrid<D> load_wigner(const std::string& path) {
  const auto f = read_pwf(path);
  detail::expect_kind(f.header, "wigner");
  const auto dims = f.header.at("dims").get<std::vector<std::size_t>>();
  const auto lengths = f.header.at("lengths").get<std::vector<double>>();
  if (dims.size() != D) throw ValidationError("wigner grid rank mismatch");
  WignerGrid<D> w;
  for (std::size_t a = 0; a < D; ++a) w.axes[a] = Axis(dims[a], lengths[a]);
  w.hbar = detail::units_from(f.header).hbar();
  const std::size_t half = w.points_per_half();
  detail::expect_payload(f, half * half);
  w.values = f.payload;
  w.imag_residue = f.header.value("imag_residue", 0.0);
  return w;
}

}  // namespace pwf::io
