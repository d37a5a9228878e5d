// pwf: build photon states, propagate them, and emit norms, Wigner grids and
// interferometer scans as JSON/CSV/.pwf files.

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pwf/io/csv.hpp"
#include "pwf/io/pwf_format.hpp"
#include "pwf/pwf.hpp"

using namespace pwf;
using nlohmann::json;

namespace {

enum Exit { ok = 0, validation = 2, numerical = 3, io_failure = 4 };

void warn(std::string_view msg) { std::cerr << "warning: " << msg << '\n'; }

// Flat JSON object -> config items for the active subcommand. Arrays become
// multi-value options; booleans become flags.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(std::string sub) : sub_(std::move(sub)) {}

  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

  std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
    json j;
    try {
      j = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CLI::ConversionError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw CLI::ConversionError("config must be a JSON object");
    auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : j.items()) {
      CLI::ConfigItem item;
      if (!sub_.empty()) item.parents = {sub_};
      item.name = key;
      if (value.is_array())
        for (const auto& v : value) item.inputs.push_back(text(v));
      else
        item.inputs.push_back(text(value));
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  std::string sub_;
};

struct Common {
  std::string in, out;
  std::uint64_t seed = 0;
  double hbar = 1.0, c = 1.0;
  Units units() const { return Units(hbar, c); }
};

void add_common(CLI::App* sub, Common& c, bool needs_in, bool needs_out) {
  auto* in = sub->add_option("--in", c.in, "input file");
  auto* out = sub->add_option("--out", c.out, "output file");
  if (needs_in) in->required();
  if (needs_out) out->required();
  sub->add_option("--seed", c.seed, "random seed (recorded in output metadata)");
  sub->add_option("--hbar", c.hbar, "action scale");
  sub->add_option("--c", c.c, "speed of light");
}

Helicity parse_helicity(const std::string& s) {
  if (s == "+1" || s == "1" || s == "positive" || s == "+") return Helicity::positive;
  if (s == "-1" || s == "negative" || s == "-") return Helicity::negative;
  throw ValidationError("--helicity: expected +1 or -1, got '" + s + "'");
}

std::string format(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

void emit_json(const json& j, const std::string& path) {
  std::cout << j.dump(2) << '\n';
  if (path.empty()) return;
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("write to '" + path + "' failed");
}

std::string kind_of(const std::string& path) { return io::read_pwf(path).header.value("kind", std::string{}); }

// ---------------------------------------------------------------- make-state

struct MakeState {
  Common common;
  std::string builder = "gaussian-wavepacket";
  std::vector<std::size_t> dims{32, 32, 32};
  std::vector<double> lengths{2 * std::numbers::pi, 2 * std::numbers::pi, 2 * std::numbers::pi};
  std::vector<double> k0{0.0, 0.0, 4.0};
  double sigma_k = 1.0;
  double k_max = 3.0;
  std::string polarization = "x";
  std::string helicity = "+1";
  std::string space = "coordinate";
  std::string weight = "sqrt_energy";
  std::size_t rank = 1;
  std::size_t points = 128;
  double length = 20.0;
  unsigned order = 0, order_y = 0;
  double waist = 1.0;
  double correlation = 0.5;
  double width = 1.0;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("make-state", "build a normalized transverse state");
    add_common(sub, common, false, true);
    sub->add_option("--builder", builder)
        ->check(CLI::IsMember({"gaussian-wavepacket", "single-mode", "random-bandlimited", "hermite-gauss",
                               "two-photon-gaussian"}));
    sub->add_option("--dims", dims)->expected(3);
    sub->add_option("--lengths", lengths)->expected(3);
    sub->add_option("--k0,--k", k0, "packet center / mode wavevector")->expected(3);
    sub->add_option("--sigma-k", sigma_k);
    sub->add_option("--k-max", k_max);
    sub->add_option("--polarization", polarization, "x, y, z, plus or minus");
    sub->add_option("--helicity", helicity);
    sub->add_option("--space", space)->check(CLI::IsMember({"coordinate", "momentum"}));
    sub->add_option("--weight", weight)->check(CLI::IsMember({"sqrt_energy", "unit"}));
    sub->add_option("--rank", rank, "transverse dimensions for hermite-gauss")->check(CLI::Range(1, 2));
    sub->add_option("--points", points, "samples per transverse axis");
    sub->add_option("--length", length, "transverse window per axis");
    sub->add_option("--order", order);
    sub->add_option("--order-y", order_y);
    sub->add_option("--waist", waist);
    sub->add_option("--correlation", correlation);
    sub->add_option("--width", width);
    sub->callback([this] { code = run(); });
  }

  int code = 0;

  int run() const {
    const Units u = common.units();
    json meta{{"builder", builder}, {"seed", common.seed}};
    if (builder == "hermite-gauss") {
      const Axis ax(points, length);
      meta["order"] = order;
      meta["waist"] = waist;
      if (rank == 1) {
        io::save(common.out, hermite_gauss_1d(ax, order, waist, u), meta);
      } else {
        meta["order_y"] = order_y;
        io::save(common.out, hermite_gauss_2d({ax, ax}, order, order_y, waist, u), meta);
      }
    } else if (builder == "two-photon-gaussian") {
      const Axis ax(points, length);
      meta["correlation"] = correlation;
      meta["width"] = width;
      io::save(common.out, two_photon_gaussian({ax, ax}, correlation, width, u), meta);
    } else {
      const auto g = make_grid({dims[0], dims[1], dims[2]}, {lengths[0], lengths[1], lengths[2]});
      const Helicity h = parse_helicity(helicity);
      const Vec3 k{k0[0], k0[1], k0[2]};
      std::optional<MomentumAmplitude> amp;
      if (builder == "gaussian-wavepacket") {
        amp = gaussian_wavepacket(g, u, k, sigma_k, polarization_from_string(polarization), h);
        meta["k0"] = k0;
        meta["sigma_k"] = sigma_k;
        meta["polarization"] = polarization;
      } else if (builder == "single-mode") {
        amp = single_mode(g, u, k, polarization_from_string(polarization), h);
        meta["k"] = k0;
        meta["polarization"] = polarization;
      } else {
        amp = random_bandlimited(g, u, k_max, common.seed, h);
        meta["k_max"] = k_max;
      }
      const WeightChoice w = weight_from_string(weight);
      meta["weight"] = weight;
      if (space == "momentum")
        io::save(common.out, *amp, w, meta);
      else
        io::save(common.out, synthesize_onshell(*amp, 0.0, w), meta);
    }
    std::cout << "wrote " << common.out << '\n';
    return ok;
  }
};

// ---------------------------------------------------------------- evolve

struct Evolve {
  Common common;
  double t = 0.0;
  double dt = 1e-3;
  std::string method = "rk4";
  bool oracle = false;
  double oracle_tolerance = 1e-6;
  std::string helicity = "+1";
  std::string weight;
  std::string out_real;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("evolve", "propagate a field by the exact spectral evolution");
    add_common(sub, common, true, true);
    sub->add_option("--t", t, "propagation time (may be negative)");
    sub->add_option("--dt", dt, "RK4 step for --oracle");
    sub->add_option("--method", method, "oracle stepper")->check(CLI::IsMember({"rk4"}));
    sub->add_flag("--oracle", oracle, "also integrate the real Maxwell equations and report the deviation");
    sub->add_option("--oracle-tolerance", oracle_tolerance);
    sub->add_option("--helicity", helicity, "helicity assigned to real_fields input");
    sub->add_option("--weight", weight, "synthesis weight for amplitude input (default: file header)");
    sub->add_option("--out-real", out_real, "also write the evolved (E, B) pair");
    sub->callback([this] { code = run(); });
  }

  int code = 0;

  ComplexVectorField load() const {
    const auto file = io::read_pwf(common.in);
    const std::string kind = file.header.value("kind", std::string{});
    if (kind == "field") {
      auto f = io::field_from(file);
      if (f.space == Space::momentum) f = to_coordinate(f);
      return f;
    }
    if (kind == "amplitude") {
      const auto a = io::amplitude_from(file);
      const WeightChoice w = weight.empty() ? a.weight : weight_from_string(weight);
      return synthesize_onshell(a.amplitude, a.amplitude.field.time, w);
    }
    if (kind == "real_fields") return riemann_silberstein(io::real_fields_from(file), parse_helicity(helicity));
    throw ValidationError("evolve: cannot propagate a '" + kind + "' file");
  }

  int run() const {
    detail::require(std::isfinite(dt) && dt > 0.0, "--dt must be positive");
    detail::require(std::isfinite(t), "--t must be finite");
    const auto psi0 = load();
    auto psi = evolve_spectral(psi0, t);
    psi.time = psi0.time + t;
    json meta = io::read_pwf(common.in).header.value("metadata", json::object());
    meta["evolved_by"] = t;
    io::save(common.out, psi, meta);
    if (!out_real.empty()) io::save(out_real, split_real_imag(psi), meta);

    json report{{"t", t}, {"time", psi.time}, {"energy_initial", energy(psi0)}, {"energy_final", energy(psi)}};
    int rc = ok;
    if (oracle) {
      StepperConfig cfg;
      cfg.dt = dt;
      cfg.warn = warn;
      const auto rk = evolve_maxwell_real(split_real_imag(psi0), t, cfg);
      const double dev = max_relative_deviation(split_real_imag(psi), rk);
      report["oracle"] = {{"method", method}, {"dt", dt}, {"steps", cfg.steps_for(t)},
                          {"max_relative_deviation", dev}, {"tolerance", oracle_tolerance},
                          {"passed", dev < oracle_tolerance}};
      if (!(dev < oracle_tolerance)) {
        std::cerr << "error: oracle deviation " << dev << " exceeds " << oracle_tolerance << '\n';
        rc = numerical;
      }
    }
    std::cout << report.dump(2) << '\n';
    return rc;
  }
};

// ---------------------------------------------------------------- norms

struct Norms {
  Common common;
  std::string weight;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("norms", "momentum norm and the two energy expressions");
    add_common(sub, common, true, false);
    sub->add_option("--weight", weight, "synthesis weight of a field input (default: file metadata)");
    sub->callback([this] { code = run(); });
  }

  int code = 0;

  int run() const {
    const auto file = io::read_pwf(common.in);
    const std::string kind = file.header.value("kind", std::string{});
    std::optional<MomentumAmplitude> amp;
    double t = 0.0;
    json report{{"input", common.in}, {"kind", kind}};
    if (kind == "amplitude") {
      amp = io::amplitude_from(file).amplitude;
      t = amp->field.time;
    } else if (kind == "field") {
      auto psi = io::field_from(file);
      if (psi.space == Space::momentum) psi = to_coordinate(psi);
      std::string wname = weight;
      if (wname.empty()) wname = file.header.value("metadata", json::object()).value("weight", std::string("sqrt_energy"));
      const WeightChoice w = weight_from_string(wname);
      auto rec = recover_amplitude(psi, w);
      report["weight"] = wname;
      if (rec.dropped_zero_mode > 1e-12) {
        warn("k = 0 content (" + format(rec.dropped_zero_mode) + ") has no on-shell amplitude and was dropped");
        report["dropped_zero_mode"] = rec.dropped_zero_mode;
      }
      amp = std::move(rec.amplitude);
      t = psi.time;
    } else {
      throw ValidationError("norms: expected a 'field' or 'amplitude' file, found '" + kind + "'");
    }

    const double residual = transversality_residual(amp->field);
    report["transversality_residual"] = residual;
    if (!amp->transverse && residual > 1e-12) {
      warn("amplitude is not transverse (residual " + format(residual) + "); longitudinal part projected out");
      *amp = make_transverse(*amp);
    }
    amp->transverse = true;
    amp->field.set(0, {});

    const double norm = momentum_norm(*amp);
    const double e_mom = energy_expectation_momentum(*amp);
    double e_coord = 0.0, unit_norm = 0.0;
    if (norm == 0.0) {
      warn("zero field: all norms vanish");
    } else {
      e_coord = energy(synthesize_onshell(*amp, t, WeightChoice::sqrt_energy));
      unit_norm = energy(synthesize_onshell(*amp, t, WeightChoice::unit));
    }
    auto rel = [](double a, double b) { return b == 0.0 ? std::abs(a) : std::abs(a - b) / std::abs(b); };
    report["time"] = t;
    report["momentum_norm"] = norm;
    report["coordinate_energy"] = e_coord;
    report["energy_expectation_momentum"] = e_mom;
    report["coordinate_norm_unit_weight"] = unit_norm;
    report["rel_diff_energy"] = rel(e_coord, e_mom);
    report["rel_diff_norm"] = rel(unit_norm, norm);
    report["mean_energy_per_norm"] = norm > 0.0 ? e_mom / norm : 0.0;
    emit_json(report, common.out);
    return ok;
  }
};

// ---------------------------------------------------------------- wigner

template <std::size_t D>
io::Metadata lattice_metadata(const std::array<Axis, D>& axes, double hbar, const std::string& source, bool interpolated) {
  io::Metadata m{{"source", source}, {"hbar", format(hbar)}, {"lattice", "x_i = (i - n/2) L/n, p_j = (j - n/2) pi hbar / L"}};
  for (std::size_t a = 0; a < D; ++a) {
    m.emplace_back("n" + std::to_string(a + 1), std::to_string(axes[a].size()));
    m.emplace_back("L" + std::to_string(a + 1), format(axes[a].length()));
  }
  m.emplace_back("interpolated", interpolated ? "true" : "false");
  return m;
}

template <std::size_t D>
json wigner_summary(const WignerGrid<D>& w) {
  std::array<std::size_t, D> o{};
  for (std::size_t a = 0; a < D; ++a) o[a] = w.axes[a].origin();
  const auto [lo, hi] = std::minmax_element(w.values.begin(), w.values.end());
  return {{"W_origin", w.at(o, o)}, {"integral", total_integral(w)}, {"min", *lo}, {"max", *hi},
          {"imag_residue", w.imag_residue}};
}

struct Wigner {
  Common common;
  std::string bin;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("wigner", "Wigner function of a transverse state on its lattice");
    add_common(sub, common, true, true);
    sub->add_option("--bin", bin, "also write the grid as a .pwf 'wigner' file");
    sub->callback([this] { code = run(); });
  }

  int code = 0;

  template <std::size_t D>
  json write(const TransverseState<D>& s) const {
    const auto w = wigner_transform(s);
    io::write_wigner_csv(common.out, w, lattice_metadata(w.axes, w.hbar, common.in, s.interpolated));
    if (!bin.empty()) io::save(bin, w, {{"source", common.in}, {"interpolated", s.interpolated}});
    return wigner_summary(w);
  }

  int run() const {
    const std::string kind = kind_of(common.in);
    json report;
    if (kind == "two_photon_state") {
      report = write(io::load_two_photon_state(common.in).state);
    } else {
      const auto state = io::load_transverse_state(common.in);
      report = std::visit([this](const auto& s) { return write(s); }, state);
    }
    report["csv"] = common.out;
    std::cout << report.dump(2) << '\n';
    return ok;
  }
};

// ---------------------------------------------------------------- sagnac-scan

struct SagnacScan {
  Common common;
  std::size_t axis = 0;
  std::vector<double> x_range{-2.0, 2.0}, p_range{-2.0, 2.0};
  std::size_t nx = 21, np = 21;
  bool check = false;
  double tolerance = 1e-8;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("sagnac-scan", "count rates of the parity-inverting interferometer");
    add_common(sub, common, true, true);
    sub->add_option("--axis", axis);
    sub->add_option("--x-range", x_range)->expected(2);
    sub->add_option("--p-range", p_range)->expected(2);
    sub->add_option("--nx", nx);
    sub->add_option("--np", np);
    sub->add_flag("--check", check, "regress (rate - 1/2) on directly evaluated W (1D states)");
    sub->add_option("--tolerance", tolerance, "slope and residual tolerance for --check");
    sub->callback([this] { code = run(); });
  }

  int code = 0;

  template <std::size_t D>
  int scan(const TransverseState<D>& s) const {
    const auto samples = sagnac_scan(s, axis, x_range[0], x_range[1], nx, p_range[0], p_range[1], np);
    const double dx = s.axes[axis].spacing();
    const bool interpolated = std::any_of(samples.begin(), samples.end(), [dx](const SagnacSample& r) {
      return !detail::lattice_aligned(r.x0, dx);
    });
    if (interpolated) warn("sub-cell displacements were applied by Fourier interpolation");
    auto meta = lattice_metadata(s.axes, s.units.hbar(), common.in, interpolated);
    meta.emplace_back("axis", std::to_string(axis));
    meta.emplace_back("x_range", format(x_range[0]) + ":" + format(x_range[1]) + ":" + std::to_string(nx));
    meta.emplace_back("p_range", format(p_range[0]) + ":" + format(p_range[1]) + ":" + std::to_string(np));
    io::write_sagnac_csv(common.out, samples, meta);

    const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end(),
                                              [](const auto& a, const auto& b) { return a.rate < b.rate; });
    json report{{"csv", common.out}, {"samples", samples.size()}, {"rate_min", lo->rate}, {"rate_max", hi->rate},
                {"interpolated", interpolated}};
    int rc = ok;
    if (check) {
      if constexpr (D == 1) {
        const double expected = std::numbers::pi * s.units.hbar() / 2.0;
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        std::vector<double> xs, ys;
        for (const auto& r : samples) {
          xs.push_back(wigner_at(s, r.x0, r.p0));
          ys.push_back(r.rate - 0.5);
        }
        const double n = static_cast<double>(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) {
          sx += xs[i];
          sy += ys[i];
          sxx += xs[i] * xs[i];
          sxy += xs[i] * ys[i];
        }
        const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / n;
        double residual = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
          residual = std::max(residual, std::abs(ys[i] - slope * xs[i] - intercept));
        const bool passed = std::abs(slope - expected) < tolerance && residual < tolerance;
        report["check"] = {{"slope", slope}, {"expected_slope", expected}, {"intercept", intercept},
                           {"max_residual", residual}, {"tolerance", tolerance}, {"passed", passed}};
        if (!passed) {
          std::cerr << "error: rate is not linear in W (slope " << slope << ", residual " << residual << ")\n";
          rc = numerical;
        }
      } else {
        throw ValidationError("--check supports 1D states only");
      }
    }
    std::cout << report.dump(2) << '\n';
    return rc;
  }

  int run() const {
    const auto state = io::load_transverse_state(common.in);
    return std::visit([this](const auto& s) { return scan(s); }, state);
  }
};

// ---------------------------------------------------------------- two-photon

struct TwoPhoton {
  Common common;
  std::string bin;
  std::vector<double> pt1{0.0, 0.0}, pt2{0.0, 0.0};
  bool expect_separable = false;
  double tolerance = 1e-8;

  void attach(CLI::App& app) {
    auto* sub = app.add_subcommand("two-photon", "joint Wigner function and coincidence rate of a photon pair");
    add_common(sub, common, true, false);
    sub->add_option("--bin", bin, "also write the joint grid as a .pwf 'wigner' file");
    sub->add_option("--pt1", pt1, "x0 p0 for photon 1")->expected(2);
    sub->add_option("--pt2", pt2, "x0 p0 for photon 2")->expected(2);
    sub->add_flag("--expect-separable", expect_separable, "fail if the joint W does not factorize");
    sub->add_option("--tolerance", tolerance);
    sub->callback([this] { code = run(); });
  }

  int code = 0;

  static double factorization_error(const TwoPhotonState& tp, const WignerGrid2& w) {
    const auto& s = tp.state;
    const std::size_t n1 = s.axes[0].size(), n2 = s.axes[1].size();
    std::size_t i0 = 0, j0 = 0;
    for (std::size_t f = 0; f < s.amplitude.size(); ++f)
      if (std::abs(s.amplitude[f]) > std::abs(s.amplitude[i0 * n2 + j0])) {
        i0 = f / n2;
        j0 = f % n2;
      }
    TransverseState1 a({s.axes[0]}, s.units), b({s.axes[1]}, s.units);
    for (std::size_t i = 0; i < n1; ++i) a.amplitude[i] = s[{i, j0}];
    for (std::size_t j = 0; j < n2; ++j) b.amplitude[j] = s[{i0, j}];
    const auto wa = wigner_1d(a), wb = wigner_1d(b);
    double err = 0.0;
    for (std::size_t i = 0; i < n1; ++i)
      for (std::size_t j = 0; j < n2; ++j)
        for (std::size_t p = 0; p < n1; ++p)
          for (std::size_t q = 0; q < n2; ++q)
            err = std::max(err, std::abs(w.at({i, j}, {p, q}) - wa.at({i}, {p}) * wb.at({j}, {q})));
    return err;
  }

  int run() const {
    const auto tp = io::load_two_photon_state(common.in);
    check_desk_scale(tp);
    const auto w = joint_wigner_two_photon(tp);
    if (!common.out.empty())
      io::write_wigner_csv(common.out, w, lattice_metadata(w.axes, w.hbar, common.in, tp.state.interpolated));
    if (!bin.empty()) io::save(bin, w, {{"source", common.in}});

    PhaseSpacePoint<1> a, b;
    a.x0[0] = pt1[0];
    a.p0[0] = pt1[1];
    b.x0[0] = pt2[0];
    b.p0[0] = pt2[1];
    const auto c = two_photon_coincidence_rate(tp, a, b);
    json report = wigner_summary(w);
    report["coincidence"] = {{"pt1", pt1}, {"pt2", pt2}, {"parity_1", c.parity_1}, {"parity_2", c.parity_2},
                             {"parity_product", c.parity_product}, {"rate", c.rate},
                             {"joint_wigner_from_parity", c.joint_wigner}};
    const double ferr = factorization_error(tp, w);
    report["factorization_error"] = ferr;
    int rc = ok;
    if (expect_separable && !(ferr < tolerance)) {
      std::cerr << "error: joint Wigner does not factorize (max error " << ferr << ")\n";
      rc = numerical;
    }
    std::cout << report.dump(2) << '\n';
    return rc;
  }
};

std::string subcommand_in(int argc, char** argv, const std::vector<std::string>& names) {
  for (int i = 1; i < argc; ++i)
    if (std::find(names.begin(), names.end(), argv[i]) != names.end()) return argv[i];
  return {};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app("Photon wave function simulator", "pwf");
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "JSON file of option values; explicit flags take precedence");
  app.allow_config_extras(CLI::config_extras_mode::error);

  MakeState make_state;
  Evolve evolve;
  Norms norms;
  Wigner wigner;
  SagnacScan sagnac;
  TwoPhoton two_photon;
  make_state.attach(app);
  evolve.attach(app);
  norms.attach(app);
  wigner.attach(app);
  sagnac.attach(app);
  two_photon.attach(app);
  app.config_formatter(std::make_shared<JsonConfig>(
      subcommand_in(argc, argv, {"make-state", "evolve", "norms", "wigner", "sagnac-scan", "two-photon"})));

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::FileError& e) {
    app.exit(e);
    return io_failure;
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return validation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return validation;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << '\n';
    return numerical;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return io_failure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return validation;
  }
  for (int rc : {make_state.code, evolve.code, norms.code, wigner.code, sagnac.code, two_photon.code})
    if (rc != ok) return rc;
  return ok;
}
