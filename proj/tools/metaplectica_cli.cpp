#include <cctype>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "metaplectica/log.hpp"
#include "metaplectica/metaplectic.hpp"
#include "metaplectica/pauli.hpp"
#include "metaplectica/symplectic.hpp"
#include "metaplectica/wavefield.hpp"
#include "metaplectica/wavegrid.hpp"
#include "metaplectica/weyl.hpp"

namespace {

using nlohmann::json;
using namespace metaplectica;

constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string quoted(const std::string& s) { return json(s).dump(); }

struct RunConfig {
  std::optional<OpticalSystem> system;
  int grid_n = 4096;
  double x_min = -20.0;
  double x_max = 20.0;
  GaussianBeam beam;
  double z_start = -5.0;
  double z_end = 5.0;
  int sweep_samples = 201;
  std::string expression;
  int fock_n = -1;
  RayVector ray{1.0, 0.0};
  PropagationMethod method = PropagationMethod::spectral;
  FringeConfig fringe;
};

OpticalSystem parse_system(const json& j) {
  if (!j.is_object() || !j.contains("elements") || !j.at("elements").is_array()) {
    throw std::invalid_argument("system: expected an object with an \"elements\" array");
  }
  std::vector<OpticalElement> elements;
  for (const auto& el : j.at("elements")) {
    const bool has_lens = el.contains("lens");
    const bool has_free = el.contains("free");
    if (has_lens == has_free) {
      throw std::invalid_argument("system element: exactly one of \"lens\"/\"free\" required");
    }
    if (has_lens) {
      elements.push_back(Lens{el.at("lens").at("f").get<double>()});
    } else {
      elements.push_back(Free{el.at("free").at("d").get<double>()});
    }
  }
  return OpticalSystem(elements);
}

RunConfig parse_config(const json& j) {
  RunConfig cfg;
  if (j.contains("system")) {
    cfg.system = parse_system(j.at("system"));
  }
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("N")) cfg.grid_n = g.at("N").get<int>();
    if (g.contains("x_min")) cfg.x_min = g.at("x_min").get<double>();
    if (g.contains("x_max")) cfg.x_max = g.at("x_max").get<double>();
  }
  if (j.contains("beam")) {
    const auto& b = j.at("beam");
    double re = 0.0;
    double im = 1.0;
    if (b.contains("xi0_re")) re = b.at("xi0_re").get<double>();
    if (b.contains("xi0_im")) im = b.at("xi0_im").get<double>();
    if (b.contains("z0")) cfg.beam.z0 = b.at("z0").get<double>();
    cfg.beam.xi0 = Complex(re, im);
  }
  if (j.contains("sweep")) {
    const auto& s = j.at("sweep");
    if (s.contains("z_start")) cfg.z_start = s.at("z_start").get<double>();
    if (s.contains("z_end")) cfg.z_end = s.at("z_end").get<double>();
    if (s.contains("samples")) cfg.sweep_samples = s.at("samples").get<int>();
  }
  if (j.contains("algebra")) {
    const auto& a = j.at("algebra");
    if (a.contains("expression")) cfg.expression = a.at("expression").get<std::string>();
    if (a.contains("fock_n")) cfg.fock_n = a.at("fock_n").get<int>();
  }
  if (j.contains("ray")) {
    const auto& r = j.at("ray");
    if (r.contains("q")) cfg.ray.q = r.at("q").get<double>();
    if (r.contains("p")) cfg.ray.p = r.at("p").get<double>();
  }
  if (j.contains("method")) {
    const std::string m = j.at("method").get<std::string>();
    if (m == "spectral") {
      cfg.method = PropagationMethod::spectral;
    } else if (m == "quadrature") {
      cfg.method = PropagationMethod::quadrature;
    } else {
      throw std::invalid_argument("method: expected \"spectral\" or \"quadrature\"");
    }
  }
  if (j.contains("fringe")) {
    const auto& f = j.at("fringe");
    if (f.contains("waist_b")) cfg.fringe.waist_b = f.at("waist_b").get<double>();
    if (f.contains("z_dist")) cfg.fringe.z_dist = f.at("z_dist").get<double>();
    if (f.contains("tilt_k")) cfg.fringe.tilt_k = f.at("tilt_k").get<double>();
    if (f.contains("window_half")) cfg.fringe.window_half = f.at("window_half").get<double>();
    if (f.contains("grid_n")) cfg.fringe.grid_n = f.at("grid_n").get<int>();
    if (f.contains("grid_half")) cfg.fringe.grid_half = f.at("grid_half").get<double>();
  }
  if (cfg.grid_n > 0 && (cfg.grid_n & (cfg.grid_n - 1)) != 0) {
    logging::warn("grid N is not a power of two; spectral transforms will be slower");
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  if (path.empty()) {
    return RunConfig{};
  }
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open config file: " + path);
  }
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw std::invalid_argument("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

WaveGrid make_layout(const RunConfig& cfg) { return WaveGrid(cfg.grid_n, cfg.x_min, cfg.x_max); }

void cmd_trace(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.system) {
    throw std::invalid_argument("trace: config must provide a system");
  }
  const auto snapshots = trace_ray(*cfg.system, cfg.ray);
  out << "index,q,p,angle_accum\n";
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    double accum = 0.0;
    if (i > 0) {
      const std::vector<RayVector> prefix(snapshots.begin(), snapshots.begin() + i + 1);
      accum = std::abs(phase_space_angle(prefix));
    }
    out << i << "," << fmt(snapshots[i].q) << "," << fmt(snapshots[i].p) << "," << fmt(accum)
        << "\n";
  }
}

void cmd_cover(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.system) {
    throw std::invalid_argument("cover: config must provide a system");
  }
  const WaveGrid probe = gaussian_probe(make_layout(cfg));
  const HolonomyResult res = holonomy_loop(*cfg.system, probe, cfg.method);
  double phase_m2 = 0.0;
  const std::size_t half = cfg.system->size() / 2;
  if (half > 0) {
    const std::vector<OpticalElement> first(cfg.system->elements().begin(),
                                            cfg.system->elements().begin() + half);
    const OpticalSystem half_sys(first);
    phase_m2 = global_phase(apply(lift_system(half_sys), probe, cfg.method), probe);
  }
  out << "{\n"
      << "  \"loop_closed\": true,\n"
      << "  \"holonomy\": " << res.sign << ",\n"
      << "  \"phase_m2\": " << fmt(phase_m2) << "\n"
      << "}\n";
}

void cmd_propagate(const RunConfig& cfg, std::ostream& out) {
  if (!cfg.system) {
    throw std::invalid_argument("propagate: config must provide a system");
  }
  const WaveGrid probe = gaussian_probe(make_layout(cfg));
  const WaveGrid state = apply(lift_system(*cfg.system), probe, cfg.method);
  out << "x,re,im,intensity\n";
  for (int i = 0; i < state.n(); ++i) {
    const Complex v = state[static_cast<std::size_t>(i)];
    out << fmt(state.x(i)) << "," << fmt(v.real()) << "," << fmt(v.imag()) << ","
        << fmt(std::norm(v)) << "\n";
  }
}

void cmd_gouy(const RunConfig& cfg, std::ostream& out) {
  if (cfg.sweep_samples < 2) {
    throw std::invalid_argument("gouy: sweep needs at least two samples");
  }
  std::vector<double> zs(static_cast<std::size_t>(cfg.sweep_samples));
  const double step = (cfg.z_end - cfg.z_start) / (cfg.sweep_samples - 1);
  for (std::size_t i = 0; i < zs.size(); ++i) {
    zs[i] = cfg.z_start + step * static_cast<double>(i);
  }
  std::vector<double> analytic(zs.size());
  for (std::size_t i = 0; i < zs.size(); ++i) {
    analytic[i] = gouy_phase(cfg.beam, zs[i]);
  }
  const WaveGrid psi0 = beam_field(cfg.beam, zs.front(), make_layout(cfg));
  std::vector<double> numeric = gouy_trace_numeric(psi0, zs);
  const double shift = analytic.front() - numeric.front();
  for (double& v : numeric) {
    v += shift;
  }
  out << "z,theta_numeric,theta_analytic\n";
  for (std::size_t i = 0; i < zs.size(); ++i) {
    out << fmt(zs[i]) << "," << fmt(numeric[i]) << "," << fmt(analytic[i]) << "\n";
  }
}

void cmd_fringe(const RunConfig& cfg, std::ostream& out) {
  const FringeResult res = fringe_demo(cfg.fringe);
  out << "x,intensity_before,intensity_after,shift_estimate\n";
  for (std::size_t i = 0; i < res.x.size(); ++i) {
    if (std::abs(res.x[i]) > cfg.fringe.window_half) {
      continue;  // only the correlation window is interesting to plot
    }
    out << fmt(res.x[i]) << "," << fmt(res.intensity_before[i]) << ","
        << fmt(res.intensity_after[i]) << "," << fmt(res.shift_estimate) << "\n";
  }
}

weyl::Basis infer_basis(const std::string& text) {
  bool qed = false;
  bool boson = false;
  for (std::size_t i = 0; i < text.size();) {
    if (std::isalpha(static_cast<unsigned char>(text[i])) == 0) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < text.size() && std::isalpha(static_cast<unsigned char>(text[j])) != 0) {
      ++j;
    }
    const std::string id = text.substr(i, j - i);
    if (id == "Q" || id == "E" || id == "D") {
      qed = true;
    } else if (id == "a" || id == "ad" || id == "V") {
      boson = true;
    } else if (id != "i" && id != "sqrt") {
      throw std::invalid_argument("algebra: unknown symbol '" + id + "'");
    }
    i = j;
  }
  if (qed && boson) {
    throw std::invalid_argument("algebra: expression mixes the Q/E/D and ad/V/a families");
  }
  return boson ? weyl::Basis::boson : weyl::Basis::qed;
}

std::string decimal_str(const weyl::AlgebraElement& x) {
  if (x.is_zero()) {
    return "0";
  }
  std::string out;
  const auto& terms = x.terms();
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const std::complex<double> c = it->second.to_complex();
    std::string cs;
    if (c.imag() == 0.0) {
      cs = fmt(c.real());
    } else if (c.real() == 0.0) {
      cs = fmt(c.imag()) + "*i";
    } else {
      cs = "(" + fmt(c.real()) + (c.imag() < 0 ? "-" : "+") + fmt(std::abs(c.imag())) + "*i)";
    }
    std::string ms;
    const weyl::Monomial& m = it->first;
    const auto append = [&ms, &x](weyl::GenKind kind, unsigned p) {
      if (p == 0) {
        return;
      }
      if (!ms.empty()) {
        ms += "*";
      }
      ms += weyl::generator_symbol(x.basis(), kind);
      if (p > 1) {
        ms += "^" + std::to_string(p);
      }
    };
    append(weyl::GenKind::raising, m.raise);
    append(weyl::GenKind::idempotent, m.idem ? 1 : 0);
    append(weyl::GenKind::lowering, m.lower);
    std::string body = ms.empty() ? cs : (cs == "1" ? ms : cs + "*" + ms);
    out += out.empty() ? body : " + " + body;
  }
  return out;
}

void cmd_algebra(const RunConfig& cfg, const std::string& positional, bool exact, int fock_flag,
                 std::ostream& out) {
  const std::string text = positional.empty() ? cfg.expression : positional;
  if (text.empty()) {
    throw std::invalid_argument("algebra: provide an expression (argument or config)");
  }
  const weyl::Basis basis = infer_basis(text);
  const weyl::AlgebraElement element = weyl::parse_expression(text, basis);
  const int fock_n = fock_flag >= 0 ? fock_flag : cfg.fock_n;
  out << "{\n"
      << "  \"input\": " << quoted(text) << ",\n"
      << "  \"basis\": " << (basis == weyl::Basis::qed ? "\"qed\"" : "\"boson\"") << ",\n"
      << "  \"exact\": " << (exact ? "true" : "false") << ",\n"
      << "  \"normal_form\": " << quoted(exact ? element.str() : decimal_str(element));
  if (fock_n >= 0) {
    const Eigen::MatrixXcd m =
        weyl::fock_matrix(element, static_cast<unsigned>(fock_n), weyl::FockRoute::closed_form);
    out << ",\n  \"fock\": {\n    \"n_max\": " << fock_n << ",\n    \"matrix\": [\n";
    for (long r = 0; r < m.rows(); ++r) {
      out << "      [";
      for (long c = 0; c < m.cols(); ++c) {
        out << "[" << fmt(m(r, c).real()) << ", " << fmt(m(r, c).imag()) << "]";
        if (c + 1 < m.cols()) {
          out << ", ";
        }
      }
      out << (r + 1 < m.rows() ? "],\n" : "]\n");
    }
    out << "    ]\n  }";
  }
  out << "\n}\n";
}

void cmd_pauli(std::ostream& out) {
  using namespace metaplectica::pauli;
  const Multivector plane = Multivector::basis_blade(kE12);
  const Multivector psi = embed_spinor({1.0, 0.0}, {0.0, 0.0});
  out << "theta_over_pi,psi1_re,psi1_im,psi2_re,psi2_im,recombined_intensity\n";
  for (int k = 0; k <= 4; ++k) {
    const double theta = static_cast<double>(k) * M_PI;
    const Multivector rotated = rotate_spinor(rotor(plane, theta), psi);
    const auto [p1, p2] = extract_spinor(rotated);
    const Multivector combined = recombine(psi, psi, plane, theta);
    const auto [c1, c2] = extract_spinor(combined);
    const double intensity = std::norm(c1) + std::norm(c2);
    out << k << "," << fmt(p1.real()) << "," << fmt(p1.imag()) << "," << fmt(p2.real()) << ","
        << fmt(p2.imag()) << "," << fmt(intensity) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"symplectic ray optics, its double cover, and the operator algebra behind them"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path;
  unsigned long seed = 12345;
  int grid_n_override = 0;
  bool exact = false;
  app.add_option("--config", config_path, "JSON run configuration");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--seed", seed, "seed recorded for randomized sweeps");
  app.add_option("--grid-n", grid_n_override, "override grid sample count");
  app.add_flag("--exact", exact, "render algebra coefficients exactly");

  CLI::App* trace = app.add_subcommand("trace", "ray snapshots through a system (CSV)");
  CLI::App* cover = app.add_subcommand("cover", "holonomy of a closed loop (JSON)");
  CLI::App* propagate = app.add_subcommand("propagate", "apply the lifted system to a probe (CSV)");
  CLI::App* gouy = app.add_subcommand("gouy", "axial phase sweep, numeric vs analytic (CSV)");
  CLI::App* fringe = app.add_subcommand("fringe", "before/after-focus fringe patterns (CSV)");
  CLI::App* algebra = app.add_subcommand("algebra", "normal-order an operator expression (JSON)");
  CLI::App* pauli_demo = app.add_subcommand("pauli-demo", "rotor transport of a spinor (CSV)");

  std::string expression;
  int fock_flag = -1;
  algebra->add_option("expression", expression, "operator expression");
  algebra->add_option("--fock", fock_flag, "emit the truncated matrix at this size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    RunConfig cfg = load_config(config_path);
    if (grid_n_override > 0) {
      cfg.grid_n = grid_n_override;
    }
    logging::info("seed " + std::to_string(seed));

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) {
        throw std::invalid_argument("cannot open output file: " + out_path);
      }
    }
    std::ostream& sink = out_path.empty() ? std::cout : file;

    if (trace->parsed()) {
      cmd_trace(cfg, sink);
    } else if (cover->parsed()) {
      cmd_cover(cfg, sink);
    } else if (propagate->parsed()) {
      cmd_propagate(cfg, sink);
    } else if (gouy->parsed()) {
      cmd_gouy(cfg, sink);
    } else if (fringe->parsed()) {
      cmd_fringe(cfg, sink);
    } else if (algebra->parsed()) {
      cmd_algebra(cfg, expression, exact, fock_flag, sink);
    } else if (pauli_demo->parsed()) {
      cmd_pauli(sink);
    }
    return 0;
  } catch (const std::invalid_argument& e) {
    logging::error(e.what());
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    logging::error(e.what());
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  }
}
