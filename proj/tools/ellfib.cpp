#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "ellfib/error.hpp"
#include "ellfib/family_io.hpp"
#include "ellfib/kodaira.hpp"
#include "ellfib/line_bundle.hpp"
#include "ellfib/modular.hpp"
#include "ellfib/periods.hpp"
#include "ellfib/spectral.hpp"
#include "ellfib/uplane.hpp"

using namespace ellfib;
using nlohmann::json;

namespace {

constexpr int kExitDomain = 1;
constexpr int kExitIo = 2;

// Usage problems are reported like schema problems (exit 2).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

cplx parse_complex(const std::string& text, const std::string& flag) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(flag + ": '" + text + "' is not RE,IM");
    }
  }
  if (parts.size() != 2) throw UsageError(flag + ": '" + text + "' is not RE,IM");
  return {parts[0], parts[1]};
}

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

json cjson(cplx z) { return json::array({z.real(), z.imag()}); }
json rjson(const Rational& r) { return {{"num", r.numerator()}, {"den", r.denominator()}}; }

json location_json(const FiberLocation& l) {
  return l.at_infinity ? json("infinity") : cjson(l.u);
}

json order_json(int ord) { return ord == kInfiniteOrder ? json(nullptr) : json(ord); }

struct Tolerances {
  double tau_step = 0.0;        // 0: module default
  double laplacian_step = 0.0;  // 0: module default
  int loop_samples = 1024;

  void apply(const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw UsageError("--tol expects key=value, got '" + kv + "'");
      const std::string key = kv.substr(0, eq);
      double value = 0.0;
      try {
        value = std::stod(kv.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("--tol " + key + ": value is not a number");
      }
      if (key == "tau_step") tau_step = value;
      else if (key == "laplacian_step") laplacian_step = value;
      else if (key == "loop_samples") loop_samples = static_cast<int>(value);
      else throw UsageError("--tol: unknown key '" + key + "'");
    }
  }
};

CurveFamily family_for_computation(const std::string& path) {
  CurveFamily f = load_family(path);
  validate_family(f);
  return f;
}

json periods_json(const WeierstrassCurve& c, const Periods& p) {
  const PeriodCheck chk = check_periods(c, p);
  return {{"g2", cjson(c.g2)},
          {"g3", cjson(c.g3)},
          {"discriminant", cjson(discriminant(c))},
          {"j", cjson(j_invariant(c))},
          {"omega", cjson(p.omega)},
          {"omega_prime", cjson(p.omega_prime)},
          {"tau", cjson(p.tau)},
          {"q", cjson(p.q)},
          {"check",
           {{"discriminant_rel_err", chk.discriminant_rel_err},
            {"j_err", chk.j_err},
            {"g2_err", chk.g2_err},
            {"g3_err", chk.g3_err}}}};
}

Periods periods_from_tau(cplx tau, cplx two_omega) {
  const TauPoint t = TauPoint::from_tau(tau);
  return {0.5 * two_omega, 0.5 * two_omega * tau, tau, t.q};
}

json determinants_json(const Periods& p) {
  json twisted = json::array();
  for (const auto& s : kEvenSpinStructures) twisted.push_back(det_twisted(SpinStructure(s[0], s[1]), p));
  return {{"tau", cjson(p.tau)},
          {"q", cjson(p.q)},
          {"det_prime", det_prime_laplacian(p)},
          {"det_twisted", twisted},
          {"det_dirichlet", det_dirichlet_annulus(p)},
          {"det_dirichlet_flat", det_dirichlet_flat(p)},
          {"quillen_norm", quillen_norm_from_determinant(p)}};
}

json fiber_json(const FiberReport& f) {
  return {{"location", location_json(f.location)},
          {"kodaira", f.kodaira.label()},
          {"ord_g2", order_json(f.ord_g2)},
          {"ord_g3", order_json(f.ord_g3)},
          {"ord_delta", order_json(f.ord_delta)},
          {"euler", f.euler},
          {"is_surface_singularity", f.is_surface_singularity}};
}

json classify_json(const CurveFamily& family) {
  const SurfaceReport s = surface_report(family);
  json fibers = json::array();
  for (const auto& f : s.fibers) fibers.push_back(fiber_json(f));
  return {{"family", family.name},
          {"nf", family.nf},
          {"fibers", fibers},
          {"total_euler", s.total_euler},
          {"sign_zbar", s.sign_zbar},
          {"sign_z", s.sign_z}};
}

json holonomy_json(const HolonomyResult& h) {
  return {{"loop",
           {{"center", cjson(h.loop.center)},
            {"radius", h.loop.radius},
            {"samples", h.loop.samples},
            {"orientation", std::string(to_string(h.loop.orientation))},
            {"chart", std::string(to_string(h.loop.chart))}}},
          {"operator", std::string(to_string(h.op))},
          {"winding", h.winding},
          {"log_monodromy", rjson(h.log_monodromy)},
          {"phase", cjson(h.phase)},
          {"samples_used", h.samples_used}};
}

json ledger_json(const CurvatureLedger& l) {
  json res = json::array();
  for (const auto& r : l.residues)
    res.push_back({{"location", location_json(r.location)},
                   {"order", r.order},
                   {"exact", rjson(r.exact)},
                   {"numeric", r.numeric}});
  return {{"operator", std::string(to_string(l.op))},
          {"residues", res},
          {"total", rjson(l.total)},
          {"max_residue_error", l.max_residue_error}};
}

struct ScanOutput {
  std::string csv;
  std::string skipped;
};

ScanOutput scan(const CurveFamily& family, const std::vector<double>& grid, double margin,
                const Tolerances& tol) {
  if (grid.size() != 6) throw UsageError("--grid expects X0,X1,Y0,Y1,NX,NY");
  const int nx = static_cast<int>(grid[4]), ny = static_cast<int>(grid[5]);
  if (nx < 1 || ny < 1 || nx != grid[4] || ny != grid[5])
    throw UsageError("--grid: NX and NY must be positive integers");
  const auto roots = find_singular_fibers(family);
  auto axis = [](double a, double b, int n, int k) {
    return n == 1 ? a : a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  };
  ScanOutput out;
  out.csv = "u_re,u_im,im_tau,f1,quillen_norm,scalar_curvature\n";
  for (int iy = 0; iy < ny; ++iy) {
    for (int ix = 0; ix < nx; ++ix) {
      const cplx u(axis(grid[0], grid[1], nx, ix), axis(grid[2], grid[3], ny, iy));
      double clearance = INFINITY;
      for (const auto& r : roots) clearance = std::min(clearance, std::abs(u - r.root));
      std::string why;
      if (clearance < margin) {
        why = "within margin of a singular fiber (distance " + fmt(clearance) + ")";
      } else {
        try {
          const Periods p = periods_along_family(family, u);
          const double s = scalar_curvature(family, u, tol.tau_step);
          out.csv += fmt(u.real()) + "," + fmt(u.imag()) + "," + fmt(p.tau.imag()) + "," +
                     fmt(-0.5 * std::log(det_prime_laplacian(p))) + "," +
                     fmt(quillen_norm_sigma(fiber(family, u))) + "," + fmt(s) + "\n";
          continue;
        } catch (const Error& e) {
          why = e.what();
        }
      }
      out.skipped += fmt(u.real()) + "," + fmt(u.imag()) + "," + why + "\n";
    }
  }
  return out;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  out << content;
  if (!out) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weierstrass families over the u-plane: periods, determinants, fibers, holonomy"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string out_path;
  std::vector<std::string> tol_overrides;
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--tol", tol_overrides, "Tolerance override key=value (tau_step, laplacian_step, loop_samples)");

  std::string g2s, g3s, taus, two_omegas, family_path, center_s, op_s = "dbar",
                                                                          orient_s = "cw",
                                                                          chart_s = "u", grid_s;
  std::vector<std::string> at_points;
  double step = 0.0, radius = 0.0, margin = 0.0;
  int nu1 = 0, nu2 = 0;

  auto* periods_cmd = app.add_subcommand("periods", "Half-periods and tau of one curve");
  periods_cmd->add_option("--g2", g2s, "RE,IM")->required();
  periods_cmd->add_option("--g3", g3s, "RE,IM")->required();

  auto* det_cmd = app.add_subcommand("determinants", "Fiber determinants at a given lattice");
  det_cmd->add_option("--tau", taus, "RE,IM")->required();
  det_cmd->add_option("--two-omega", two_omegas, "RE,IM")->required();

  auto* classify_cmd = app.add_subcommand("classify", "Singular fibers and signatures");
  classify_cmd->add_option("--family", family_path)->required();

  auto* anomaly_cmd = app.add_subcommand("anomaly", "Anomaly equation check (CSV)");
  anomaly_cmd->add_option("--family", family_path)->required();
  anomaly_cmd->add_option("--at", at_points, "RE,IM (repeatable)")->required();
  anomaly_cmd->add_option("--step", step, "Laplacian step (0: default)");

  auto* hol_cmd = app.add_subcommand("holonomy", "Holonomy around a circle");
  hol_cmd->add_option("--family", family_path)->required();
  hol_cmd->add_option("--center", center_s, "RE,IM")->required();
  hol_cmd->add_option("--radius", radius)->required();
  hol_cmd->add_option("--operator", op_s)->check(CLI::IsMember({"dbar", "signature"}));
  hol_cmd->add_option("--orientation", orient_s)->check(CLI::IsMember({"cw", "ccw"}));
  hol_cmd->add_option("--chart", chart_s)->check(CLI::IsMember({"u", "v"}));

  auto* sig_cmd = app.add_subcommand("signature", "Signature from monodromies, curvature ledger");
  sig_cmd->add_option("--family", family_path)->required();

  auto* zeta_cmd = app.add_subcommand("zeta-oracle", "Lattice zeta continuation");
  zeta_cmd->add_option("--tau", taus, "RE,IM")->required();
  zeta_cmd->add_option("--nu1", nu1)->required()->check(CLI::Range(0, 1));
  zeta_cmd->add_option("--nu2", nu2)->required()->check(CLI::Range(0, 1));
  zeta_cmd->add_option("--two-omega", two_omegas, "RE,IM")->required();

  auto* scan_cmd = app.add_subcommand("scan", "Grid scan of F1, Quillen norm, curvature (CSV)");
  scan_cmd->add_option("--family", family_path)->required();
  scan_cmd->add_option("--grid", grid_s, "X0,X1,Y0,Y1,NX,NY")->required();
  scan_cmd->add_option("--margin", margin, "Minimum distance to a singular fiber");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitIo;
  }

  try {
    Tolerances tol;
    tol.apply(tol_overrides);
    std::string content;
    std::string sidecar;

    if (*periods_cmd) {
      const WeierstrassCurve c{parse_complex(g2s, "--g2"), parse_complex(g3s, "--g3")};
      content = periods_json(c, compute_periods(c)).dump(2) + "\n";
    } else if (*det_cmd) {
      const Periods p = periods_from_tau(parse_complex(taus, "--tau"), parse_complex(two_omegas, "--two-omega"));
      content = determinants_json(p).dump(2) + "\n";
    } else if (*classify_cmd) {
      content = classify_json(family_for_computation(family_path)).dump(2) + "\n";
    } else if (*anomaly_cmd) {
      const CurveFamily f = family_for_computation(family_path);
      content = "u_re,u_im,lhs,rhs,ratio\n";
      for (const auto& s : at_points) {
        const cplx u = parse_complex(s, "--at");
        const AnomalyCheck a = anomaly_check(f, u, step > 0.0 ? step : tol.laplacian_step);
        content += fmt(u.real()) + "," + fmt(u.imag()) + "," + fmt(a.lhs) + "," + fmt(a.rhs) +
                   "," + fmt(a.ratio) + "\n";
      }
    } else if (*hol_cmd) {
      const CurveFamily f = family_for_computation(family_path);
      LoopSpec loop;
      loop.center = parse_complex(center_s, "--center");
      loop.radius = radius;
      loop.samples = tol.loop_samples;
      loop.orientation = orient_s == "cw" ? Orientation::Clockwise : Orientation::Counterclockwise;
      loop.chart = chart_s == "u" ? Chart::U : Chart::V;
      const BundleOperator op = op_s == "dbar" ? BundleOperator::Dbar : BundleOperator::Signature;
      content = holonomy_json(holonomy(op, f, loop)).dump(2) + "\n";
    } else if (*sig_cmd) {
      const CurveFamily f = family_for_computation(family_path);
      const json j = {{"family", f.name},
                      {"nf", f.nf},
                      {"signature", signature_from_monodromy(f)},
                      {"curvature_ledger", ledger_json(curvature_ledger(f))}};
      content = j.dump(2) + "\n";
    } else if (*zeta_cmd) {
      const Periods p = periods_from_tau(parse_complex(taus, "--tau"), parse_complex(two_omegas, "--two-omega"));
      const SpinStructure nu(nu1, nu2);
      const EpsteinZeta z = epstein_zeta_continuation(nu, TauPoint::from_tau(p.tau), p.omega);
      const double closed = nu.is_odd() ? det_prime_laplacian(p) : det_twisted(nu, p);
      const json j = {{"tau", cjson(p.tau)},
                      {"nu", {nu1, nu2}},
                      {"zeta0", z.zeta0},
                      {"zeta_prime0", z.zeta_prime0},
                      {"logdet", z.logdet},
                      {"det", std::exp(z.logdet)},
                      {"closed_form", closed},
                      {"tail_bound", z.tail_bound},
                      {"terms", z.terms}};
      content = j.dump(2) + "\n";
    } else if (*scan_cmd) {
      const CurveFamily f = family_for_computation(family_path);
      std::vector<double> grid;
      std::stringstream ss(grid_s);
      std::string item;
      while (std::getline(ss, item, ',')) {
        try {
          grid.push_back(std::stod(item));
        } catch (const std::exception&) {
          throw UsageError("--grid: '" + item + "' is not a number");
        }
      }
      ScanOutput s = scan(f, grid, margin, tol);
      content = std::move(s.csv);
      sidecar = std::move(s.skipped);
    }

    write_output(out_path, content);
    if (!sidecar.empty()) {
      if (out_path.empty() || out_path == "-") std::cerr << "skipped:\n" << sidecar;
      else write_output(out_path + ".skipped", sidecar);
    }
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    const bool io = e.code() == ErrorCode::SchemaError || e.code() == ErrorCode::IoError;
    return io ? kExitIo : kExitDomain;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitDomain;
  }
}
