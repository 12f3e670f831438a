#include <cmath>
#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "isinghom/bond_field.hpp"
#include "isinghom/bounds.hpp"
#include "isinghom/homogenize.hpp"
#include "isinghom/json_util.hpp"
#include "isinghom/microgeometry.hpp"
#include "isinghom/spin_oracle.hpp"
#include "isinghom/wulff.hpp"

namespace {

using namespace isinghom;

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitUsage = 2;

void emit(const std::optional<std::string>& out_path, const std::string& content) {
  if (out_path)
    write_text_file(*out_path, content);
  else
    std::cout << content << '\n';
}

std::string provenance_json(const std::string& construction, const std::string& params,
                            const std::string& achieved) {
  return "{\"construction\":\"" + construction + "\",\"params\":" + params +
         ",\"achieved\":" + achieved + "}";
}

std::string with_provenance(const BondField& field, const std::string& provenance) {
  std::string doc = serialize(field);
  doc.pop_back();  // strip closing brace
  doc += ",\"provenance\":" + provenance + "}";
  return doc;
}

std::string fractions_json(const BondField& field) {
  const VolumeFractions vf = volume_fractions(field);
  return "{\"theta\":" + fmt_double(vf.theta.to_double()) +
         ",\"theta_h\":" + fmt_double(vf.theta_h.to_double()) +
         ",\"theta_v\":" + fmt_double(vf.theta_v.to_double()) + "}";
}

struct GenArgs {
  std::string kind;
  int T = 1;
  int N1 = 0, N2 = 0;
  double alpha = 1, beta = 2;
  bool has_beta = false;
  double theta = 0, t1 = 0, t2 = 0, theta1 = 0, theta2 = 0;
  double c1 = 0, c2 = 0;
  std::uint64_t seed = 0;
  std::optional<std::string> out;
};

int run_gen(const GenArgs& a) {
  std::optional<BondField> field;
  std::string provenance;
  if (a.kind == "homogeneous") {
    const std::size_t cell = static_cast<std::size_t>(a.T) * a.T;
    std::optional<MixturePhases> phases;
    if (a.has_beta) phases = MixturePhases{a.alpha, a.beta};
    field = BondField(a.T, std::vector<double>(cell, a.alpha), std::vector<double>(cell, a.alpha),
                      phases);
    provenance = provenance_json("homogeneous",
                                 "{\"T\":" + std::to_string(a.T) +
                                     ",\"alpha\":" + fmt_double(a.alpha) + "}",
                                 a.has_beta ? fractions_json(*field) : "{}");
  } else if (a.kind == "laminate") {
    field = laminate(a.T, a.N1, a.N2, a.alpha, a.beta);
    provenance = provenance_json("laminate",
                                 "{\"T\":" + std::to_string(a.T) + ",\"N1\":" + std::to_string(a.N1) +
                                     ",\"N2\":" + std::to_string(a.N2) + "}",
                                 fractions_json(*field));
  } else if (a.kind == "random") {
    field = random_mixture(a.T, a.theta, a.seed, a.alpha, a.beta);
    provenance = provenance_json("random",
                                 "{\"T\":" + std::to_string(a.T) + ",\"theta\":" + fmt_double(a.theta) +
                                     ",\"seed\":" + std::to_string(a.seed) + "}",
                                 fractions_json(*field));
  } else if (a.kind == "special") {
    PinnedSpec spec;
    spec.period = a.T;
    const auto to_count = [&](double frac, double scale, const char* what) {
      const double raw = frac * scale;
      const long long n = std::llround(raw);
      if (std::abs(raw - static_cast<double>(n)) > 1e-9)
        throw std::invalid_argument(std::string("gen special: ") + what +
                                    " is not representable at this period");
      return n;
    };
    spec.beta_rows = static_cast<int>(to_count(a.t1, a.T, "t1"));
    spec.beta_cols = static_cast<int>(to_count(a.t2, a.T, "t2"));
    spec.horizontal_beta_count = to_count(a.theta1, static_cast<double>(a.T) * a.T, "theta1");
    spec.vertical_beta_count = to_count(a.theta2, static_cast<double>(a.T) * a.T, "theta2");
    spec.seed = a.seed;
    field = pinned_field(spec, a.alpha, a.beta);
    provenance = provenance_json(
        "special",
        "{\"T\":" + std::to_string(a.T) + ",\"t1\":" + fmt_double(a.t1) + ",\"t2\":" +
            fmt_double(a.t2) + ",\"theta1\":" + fmt_double(a.theta1) + ",\"theta2\":" +
            fmt_double(a.theta2) + ",\"seed\":" + std::to_string(a.seed) + "}",
        fractions_json(*field));
  } else if (a.kind == "realize") {
    RealizeResult r = realize_tension(a.c1, a.c2, a.theta, a.alpha, a.beta, a.T, a.seed);
    field = r.field;
    provenance = provenance_json(
        "realize",
        "{\"T\":" + std::to_string(a.T) + ",\"c1\":" + fmt_double(a.c1) + ",\"c2\":" +
            fmt_double(a.c2) + ",\"theta\":" + fmt_double(a.theta) + ",\"seed\":" +
            std::to_string(a.seed) + "}",
        "{\"c1\":" + fmt_double(r.c1) + ",\"c2\":" + fmt_double(r.c2) + ",\"theta\":" +
            fmt_double(r.theta.to_double()) + ",\"theta_h\":" + fmt_double(r.theta_h.to_double()) +
            ",\"theta_v\":" + fmt_double(r.theta_v.to_double()) + "}");
  } else {
    throw std::invalid_argument("gen: unknown kind " + a.kind);
  }
  emit(a.out, with_provenance(*field, provenance));
  if (field->is_mixture()) {
    const VolumeFractions vf = volume_fractions(*field);
    std::cerr << "theta=" << fmt_double(vf.theta.to_double())
              << " theta_h=" << fmt_double(vf.theta_h.to_double())
              << " theta_v=" << fmt_double(vf.theta_v.to_double()) << '\n';
  }
  return kExitOk;
}

std::string bounds_json(const BondField& field) {
  const BoundPair p = projection_bounds(field);
  const BoundPair a = averaging_bounds(field);
  std::string out = "{\"projection\":[" + fmt_double(p.c1) + ',' + fmt_double(p.c2) + ']';
  out += ",\"averaging\":[" + fmt_double(a.c1) + ',' + fmt_double(a.c2) + ']';
  if (field.is_mixture()) {
    const BoundPair m = mixture_upper_bound(field);
    out += ",\"mixture\":[" + fmt_double(m.c1) + ',' + fmt_double(m.c2) + ']';
  }
  out += '}';
  return out;
}

double profile_slack_tol(const BondField& field, const SurfaceTensionProfile& profile) {
  // Averaging-bound slack of the least converged sample.
  double tol = 0;
  const double t = field.period();
  for (const auto& s : profile.samples) {
    const double zlen = std::hypot(static_cast<double>(s.z.x), static_cast<double>(s.z.y));
    if (s.k_used > 0) tol = std::max(tol, 4 * field.max_weight() / (s.k_used * t * zlen));
  }
  return tol > 0 ? tol : 1e-9;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Surface-tension homogenization of periodic two-phase bond systems"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cmd_gen = app.add_subcommand("gen", "Generate a bond field");
  cmd_gen->add_option("--kind", gen.kind, "homogeneous|laminate|random|special|realize")
      ->required();
  cmd_gen->add_option("--T", gen.T, "period")->required();
  cmd_gen->add_option("--N1", gen.N1, "solid beta rows (laminate)");
  cmd_gen->add_option("--N2", gen.N2, "solid beta columns (laminate)");
  cmd_gen->add_option("--alpha", gen.alpha, "weak phase weight");
  auto* beta_opt = cmd_gen->add_option("--beta", gen.beta, "strong phase weight");
  cmd_gen->add_option("--theta", gen.theta, "volume fraction");
  cmd_gen->add_option("--t1", gen.t1, "solid row fraction (special)");
  cmd_gen->add_option("--t2", gen.t2, "solid column fraction (special)");
  cmd_gen->add_option("--theta1", gen.theta1, "horizontal beta fraction (special)");
  cmd_gen->add_option("--theta2", gen.theta2, "vertical beta fraction (special)");
  cmd_gen->add_option("--c1", gen.c1, "target coefficient (realize)");
  cmd_gen->add_option("--c2", gen.c2, "target coefficient (realize)");
  cmd_gen->add_option("--seed", gen.seed, "RNG seed");
  std::string gen_out;
  auto* gen_out_opt = cmd_gen->add_option("--out", gen_out, "output path (stdout if omitted)");

  std::string phi_field, phi_out;
  int phi_dirs = 8, phi_kmax = 8;
  double phi_rtol = 1e-3;
  auto* cmd_phi = app.add_subcommand("phi", "Sample the homogenized surface tension");
  cmd_phi->add_option("--field", phi_field, "bond-field document")->required();
  cmd_phi->add_option("--directions", phi_dirs, "fan bound D: primitive |z_i| <= D");
  cmd_phi->add_option("--k-max", phi_kmax, "largest period multiple");
  cmd_phi->add_option("--rel-tol", phi_rtol, "convergence tolerance");
  auto* phi_out_opt = cmd_phi->add_option("--out", phi_out, "output path");

  std::string bounds_field, bounds_out;
  auto* cmd_bounds = app.add_subcommand("bounds", "Projection and averaging bounds");
  cmd_bounds->add_option("--field", bounds_field, "bond-field document")->required();
  auto* bounds_out_opt = cmd_bounds->add_option("--out", bounds_out, "output path");

  std::string check_profile, check_out;
  double check_theta = 0.5, check_alpha = 1, check_beta = 2, check_tol = 1e-9;
  auto* cmd_check = app.add_subcommand("check", "Optimal-bounds membership of a profile");
  cmd_check->add_option("--profile", check_profile, "profile document")->required();
  cmd_check->add_option("--theta", check_theta, "volume fraction")->required();
  cmd_check->add_option("--alpha", check_alpha, "weak phase weight")->required();
  cmd_check->add_option("--beta", check_beta, "strong phase weight")->required();
  cmd_check->add_option("--tol", check_tol, "membership tolerance");
  auto* check_out_opt = cmd_check->add_option("--out", check_out, "output path");

  std::string wulff_profile, wulff_out, wulff_svg;
  double wulff_c1 = 0, wulff_c2 = 0, wulff_theta = 0.5, wulff_alpha = 1, wulff_beta = 2;
  int wulff_dirs = 8;
  auto* cmd_wulff = app.add_subcommand("wulff", "Normalized Wulff shape");
  auto* wulff_profile_opt = cmd_wulff->add_option("--profile", wulff_profile, "profile document");
  auto* wulff_c1_opt = cmd_wulff->add_option("--c1", wulff_c1, "analytic c1|x1| coefficient");
  cmd_wulff->add_option("--c2", wulff_c2, "analytic c2|x2| coefficient");
  cmd_wulff->add_option("--directions", wulff_dirs, "fan bound for analytic sampling");
  cmd_wulff->add_option("--theta", wulff_theta, "volume fraction for the figure");
  cmd_wulff->add_option("--alpha", wulff_alpha, "weak phase weight for the figure");
  cmd_wulff->add_option("--beta", wulff_beta, "strong phase weight for the figure");
  auto* wulff_out_opt = cmd_wulff->add_option("--out", wulff_out, "shape JSON path");
  auto* wulff_svg_opt = cmd_wulff->add_option("--svg", wulff_svg, "SVG figure path");

  std::string oracle_field, oracle_out, oracle_nu, oracle_z;
  int oracle_w = 4, oracle_h = 4;
  double oracle_offset = 0.25;
  auto* cmd_oracle = app.add_subcommand("oracle", "Spin-interface versus dual-path energies");
  cmd_oracle->add_option("--field", oracle_field, "bond-field document")->required();
  cmd_oracle->add_option("--nu", oracle_nu, "interface normal, e.g. 0.6,0.8");
  cmd_oracle->add_option("--z", oracle_z, "integer crossing direction, e.g. 1,1");
  cmd_oracle->add_option("--width", oracle_w, "window width in sites");
  cmd_oracle->add_option("--height", oracle_h, "window height in sites");
  cmd_oracle->add_option("--offset", oracle_offset, "trace offset from the window centre");
  auto* oracle_out_opt = cmd_oracle->add_option("--out", oracle_out, "output path");

  std::string report_field, report_out;
  int report_dirs = 8, report_kmax = 8;
  double report_rtol = 1e-3, report_theta = -1, report_tol = -1;
  auto* cmd_report = app.add_subcommand("report", "Bounds, profile and membership summary");
  cmd_report->add_option("--field", report_field, "bond-field document")->required();
  cmd_report->add_option("--theta", report_theta, "volume fraction (measured if omitted)");
  cmd_report->add_option("--directions", report_dirs, "fan bound D");
  cmd_report->add_option("--k-max", report_kmax, "largest period multiple");
  cmd_report->add_option("--rel-tol", report_rtol, "convergence tolerance");
  cmd_report->add_option("--tol", report_tol, "membership tolerance (slack bound if omitted)");
  auto* report_out_opt = cmd_report->add_option("--out", report_out, "output path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (cmd_gen->parsed()) {
      gen.has_beta = beta_opt->count() > 0;
      gen.out = gen_out_opt->count() ? std::optional<std::string>(gen_out) : std::nullopt;
      return run_gen(gen);
    }

    if (cmd_phi->parsed()) {
      const BondField field = parse_bond_field(read_text_file(phi_field));
      PhiOptions opts;
      opts.k_max = phi_kmax;
      opts.rel_tol = phi_rtol;
      const SurfaceTensionProfile profile = phi_profile_fan(field, phi_dirs, opts);
      emit(phi_out_opt->count() ? std::optional<std::string>(phi_out) : std::nullopt,
           serialize(profile));
      return kExitOk;
    }

    if (cmd_bounds->parsed()) {
      const BondField field = parse_bond_field(read_text_file(bounds_field));
      emit(bounds_out_opt->count() ? std::optional<std::string>(bounds_out) : std::nullopt,
           bounds_json(field));
      return kExitOk;
    }

    if (cmd_check->parsed()) {
      const SurfaceTensionProfile profile = parse_profile(read_text_file(check_profile));
      const MembershipVerdict verdict =
          theorem_membership(profile, check_alpha, check_beta, check_theta, check_tol);
      emit(check_out_opt->count() ? std::optional<std::string>(check_out) : std::nullopt,
           serialize(verdict));
      return verdict.member ? kExitOk : kExitFinding;
    }

    if (cmd_wulff->parsed()) {
      SurfaceTensionProfile profile;
      if (wulff_profile_opt->count()) {
        profile = parse_profile(read_text_file(wulff_profile));
      } else if (wulff_c1_opt->count()) {
        const double c1 = wulff_c1, c2 = wulff_c2;
        if (!(c1 > 0) || !(c2 > 0))
          throw std::invalid_argument("wulff: analytic coefficients must be positive");
        profile = sampled_profile(
            [c1, c2](double n1, double n2) { return c1 * std::abs(n1) + c2 * std::abs(n2); },
            wulff_dirs);
      } else {
        throw std::invalid_argument("wulff: need --profile or --c1/--c2");
      }
      const WulffPolygon shape = wulff_shape(profile);
      emit(wulff_out_opt->count() ? std::optional<std::string>(wulff_out) : std::nullopt,
           serialize(shape));
      if (wulff_svg_opt->count())
        write_text_file(wulff_svg, to_svg(shape, wulff_theta, wulff_alpha, wulff_beta));
      return kExitOk;
    }

    if (cmd_oracle->parsed()) {
      const BondField field = parse_bond_field(read_text_file(oracle_field));
      HalfPlaneTrace trace;
      if (!oracle_nu.empty()) {
        double x = 0, y = 0;
        if (std::sscanf(oracle_nu.c_str(), "%lf,%lf", &x, &y) != 2 || (x == 0 && y == 0))
          throw std::invalid_argument("oracle: bad --nu");
        const double len = std::hypot(x, y);
        trace.nu = {x / len, y / len};
      } else if (!oracle_z.empty()) {
        long long zx = 0, zy = 0;
        if (std::sscanf(oracle_z.c_str(), "%lld,%lld", &zx, &zy) != 2)
          throw std::invalid_argument("oracle: bad --z");
        trace.nu = normal_of({zx, zy});
      } else {
        trace.nu = {0, 1};
      }
      const std::array<double, 2> centre{(oracle_w - 1) / 2.0, (oracle_h - 1) / 2.0};
      trace.offset = trace.nu[0] * centre[0] + trace.nu[1] * centre[1] + oracle_offset;
      const OracleReport report = interface_oracle(field, oracle_w, oracle_h, trace);
      emit(oracle_out_opt->count() ? std::optional<std::string>(oracle_out) : std::nullopt,
           serialize(report));
      return report.agree ? kExitOk : kExitFinding;
    }

    if (cmd_report->parsed()) {
      const BondField field = parse_bond_field(read_text_file(report_field));
      PhiOptions opts;
      opts.k_max = report_kmax;
      opts.rel_tol = report_rtol;
      const SurfaceTensionProfile profile = phi_profile_fan(field, report_dirs, opts);
      const BoundPair proj = projection_bounds(field);
      const BoundPair avg = averaging_bounds(field);
      const double alpha = field.is_mixture() ? field.alpha() : field.min_weight();
      const double beta = field.is_mixture() ? field.beta() : field.max_weight();
      double theta = report_theta;
      if (theta < 0) {
        if (!field.is_mixture())
          throw std::invalid_argument("report: --theta required for untagged fields");
        theta = volume_fractions(field).theta.to_double();
      }
      const double tol = report_tol >= 0 ? report_tol : profile_slack_tol(field, profile);

      bool sandwich_ok = true;
      double worst_lower = 0, worst_upper = 0;
      const double t = field.period();
      for (const auto& s : profile.samples) {
        const double lo = proj.c1 * std::abs(s.nu[0]) + proj.c2 * std::abs(s.nu[1]);
        const double hi = avg.c1 * std::abs(s.nu[0]) + avg.c2 * std::abs(s.nu[1]);
        const double zlen = std::hypot(static_cast<double>(s.z.x), static_cast<double>(s.z.y));
        const double slack = 4 * beta / (std::max(1, s.k_used) * t * zlen);
        worst_lower = std::max(worst_lower, lo - s.value);
        worst_upper = std::max(worst_upper, s.value - hi - slack);
      }
      const double tiny = 1e-12 * beta;
      sandwich_ok = worst_lower <= tiny && worst_upper <= tiny;

      const MembershipVerdict verdict = theorem_membership(profile, alpha, beta, theta, tol);
      const auto defects = convexity_report(profile);

      std::string out = "{\"field_hash\":\"" + profile.field_hash + "\"";
      out += ",\"T\":" + std::to_string(field.period());
      out += ",\"alpha\":" + fmt_double(alpha) + ",\"beta\":" + fmt_double(beta);
      if (field.is_mixture()) {
        const VolumeFractions vf = volume_fractions(field);
        out += ",\"theta\":" + fmt_double(vf.theta.to_double());
        out += ",\"theta_h\":" + fmt_double(vf.theta_h.to_double());
        out += ",\"theta_v\":" + fmt_double(vf.theta_v.to_double());
      } else {
        out += ",\"theta\":" + fmt_double(theta);
      }
      out += ",\"bounds\":" + bounds_json(field);
      out += ",\"samples\":" + std::to_string(profile.samples.size());
      out += ",\"sandwich\":{\"ok\":";
      out += sandwich_ok ? "true" : "false";
      out += ",\"max_lower_excess\":" + fmt_double(worst_lower);
      out += ",\"max_upper_excess\":" + fmt_double(worst_upper) + '}';
      out += ",\"convexity_defects\":" + std::to_string(defects.size());
      out += ",\"membership\":" + serialize(verdict);
      out += '}';
      emit(report_out_opt->count() ? std::optional<std::string>(report_out) : std::nullopt, out);
      return (verdict.member && sandwich_ok) ? kExitOk : kExitFinding;
    }
  } catch (const window_overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
