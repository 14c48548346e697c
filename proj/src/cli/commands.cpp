#include "nabla/cli/commands.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nabla/cli/csv.hpp"
#include "nabla/frac_calculus.hpp"

namespace nabla::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

double parse_real(const std::string& s, const std::string& field) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || errno != 0 || *end != '\0' || !std::isfinite(v)) {
    throw ValidationError(field, "bad number '" + s + "'");
  }
  return v;
}

double max_abs_diff(const GridFunction& x, const GridFunction& y) {
  double m = 0.0;
  for (std::size_t k = 0; k < x.domain().size(); ++k) {
    m = std::max(m, std::abs(x.at_offset(k) - y.at_offset(k)));
  }
  return m;
}

fs::path prepare_out_dir(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw ValidationError("out", "cannot create " + dir + ": " + ec.message());
  return fs::path(dir);
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw ValidationError("out", "cannot write " + path.string());
  return os;
}

GridFunction write_and_reread(const fs::path& path, const GridFunction& x) {
  {
    auto os = open_output(path);
    write_solution_csv(os, x);
  }
  std::ifstream is(path, std::ios::binary);
  return read_solution_csv(is);
}

json solvability_json(const SolvabilityReport& r) {
  json j;
  j["rho"] = r.rho ? json(*r.rho) : json(nullptr);
  j["det_D"] = r.det_D;
  j["relative_det"] = r.relative_det;
  j["solvable"] = r.solvable;
  return j;
}

json problem_json(const ProblemFile& pf, double tol, const BvpOptions& opts) {
  json j;
  j["kind"] = std::string(to_string(pf.kind));
  j["a"] = pf.a;
  j["b"] = pf.b;
  j["nu"] = pf.nu;
  j["tolerance"] = tol;
  if (pf.kind == ProblemKind::bvp) j["caputo_boundary_at_b"] = opts.caputo_boundary_at_b;
  return j;
}

int cmd_solve(const std::string& problem_path, const std::string& out_dir, std::optional<double> tol_flag,
              bool caputo_b, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = load_problem(problem_path);
  const double tol = resolve_tolerance(tol_flag);
  BvpOptions opts;
  opts.caputo_boundary_at_b = caputo_b;
  opts.singular_tol = tol;

  json report;
  report["problem"] = problem_json(pf, tol, opts);

  GridFunction x = GridFunction::constant(Domain(pf.a, 0), 0.0);
  json cross;
  if (pf.kind == ProblemKind::caputo_ivp) {
    const auto spec = to_caputo(pf);
    x = solve_caputo_ivp_stepping(spec, pf.b);
    cross["closed_form_max_abs_diff"] = max_abs_diff(x, solve_caputo_ivp_closed(spec, pf.b));
  } else {
    const auto prob = to_selfadjoint(pf);
    if (pf.kind == ProblemKind::selfadjoint_ivp) {
      x = solve_selfadjoint_ivp(prob, pf.init);
      cross["variation_of_constants_max_abs_diff"] = max_abs_diff(x, variation_of_constants(prob, pf.init));
      cross["dense_oracle_max_abs_diff"] = max_abs_diff(x, dense_oracle_solve_ivp(prob, pf.init, tol));
    } else {
      const auto verdict = solvability(prob, *pf.bc, opts);
      report["solvability"] = solvability_json(verdict);
      if (!verdict.solvable) {
        const auto dir = prepare_out_dir(out_dir);
        auto os = open_output(dir / "report.json");
        os << report.dump(2) << '\n';
        err << "error: boundary value problem is not uniquely solvable (relative det "
            << format_real(verdict.relative_det) << ", tolerance " << format_real(tol) << ")\n";
        return kSingular;
      }
      x = solve_bvp(prob, *pf.bc, opts);
      try {
        cross["dense_oracle_max_abs_diff"] = max_abs_diff(x, dense_oracle_solve(prob, *pf.bc, opts));
      } catch (const SingularSystemError& e) {
        cross["dense_oracle_max_abs_diff"] = nullptr;
        cross["dense_oracle_note"] = e.what();
      }
    }
  }

  const auto dir = prepare_out_dir(out_dir);
  const GridFunction reread = write_and_reread(dir / "solution.csv", x);
  report["solution_file"] = "solution.csv";
  report["points"] = reread.domain().size();
  report["residuals"] = residual_report(pf, reread, opts);
  report["cross_check"] = cross;
  {
    auto os = open_output(dir / "report.json");
    os << report.dump(2) << '\n';
  }
  out << "wrote " << (dir / "solution.csv").string() << " and " << (dir / "report.json").string() << '\n';
  return kOk;
}

struct GreenArgs {
  std::string problem;
  std::string out = ".";
  std::optional<double> a, b, nu, tol;
  std::optional<std::string> bc, p, q;
  bool caputo_b = false;
};

int cmd_green(const GreenArgs& args, std::ostream& out, std::ostream& err) {
  ProblemFile pf;
  if (!args.problem.empty()) {
    pf = load_problem(args.problem);
    if (pf.kind == ProblemKind::caputo_ivp) {
      throw ValidationError("kind", "Green's function needs a self-adjoint problem");
    }
  } else {
    if (!args.b) throw ValidationError("b", "required without --problem");
    if (!args.nu) throw ValidationError("nu", "required without --problem");
    json doc = {{"kind", "bvp"}, {"a", args.a.value_or(0.0)}, {"b", *args.b}, {"nu", *args.nu},
                {"bc", {1.0, 0.0, 1.0, 0.0, 0.0, 0.0}}};
    pf = parse_problem(doc);
  }
  if (args.bc) pf.bc = parse_bc(*args.bc, "bc");
  if (!pf.bc) pf.bc = SturmLiouvilleBC::dirichlet();
  if (args.p) pf.p = CoefficientSpec::parse(*args.p, "p");
  if (args.q) pf.q = CoefficientSpec::parse(*args.q, "q");
  pf.h = CoefficientSpec(0.0);

  BvpOptions opts;
  opts.caputo_boundary_at_b = args.caputo_b;
  opts.singular_tol = resolve_tolerance(args.tol);
  const auto prob = to_selfadjoint(pf);
  const auto verdict = solvability(prob, *pf.bc, opts);
  if (!verdict.solvable) {
    err << "error: boundary value problem is not uniquely solvable (relative det "
        << format_real(verdict.relative_det) << ")\n";
    return kSingular;
  }
  const auto green = greens_function(prob, *pf.bc, opts);

  const auto dir = prepare_out_dir(args.out);
  auto os = open_output(dir / "green.csv");
  os << "t,s,G,branch\n";
  const std::size_t n = green.steps();
  for (std::size_t kt = 0; kt <= n; ++kt) {
    for (std::size_t ks = 0; ks <= n; ++ks) {
      const char* branch = kt < ks ? "u" : (kt > ks ? "v" : "uv");
      os << format_real(pf.a + static_cast<double>(kt)) << ',' << format_real(pf.a + static_cast<double>(ks))
         << ',' << format_real(green.at(kt, ks)) << ',' << branch << '\n';
    }
  }
  out << "wrote " << (dir / "green.csv").string() << '\n';
  return kOk;
}

struct VerifyArgs {
  double a = 0.0;
  std::optional<std::string> b;
  std::string nu = "0.1:0.9:0.1";
  std::optional<std::string> out;
};

int cmd_verify(const VerifyArgs& args, std::ostream& out) {
  const auto bs = args.b ? parse_range(*args.b, "b") : parse_range("2:12", "b");
  std::vector<double> b_values;
  for (double b : bs) b_values.push_back(args.b ? b : args.a + b);
  const auto nus = parse_range(args.nu, "nu");
  for (double b : b_values) {
    const double steps = b - args.a;
    if (std::abs(steps - std::round(steps)) > 1e-9 || std::round(steps) < 2.0) {
      throw ValidationError("b", "each b - a must be an integer >= 2");
    }
  }
  for (double nu : nus) {
    if (!(nu > 0.0 && nu < 1.0)) throw ValidationError("nu", "values must lie in (0, 1)");
  }

  std::ostringstream table;
  table << "a,b,nu,max_G,min_G,lower_bound,max_abs_sum,abs_sum_bound,max_grad_sum,grad_sum_bound,"
           "m1,m2,m3,m4,status\n";
  std::size_t failed = 0;
  for (double b : b_values) {
    for (double nu : nus) {
      const auto m = inequality_margins(args.a, b, nu);
      const bool ok = m.all_hold();
      if (!ok) ++failed;
      for (double v : {args.a, b, nu, m.max_g, m.min_g, m.lower_bound, m.max_abs_sum, m.abs_sum_bound,
                       m.max_grad_sum, m.grad_sum_bound, m.margin1(), m.margin2(), m.margin3(), m.margin4()}) {
        table << format_real(v) << ',';
      }
      table << (ok ? "PASS" : "FAIL") << '\n';
    }
  }

  if (args.out) {
    const auto dir = prepare_out_dir(*args.out);
    auto os = open_output(dir / "verify.csv");
    os << table.str();
  }
  out << table.str();
  const std::size_t cells = b_values.size() * nus.size();
  out << cells - failed << "/" << cells << " cells pass\n";
  return failed == 0 ? kOk : kViolation;
}

}  // namespace

double resolve_tolerance(std::optional<double> flag) {
  double tol = kDefaultSingularTol;
  std::string source = "tol";
  if (flag) {
    tol = *flag;
  } else if (const char* env = std::getenv("NABLA_FRAC_TOL"); env != nullptr && *env != '\0') {
    tol = parse_real(env, "NABLA_FRAC_TOL");
    source = "NABLA_FRAC_TOL";
  }
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ValidationError(source, "tolerance must be positive");
  return tol;
}

json residual_report(const ProblemFile& pf, const GridFunction& x, const BvpOptions& opts) {
  json r;
  double eq = 0.0;
  if (pf.kind == ProblemKind::caputo_ivp) {
    const auto spec = to_caputo(pf);
    for (double t = pf.a + 1.0; t <= pf.b + 0.5; t += 1.0) {
      eq = std::max(eq, std::abs(caputo_diff(x, spec.nu(), pf.a, t) - spec.h()(t)));
    }
    json init = json::array();
    for (std::size_t k = 0; k < spec.c().size(); ++k) {
      init.push_back(std::abs(nabla_power(x, static_cast<int>(k), pf.a) - spec.c()[k]));
    }
    r["equation_max"] = eq;
    r["initial"] = init;
    return r;
  }

  const auto prob = to_selfadjoint(pf);
  const auto lx = apply_L(prob, x);
  for (std::size_t k = 0; k < lx.domain().size(); ++k) {
    eq = std::max(eq, std::abs(lx.at_offset(k) - prob.h().at_offset(k)));
  }
  r["equation_max"] = eq;
  if (pf.kind == ProblemKind::selfadjoint_ivp) {
    r["initial"] = {{"x(a)", std::abs(x(pf.a) - pf.init.A)},
                    {"nabla x(a+1)", std::abs(x(pf.a + 1.0) - x(pf.a) - pf.init.B)}};
  } else {
    r["boundary"] = {{"left", std::abs(left_boundary(*pf.bc, x, pf.a) - pf.bc->A())},
                     {"right", std::abs(right_boundary(prob, *pf.bc, x, opts) - pf.bc->B())}};
  }
  return r;
}

std::vector<double> parse_range(std::string_view text, const std::string& field) {
  const std::string s(text);
  std::vector<std::string> parts;
  const char sep = s.find(':') != std::string::npos ? ':' : ',';
  std::size_t pos = 0;
  while (true) {
    const auto next = s.find(sep, pos);
    parts.push_back(s.substr(pos, next == std::string::npos ? std::string::npos : next - pos));
    if (next == std::string::npos) break;
    pos = next + 1;
  }

  std::vector<double> values;
  if (sep == ',') {
    for (const auto& p : parts) values.push_back(parse_real(p, field));
  } else {
    if (parts.size() < 2 || parts.size() > 3) throw ValidationError(field, "range must be lo:hi[:step]");
    const double lo = parse_real(parts[0], field);
    const double hi = parse_real(parts[1], field);
    const double step = parts.size() == 3 ? parse_real(parts[2], field) : 1.0;
    if (!(step > 0.0)) throw ValidationError(field, "range step must be positive");
    if (hi >= lo) {
      const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
      for (std::size_t i = 0; i < count; ++i) {
        // Snap to 12 decimals so 0.1:0.9:0.1 yields 0.3, not 0.30000000000000004.
        values.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
      }
    }
  }
  if (values.empty()) throw ValidationError(field, "empty range '" + s + "'");
  return values;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete nabla fractional calculus: IVP/BVP solvers, Green's functions, inequality checks"};
  app.require_subcommand(1);

  std::string problem;
  std::string out_dir = ".";
  double tol_value = 0.0;
  bool caputo_b = false;
  auto* solve = app.add_subcommand("solve", "Solve the problem in a problem file");
  solve->add_option("--problem", problem, "Problem file (JSON)")->required();
  solve->add_option("--out", out_dir, "Output directory");
  auto* solve_tol = solve->add_option("--tol", tol_value, "Relative singularity tolerance");
  solve->add_flag("--caputo-boundary-at-b", caputo_b, "Caputo difference in the boundary row at b");

  GreenArgs g;
  double ga = 0.0, gb = 0.0, gnu = 0.0, gtol = 0.0;
  std::string gbc, gp, gq;
  auto* green = app.add_subcommand("green", "Tabulate the Green's function");
  green->add_option("--problem", g.problem, "Problem file supplying a, b, nu, p, q, bc");
  green->add_option("--out", g.out, "Output directory");
  auto* ga_opt = green->add_option("--a", ga);
  auto* gb_opt = green->add_option("--b", gb);
  auto* gnu_opt = green->add_option("--nu", gnu);
  auto* gbc_opt = green->add_option("--bc", gbc, "alpha,beta,gamma,delta,A,B");
  auto* gp_opt = green->add_option("--p", gp, "Constant, builtin name, or comma list on [a+1, b]");
  auto* gq_opt = green->add_option("--q", gq, "Constant, builtin name, or comma list on [a+1, b-1]");
  auto* gtol_opt = green->add_option("--tol", gtol);
  green->add_flag("--caputo-boundary-at-b", g.caputo_b);

  VerifyArgs v;
  std::string vb, vout;
  auto* verify = app.add_subcommand("verify", "Check the Green's-function inequalities over a sweep");
  verify->add_option("--a", v.a);
  auto* vb_opt = verify->add_option("--b", vb, "Values of b: lo:hi[:step] or a comma list");
  verify->add_option("--nu", v.nu, "Values of nu: lo:hi[:step] or a comma list");
  auto* vout_opt = verify->add_option("--out", vout, "Write verify.csv into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalid;
  }

  try {
    if (*solve) {
      std::optional<double> tol;
      if (solve_tol->count() > 0) tol = tol_value;
      return cmd_solve(problem, out_dir, tol, caputo_b, out, err);
    }
    if (*green) {
      if (ga_opt->count() > 0) g.a = ga;
      if (gb_opt->count() > 0) g.b = gb;
      if (gnu_opt->count() > 0) g.nu = gnu;
      if (gbc_opt->count() > 0) g.bc = gbc;
      if (gp_opt->count() > 0) g.p = gp;
      if (gq_opt->count() > 0) g.q = gq;
      if (gtol_opt->count() > 0) g.tol = gtol;
      return cmd_green(g, out, err);
    }
    if (vb_opt->count() > 0) v.b = vb;
    if (vout_opt->count() > 0) v.out = vout;
    return cmd_verify(v, out);
  } catch (const SingularError& e) {
    err << "error: " << e.what() << '\n';
    return kSingular;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  }
}

}  // namespace nabla::cli
