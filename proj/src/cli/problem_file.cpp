#include "nabla/cli/problem_file.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

namespace nabla::cli {
namespace {

using nlohmann::json;

const std::set<std::string> kBuiltins = {"one", "zero", "identity", "t"};

std::string format_real_short(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", x);
  return buf;
}

double require_number(const json& doc, const char* key) {
  if (!doc.contains(key)) throw ValidationError(key, "missing");
  const auto& v = doc.at(key);
  if (!v.is_number()) throw ValidationError(key, "must be a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw ValidationError(key, "must be finite");
  return x;
}

std::vector<double> number_list(const json& v, const std::string& field) {
  std::vector<double> out;
  for (const auto& item : v) {
    if (!item.is_number()) throw ValidationError(field, "list entries must be numbers");
    out.push_back(item.get<double>());
  }
  return out;
}

CoefficientSpec coefficient_from_json(const json& v, const std::string& field) {
  if (v.is_number()) return CoefficientSpec(v.get<double>());
  if (v.is_string()) {
    auto name = v.get<std::string>();
    if (!kBuiltins.contains(name)) throw ValidationError(field, "unknown builtin '" + name + "'");
    return CoefficientSpec(std::move(name));
  }
  if (v.is_array()) return CoefficientSpec(number_list(v, field));
  throw ValidationError(field, "must be a number, a builtin name, or a list of numbers");
}

SturmLiouvilleBC make_bc(const std::vector<double>& v, const std::string& field) {
  if (v.size() != 6) throw ValidationError(field, "expected 6 values alpha,beta,gamma,delta,A,B");
  try {
    return SturmLiouvilleBC(v[0], v[1], v[2], v[3], v[4], v[5]);
  } catch (const InvalidArgument& e) {
    throw ValidationError(field, e.what());
  }
}

SturmLiouvilleBC bc_from_json(const json& v) {
  if (v.is_array()) return make_bc(number_list(v, "bc"), "bc");
  if (!v.is_object()) throw ValidationError("bc", "must be an object or a list of 6 numbers");
  std::vector<double> vals;
  for (const char* key : {"alpha", "beta", "gamma", "delta"}) {
    if (!v.contains(key) || !v.at(key).is_number()) {
      throw ValidationError(std::string("bc.") + key, "missing or not a number");
    }
    vals.push_back(v.at(key).get<double>());
  }
  for (const char* key : {"A", "B"}) {
    if (v.contains(key) && !v.at(key).is_number()) {
      throw ValidationError(std::string("bc.") + key, "must be a number");
    }
    vals.push_back(v.contains(key) ? v.at(key).get<double>() : 0.0);
  }
  return make_bc(vals, "bc");
}

double parse_number_text(std::string_view text, const std::string& field) {
  const std::string s(text);
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (errno != 0 || end == s.c_str() || *end != '\0' || !std::isfinite(v)) {
    throw ValidationError(field, "bad number '" + s + "'");
  }
  return v;
}

std::vector<double> split_numbers(std::string_view text, const std::string& field) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (true) {
    const auto comma = text.find(',', pos);
    out.push_back(parse_number_text(text.substr(pos, comma - pos), field));
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return out;
}

}  // namespace

std::string_view to_string(ProblemKind kind) {
  switch (kind) {
    case ProblemKind::caputo_ivp: return "caputo_ivp";
    case ProblemKind::selfadjoint_ivp: return "selfadjoint_ivp";
    case ProblemKind::bvp: return "bvp";
  }
  return "unknown";
}

CoefficientSpec CoefficientSpec::parse(std::string_view text, const std::string& field) {
  const std::string s(text);
  if (kBuiltins.contains(s)) return CoefficientSpec(s);
  auto values = split_numbers(text, field);
  if (values.size() == 1) return CoefficientSpec(values.front());
  return CoefficientSpec(std::move(values));
}

GridFunction CoefficientSpec::realize(const Domain& domain, const std::string& field) const {
  if (const auto* c = std::get_if<double>(&value_)) {
    if (!std::isfinite(*c)) throw ValidationError(field, "must be finite");
    return GridFunction::constant(domain, *c);
  }
  if (const auto* name = std::get_if<Builtin>(&value_)) {
    if (*name == "one") return GridFunction::constant(domain, 1.0);
    if (*name == "zero") return GridFunction::constant(domain, 0.0);
    if (*name == "identity" || *name == "t") {
      return GridFunction::tabulate(domain, [](double t) { return t; });
    }
    throw ValidationError(field, "unknown builtin '" + *name + "'");
  }
  const auto& values = std::get<Values>(value_);
  if (values.size() != domain.size()) {
    throw ValidationError(field, "expected " + std::to_string(domain.size()) + " values on [" +
                                     format_real_short(domain.base()) + ", " +
                                     format_real_short(domain.last()) + "], got " +
                                     std::to_string(values.size()));
  }
  for (double v : values) {
    if (!std::isfinite(v)) throw ValidationError(field, "values must be finite");
  }
  return GridFunction(domain, values);
}

ProblemFile parse_problem(const json& doc) {
  if (!doc.is_object()) throw ValidationError("problem", "top level must be an object");
  static const std::set<std::string> known = {"kind", "a", "b", "nu", "p", "q", "h", "bc", "init"};
  for (const auto& [key, _] : doc.items()) {
    if (!known.contains(key)) throw ValidationError(key, "unknown field");
  }

  ProblemFile pf;
  if (!doc.contains("kind") || !doc.at("kind").is_string()) {
    throw ValidationError("kind", "must be one of caputo_ivp, selfadjoint_ivp, bvp");
  }
  const auto kind = doc.at("kind").get<std::string>();
  if (kind == "caputo_ivp") {
    pf.kind = ProblemKind::caputo_ivp;
  } else if (kind == "selfadjoint_ivp") {
    pf.kind = ProblemKind::selfadjoint_ivp;
  } else if (kind == "bvp") {
    pf.kind = ProblemKind::bvp;
  } else {
    throw ValidationError("kind", "must be one of caputo_ivp, selfadjoint_ivp, bvp");
  }

  pf.a = doc.contains("a") ? require_number(doc, "a") : 0.0;
  pf.b = require_number(doc, "b");
  pf.nu = require_number(doc, "nu");
  if (!(pf.nu > 0.0)) throw ValidationError("nu", "must be positive");
  if (pf.kind != ProblemKind::caputo_ivp && pf.nu > 1.0) {
    throw ValidationError("nu", "self-adjoint problems need 0 < nu <= 1");
  }

  const double steps = pf.b - pf.a;
  if (std::abs(steps - std::round(steps)) > 1e-9) throw ValidationError("b", "b - a must be an integer");
  const double min_steps = pf.kind == ProblemKind::caputo_ivp ? 1.0 : 2.0;
  if (std::round(steps) < min_steps) {
    throw ValidationError("b", "b - a must be at least " + std::to_string(static_cast<int>(min_steps)));
  }

  if (doc.contains("p")) pf.p = coefficient_from_json(doc.at("p"), "p");
  if (doc.contains("q")) pf.q = coefficient_from_json(doc.at("q"), "q");
  if (doc.contains("h")) pf.h = coefficient_from_json(doc.at("h"), "h");

  if (doc.contains("bc")) pf.bc = bc_from_json(doc.at("bc"));
  if (pf.kind == ProblemKind::bvp && !pf.bc) throw ValidationError("bc", "required for kind bvp");

  if (pf.kind == ProblemKind::caputo_ivp) {
    const auto n = static_cast<std::size_t>(std::ceil(pf.nu));
    pf.c.assign(n, 0.0);
    if (doc.contains("init")) {
      const auto& init = doc.at("init");
      const json* list = &init;
      if (init.is_object()) {
        if (!init.contains("c")) throw ValidationError("init.c", "missing");
        list = &init.at("c");
      } else if (init.is_number()) {
        pf.c = {init.get<double>()};
        list = nullptr;
      }
      if (list != nullptr) {
        if (!list->is_array()) throw ValidationError("init", "must be a list of c values");
        pf.c = number_list(*list, "init");
      }
      if (pf.c.size() != n) {
        throw ValidationError("init", "expected " + std::to_string(n) + " initial values for nu = " +
                                          format_real_short(pf.nu) + ", got " + std::to_string(pf.c.size()));
      }
    }
  } else if (doc.contains("init")) {
    const auto& init = doc.at("init");
    if (init.is_array()) {
      const auto v = number_list(init, "init");
      if (v.size() != 2) throw ValidationError("init", "expected [A, B]");
      pf.init = {v[0], v[1]};
    } else if (init.is_object()) {
      for (const char* key : {"A", "B"}) {
        if (init.contains(key) && !init.at(key).is_number()) {
          throw ValidationError(std::string("init.") + key, "must be a number");
        }
      }
      pf.init.A = init.value("A", 0.0);
      pf.init.B = init.value("B", 0.0);
    } else {
      throw ValidationError("init", "must be {\"A\": .., \"B\": ..} or [A, B]");
    }
  }
  return pf;
}

ProblemFile load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("problem", "cannot open " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError("problem", std::string("malformed document: ") + e.what());
  }
  return parse_problem(doc);
}

SturmLiouvilleBC parse_bc(std::string_view text, const std::string& field) {
  return make_bc(split_numbers(text, field), field);
}

SelfAdjointProblem to_selfadjoint(const ProblemFile& pf) {
  const auto n = static_cast<std::size_t>(std::llround(pf.b - pf.a));
  const Domain edge(pf.a + 1.0, n - 1);
  const Domain inner(pf.a + 1.0, n - 2);
  auto p = pf.p.realize(edge, "p");
  for (double v : p.values()) {
    if (!(v > 0.0)) throw ValidationError("p", "must be positive on [a + 1, b]");
  }
  return SelfAdjointProblem(pf.a, pf.b, FracOrder(pf.nu), std::move(p), pf.q.realize(inner, "q"),
                            pf.h.realize(inner, "h"));
}

CaputoIvpSpec to_caputo(const ProblemFile& pf) {
  const auto n = static_cast<std::size_t>(std::llround(pf.b - pf.a));
  return CaputoIvpSpec(pf.a, FracOrder(pf.nu), pf.c, pf.h.realize(Domain(pf.a + 1.0, n - 1), "h"));
}

}  // namespace nabla::cli
