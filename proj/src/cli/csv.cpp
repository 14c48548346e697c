#include "nabla/cli/csv.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <vector>

namespace nabla::cli {
namespace {

double parse_real(const std::string& text, std::size_t line) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (errno != 0 || end == text.c_str() || *end != '\0') {
    throw InvalidArgument("solution csv line " + std::to_string(line) + ": bad number '" + text + "'");
  }
  return v;
}

}  // namespace

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

void write_solution_csv(std::ostream& os, const GridFunction& x) {
  os << "t,x\n";
  for (std::size_t k = 0; k < x.domain().size(); ++k) {
    os << format_real(x.domain().point(k)) << ',' << format_real(x.at_offset(k)) << '\n';
  }
}

GridFunction read_solution_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "t,x") throw InvalidArgument("solution csv: missing 't,x' header");
  std::vector<double> ts;
  std::vector<double> xs;
  std::size_t lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw InvalidArgument("solution csv line " + std::to_string(lineno) + ": expected two columns");
    }
    ts.push_back(parse_real(line.substr(0, comma), lineno));
    xs.push_back(parse_real(line.substr(comma + 1), lineno));
  }
  if (ts.empty()) throw InvalidArgument("solution csv: no rows");
  for (std::size_t i = 1; i < ts.size(); ++i) {
    if (lattice_offset(ts.front(), ts[i]) != static_cast<std::int64_t>(i)) {
      throw InvalidArgument("solution csv: rows are not consecutive lattice points");
    }
  }
  return GridFunction(Domain(ts.front(), ts.size() - 1), std::move(xs));
}

}  // namespace nabla::cli
