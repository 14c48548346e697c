#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "nabla/grid.hpp"

namespace nabla::cli {

/// 17 significant digits, scientific notation, '.' decimal point.
std::string format_real(double x);

/// Header "t,x" followed by one row per lattice point.
void write_solution_csv(std::ostream& os, const GridFunction& x);

/// Reads what write_solution_csv wrote. Rows must be consecutive lattice
/// points; InvalidArgument otherwise.
GridFunction read_solution_csv(std::istream& is);

}  // namespace nabla::cli
