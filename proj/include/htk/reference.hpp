#pragma once

#include "htk/oracle.hpp"

namespace htk {

// Best-conditioned exact representation for any (n, m):
//  m = 1      shifted line for omega <= 4, contour representation beyond;
//  odd m >= 3 polar quadrature while it does not cancel, else reduction to m = 1;
//  even m     polar quadrature while it does not cancel, else the integral
//             over the extra central coordinate of the m + 1 kernel.
OracleResult reference_value(const GroupShape& shape, const RadialPoint& p,
                             const DerivOrder& order, const QuadratureSpec& spec = {});

// p^{(m)}_{k1,k2} for even m as an integral of the m + 1 kernel and its
// |t|-derivatives; needs |t| > 0.
OracleResult descent_value(const GroupShape& shape, const RadialPoint& p,
                           const DerivOrder& order, const QuadratureSpec& spec = {});

// p^{(m)}_{k1,k2} for odd m >= 3 from m = 1 reference values; needs |t| > 0.
OracleResult odd_reduction_value(const GroupShape& shape, const RadialPoint& p,
                                 const DerivOrder& order, const QuadratureSpec& spec = {});

}  // namespace htk
