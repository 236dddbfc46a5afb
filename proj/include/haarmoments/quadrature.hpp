// quadrature.hpp: adaptive Gauss-Kronrod (7/15) integration of vector-valued
// complex integrands over a finite interval.

#pragma once

#include "haarmoments/linalg.hpp"

#include <functional>
#include <vector>

namespace haarmoments {

struct QuadratureOptions {
  double rel_tol = 1e-8;
  double abs_tol = 1e-14;
  int initial_panels = 16;
  int max_panels = 10000;
};

// f(x, out) writes all n components at x into out (already sized n).
using VectorIntegrand = std::function<void(double, std::vector<Complex>&)>;

// Panels are bisected worst-first until the summed Kronrod error (max norm over
// components) is below max(rel_tol * |result|_max, abs_tol). Throws
// QuadratureError when max_panels is reached first.
std::vector<Complex> integrate(const VectorIntegrand& f, std::size_t n, double a, double b,
                               const QuadratureOptions& opts = {});

}  // namespace haarmoments
