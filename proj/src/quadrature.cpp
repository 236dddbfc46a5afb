#include "haarmoments/quadrature.hpp"

#include "haarmoments/errors.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>

namespace haarmoments {

namespace {

// Kronrod nodes; odd indices are the 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a = 0.0;
  double b = 0.0;
  std::vector<Complex> value;
  double error = 0.0;
};

struct ByError {
  bool operator()(const Panel& x, const Panel& y) const { return x.error < y.error; }
};

Panel evaluate(const VectorIntegrand& f, std::size_t n, double a, double b,
               std::vector<Complex>& scratch) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  std::vector<Complex> kronrod(n, 0.0);
  std::vector<Complex> gauss(n, 0.0);

  f(center, scratch);
  for (std::size_t i = 0; i < n; ++i) {
    kronrod[i] += kWgk[7] * scratch[i];
    gauss[i] += kWg[3] * scratch[i];
  }
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    for (double x : {center - dx, center + dx}) {
      f(x, scratch);
      for (std::size_t i = 0; i < n; ++i) {
        kronrod[i] += kWgk[j] * scratch[i];
        if (j % 2 == 1) gauss[i] += kWg[j / 2] * scratch[i];
      }
    }
  }
  Panel p{a, b, std::move(kronrod), 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    p.value[i] *= half;
    p.error = std::max(p.error, std::abs(p.value[i] - half * gauss[i]));
  }
  return p;
}

}  // namespace

std::vector<Complex> integrate(const VectorIntegrand& f, std::size_t n, double a, double b,
                               const QuadratureOptions& opts) {
  if (!(b > a)) throw DomainError("integrate: empty interval");
  if (opts.initial_panels < 1 || opts.max_panels < opts.initial_panels) {
    throw DomainError("integrate: bad panel limits");
  }
  std::vector<Complex> scratch(n);
  std::priority_queue<Panel, std::vector<Panel>, ByError> queue;
  std::vector<Complex> total(n, 0.0);
  double error = 0.0;

  const double width = (b - a) / opts.initial_panels;
  for (int k = 0; k < opts.initial_panels; ++k) {
    const double lo = a + k * width;
    const double hi = k + 1 == opts.initial_panels ? b : lo + width;
    Panel p = evaluate(f, n, lo, hi, scratch);
    for (std::size_t i = 0; i < n; ++i) total[i] += p.value[i];
    error += p.error;
    queue.push(std::move(p));
  }

  auto tolerance = [&] {
    double scale = 0.0;
    for (const Complex& v : total) scale = std::max(scale, std::abs(v));
    return std::max(opts.rel_tol * scale, opts.abs_tol);
  };

  int panels = opts.initial_panels;
  while (error > tolerance()) {
    if (panels >= opts.max_panels) {
      throw QuadratureError("integrate: tolerance " + std::to_string(opts.rel_tol) +
                            " not reached with " + std::to_string(opts.max_panels) +
                            " panels (estimated error " + std::to_string(error) + ")");
    }
    Panel worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate(f, n, worst.a, mid, scratch);
    Panel right = evaluate(f, n, mid, worst.b, scratch);
    for (std::size_t i = 0; i < n; ++i) total[i] += left.value[i] + right.value[i] - worst.value[i];
    error += left.error + right.error - worst.error;
    queue.push(std::move(left));
    queue.push(std::move(right));
    ++panels;
  }

  // Re-sum from the panels so the result does not carry update roundoff.
  std::fill(total.begin(), total.end(), Complex(0.0));
  std::vector<Panel> all;
  all.reserve(queue.size());
  while (!queue.empty()) {
    all.push_back(queue.top());
    queue.pop();
  }
  std::sort(all.begin(), all.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  for (const Panel& p : all) {
    for (std::size_t i = 0; i < n; ++i) total[i] += p.value[i];
  }
  return total;
}

}  // namespace haarmoments
