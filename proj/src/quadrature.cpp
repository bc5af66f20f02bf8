#include "starkphase/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <queue>
#include <sstream>

#include "starkphase/errors.hpp"

namespace starkphase {
namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Gauss = boost::math::quadrature::gauss<double, 7>;

struct Panel {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Panel& other) const { return error < other.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
  // Boost stores the non-negative half of the symmetric node set; odd Kronrod
  // indices coincide with the Gauss nodes.
  const auto& xk = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  const double f0 = f(mid);
  double kronrod = f0 * wk[0];
  double gauss = f0 * wg[0];
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double sum = f(mid + half * xk[i]) + f(mid - half * xk[i]);
    kronrod += sum * wk[i];
    if (i % 2 == 0) gauss += sum * wg[i / 2];
  }
  kronrod *= half;
  gauss *= half;
  const double err = std::max(std::abs(kronrod - gauss),
                              4.0 * std::numeric_limits<double>::epsilon() * std::abs(kronrod));
  return {a, b, kronrod, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, int max_intervals) {
  if (a == b) return {0.0, 0.0, 0};
  if (!(abs_tol > 0.0)) throw InvalidArgument("integrate: abs_tol must be positive");

  std::priority_queue<Panel> panels;
  Panel first = evaluate_panel(f, a, b);
  double total = first.value;
  double total_err = first.error;
  panels.push(first);

  while (total_err > abs_tol) {
    if (static_cast<int>(panels.size()) >= max_intervals) {
      std::ostringstream msg;
      msg << "integrate: no convergence on [" << a << ", " << b << "], error estimate "
          << total_err << " > " << abs_tol;
      throw QuadratureError(msg.str());
    }
    Panel worst = panels.top();
    panels.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    Panel left = evaluate_panel(f, worst.a, mid);
    Panel right = evaluate_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    panels.push(left);
    panels.push(right);
  }

  // Re-sum to shed the drift from incremental updates.
  double value = 0.0;
  double error = 0.0;
  const int count = static_cast<int>(panels.size());
  while (!panels.empty()) {
    value += panels.top().value;
    error += panels.top().error;
    panels.pop();
  }
  return {value, error, count};
}

}  // namespace starkphase
