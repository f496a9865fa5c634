#include "degx/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "degx/common.hpp"

namespace degx {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule
// (QUADPACK dqk15 constants).
constexpr double kXgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691,
    0.7415311855993944, 0.5860872354676911, 0.4058451513773972,
    0.2077849550078985, 0.0};
constexpr double kWgk[8] = {
    0.0229353220105292, 0.0630920926299786, 0.1047900103222502,
    0.1406532597155259, 0.1690047266392679, 0.1903505780647854,
    0.2044329400752989, 0.2094821410847278};
constexpr double kWg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189,
    0.4179591836734694};

struct Panel {
  double lo, hi, value, err;
  long id;  // tie-break for a deterministic heap order
  bool operator<(const Panel& o) const {
    return err < o.err || (err == o.err && id > o.id);
  }
};

Panel eval_panel(const std::function<double(double)>& f, double lo, double hi, long id) {
  const double c = 0.5 * (lo + hi);
  const double h = 0.5 * (hi - lo);
  double gk = kWgk[7] * f(c);
  double g = kWg[3] * f(c);
  for (int i = 0; i < 7; ++i) {
    const double d = h * kXgk[i];
    const double fsum = f(c - d) + f(c + d);
    gk += kWgk[i] * fsum;
    if (i % 2 == 1) g += kWg[i / 2] * fsum;
  }
  gk *= h;
  g *= h;
  return Panel{lo, hi, gk, std::fabs(gk - g), id};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f,
                              double lo, double hi,
                              double rel_tol, double abs_tol,
                              const std::vector<double>& split_points,
                              int max_panels) {
  if (!(lo < hi)) throw std::domain_error("integrate_adaptive: requires lo < hi");
  std::vector<double> edges{lo};
  for (double s : split_points)
    if (s > lo && s < hi) edges.push_back(s);
  edges.push_back(hi);
  std::sort(edges.begin(), edges.end());

  std::priority_queue<Panel> heap;
  long next_id = 0;
  double total = 0.0, total_err = 0.0;
  for (size_t i = 0; i + 1 < edges.size(); ++i) {
    Panel p = eval_panel(f, edges[i], edges[i + 1], next_id++);
    total += p.value;
    total_err += p.err;
    heap.push(p);
  }
  int panels = static_cast<int>(heap.size());
  while (total_err > std::max(abs_tol, rel_tol * std::fabs(total))) {
    if (panels >= max_panels)
      throw NumericalError("integrate_adaptive: error target not met within panel budget");
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi)
      throw NumericalError("integrate_adaptive: panel underflow before meeting tolerance");
    Panel left = eval_panel(f, worst.lo, mid, next_id++);
    Panel right = eval_panel(f, mid, worst.hi, next_id++);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
    ++panels;
  }
  return QuadResult{total, total_err, panels};
}

}  // namespace degx
