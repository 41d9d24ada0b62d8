#include "catk/halpern.hpp"

#include <cmath>
#include <cstdio>

namespace catk {

IterationTrace iterate(const ModelPoint& u, const NonexpansiveMap& T,
                       const ModuliSchedule& s, std::uint64_t N,
                       const IterateOptions& opt) {
  const ConvexBall& ball = T.ball();
  if (!ball.contains(u)) throw DomainError("start point outside the ball");
  const Curvature& c = ball.curv;

  IterationTrace tr;
  tr.u = u;
  tr.curv = c;
  tr.points_complete = (N + 1 <= opt.store_points_cap);
  if (tr.points_complete) tr.points.reserve(N + 1);
  tr.lambda_next.reserve(N);
  tr.step_dist.reserve(N);
  tr.map_dist.reserve(N + 1);

  std::optional<ModelPoint> fix;
  if (opt.track_fixed_point) {
    try {
      fix = T.fixed_point();
      tr.fix_dist.reserve(N + 1);
    } catch (const UnsupportedAnalysisError&) {
    }
  }

  ModelPoint x = u;
  for (std::uint64_t n = 0;; ++n) {
    const ModelPoint tx = T.apply(x);
    tr.map_dist.push_back(distance(x, tx, c));
    if (fix) tr.fix_dist.push_back(distance(x, *fix, c));
    if (tr.points_complete) tr.points.push_back(x);
    if (n == N) {
      tr.last = x;
      break;
    }
    const double lam = s.lambda(n + 1);
    if (!(lam >= 0.0 && lam <= 1.0)) throw ContractError("lambda_n outside [0,1]");
    ModelPoint next = geodesic_point(u, tx, 1.0 - lam, c);
    tr.lambda_next.push_back(lam);
    tr.step_dist.push_back(distance(x, next, c));
    x = std::move(next);
  }
  return tr;
}

std::pair<std::vector<double>, std::vector<double>>
regularity_indices(const IterationTrace& tr, const NonexpansiveMap& T) {
  if (tr.length() == 0) throw ContractError("empty trace");
  if (!tr.points_complete) return {tr.step_dist, tr.map_dist};
  std::vector<double> step, map;
  map.reserve(tr.points.size());
  step.reserve(tr.points.size() - 1);
  for (std::size_t n = 0; n < tr.points.size(); ++n) {
    map.push_back(distance(tr.points[n], T.apply(tr.points[n]), tr.curv));
    if (n + 1 < tr.points.size())
      step.push_back(distance(tr.points[n], tr.points[n + 1], tr.curv));
  }
  return {std::move(step), std::move(map)};
}

double check_recurrence(const IterationTrace& tr, const ModuliSchedule& s, double M,
                        const Curvature& c) {
  if (tr.step_dist.size() < 2) throw ContractError("trace too short for the recurrence");
  double worst = -std::numeric_limits<double>::infinity();
  // step_dist[n] = d(x_n, x_{n+1}); recurrence for n >= 1:
  // d(x_n,x_{n+1}) <= (1-mu_{n+1}) d(x_{n-1},x_n) + M |lambda_{n+1}-lambda_n|.
  for (std::size_t n = 1; n < tr.step_dist.size(); ++n) {
    const double lhs = tr.step_dist[n];
    const double m = mu(s, n + 1, M, c);
    const double rhs = (1.0 - m) * tr.step_dist[n - 1] +
                       M * std::abs(tr.lambda_next[n] - tr.lambda_next[n - 1]);
    worst = std::max(worst, lhs - rhs);
  }
  return worst;
}

std::optional<std::uint64_t> first_stable_index(std::span<const double> seq, double eps) {
  if (!(eps > 0.0)) throw ContractError("epsilon must be positive");
  if (seq.empty()) return std::nullopt;
  // Scan from the back: the answer is one past the last entry above eps.
  std::size_t i = seq.size();
  while (i > 0 && seq[i - 1] <= eps) --i;
  if (i == seq.size()) return std::nullopt;
  return static_cast<std::uint64_t>(i);
}

void write_trace_csv(std::ostream& os, const IterationTrace& tr) {
  os << "# catk halpern trace v1\n";
  os << "n,lambda_next,d_step,d_map,d_fix\n";
  char buf[128];
  for (std::size_t n = 0; n < tr.length(); ++n) {
    const double lam = n < tr.lambda_next.size() ? tr.lambda_next[n] : std::nan("");
    const double st = n < tr.step_dist.size() ? tr.step_dist[n] : std::nan("");
    const double fx = n < tr.fix_dist.size() ? tr.fix_dist[n] : std::nan("");
    std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g,%.17g,%.17g\n", n, lam, st,
                  tr.map_dist[n], fx);
    os << buf;
  }
}

} // namespace catk
