#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "catk/domain.hpp"
#include "catk/schedule.hpp"

namespace catk {

struct IterateOptions {
  /// Full point storage up to this many points; longer runs stream and keep
  /// only the scalar index sequences plus the final point.
  std::uint64_t store_points_cap = 2'000'000;
  /// Also record d(x_n, fixed point) when the map's fixed point is known.
  bool track_fixed_point = true;
};

/// Halpern iteration trace: x_0 = u, x_{n+1} = lambda_{n+1} u + (1-lambda_{n+1}) T x_n,
/// realized as geodesic_point(u, T x_n, 1 - lambda_{n+1}).
struct IterationTrace {
  ModelPoint u;
  Curvature curv;
  std::vector<ModelPoint> points; ///< x_0..x_N when complete
  bool points_complete = false;
  std::vector<double> lambda_next; ///< lambda_{n+1} for n = 0..N-1
  std::vector<double> step_dist;   ///< d(x_n, x_{n+1}) for n = 0..N-1
  std::vector<double> map_dist;    ///< d(x_n, T x_n)  for n = 0..N
  std::vector<double> fix_dist;    ///< d(x_n, fix)    for n = 0..N (may be empty)
  ModelPoint last;                 ///< x_N

  std::uint64_t length() const { return map_dist.size(); } ///< N+1
};

IterationTrace iterate(const ModelPoint& u, const NonexpansiveMap& T,
                       const ModuliSchedule& s, std::uint64_t N,
                       const IterateOptions& opt = {});

/// The sequences (d(x_n, x_{n+1}))_n and (d(x_n, T x_n))_n. Recomputed from the
/// stored points when available, otherwise the streamed values are returned.
std::pair<std::vector<double>, std::vector<double>>
regularity_indices(const IterationTrace& tr, const NonexpansiveMap& T);

/// Max over n >= 1 of d(x_n,x_{n+1}) - [(1-mu_{n+1}) d(x_{n-1},x_n) + M|lambda_{n+1}-lambda_n|].
/// Nonpositive (within tolerance) certifies the one-step recurrence on the trace.
double check_recurrence(const IterationTrace& tr, const ModuliSchedule& s, double M,
                        const Curvature& c);

/// Smallest n such that every later entry of the available sequence is <= eps.
std::optional<std::uint64_t> first_stable_index(std::span<const double> seq, double eps);

/// CSV export: columns n, lambda_{n+1}, d(x_n,x_{n+1}), d(x_n,Tx_n), d(x_n,fix).
void write_trace_csv(std::ostream& os, const IterationTrace& tr);

} // namespace catk
