#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace proxkit {

/// Execution policy for the data-parallel kernels. `Serial` is the reference
/// implementation kept for testing; `Parallel` uses OpenMP when compiled in
/// and falls back to the serial path otherwise. Both produce bitwise
/// identical results: reductions are min/max with a total tie order, and all
/// per-element work is independent.
enum class Exec { Serial, Parallel };

inline Exec default_exec() { return Exec::Parallel; }

/// out[i] = fn(i) for i in [0, n).
template <class F>
void map_index(std::size_t n, double* out, F&& fn, Exec exec = default_exec()) {
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < std::int64_t(n); ++i) out[i] = fn(std::size_t(i));
    return;
#endif
  }
  for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
}

struct MinLoc {
  double value = std::numeric_limits<double>::infinity();
  std::size_t index = 0;
};

inline bool better_min(double v, std::size_t i, const MinLoc& best) {
  return v < best.value || (v == best.value && i < best.index);
}

/// Minimum with smallest-index tie-break; +inf entries never win unless all
/// entries are +inf.
inline MinLoc reduce_min(std::span<const double> buf, Exec exec = default_exec()) {
  MinLoc best;
  const std::size_t n = buf.size();
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
    std::vector<MinLoc> locals;
#pragma omp parallel
    {
#pragma omp single
      locals.assign(std::size_t(omp_get_num_threads()), MinLoc{});
      MinLoc mine;
#pragma omp for schedule(static) nowait
      for (std::int64_t i = 0; i < std::int64_t(n); ++i)
        if (better_min(buf[i], std::size_t(i), mine)) mine = {buf[std::size_t(i)], std::size_t(i)};
      locals[std::size_t(omp_get_thread_num())] = mine;
    }
    for (const MinLoc& m : locals)
      if (better_min(m.value, m.index, best)) best = m;
    return best;
#endif
  }
  for (std::size_t i = 0; i < n; ++i)
    if (better_min(buf[i], i, best)) best = {buf[i], i};
  return best;
}

inline MinLoc reduce_max(std::span<const double> buf, Exec exec = default_exec()) {
  std::vector<double> neg(buf.size());
  map_index(buf.size(), neg.data(), [&](std::size_t i) { return -buf[i]; }, exec);
  MinLoc m = reduce_min(neg, exec);
  m.value = -m.value;
  return m;
}

struct PairReduction {
  double worst = std::numeric_limits<double>::infinity();  // most negative margin
  std::size_t a = 0;
  std::size_t b = 0;
  std::size_t evaluated = 0;
  std::size_t violations = 0;
};

/// Reduces margin(a, b) over the rectangle [0,A) x [0,B). Tracks the most
/// negative margin with lexicographic (a, b) tie-break and counts entries
/// where violation(a, b) reported true. Deterministic for any thread count.
template <class MarginFn, class ViolFn>
PairReduction reduce_pairs(std::size_t A, std::size_t B, MarginFn&& margin, ViolFn&& violation,
                           Exec exec = default_exec()) {
  PairReduction out;
  out.evaluated = A * B;
  auto better = [](double v, std::size_t a, std::size_t b, const PairReduction& best) {
    if (v < best.worst) return true;
    if (v > best.worst) return false;
    if (a < best.a) return true;
    if (a > best.a) return false;
    return b < best.b;
  };
  const std::size_t total = A * B;
  if (total == 0) return out;
  if (exec == Exec::Parallel) {
#ifdef _OPENMP
    std::vector<PairReduction> locals;
#pragma omp parallel
    {
#pragma omp single
      locals.assign(std::size_t(omp_get_num_threads()), PairReduction{});
      PairReduction mine;
      mine.worst = std::numeric_limits<double>::infinity();
#pragma omp for schedule(static) nowait
      for (std::int64_t t = 0; t < std::int64_t(total); ++t) {
        std::size_t a = std::size_t(t) / B, b = std::size_t(t) % B;
        double m = margin(a, b);
        if (violation(a, b, m)) ++mine.violations;
        if (better(m, a, b, mine)) {
          mine.worst = m;
          mine.a = a;
          mine.b = b;
        }
      }
      locals[std::size_t(omp_get_thread_num())] = mine;
    }
    for (const PairReduction& m : locals) {
      out.violations += m.violations;
      if (better(m.worst, m.a, m.b, out)) {
        out.worst = m.worst;
        out.a = m.a;
        out.b = m.b;
      }
    }
    return out;
#endif
  }
  for (std::size_t a = 0; a < A; ++a) {
    for (std::size_t b = 0; b < B; ++b) {
      double m = margin(a, b);
      if (violation(a, b, m)) ++out.violations;
      if (better(m, a, b, out)) {
        out.worst = m;
        out.a = a;
        out.b = b;
      }
    }
  }
  return out;
}

/// Maximum of value(k) over an index list, smallest-index ties.
template <class ValueFn>
MinLoc reduce_max_indexed(std::size_t n, ValueFn&& value, Exec exec = default_exec()) {
  std::vector<double> buf(n);
  map_index(n, buf.data(), [&](std::size_t i) { return -value(i); }, exec);
  MinLoc m = reduce_min(buf, exec);
  m.value = -m.value;
  return m;
}

}  // namespace proxkit
