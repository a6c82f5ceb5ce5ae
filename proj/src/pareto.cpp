#include "latesched/pareto.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace latesched {
namespace {

bool best_less(const Candidate& a, const Candidate& b) {
  if (a.objective != b.objective) return a.objective < b.objective;
  if (a.finish != b.finish) return a.finish < b.finish;
  return a.order < b.order;
}

}  // namespace

bool canonical_less(const Candidate& a, const Candidate& b) {
  if (a.finish != b.finish) return a.finish < b.finish;
  if (a.objective != b.objective) return a.objective < b.objective;
  return a.order < b.order;
}

ParetoFrontier pareto_filter(std::vector<Candidate> candidates) {
  std::sort(candidates.begin(), candidates.end(), canonical_less);

  // Within a run of equal finish only the lowest objective can survive, and
  // it survives iff every earlier (strictly smaller finish) item has a
  // strictly larger objective.
  ParetoFrontier out;
  double best_before = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  while (i < candidates.size()) {
    std::size_t run_end = i;
    while (run_end < candidates.size() &&
           candidates[run_end].finish == candidates[i].finish) {
      ++run_end;
    }
    const double run_min = candidates[i].objective;
    if (run_min < best_before) {
      for (std::size_t k = i; k < run_end && candidates[k].objective == run_min; ++k) {
        out.items.push_back(std::move(candidates[k]));
      }
      best_before = run_min;
    }
    i = run_end;
  }
  return out;
}

std::vector<std::size_t> thin_selection(const std::vector<Candidate>& items,
                                        std::size_t max_kept, ThinOptions options) {
  return thin_indices(
      items.size(), max_kept,
      [&](std::size_t a, std::size_t b) { return canonical_less(items[a], items[b]); },
      [&](std::size_t a, std::size_t b) { return best_less(items[a], items[b]); }, options);
}

std::vector<Candidate> thin_candidates(std::vector<Candidate> items,
                                       std::size_t max_kept,
                                       ThinOptions options) {
  const std::vector<std::size_t> picks = thin_selection(items, max_kept, options);
  std::vector<Candidate> out;
  out.reserve(picks.size());
  for (std::size_t idx : picks) out.push_back(std::move(items[idx]));
  return out;
}

ParetoFrontier thin(ParetoFrontier frontier, std::size_t max_kept,
                    ThinOptions options) {
  return {thin_candidates(std::move(frontier.items), max_kept, options)};
}

}  // namespace latesched
