#include "qimet/search.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <thread>
#include <vector>

#include "qimet/rng.hpp"

namespace qimet::search {

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t saturating_pow(std::uint64_t base, std::size_t exp) {
  unsigned __int128 acc = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    acc *= base;
    if (acc > kSaturated) return kSaturated;
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  return p > kSaturated ? kSaturated : static_cast<std::uint64_t>(p);
}

// Mixed-radix decoding of a linear index: f digits (base nY) first, then
// g digits (base nX).
void decode_map_pair(std::uint64_t idx, std::size_t nX, std::size_t nY, MapPair& mp) {
  for (std::size_t i = 0; i < nX; ++i) {
    mp.f[i] = static_cast<std::uint32_t>(idx % nY);
    idx /= nY;
  }
  for (std::size_t j = 0; j < nY; ++j) {
    mp.g[j] = static_cast<std::uint32_t>(idx % nX);
    idx /= nX;
  }
}

void increment_map_pair(MapPair& mp, std::size_t nX, std::size_t nY) {
  for (std::size_t i = 0; i < nX; ++i) {
    if (++mp.f[i] < nY) return;
    mp.f[i] = 0;
  }
  for (std::size_t j = 0; j < nY; ++j) {
    if (++mp.g[j] < nX) return;
    mp.g[j] = 0;
  }
}

struct RangeBest {
  double value = std::numeric_limits<double>::infinity();
  std::uint64_t index = 0;
};

RangeBest scan_map_pair_range(std::uint64_t begin, std::uint64_t end, std::size_t nX,
                              std::size_t nY, const MapPairScore& score) {
  MapPair mp;
  mp.f.resize(nX);
  mp.g.resize(nY);
  decode_map_pair(begin, nX, nY, mp);
  RangeBest best;
  for (std::uint64_t idx = begin; idx < end; ++idx) {
    const double v = score(mp);
    if (v < best.value) {
      best.value = v;
      best.index = idx;
    }
    increment_map_pair(mp, nX, nY);
  }
  return best;
}

int resolve_threads(int threads, std::uint64_t work) {
  if (threads <= 1) return 1;
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto cap = static_cast<std::uint64_t>(std::min<unsigned>(threads, hw));
  return static_cast<int>(std::min<std::uint64_t>(cap, std::max<std::uint64_t>(1, work / 1024)));
}

}  // namespace

void SearchBudget::validate() const {
  if (max_evaluations < 1) throw BadParams("budget needs max_evaluations >= 1");
  if (restarts < 1) throw BadParams("budget needs restarts >= 1");
  if (!(cooling_rate > 0.0 && cooling_rate < 1.0))
    throw BadParams("cooling rate must lie in (0,1)");
  if (!(initial_temperature > 0.0)) throw BadParams("initial temperature must be positive");
}

std::uint64_t map_pair_count(std::size_t nX, std::size_t nY) {
  return saturating_mul(saturating_pow(nY, nX), saturating_pow(nX, nY));
}

SearchResult<MapPair> enumerate_map_pairs(std::size_t nX, std::size_t nY,
                                          const MapPairScore& score,
                                          std::uint64_t cap, int threads) {
  if (nX == 0 || nY == 0) throw BadParams("enumeration needs nonempty spaces");
  const std::uint64_t total = map_pair_count(nX, nY);
  if (total > cap) throw BudgetExceeded(total, cap);

  const int workers = resolve_threads(threads, total);
  RangeBest best;
  if (workers == 1) {
    best = scan_map_pair_range(0, total, nX, nY, score);
  } else {
    std::vector<std::future<RangeBest>> parts;
    parts.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      const std::uint64_t lo = total * t / workers;
      const std::uint64_t hi = total * (t + 1) / workers;
      parts.push_back(std::async(std::launch::async, scan_map_pair_range, lo, hi,
                                 nX, nY, std::cref(score)));
    }
    // Reduce in range order with strict <, matching the sequential scan's
    // first-minimum tie breaking.
    for (auto& part : parts) {
      const RangeBest r = part.get();
      if (r.value < best.value) best = r;
    }
  }

  SearchResult<MapPair> result;
  result.best_value = best.value;
  result.best_witness.f.resize(nX);
  result.best_witness.g.resize(nY);
  decode_map_pair(best.index, nX, nY, result.best_witness);
  result.evaluations_used = total;
  result.certified_exact = true;
  return result;
}

SearchResult<Correspondence> enumerate_correspondences(std::size_t nX, std::size_t nY,
                                                       const CorrespondenceScore& score,
                                                       std::size_t max_cells) {
  if (nX == 0 || nY == 0) throw BadParams("enumeration needs nonempty spaces");
  const std::size_t cells = nX * nY;
  if (cells > max_cells)
    throw BudgetExceeded(saturating_pow(2, cells), saturating_pow(2, max_cells));

  const std::uint32_t row_width = static_cast<std::uint32_t>(nY);

  double best_value = std::numeric_limits<double>::infinity();
  std::uint32_t best_mask = 0;
  std::uint64_t visited = 0;

  std::vector<IndexPair> pairs;
  pairs.reserve(cells);
  const std::uint32_t end_mask = static_cast<std::uint32_t>((std::uint64_t{1} << cells) - 1);
  for (std::uint32_t mask = 1;; ++mask) {
    // Cell i*nY + j set <=> (i, j) in the subset.
    bool valid = true;
    for (std::size_t i = 0; i < nX && valid; ++i) {
      const std::uint32_t row = (mask >> (i * row_width)) & ((1u << row_width) - 1);
      valid = row != 0;
    }
    if (valid)
      for (std::size_t j = 0; j < nY && valid; ++j) {
        bool hit = false;
        for (std::size_t i = 0; i < nX && !hit; ++i)
          hit = (mask >> (i * row_width + j)) & 1u;
        valid = hit;
      }
    if (valid) {
      pairs.clear();
      for (std::uint32_t i = 0; i < nX; ++i)
        for (std::uint32_t j = 0; j < nY; ++j)
          if ((mask >> (i * row_width + j)) & 1u) pairs.push_back({i, j});
      const double v = score(Correspondence::from_pairs(nX, nY, pairs));
      ++visited;
      if (v < best_value) {
        best_value = v;
        best_mask = mask;
      }
    }
    if (mask == end_mask) break;
  }

  pairs.clear();
  for (std::uint32_t i = 0; i < nX; ++i)
    for (std::uint32_t j = 0; j < nY; ++j)
      if ((best_mask >> (i * row_width + j)) & 1u) pairs.push_back({i, j});

  SearchResult<Correspondence> result{
      best_value, Correspondence::from_pairs(nX, nY, std::move(pairs)), visited, true};
  return result;
}

namespace {

struct RestartOutcome {
  double value = std::numeric_limits<double>::infinity();
  MapPair witness;
};

RestartOutcome anneal_once(std::uint64_t seed, std::size_t nX, std::size_t nY,
                           const MapPairScore& score, const SearchBudget& budget) {
  SplitMix64 rng(seed);
  MapPair mp;
  mp.f.resize(nX);
  mp.g.resize(nY);
  for (auto& v : mp.f) v = static_cast<std::uint32_t>(rng.below(nY));
  for (auto& v : mp.g) v = static_cast<std::uint32_t>(rng.below(nX));

  double current = score(mp);
  RestartOutcome out{current, mp};
  double temperature = budget.initial_temperature;

  for (std::uint64_t eval = 1; eval < budget.max_evaluations; ++eval) {
    const std::size_t pos = rng.below(nX + nY);
    std::uint32_t* slot = pos < nX ? &mp.f[pos] : &mp.g[pos - nX];
    const std::uint32_t old = *slot;
    *slot = static_cast<std::uint32_t>(rng.below(pos < nX ? nY : nX));

    const double candidate = score(mp);
    const double delta = candidate - current;
    const bool accept =
        delta <= 0.0 || rng.uniform() < std::exp(-delta / std::max(temperature, 1e-300));
    if (accept) {
      current = candidate;
      if (current < out.value) {
        out.value = current;
        out.witness = mp;
      }
    } else {
      *slot = old;
    }
    temperature *= budget.cooling_rate;
  }
  return out;
}

}  // namespace

SearchResult<MapPair> local_search_map_pairs(std::size_t nX, std::size_t nY,
                                             const MapPairScore& score,
                                             const SearchBudget& budget, int threads) {
  if (nX == 0 || nY == 0) throw BadParams("search needs nonempty spaces");
  budget.validate();

  // Seeds fixed up front so the outcome does not depend on scheduling.
  SplitMix64 seeder(budget.rng_seed);
  std::vector<std::uint64_t> seeds(budget.restarts);
  for (auto& s : seeds) s = seeder.next();

  std::vector<RestartOutcome> outcomes(seeds.size());
  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(seeds.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < seeds.size(); ++i)
      outcomes[i] = anneal_once(seeds[i], nX, nY, score, budget);
  } else {
    for (std::size_t base = 0; base < seeds.size(); base += workers) {
      std::vector<std::future<RestartOutcome>> wave;
      for (std::size_t i = base; i < std::min(seeds.size(), base + workers); ++i)
        wave.push_back(std::async(std::launch::async, anneal_once, seeds[i], nX, nY,
                                  std::cref(score), std::cref(budget)));
      for (std::size_t i = 0; i < wave.size(); ++i) outcomes[base + i] = wave[i].get();
    }
  }

  SearchResult<MapPair> result;
  result.best_value = std::numeric_limits<double>::infinity();
  for (const auto& o : outcomes)
    if (o.value < result.best_value) {
      result.best_value = o.value;
      result.best_witness = o.witness;
    }
  result.evaluations_used = static_cast<std::uint64_t>(budget.restarts) * budget.max_evaluations;
  result.certified_exact = false;
  return result;
}

}  // namespace qimet::search
