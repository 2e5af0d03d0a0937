#pragma once

#include <cstdint>
#include <functional>

#include "qimet/correspondence.hpp"

namespace qimet::search {

/// Hard cap on exact enumeration size (number of configurations).
inline constexpr std::uint64_t kDefaultMaxEvals = 100'000'000ULL;

/// Subset enumeration is limited to 2^25 grid cells.
inline constexpr std::size_t kMaxSubsetCells = 25;

struct SearchBudget {
  std::uint64_t max_evaluations = 10'000;  // per restart
  int restarts = 8;
  std::uint64_t rng_seed = 0;
  double initial_temperature = 1.0;
  double cooling_rate = 0.995;

  void validate() const;
};

template <typename Witness>
struct SearchResult {
  double best_value = 0.0;
  Witness best_witness{};
  std::uint64_t evaluations_used = 0;
  bool certified_exact = false;
};

/// Number of map pairs nY^nX * nX^nY, saturating at uint64 max.
std::uint64_t map_pair_count(std::size_t nX, std::size_t nY);

using MapPairScore = std::function<double(const MapPair&)>;
using CorrespondenceScore = std::function<double(const Correspondence&)>;

/// Exact minimum of score over all map pairs. The configuration space is
/// partitioned into disjoint index ranges evaluated concurrently; the score
/// must be pure. Ties resolve to the first configuration in enumeration
/// order regardless of thread count. Throws BudgetExceeded when the pair
/// count exceeds cap.
SearchResult<MapPair> enumerate_map_pairs(std::size_t nX, std::size_t nY,
                                          const MapPairScore& score,
                                          std::uint64_t cap = kDefaultMaxEvals,
                                          int threads = 1);

/// Exact minimum of score over all correspondences (subsets of the index
/// grid with surjective projections). evaluations_used counts the valid
/// correspondences visited. Throws BudgetExceeded when nX*nY exceeds
/// max_cells.
SearchResult<Correspondence> enumerate_correspondences(
    std::size_t nX, std::size_t nY, const CorrespondenceScore& score,
    std::size_t max_cells = kMaxSubsetCells);

/// Simulated annealing over map pairs. Moves reassign a single image point
/// chosen uniformly; acceptance follows the Metropolis rule under geometric
/// cooling. Restarts use independent seeds derived from rng_seed and reduce
/// by associative min in restart order, so results are bitwise reproducible
/// for a fixed seed at any thread count.
SearchResult<MapPair> local_search_map_pairs(std::size_t nX, std::size_t nY,
                                             const MapPairScore& score,
                                             const SearchBudget& budget,
                                             int threads = 1);

}  // namespace qimet::search
