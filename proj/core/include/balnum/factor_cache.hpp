#pragma once

#include <future>
#include <map>
#include <mutex>
#include <vector>

#include "balnum/factor.hpp"
#include "balnum/seq.hpp"

namespace balnum {

// Thread-safe memo of balancing-number factorizations, keyed by index.
// Concurrent callers asking for the same index share a single computation.
class FactorCache {
 public:
  // Returns the cached factorization of B_index, computing it (and the
  // term itself) on a miss. A cached Partial result is recomputed rather
  // than trusted: a different budget might finish the job.
  Factorization get_or_compute(SeqIndex index, const FactorBudget& budget);

  // Seeds the cache, e.g. from a cache file. Partial entries are ignored.
  void insert(SeqIndex index, Factorization f);

  // Snapshot of all settled entries, ascending by index.
  std::vector<std::pair<SeqIndex, Factorization>> snapshot() const;

 private:
  mutable std::mutex mu_;
  std::map<SeqIndex, std::shared_future<Factorization>> slots_;
};

}  // namespace balnum
