#include "balnum/factor_cache.hpp"

namespace balnum {

Factorization FactorCache::get_or_compute(SeqIndex index,
                                          const FactorBudget& budget) {
  for (int pass = 0; pass < 2; ++pass) {
    std::shared_future<Factorization> slot;
    std::packaged_task<Factorization()> task;
    bool runner = false;
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = slots_.find(index);
      if (it != slots_.end()) {
        slot = it->second;
      } else {
        task = std::packaged_task<Factorization()>(
            [index, budget] { return factorize(balancing(index), budget); });
        slot = task.get_future().share();
        slots_.emplace(index, slot);
        runner = true;
      }
    }
    if (runner) task();  // outside the lock; same-index callers wait on slot
    Factorization got = slot.get();
    if (got.complete() || runner) return got;

    // A pre-existing Partial entry: drop it if still settled-partial and try
    // once more under this caller's budget.
    std::lock_guard<std::mutex> lock(mu_);
    auto it = slots_.find(index);
    if (it != slots_.end() &&
        it->second.wait_for(std::chrono::seconds(0)) ==
            std::future_status::ready &&
        !it->second.get().complete()) {
      slots_.erase(it);
    }
  }
  return factorize(balancing(index), budget);
}

void FactorCache::insert(SeqIndex index, Factorization f) {
  if (!f.complete()) return;
  std::promise<Factorization> p;
  p.set_value(std::move(f));
  std::lock_guard<std::mutex> lock(mu_);
  slots_.insert_or_assign(index, p.get_future().share());
}

std::vector<std::pair<SeqIndex, Factorization>> FactorCache::snapshot() const {
  std::vector<std::pair<SeqIndex, Factorization>> out;
  std::lock_guard<std::mutex> lock(mu_);
  for (const auto& [idx, fut] : slots_) {
    if (fut.valid() &&
        fut.wait_for(std::chrono::seconds(0)) == std::future_status::ready) {
      try {
        out.emplace_back(idx, fut.get());
      } catch (...) {
        // poisoned slot (the computation threw); not part of the snapshot
      }
    }
  }
  return out;
}

}  // namespace balnum
