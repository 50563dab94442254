// Copyright 2026 The offeropt Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OFFEROPT_HEAPSET_HPP_
#define OFFEROPT_HEAPSET_HPP_

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "offeropt/model.hpp"

namespace offeropt {

struct HeapEntry {
  double key = 0.0;  // expected revenue of this subscriber under the queue's offer
  SubscriberId id = 0;

  bool operator==(const HeapEntry&) const = default;
};

// Strict "ranks before" order inside one queue: larger key first, then the
// lower subscriber id.
inline bool ranks_before(const HeapEntry& a, const HeapEntry& b) {
  return a.key > b.key || (a.key == b.key && a.id < b.id);
}

struct Choice {
  SubscriberId subscriber = 0;
  OfferIndex offer = 0;
  double key = 0.0;

  bool operator==(const Choice&) const = default;
};

// How find_max_of_max picks among the queue fronts.
enum class RootSelection {
  kLinearScan,  // O(k) scan over the root list
  kRootHeap,    // O(log k) indexed heap over the roots
};

// k array-backed binary max-heaps (one per offer type) over the same n
// subscribers, a root list holding each queue's front, and an n x k position
// table so a subscriber can be removed from every queue in O(k log n).
//
// Tie order across queues is (key desc, offer asc, subscriber asc).
// Single owner; not safe for concurrent mutation.
class HeapSet {
 public:
  static constexpr std::uint32_t kAbsent = std::numeric_limits<std::uint32_t>::max();

  // Parallel construction (OpenMP when available). Validates every input up
  // front and throws std::domain_error on bad parameters.
  static HeapSet build(std::span<const Subscriber> subscribers,
                       const OfferCatalog& catalog,
                       RootSelection selection = RootSelection::kLinearScan);

  // Serial reference construction. Produces a HeapSet identical to build().
  static HeapSet build_serial(std::span<const Subscriber> subscribers,
                              const OfferCatalog& catalog,
                              RootSelection selection = RootSelection::kLinearScan);

  std::size_t num_subscribers() const { return num_subscribers_; }
  std::size_t num_queues() const { return queues_.size(); }
  std::size_t live_subscribers() const { return live_subscribers_; }
  RootSelection root_selection() const { return selection_; }

  bool is_live(OfferIndex j) const { return live_queue_.at(j); }
  bool contains(SubscriberId i) const { return !deleted_.at(i); }
  std::size_t queue_size(OfferIndex j) const { return queues_.at(j).size(); }
  std::span<const HeapEntry> queue(OfferIndex j) const { return queues_.at(j); }

  // Front of Q_j from the root list; empty for empty or deleted queues.
  std::optional<HeapEntry> root(OfferIndex j) const;

  // Position of subscriber i in Q_j, or kAbsent.
  std::uint32_t position(SubscriberId i, OfferIndex j) const {
    return lookup_[static_cast<std::size_t>(i) * queues_.size() + j];
  }

  bool has_candidates() const;

  // Throws std::logic_error if every queue is empty or deleted.
  Choice find_max_of_max() const;

  // Throws std::invalid_argument if i is unknown or already deleted.
  void delete_subscriber(SubscriberId i);

  // Throws std::invalid_argument if j is unknown or already deleted.
  void delete_queue(OfferIndex j);

  // Empty when the heap order, position table and root list are all
  // consistent; otherwise a description of the first violation.
  std::string check_invariants() const;

 private:
  HeapSet(std::size_t n, std::size_t k, RootSelection selection);

  void finish_build();
  void heapify_queue(OfferIndex j);
  void sift_up(OfferIndex j, std::uint32_t pos);
  void sift_down(OfferIndex j, std::uint32_t pos);
  void remove_at(OfferIndex j, std::uint32_t pos);
  void refresh_root(OfferIndex j);

  // Root-heap helpers (kRootHeap only).
  bool root_before(OfferIndex a, OfferIndex b) const;
  void root_heap_fix(OfferIndex j);
  void root_heap_erase(OfferIndex j);
  void root_heap_swap(std::uint32_t a, std::uint32_t b);

  std::size_t num_subscribers_ = 0;
  std::size_t live_subscribers_ = 0;
  RootSelection selection_ = RootSelection::kLinearScan;

  std::vector<std::vector<HeapEntry>> queues_;
  std::vector<bool> live_queue_;
  std::vector<bool> deleted_;
  std::vector<std::uint32_t> lookup_;  // row-major n x k
  std::vector<HeapEntry> roots_;       // id == kAbsent marks no front

  std::vector<OfferIndex> root_heap_;
  std::vector<std::uint32_t> root_heap_pos_;
};

}  // namespace offeropt

#endif  // OFFEROPT_HEAPSET_HPP_
