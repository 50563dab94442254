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

#include "offeropt/heapset.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

namespace offeropt {
namespace {

constexpr std::uint32_t parent_of(std::uint32_t pos) { return (pos - 1) / 2; }

// Floyd's bottom-up heap construction on a bare array.
void heapify(std::vector<HeapEntry>& q) {
  const std::size_t size = q.size();
  if (size < 2) return;
  for (std::size_t start = size / 2; start-- > 0;) {
    HeapEntry moving = q[start];
    std::size_t hole = start;
    for (;;) {
      std::size_t child = 2 * hole + 1;
      if (child >= size) break;
      if (child + 1 < size && ranks_before(q[child + 1], q[child])) ++child;
      if (!ranks_before(q[child], moving)) break;
      q[hole] = q[child];
      hole = child;
    }
    q[hole] = moving;
  }
}

void check_build_inputs(std::span<const Subscriber> subscribers,
                        const OfferCatalog& catalog) {
  validate(catalog);
  validate(subscribers);
  if (subscribers.size() >= HeapSet::kAbsent) {
    throw std::domain_error("too many subscribers for 32-bit positions");
  }
}

}  // namespace

HeapSet::HeapSet(std::size_t n, std::size_t k, RootSelection selection)
    : num_subscribers_(n),
      live_subscribers_(n),
      selection_(selection),
      queues_(k),
      live_queue_(k, true),
      deleted_(n, false),
      lookup_(n * k, kAbsent),
      roots_(k, HeapEntry{0.0, kAbsent}),
      root_heap_pos_(k, kAbsent) {}

HeapSet HeapSet::build_serial(std::span<const Subscriber> subscribers,
                              const OfferCatalog& catalog,
                              RootSelection selection) {
  check_build_inputs(subscribers, catalog);
  const std::size_t n = subscribers.size();
  const std::size_t k = catalog.size();
  HeapSet hs(n, k, selection);
  for (std::size_t j = 0; j < k; ++j) {
    const double delta = catalog.offers[j].value;
    auto& q = hs.queues_[j];
    q.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Subscriber& s = subscribers[i];
      q[i] = {detail::expected_revenue_unchecked(delta, s.alpha, s.gamma, s.p),
              static_cast<SubscriberId>(i)};
    }
  }
  for (std::size_t j = 0; j < k; ++j) hs.heapify_queue(static_cast<OfferIndex>(j));
  hs.finish_build();
  return hs;
}

HeapSet HeapSet::build(std::span<const Subscriber> subscribers,
                       const OfferCatalog& catalog, RootSelection selection) {
  check_build_inputs(subscribers, catalog);
  const auto n = static_cast<std::int64_t>(subscribers.size());
  const auto k = static_cast<std::int64_t>(catalog.size());
  HeapSet hs(subscribers.size(), catalog.size(), selection);
  for (auto& q : hs.queues_) q.resize(subscribers.size());

  // Key evaluation dominates construction: k * n calls to expm1.
#pragma omp parallel for schedule(static)
  for (std::int64_t i = 0; i < n; ++i) {
    const Subscriber& s = subscribers[i];
    for (std::int64_t j = 0; j < k; ++j) {
      hs.queues_[j][i] = {detail::expected_revenue_unchecked(
                              catalog.offers[j].value, s.alpha, s.gamma, s.p),
                          static_cast<SubscriberId>(i)};
    }
  }

#pragma omp parallel for schedule(dynamic, 1)
  for (std::int64_t j = 0; j < k; ++j) hs.heapify_queue(static_cast<OfferIndex>(j));

  hs.finish_build();
  return hs;
}

void HeapSet::heapify_queue(OfferIndex j) {
  auto& q = queues_[j];
  heapify(q);
  const std::size_t k = queues_.size();
  for (std::size_t pos = 0; pos < q.size(); ++pos) {
    lookup_[static_cast<std::size_t>(q[pos].id) * k + j] =
        static_cast<std::uint32_t>(pos);
  }
}

void HeapSet::finish_build() {
  for (std::size_t j = 0; j < queues_.size(); ++j) {
    refresh_root(static_cast<OfferIndex>(j));
  }
}

std::optional<HeapEntry> HeapSet::root(OfferIndex j) const {
  const HeapEntry& r = roots_.at(j);
  if (r.id == kAbsent) return std::nullopt;
  return r;
}

bool HeapSet::has_candidates() const {
  for (const auto& r : roots_) {
    if (r.id != kAbsent) return true;
  }
  return false;
}

bool HeapSet::root_before(OfferIndex a, OfferIndex b) const {
  const HeapEntry& ra = roots_[a];
  const HeapEntry& rb = roots_[b];
  if (ra.key != rb.key) return ra.key > rb.key;
  if (a != b) return a < b;
  return ra.id < rb.id;
}

Choice HeapSet::find_max_of_max() const {
  if (selection_ == RootSelection::kRootHeap) {
    if (root_heap_.empty()) {
      throw std::logic_error("find_max_of_max: no live, non-empty queue");
    }
    const OfferIndex j = root_heap_.front();
    return {roots_[j].id, j, roots_[j].key};
  }
  std::optional<OfferIndex> best;
  for (std::size_t j = 0; j < roots_.size(); ++j) {
    if (roots_[j].id == kAbsent) continue;
    const auto jj = static_cast<OfferIndex>(j);
    if (!best || root_before(jj, *best)) best = jj;
  }
  if (!best) throw std::logic_error("find_max_of_max: no live, non-empty queue");
  return {roots_[*best].id, *best, roots_[*best].key};
}

void HeapSet::sift_up(OfferIndex j, std::uint32_t pos) {
  auto& q = queues_[j];
  const std::size_t k = queues_.size();
  const HeapEntry moving = q[pos];
  while (pos > 0) {
    const std::uint32_t parent = parent_of(pos);
    if (!ranks_before(moving, q[parent])) break;
    q[pos] = q[parent];
    lookup_[static_cast<std::size_t>(q[pos].id) * k + j] = pos;
    pos = parent;
  }
  q[pos] = moving;
  lookup_[static_cast<std::size_t>(moving.id) * k + j] = pos;
}

void HeapSet::sift_down(OfferIndex j, std::uint32_t pos) {
  auto& q = queues_[j];
  const std::size_t k = queues_.size();
  const std::size_t size = q.size();
  const HeapEntry moving = q[pos];
  for (;;) {
    std::size_t child = 2 * static_cast<std::size_t>(pos) + 1;
    if (child >= size) break;
    if (child + 1 < size && ranks_before(q[child + 1], q[child])) ++child;
    if (!ranks_before(q[child], moving)) break;
    q[pos] = q[child];
    lookup_[static_cast<std::size_t>(q[pos].id) * k + j] = pos;
    pos = static_cast<std::uint32_t>(child);
  }
  q[pos] = moving;
  lookup_[static_cast<std::size_t>(moving.id) * k + j] = pos;
}

void HeapSet::remove_at(OfferIndex j, std::uint32_t pos) {
  auto& q = queues_[j];
  const HeapEntry last = q.back();
  q.pop_back();
  if (pos >= q.size()) return;
  q[pos] = last;
  if (pos > 0 && ranks_before(last, q[parent_of(pos)])) {
    sift_up(j, pos);
  } else {
    sift_down(j, pos);
  }
}

void HeapSet::delete_subscriber(SubscriberId i) {
  if (i >= num_subscribers_) {
    throw std::invalid_argument("delete_subscriber: unknown subscriber " +
                                std::to_string(i));
  }
  if (deleted_[i]) {
    throw std::invalid_argument("delete_subscriber: subscriber " +
                                std::to_string(i) + " already deleted");
  }
  const std::size_t k = queues_.size();
  std::uint32_t* row = lookup_.data() + static_cast<std::size_t>(i) * k;
  for (std::size_t j = 0; j < k; ++j) {
    const std::uint32_t pos = row[j];
    row[j] = kAbsent;
    if (!live_queue_[j] || pos == kAbsent) continue;
    const auto jj = static_cast<OfferIndex>(j);
    remove_at(jj, pos);
    // Only removing the front can change a queue's root.
    if (pos == 0) refresh_root(jj);
  }
  deleted_[i] = true;
  --live_subscribers_;
}

void HeapSet::delete_queue(OfferIndex j) {
  if (j >= queues_.size()) {
    throw std::invalid_argument("delete_queue: unknown queue " + std::to_string(j));
  }
  if (!live_queue_[j]) {
    throw std::invalid_argument("delete_queue: queue " + std::to_string(j) +
                                " already deleted");
  }
  live_queue_[j] = false;
  std::vector<HeapEntry>().swap(queues_[j]);
  const std::size_t k = queues_.size();
  for (std::size_t i = 0; i < num_subscribers_; ++i) lookup_[i * k + j] = kAbsent;
  refresh_root(j);
}

void HeapSet::refresh_root(OfferIndex j) {
  const auto& q = queues_[j];
  roots_[j] = (live_queue_[j] && !q.empty()) ? q.front() : HeapEntry{0.0, kAbsent};
  if (selection_ != RootSelection::kRootHeap) return;
  if (roots_[j].id == kAbsent) {
    root_heap_erase(j);
  } else {
    root_heap_fix(j);
  }
}

void HeapSet::root_heap_swap(std::uint32_t a, std::uint32_t b) {
  std::swap(root_heap_[a], root_heap_[b]);
  root_heap_pos_[root_heap_[a]] = a;
  root_heap_pos_[root_heap_[b]] = b;
}

void HeapSet::root_heap_fix(OfferIndex j) {
  std::uint32_t pos = root_heap_pos_[j];
  if (pos == kAbsent) {
    pos = static_cast<std::uint32_t>(root_heap_.size());
    root_heap_.push_back(j);
    root_heap_pos_[j] = pos;
  }
  while (pos > 0 && root_before(root_heap_[pos], root_heap_[parent_of(pos)])) {
    root_heap_swap(pos, parent_of(pos));
    pos = parent_of(pos);
  }
  const std::size_t size = root_heap_.size();
  for (;;) {
    std::size_t child = 2 * static_cast<std::size_t>(pos) + 1;
    if (child >= size) break;
    if (child + 1 < size && root_before(root_heap_[child + 1], root_heap_[child])) {
      ++child;
    }
    if (!root_before(root_heap_[child], root_heap_[pos])) break;
    root_heap_swap(pos, static_cast<std::uint32_t>(child));
    pos = static_cast<std::uint32_t>(child);
  }
}

void HeapSet::root_heap_erase(OfferIndex j) {
  const std::uint32_t pos = root_heap_pos_[j];
  if (pos == kAbsent) return;
  const auto last = static_cast<std::uint32_t>(root_heap_.size() - 1);
  if (pos != last) root_heap_swap(pos, last);
  root_heap_.pop_back();
  root_heap_pos_[j] = kAbsent;
  if (pos != last) root_heap_fix(root_heap_[pos]);
}

std::string HeapSet::check_invariants() const {
  std::ostringstream err;
  const std::size_t k = queues_.size();
  for (std::size_t j = 0; j < k; ++j) {
    const auto& q = queues_[j];
    if (!live_queue_[j]) {
      if (!q.empty()) err << "deleted queue " << j << " still holds entries";
      else if (roots_[j].id != kAbsent) err << "deleted queue " << j << " has a root";
      if (!err.str().empty()) return err.str();
      for (std::size_t i = 0; i < num_subscribers_; ++i) {
        if (lookup_[i * k + j] != kAbsent) {
          err << "lookup[" << i << "][" << j << "] set for deleted queue";
          return err.str();
        }
      }
      continue;
    }
    if (q.size() != live_subscribers_) {
      err << "queue " << j << " holds " << q.size() << " entries, expected "
          << live_subscribers_;
      return err.str();
    }
    for (std::size_t pos = 0; pos < q.size(); ++pos) {
      const HeapEntry& e = q[pos];
      if (e.id >= num_subscribers_ || deleted_[e.id]) {
        err << "queue " << j << " position " << pos << " holds dead subscriber " << e.id;
        return err.str();
      }
      if (pos > 0 && ranks_before(e, q[parent_of(static_cast<std::uint32_t>(pos))])) {
        err << "heap order broken in queue " << j << " at position " << pos;
        return err.str();
      }
      if (lookup_[static_cast<std::size_t>(e.id) * k + j] != pos) {
        err << "lookup[" << e.id << "][" << j << "] != " << pos;
        return err.str();
      }
    }
    const HeapEntry expected_root = q.empty() ? HeapEntry{0.0, kAbsent} : q.front();
    if (!(roots_[j] == expected_root)) {
      err << "root list entry " << j << " does not match the queue front";
      return err.str();
    }
  }
  for (std::size_t i = 0; i < num_subscribers_; ++i) {
    if (!deleted_[i]) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (lookup_[i * k + j] != kAbsent) {
        err << "deleted subscriber " << i << " still has a position in queue " << j;
        return err.str();
      }
    }
  }
  if (selection_ == RootSelection::kRootHeap) {
    std::size_t nonempty = 0;
    for (std::size_t j = 0; j < k; ++j) {
      const bool present = root_heap_pos_[j] != kAbsent;
      if (present != (roots_[j].id != kAbsent)) {
        err << "root heap membership wrong for queue " << j;
        return err.str();
      }
      nonempty += present ? 1 : 0;
    }
    if (nonempty != root_heap_.size()) return "root heap size mismatch";
    for (std::uint32_t pos = 0; pos < root_heap_.size(); ++pos) {
      if (root_heap_pos_[root_heap_[pos]] != pos) return "root heap position mismatch";
      if (pos > 0 && root_before(root_heap_[pos], root_heap_[parent_of(pos)])) {
        return "root heap order broken";
      }
    }
  }
  return {};
}

}  // namespace offeropt
