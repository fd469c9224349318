#pragma once

// Sorted-list model of KeyedQueue: entries ordered by key, then insertion
// sequence; update keeps the sequence number.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "clrrt/priority_queue.hpp"

namespace clrrt::testing {

struct ModelEntry {
  Key key;
  std::uint64_t seq;
  NodeId id;
};

class QueueModel {
 public:
  bool contains(NodeId id) const { return find(id) != entries_.end(); }
  void push(NodeId id, Key key) {
    entries_.push_back({key, seq_++, id});
    sort();
  }
  void update(NodeId id, Key key) {
    find(id)->key = key;
    sort();
  }
  void remove(NodeId id) { entries_.erase(find(id)); }
  NodeId pop() {
    const NodeId id = entries_.front().id;
    entries_.erase(entries_.begin());
    return id;
  }
  Key top_key() const { return entries_.empty() ? Key{} : entries_.front().key; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<ModelEntry>& entries() const { return entries_; }

 private:
  std::vector<ModelEntry>::iterator find(NodeId id) {
    return std::find_if(entries_.begin(), entries_.end(), [&](const ModelEntry& e) { return e.id == id; });
  }
  std::vector<ModelEntry>::const_iterator find(NodeId id) const {
    return std::find_if(entries_.begin(), entries_.end(), [&](const ModelEntry& e) { return e.id == id; });
  }
  void sort() {
    std::stable_sort(entries_.begin(), entries_.end(), [](const ModelEntry& a, const ModelEntry& b) {
      return a.key < b.key || (a.key == b.key && a.seq < b.seq);
    });
  }

  std::vector<ModelEntry> entries_;
  std::uint64_t seq_ = 0;
};

/// Runs `ops` random operations on both; returns an empty string on agreement,
/// otherwise a description of the first divergence. Keys come from a small
/// grid so ties on k1 and on the whole key are frequent.
inline std::string run_queue_model(std::uint64_t seed, int ops, std::uint32_t id_space = 64) {
  std::mt19937_64 rng(seed);
  KeyedQueue queue;
  QueueModel model;
  const auto random_key = [&] {
    const int a = static_cast<int>(rng() % 9);
    const int b = static_cast<int>(rng() % 4);
    Key k{a * 0.5, b * 0.25};
    if (rng() % 23 == 0) k.k1 = Key{}.k1;  // infinite components order last
    if (rng() % 29 == 0) k.k2 = Key{}.k2;
    return k;
  };
  for (int op = 0; op < ops; ++op) {
    const NodeId id{static_cast<std::uint32_t>(rng() % id_space)};
    const int kind = static_cast<int>(rng() % 4);
    const std::string where = "op " + std::to_string(op) + ": ";
    if (kind == 0) {  // insert or update
      const Key k = random_key();
      if (model.contains(id)) {
        queue.update(id, k);
        model.update(id, k);
      } else {
        queue.push(id, k);
        model.push(id, k);
      }
    } else if (kind == 1) {
      if (!model.contains(id)) continue;
      const Key k = random_key();
      queue.update(id, k);
      model.update(id, k);
    } else if (kind == 2) {
      const bool present = model.contains(id);
      queue.remove(id);
      if (present) model.remove(id);
    } else {
      if (model.size() == 0) {
        if (!queue.empty()) return where + "queue not empty";
        continue;
      }
      const NodeId expect = model.pop();
      const NodeId got = queue.pop();
      if (got != expect) {
        return where + "popped " + std::to_string(got.value) + ", expected " +
               std::to_string(expect.value);
      }
    }
    if (queue.size() != model.size()) return where + "size differs";
    if (!(queue.top_key() == model.top_key())) return where + "top key differs";
    if (model.size() > 0 && *queue.top() != model.entries().front().id) return where + "top differs";
    for (std::uint32_t i = 0; i < id_space; ++i) {
      if (queue.contains(NodeId{i}) != model.contains(NodeId{i})) return where + "membership differs";
    }
  }
  // Drain and compare the full order.
  while (model.size() > 0) {
    if (queue.pop() != model.pop()) return "drain order differs";
  }
  return queue.empty() ? std::string() : std::string("queue not empty after drain");
}

}  // namespace clrrt::testing
