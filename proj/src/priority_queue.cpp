#include "clrrt/priority_queue.hpp"

#include <string>

#include "clrrt/geometry.hpp"

namespace clrrt {

bool KeyedQueue::contains(NodeId id) const {
  return id.index() < position_.size() && position_[id.index()] != kAbsent;
}

std::optional<NodeId> KeyedQueue::top() const {
  if (heap_.empty()) return std::nullopt;
  return heap_.front().id;
}

Key KeyedQueue::key(NodeId id) const {
  if (!contains(id)) throw UsageError("node " + std::to_string(id.value) + " is not queued");
  return heap_[position_[id.index()]].key;
}

void KeyedQueue::push(NodeId id, Key key) {
  if (contains(id)) throw UsageError("node " + std::to_string(id.value) + " is already queued");
  if (id.index() >= position_.size()) position_.resize(id.index() + 1, kAbsent);
  heap_.push_back(Entry{key, next_seq_++, id});
  position_[id.index()] = heap_.size() - 1;
  sift_up(heap_.size() - 1);
}

void KeyedQueue::update(NodeId id, Key key) {
  if (!contains(id)) throw UsageError("node " + std::to_string(id.value) + " is not queued");
  const std::size_t i = position_[id.index()];
  const Key old = heap_[i].key;
  heap_[i].key = key;
  if (key < old) {
    sift_up(i);
  } else {
    sift_down(i);
  }
}

void KeyedQueue::remove(NodeId id) {
  if (!contains(id)) return;
  const std::size_t i = position_[id.index()];
  position_[id.index()] = kAbsent;
  Entry last = heap_.back();
  heap_.pop_back();
  if (i == heap_.size()) return;
  const bool rises = before(last, heap_[i]);
  place(i, last);
  if (rises) {
    sift_up(i);
  } else {
    sift_down(i);
  }
}

NodeId KeyedQueue::pop() {
  if (heap_.empty()) throw UsageError("pop() on an empty queue");
  const NodeId id = heap_.front().id;
  remove(id);
  return id;
}

std::vector<NodeId> KeyedQueue::members() const {
  std::vector<NodeId> ids;
  ids.reserve(heap_.size());
  for (const Entry& e : heap_) ids.push_back(e.id);
  return ids;
}

void KeyedQueue::place(std::size_t i, Entry e) {
  position_[e.id.index()] = i;
  heap_[i] = e;
}

void KeyedQueue::sift_up(std::size_t i) {
  Entry e = heap_[i];
  while (i > 0) {
    const std::size_t parent = (i - 1) / 2;
    if (!before(e, heap_[parent])) break;
    place(i, heap_[parent]);
    i = parent;
  }
  place(i, e);
}

void KeyedQueue::sift_down(std::size_t i) {
  Entry e = heap_[i];
  const std::size_t n = heap_.size();
  for (;;) {
    std::size_t child = 2 * i + 1;
    if (child >= n) break;
    if (child + 1 < n && before(heap_[child + 1], heap_[child])) ++child;
    if (!before(heap_[child], e)) break;
    place(i, heap_[child]);
    i = child;
  }
  place(i, e);
}

}  // namespace clrrt
