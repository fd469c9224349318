#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "clrrt/ids.hpp"

namespace clrrt {

/// Two-component priority compared lexicographically.
struct Key {
  double k1 = std::numeric_limits<double>::infinity();
  double k2 = std::numeric_limits<double>::infinity();

  friend bool operator==(const Key&, const Key&) = default;
};

/// Strict lexicographic order.
inline bool operator<(const Key& a, const Key& b) {
  return a.k1 < b.k1 || (a.k1 == b.k1 && a.k2 < b.k2);
}

/// Indexed binary min-heap of output nodes. Ties on Key are broken by the
/// sequence number assigned at insertion (earlier first); update() keeps it.
class KeyedQueue {
 public:
  bool empty() const { return heap_.empty(); }
  std::size_t size() const { return heap_.size(); }
  bool contains(NodeId id) const;

  /// Key of the front entry, or [inf; inf] when empty.
  Key top_key() const { return heap_.empty() ? Key{} : heap_.front().key; }
  std::optional<NodeId> top() const;
  Key key(NodeId id) const;

  /// Throws UsageError if already present.
  void push(NodeId id, Key key);
  /// Throws UsageError if absent.
  void update(NodeId id, Key key);
  /// No-op if absent.
  void remove(NodeId id);
  /// Throws UsageError if empty.
  NodeId pop();

  /// Present ids in unspecified order.
  std::vector<NodeId> members() const;

 private:
  struct Entry {
    Key key;
    std::uint64_t seq = 0;
    NodeId id;
  };

  static bool before(const Entry& a, const Entry& b) {
    return a.key < b.key || (a.key == b.key && a.seq < b.seq);
  }
  void sift_up(std::size_t i);
  void sift_down(std::size_t i);
  void place(std::size_t i, Entry e);

  static constexpr std::size_t kAbsent = std::numeric_limits<std::size_t>::max();
  std::vector<Entry> heap_;
  std::vector<std::size_t> position_;  // indexed by node id
  std::uint64_t next_seq_ = 0;
};

}  // namespace clrrt
