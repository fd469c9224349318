#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <ostream>

namespace clrrt {

/// Dense integer handle; Tag keeps node/edge ids of different graphs apart.
template <typename Tag>
struct Id {
  std::uint32_t value = 0;

  constexpr Id() = default;
  constexpr explicit Id(std::uint32_t v) : value(v) {}
  static constexpr Id from_index(std::size_t i) { return Id(static_cast<std::uint32_t>(i)); }

  constexpr std::size_t index() const { return value; }

  friend constexpr auto operator<=>(Id, Id) = default;
  friend std::ostream& operator<<(std::ostream& os, Id id) { return os << id.value; }
};

using NodeId = Id<struct OutputNodeTag>;
using EdgeId = Id<struct OutputEdgeTag>;
using TrajNodeId = Id<struct TrajNodeTag>;
using TrajEdgeId = Id<struct TrajEdgeTag>;

}  // namespace clrrt
