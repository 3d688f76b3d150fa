#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "boxprune/interval.hpp"

namespace boxprune {

/// Cartesian product of intervals, one per variable index. The box is empty
/// as soon as any component is empty.
struct Box {
  std::vector<Interval> comps;

  Box() = default;
  explicit Box(std::vector<Interval> c) : comps(std::move(c)) {}

  std::size_t size() const { return comps.size(); }
  Interval& operator[](std::size_t i) { return comps[i]; }
  const Interval& operator[](std::size_t i) const { return comps[i]; }

  bool isEmpty() const {
    for (const Interval& c : comps)
      if (c.empty) return true;
    return false;
  }

  bool isSubsetOf(const Box& other) const {
    if (isEmpty()) return true;
    if (other.isEmpty()) return false;
    for (std::size_t i = 0; i < comps.size(); ++i)
      if (!comps[i].isSubsetOf(other.comps[i])) return false;
    return true;
  }
};

bool operator==(const Box& a, const Box& b);
inline bool operator!=(const Box& a, const Box& b) { return !(a == b); }

/// FNV-1a over the raw bound representation; used for trace digests.
std::uint64_t digest(const Box& b);

std::string toString(const Box& b, const Grid& g);

}  // namespace boxprune
