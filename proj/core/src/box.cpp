#include "boxprune/box.hpp"

#include <cstring>

namespace boxprune {

bool operator==(const Box& a, const Box& b) {
  if (a.comps.size() != b.comps.size()) return false;
  for (std::size_t i = 0; i < a.comps.size(); ++i)
    if (a.comps[i] != b.comps[i]) return false;
  return true;
}

std::uint64_t digest(const Box& b) {
  std::uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const void* p, std::size_t n) {
    const unsigned char* c = static_cast<const unsigned char*>(p);
    for (std::size_t i = 0; i < n; ++i) {
      h ^= c[i];
      h *= 1099511628211ull;
    }
  };
  for (const Interval& c : b.comps) {
    unsigned char e = c.empty ? 1 : 0;
    mix(&e, 1);
    if (!c.empty) {
      mix(&c.lo, sizeof c.lo);
      mix(&c.hi, sizeof c.hi);
    }
  }
  return h;
}

std::string toString(const Box& b, const Grid& g) {
  if (b.isEmpty()) return "empty";
  std::string s;
  for (std::size_t i = 0; i < b.comps.size(); ++i) {
    if (i) s += " x ";
    s += toString(b.comps[i], g);
  }
  return s;
}

}  // namespace boxprune
