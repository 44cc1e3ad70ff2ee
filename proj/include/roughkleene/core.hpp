#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace rk {

/// Dense element id of a finite poset or lattice (0..n-1).
using Element = std::uint32_t;
inline constexpr Element kNoElement = std::numeric_limits<Element>::max();

/// Set of element ids; rows of order relations and every set-valued result
/// over lattice elements use this type.
using ElementSet = boost::dynamic_bitset<std::uint64_t>;

/// Subset of a rough-set universe, one bit per point.
using PointSet = std::uint64_t;
inline constexpr std::size_t kMaxPoints = 64;

inline int point_count(PointSet s) { return std::popcount(s); }

inline PointSet full_set(std::size_t n) {
  return n >= 64 ? ~PointSet{0} : (PointSet{1} << n) - 1;
}

inline bool is_subset(PointSet a, PointSet b) { return (a & ~b) == 0; }

template <class F>
void for_each_point(PointSet s, F&& f) {
  while (s) {
    const int i = std::countr_zero(s);
    f(static_cast<std::size_t>(i));
    s &= s - 1;
  }
}

template <class F>
void for_each_element(const ElementSet& s, F&& f) {
  for (auto i = s.find_first(); i != ElementSet::npos; i = s.find_next(i))
    f(static_cast<Element>(i));
}

inline std::vector<Element> elements_of(const ElementSet& s) {
  std::vector<Element> out;
  out.reserve(s.count());
  for_each_element(s, [&](Element e) { out.push_back(e); });
  return out;
}

}  // namespace rk
