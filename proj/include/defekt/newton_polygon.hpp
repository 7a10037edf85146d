#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "defekt/rational.hpp"

namespace defekt {

// Lower convex hull of points (i, v_i). The value type V only needs to be an
// ordered Q-vector space: subtraction, negation, scaling by and division by
// an integer, and a total order. Rational is the rank-one case.
template <class V>
struct NewtonPolygonT {
  struct Vertex {
    long index;
    V value;
  };
  struct Segment {
    V slope;
    long length;
  };
  struct RootValuation {
    V valuation;
    long multiplicity;
  };

  std::vector<Vertex> vertices;
  std::vector<Segment> segments;

  // A segment of slope -mu and length m certifies m roots of value mu.
  std::vector<RootValuation> root_valuations() const {
    std::vector<RootValuation> out;
    out.reserve(segments.size());
    for (const auto& s : segments) out.push_back({-s.slope, s.length});
    return out;
  }

  bool certifies(const V& value) const {
    for (const auto& s : segments)
      if (-s.slope == value) return true;
    return false;
  }
};

using NewtonPolygon = NewtonPolygonT<Rational>;

// "{-1/3 x3}", or "{-1 x1, 1 x1}" for several segments; "{}" without roots.
template <class V>
std::string render_root_valuations(const NewtonPolygonT<V>& np) {
  std::string out = "{";
  bool first = true;
  for (const auto& r : np.root_valuations()) {
    if (!first) out += ", ";
    first = false;
    out += r.valuation.str() + " x" + std::to_string(r.multiplicity);
  }
  return out + "}";
}

// `points` must be sorted by strictly increasing index. Collinear points are
// merged into a single segment.
template <class V>
NewtonPolygonT<V> lower_hull(const std::vector<std::pair<long, V>>& points) {
  using Vertex = typename NewtonPolygonT<V>::Vertex;
  std::vector<Vertex> hull;
  for (const auto& [i, v] : points) {
    if (!hull.empty() && hull.back().index >= i) throw std::invalid_argument("polygon points must be sorted by index");
    // pop B while B lies on or above segment A -> (i, v)
    while (hull.size() >= 2) {
      const Vertex& a = hull[hull.size() - 2];
      const Vertex& b = hull.back();
      V lhs = (b.value - a.value) * (i - a.index);
      V rhs = (v - a.value) * (b.index - a.index);
      if (rhs < lhs || rhs == lhs)
        hull.pop_back();
      else
        break;
    }
    hull.push_back({i, v});
  }
  NewtonPolygonT<V> poly;
  poly.vertices = hull;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    long len = hull[k].index - hull[k - 1].index;
    poly.segments.push_back({(hull[k].value - hull[k - 1].value) / len, len});
  }
  return poly;
}

}  // namespace defekt
