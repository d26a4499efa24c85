// Points, unordered point pairs and open arcs on the unit circle, plus the
// cyclic-order and separation predicates everything else is built on.
#pragma once

#include <cmath>
#include <stdexcept>
#include <utility>

namespace harmonia {

inline constexpr double kTau = 6.283185307179586476925286766559;

// A point of the circle, canonically an angle in [0, 2*pi). Equality is exact
// on the normalized angle; approx_eq compares along the shorter arc.
class CirclePoint {
 public:
  CirclePoint() = default;
  explicit CirclePoint(double angle) {
    if (!std::isfinite(angle)) throw std::invalid_argument("nonfinite angle");
    angle_ = std::fmod(angle, kTau);
    if (angle_ < 0.0) angle_ += kTau;
    if (angle_ >= kTau) angle_ = 0.0;
  }
  double angle() const { return angle_; }
  bool operator==(const CirclePoint& o) const { return angle_ == o.angle_; }
  bool operator!=(const CirclePoint& o) const { return angle_ != o.angle_; }
  bool approx_eq(const CirclePoint& o, double eps_angle) const {
    double d = std::fabs(angle_ - o.angle_);
    return std::min(d, kTau - d) <= eps_angle;
  }

 private:
  double angle_ = 0.0;
};

// Counterclockwise angular gap from `from` to `to`, in [0, 2*pi).
inline double ccw_gap(CirclePoint from, CirclePoint to) {
  double d = to.angle() - from.angle();
  if (d < 0.0) d += kTau;
  return d;
}

inline CirclePoint advance(CirclePoint p, double offset) {
  return CirclePoint(p.angle() + offset);
}

// Open counterclockwise arc; neither endpoint belongs to it.
struct Arc {
  CirclePoint from, to;
  Arc(CirclePoint f, CirclePoint t) : from(f), to(t) {
    if (f == t) throw std::invalid_argument("degenerate arc");
  }
  double length() const { return ccw_gap(from, to); }
  bool contains(CirclePoint p) const {
    double o = ccw_gap(from, p);
    return o > 0.0 && o < length();
  }
  CirclePoint midpoint() const { return advance(from, 0.5 * length()); }
};

// Unordered pair of distinct circle points, stored sorted by angle.
class PointPair {
 public:
  PointPair(CirclePoint a, CirclePoint b) {
    if (a == b) throw std::invalid_argument("degenerate point pair");
    if (b.angle() < a.angle()) std::swap(a, b);
    lo_ = a;
    hi_ = b;
  }
  CirclePoint lo() const { return lo_; }
  CirclePoint hi() const { return hi_; }
  bool contains(CirclePoint p) const { return p == lo_ || p == hi_; }
  bool shares_point(const PointPair& o) const {
    return contains(o.lo_) || contains(o.hi_);
  }
  bool operator==(const PointPair& o) const {
    return lo_ == o.lo_ && hi_ == o.hi_;
  }
  bool operator!=(const PointPair& o) const { return !(*this == o); }
  bool approx_eq(const PointPair& o, double eps_angle) const {
    return (lo_.approx_eq(o.lo_, eps_angle) && hi_.approx_eq(o.hi_, eps_angle)) ||
           (lo_.approx_eq(o.hi_, eps_angle) && hi_.approx_eq(o.lo_, eps_angle));
  }
  // The two open arcs of the complement; arc(0) runs lo -> hi counterclockwise.
  Arc arc(int which) const {
    return which == 0 ? Arc(lo_, hi_) : Arc(hi_, lo_);
  }

 private:
  CirclePoint lo_, hi_;
};

// +1 if p1,p2,p3 occur counterclockwise, -1 if clockwise, 0 on any coincidence.
inline int cyclic_order(CirclePoint p1, CirclePoint p2, CirclePoint p3) {
  if (p1 == p2 || p1 == p3 || p2 == p3) return 0;
  return ccw_gap(p1, p2) < ccw_gap(p1, p3) ? 1 : -1;
}

// True iff the points of b lie in different components of the complement of a.
inline bool pairs_separate(const PointPair& a, const PointPair& b) {
  if (a.shares_point(b)) throw std::invalid_argument("degenerate configuration");
  Arc arc = a.arc(0);
  return arc.contains(b.lo()) != arc.contains(b.hi());
}

// True iff b2 lies inside a single open arc determined by b (all four distinct).
inline bool strong_causal(const PointPair& b, const PointPair& b2) {
  return !pairs_separate(b, b2);
}

// True iff b is contained in one open arc of the complement of d and c in the other.
inline bool pair_separates_pairs(const PointPair& d, const PointPair& b,
                                 const PointPair& c) {
  if (d.shares_point(b) || d.shares_point(c))
    throw std::invalid_argument("degenerate configuration");
  Arc arc = d.arc(0);
  bool b0 = arc.contains(b.lo()), b1 = arc.contains(b.hi());
  bool c0 = arc.contains(c.lo()), c1 = arc.contains(c.hi());
  return b0 == b1 && c0 == c1 && b0 != c0;
}

}  // namespace harmonia
