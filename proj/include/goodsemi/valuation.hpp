#pragma once

#include <utility>
#include <vector>

#include "goodsemi/hn.hpp"
#include "goodsemi/semigroup.hpp"
#include "goodsemi/series.hpp"

namespace goodsemi {

// Parametrized plane curve: branch i is (x(t_i), y(t_i)). For a direct input
// every branch must satisfy ord(x) >= 1 and ord(y) >= 1; a blown-up
// parametrization may carry unit y-components, which value_semigroup resolves
// by splitting the curve into its points.
struct CurveParam {
    std::vector<BranchParam> branches;
    int dim() const { return static_cast<int>(branches.size()); }
};

using MultiSeries = std::vector<TruncatedSeries>;

Point value_of(const MultiSeries& f);

// Value semigroup of the ring generated by x and y, truncated at its
// conductor; the conductor must fall inside `bound` (else BoundTooSmall).
GoodSemigroup value_semigroup(const CurveParam& c, const Point& bound);

// Branch groups through a common point: keyed by the constant term of y, with
// y recentered; first element of each pair is the 1-based branch index list.
std::vector<std::pair<std::vector<int>, CurveParam>> split_param_groups(const CurveParam& c);

// Branch-wise (x, y/x). Requires ord(y) >= ord(x) on every branch.
CurveParam blow_up_param(const CurveParam& c);

enum class CoordChange { swap, shear };
CurveParam coordinate_change(const CurveParam& c, CoordChange kind, const Rational& lambda = 0);

}  // namespace goodsemi
