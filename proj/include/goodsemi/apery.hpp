#pragma once

#include <optional>
#include <vector>

#include "goodsemi/semigroup.hpp"

namespace goodsemi {

// Truncated Apery set Ap(S, omega) = S \ (omega + S), stored up to the cap
// c_E = conductor + omega. Points with a coordinate at the cap stand for the
// whole ray beyond it.
struct AperySet {
    GoodSemigroup parent;
    Point omega;
    Point cap;
    PointSet elements;
};

AperySet apery_set(const GoodSemigroup& S, const Point& omega,
                   std::optional<Point> cap_override = std::nullopt);

// The canonical partition of an Apery set into levels A_0..A_{N-1}.
struct LevelPartition {
    Point omega;
    Point cap;
    std::vector<PointSet> levels;
    std::optional<AperySet> source;

    int count() const { return static_cast<int>(levels.size()); }
    PointSet all_elements() const;
};

LevelPartition partition_levels(const AperySet& A);

// Index of alpha's level when alpha is an Apery element, else one more than
// the largest level lying strictly below alpha.
int level_function(const LevelPartition& P, const Point& alpha);

// Level of alpha in the Apery partition of the product semigroup, computed as
// the sum of the factor levels.
int level_via_product(const LevelPartition& P1, const LevelPartition& P2, const Point& alpha);

}  // namespace goodsemi
