#pragma once

#include <vector>

#include "goodsemi/apery.hpp"
#include "goodsemi/semigroup.hpp"
#include "goodsemi/tree.hpp"

namespace goodsemi {

enum class ShiftDirection { up, down };

// A_i -> A_i -/+ i*omega with the cap moved by (N-1)*omega. Shifting down
// expands capped coordinates into the grown box; shifting up reclamps.
LevelPartition shift_levels(const LevelPartition& P, const Point& omega, ShiftDirection dir);

// S = union over k of (A + k*omega), truncated at its minimal conductor.
GoodSemigroup semigroup_from_apery(const PointSet& apery, const Point& omega, const Point& cap);
GoodSemigroup semigroup_from_apery(const LevelPartition& P);

struct Blowup {
    GoodSemigroup semigroup;
    Point multiplicity;
};

Blowup blow_up_semigroup(const GoodSemigroup& S);
GoodSemigroup blow_down_semigroup(const GoodSemigroup& S_blow, const Point& omega);

struct SplitBlock {
    std::vector<int> coords;  // 1-based original coordinates
    GoodSemigroup factor;
};

// Finest decomposition of S as a product of its coordinate projections.
std::vector<SplitBlock> split_product(const GoodSemigroup& S);

// Iterated split + blow-up, recording embedded fine multiplicities.
MultiplicityTree semigroup_tree(const GoodSemigroup& S);
// Recursive blow-down from the leaves; inverse of semigroup_tree.
GoodSemigroup semigroup_from_tree(const MultiplicityTree& T);

}  // namespace goodsemi
