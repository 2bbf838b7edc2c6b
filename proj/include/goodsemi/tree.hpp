#pragma once

#include <string>
#include <vector>

#include "goodsemi/plane_sequence.hpp"
#include "goodsemi/point.hpp"

namespace goodsemi {

struct TreeNode {
    int depth = 0;
    std::vector<int> branches;  // 0-based, sorted
    Point weight;               // dim d, zero off the branch set
    int parent = -1;            // node index, -1 for roots

    bool operator==(const TreeNode& o) const {
        return depth == o.depth && branches == o.branches && weight == o.weight &&
               parent == o.parent;
    }
};

// Weighted forest of fine multiplicities. Explicit nodes cover depths
// 0..tail_from-1; beyond that every branch continues as a unit-weight
// singleton chain. Nodes are kept sorted by (depth, branches).
class MultiplicityTree {
public:
    MultiplicityTree(int d, int tail_from, std::vector<TreeNode> nodes);  // throws MalformedTree

    int branch_count() const { return d_; }
    int tail_from() const { return tail_from_; }
    const std::vector<TreeNode>& nodes() const { return nodes_; }
    int node_index(int branch, int depth) const;
    std::string node_id(int idx) const;

    bool operator==(const MultiplicityTree& o) const {
        return d_ == o.d_ && tail_from_ == o.tail_from_ && nodes_ == o.nodes_;
    }
    bool operator!=(const MultiplicityTree& o) const { return !(*this == o); }

private:
    int d_ = 0;
    int tail_from_ = 1;
    std::vector<TreeNode> nodes_;
    std::vector<std::vector<int>> by_branch_depth_;  // [branch][depth] -> node index
};

struct SplittingData {
    std::vector<PlaneSequence> sequences;
    std::vector<std::vector<int>> k;  // d x d, symmetric, entries >= -1, diagonal unused
};

struct AdmissibilityReport {
    bool ok = true;
    std::string failing_clause;
};

// Definition "admissible2", cross-checked against the four-clause definition;
// a disagreement would falsify the equivalence and raises an internal error.
AdmissibilityReport is_admissible(const PlaneSequence& e, const PlaneSequence& ep, int k);

struct CompatibilityReport {
    bool ok = true;
    int i = -1, j = -1, t = -1;  // 1-based witness triple on failure
    std::string detail;
};

CompatibilityReport check_compatibility(const std::vector<std::vector<int>>& K);

MultiplicityTree build_tree(const SplittingData& D);
SplittingData read_tree(const MultiplicityTree& T);

// Raw per-branch weight chains (prefix up to tail_from), without requiring
// them to be plane sequences.
std::vector<std::vector<int>> branch_multiplicities(const MultiplicityTree& T);

struct TreeValidation {
    bool ok = true;
    std::vector<std::string> failures;
};

// The numerical characterization: every branch sequence plane, every pair
// admissible, splitting numbers compatible.
TreeValidation validate_tree(const MultiplicityTree& T);

std::string tree_to_dot(const MultiplicityTree& T);

}  // namespace goodsemi
