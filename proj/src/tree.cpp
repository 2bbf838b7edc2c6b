#include "goodsemi/tree.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "goodsemi/errors.hpp"

namespace goodsemi {

MultiplicityTree::MultiplicityTree(int d, int tail_from, std::vector<TreeNode> nodes)
    : d_(d), tail_from_(tail_from), nodes_(std::move(nodes)) {
    if (d_ < 1) fail("MalformedTree", "branch count must be positive");
    if (tail_from_ < 1) fail("MalformedTree", "tail_from must be at least 1");
    if (nodes_.empty()) fail("MalformedTree", "no nodes");

    // canonical order, with parent indices remapped
    std::vector<int> order(nodes_.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (nodes_[a].depth != nodes_[b].depth) return nodes_[a].depth < nodes_[b].depth;
        return nodes_[a].branches < nodes_[b].branches;
    });
    std::vector<int> pos(nodes_.size());
    for (size_t i = 0; i < order.size(); ++i) pos[order[i]] = static_cast<int>(i);
    std::vector<TreeNode> sorted;
    sorted.reserve(nodes_.size());
    for (int idx : order) {
        TreeNode n = nodes_[idx];
        if (n.parent >= 0) {
            if (n.parent >= static_cast<int>(nodes_.size()))
                fail("MalformedTree", "parent index out of range");
            n.parent = pos[n.parent];
        }
        sorted.push_back(std::move(n));
    }
    nodes_ = std::move(sorted);

    by_branch_depth_.assign(d_, std::vector<int>(tail_from_, -1));
    for (size_t i = 0; i < nodes_.size(); ++i) {
        const TreeNode& n = nodes_[i];
        if (n.depth < 0 || n.depth >= tail_from_) fail("MalformedTree", "node depth out of range");
        if (n.branches.empty()) fail("MalformedTree", "node without branches");
        if (!std::is_sorted(n.branches.begin(), n.branches.end()) ||
            std::adjacent_find(n.branches.begin(), n.branches.end()) != n.branches.end())
            fail("MalformedTree", "branch set must be sorted and unique");
        if (n.branches.front() < 0 || n.branches.back() >= d_)
            fail("MalformedTree", "branch index out of range");
        if (n.weight.dim() != d_) fail("MalformedTree", "weight dimension mismatch");
        for (int b = 0, bi = 0; b < d_; ++b) {
            bool in = bi < static_cast<int>(n.branches.size()) && n.branches[bi] == b;
            if (in) ++bi;
            if (in && n.weight[b] <= 0) fail("MalformedTree", "weight must be positive on its branches");
            if (!in && n.weight[b] != 0) fail("MalformedTree", "weight must vanish off its branches");
        }
        for (int b : n.branches) {
            if (by_branch_depth_[b][n.depth] != -1)
                fail("MalformedTree", "branch appears twice at one depth");
            by_branch_depth_[b][n.depth] = static_cast<int>(i);
        }
        if (n.depth == 0) {
            if (n.parent != -1) fail("MalformedTree", "root with a parent");
        } else {
            if (n.parent < 0 || n.parent >= static_cast<int>(nodes_.size()))
                fail("MalformedTree", "missing parent");
            const TreeNode& p = nodes_[n.parent];
            if (p.depth != n.depth - 1) fail("MalformedTree", "parent depth mismatch");
            if (!std::includes(p.branches.begin(), p.branches.end(), n.branches.begin(),
                               n.branches.end()))
                fail("MalformedTree", "parent branch set does not contain the child's");
        }
    }
    for (int b = 0; b < d_; ++b)
        for (int t = 0; t < tail_from_; ++t)
            if (by_branch_depth_[b][t] == -1) fail("MalformedTree", "branch missing at some depth");
    // the implicit tail continues singleton chains, so the last explicit layer
    // must already be split into single branches
    for (const TreeNode& n : nodes_)
        if (n.depth == tail_from_ - 1 && n.branches.size() != 1)
            fail("MalformedTree", "branches still joined at the last explicit depth");
}

int MultiplicityTree::node_index(int branch, int depth) const {
    if (branch < 0 || branch >= d_ || depth < 0 || depth >= tail_from_)
        throw std::out_of_range("node_index");
    return by_branch_depth_[branch][depth];
}

std::string MultiplicityTree::node_id(int idx) const {
    const TreeNode& n = nodes_[idx];
    std::ostringstream os;
    os << n.depth << ':';
    bool wide = d_ > 9;
    for (size_t i = 0; i < n.branches.size(); ++i) {
        if (wide && i) os << ',';
        os << n.branches[i] + 1;
    }
    return os.str();
}

namespace {

// conditions 1 and 2 of both admissibility definitions, evaluated up to k
bool conditions12(const PlaneSequence& e, const PlaneSequence& ep, int k) {
    for (int i = 1; i <= k - 1; ++i)
        if ((e.at(i - 1) == e.at(i)) != (ep.at(i - 1) == ep.at(i))) return false;
    for (int j = 0; j <= k; ++j)
        if (restriction_number(e, j) != restriction_number(ep, j)) return false;
    return true;
}

bool admissible_v2(const PlaneSequence& e, const PlaneSequence& ep, int k, std::string* why) {
    if (k == -1) return true;
    if (!conditions12(e, ep, k)) {
        if (why) *why = "conditions 1-2 fail at or below k";
        return false;
    }
    if (conditions12(e, ep, k + 1) &&
        !(restriction_number(e, k + 1) == 1 && restriction_number(ep, k + 1) == 1)) {
        if (why) *why = "k is neither maximal for conditions 1-2 nor followed by free points";
        return false;
    }
    return true;
}

bool admissible_v1(const PlaneSequence& e, const PlaneSequence& ep, int k) {
    if (k == -1) return true;
    for (int i = 1; i <= k - 1; ++i)
        if ((e.at(i - 1) == e.at(i)) != (ep.at(i - 1) == ep.at(i))) return false;
    for (int j = 0; j <= k; ++j)
        if (restriction_number(e, j) != restriction_number(ep, j)) return false;
    if (k >= 1 && e.at(k - 1) > e.at(k) && ep.at(k - 1) != ep.at(k)) return false;
    if (restriction_number(e, k) == 2 && restriction_number(ep, k) == 2 &&
        restriction_number(e, k + 1) == 2 && restriction_number(ep, k + 1) == 2 && k >= 1 &&
        e.at(k - 1) == e.at(k) && !(ep.at(k - 1) > ep.at(k)))
        return false;
    return true;
}

}  // namespace

AdmissibilityReport is_admissible(const PlaneSequence& e, const PlaneSequence& ep, int k) {
    if (k < -1) fail("NotAdmissible", "splitting numbers start at -1");
    AdmissibilityReport rep;
    std::string why;
    bool v2 = admissible_v2(e, ep, k, &why);
    bool v1 = admissible_v1(e, ep, k);
    if (v1 != v2)
        throw std::logic_error("admissibility definitions disagree at k=" + std::to_string(k) +
                               " (this would falsify their proved equivalence)");
    rep.ok = v2;
    if (!rep.ok) rep.failing_clause = why;
    return rep;
}

CompatibilityReport check_compatibility(const std::vector<std::vector<int>>& K) {
    CompatibilityReport rep;
    const int d = static_cast<int>(K.size());
    for (int i = 0; i < d; ++i) {
        if (static_cast<int>(K[i].size()) != d) fail("BadSplittingData", "K must be square");
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            if (K[i][j] != K[j][i]) fail("BadSplittingData", "K must be symmetric");
            if (K[i][j] < -1) fail("BadSplittingData", "splitting numbers start at -1");
        }
    }
    for (int j = 0; j < d; ++j)
        for (int i = 0; i < d; ++i)
            for (int t = 0; t < d; ++t) {
                if (i == j || j == t || i == t) continue;
                if (K[j][t] > K[j][i] && K[i][t] != K[i][j]) {
                    rep.ok = false;
                    rep.i = i + 1;
                    rep.j = j + 1;
                    rep.t = t + 1;
                    std::ostringstream os;
                    os << "k(" << j + 1 << "," << t + 1 << ") > k(" << j + 1 << "," << i + 1
                       << ") requires k(" << i + 1 << "," << t + 1 << ") = k(" << i + 1 << ","
                       << j + 1 << ")";
                    rep.detail = os.str();
                    return rep;
                }
            }
    return rep;
}

MultiplicityTree build_tree(const SplittingData& D) {
    const int d = static_cast<int>(D.sequences.size());
    if (d < 1) fail("BadSplittingData", "no sequences");
    if (d > 1 || !D.k.empty()) {
        CompatibilityReport comp = check_compatibility(D.k);
        if (static_cast<int>(D.k.size()) != d) fail("BadSplittingData", "K size mismatch");
        if (!comp.ok) fail("NotCompatible", comp.detail);
    }

    int t_unit = 0;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) t_unit = std::max(t_unit, D.k[i][j] + 1);
    for (int i = 0; i < d; ++i) {
        int first1 = 0;
        while (D.sequences[i].at(first1) != 1) ++first1;
        t_unit = std::max(t_unit, first1);
    }

    std::vector<TreeNode> nodes;
    for (int t = 0; t <= t_unit; ++t) {
        // equivalence classes of i ~ j iff k(i,j) >= t
        std::vector<int> root(d);
        for (int i = 0; i < d; ++i) root[i] = i;
        std::function<int(int)> find = [&](int x) {
            return root[x] == x ? x : root[x] = find(root[x]);
        };
        for (int i = 0; i < d; ++i)
            for (int j = i + 1; j < d; ++j)
                if (D.k[i][j] >= t) root[find(i)] = find(j);
        std::map<int, std::vector<int>> classes;
        for (int i = 0; i < d; ++i) classes[find(i)].push_back(i);
        for (auto& [cls, members] : classes) {
            (void)cls;
            std::sort(members.begin(), members.end());
            TreeNode n;
            n.depth = t;
            n.branches = members;
            n.weight = Point::zero(d);
            for (int b : members) n.weight[b] = D.sequences[b].at(t);
            nodes.push_back(std::move(n));
        }
    }
    // parents: map (depth, branch) -> node index
    std::map<std::pair<int, int>, int> at;
    for (size_t i = 0; i < nodes.size(); ++i)
        for (int b : nodes[i].branches) at[{nodes[i].depth, b}] = static_cast<int>(i);
    for (auto& n : nodes)
        n.parent = n.depth == 0 ? -1 : at.at({n.depth - 1, n.branches.front()});

    return MultiplicityTree(d, t_unit + 1, std::move(nodes));
}

std::vector<std::vector<int>> branch_multiplicities(const MultiplicityTree& T) {
    std::vector<std::vector<int>> out(T.branch_count());
    for (int b = 0; b < T.branch_count(); ++b) {
        for (int t = 0; t < T.tail_from(); ++t) {
            const TreeNode& n = T.nodes()[T.node_index(b, t)];
            out[b].push_back(static_cast<int>(n.weight[b]));
        }
        if (out[b].back() != 1) out[b].push_back(1);  // implicit unit tail
    }
    return out;
}

SplittingData read_tree(const MultiplicityTree& T) {
    SplittingData D;
    auto raw = branch_multiplicities(T);
    for (auto& seq : raw) {
        try {
            D.sequences.push_back(PlaneSequence(seq));
        } catch (const DomainError& e) {
            fail("MalformedTree", std::string("branch sequence is not plane: ") + e.what());
        }
    }
    const int d = T.branch_count();
    D.k.assign(d, std::vector<int>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            int k = -1;
            for (int t = 0; t < T.tail_from(); ++t) {
                if (T.node_index(i, t) != T.node_index(j, t)) break;
                k = t;
            }
            D.k[i][j] = k;
        }
    return D;
}

TreeValidation validate_tree(const MultiplicityTree& T) {
    TreeValidation v;
    auto raw = branch_multiplicities(T);
    const int d = T.branch_count();
    std::vector<std::optional<PlaneSequence>> seqs(d);
    for (int b = 0; b < d; ++b) {
        SequenceReport rep = analyze_sequence(raw[b]);
        if (!rep.ok) {
            v.ok = false;
            v.failures.push_back("branch " + std::to_string(b + 1) +
                                 " sequence is not plane: " + rep.reason);
        } else {
            seqs[b] = PlaneSequence(raw[b]);
        }
    }
    std::vector<std::vector<int>> K(d, std::vector<int>(d, 0));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            int k = -1;
            for (int t = 0; t < T.tail_from(); ++t) {
                if (T.node_index(i, t) != T.node_index(j, t)) break;
                k = t;
            }
            K[i][j] = k;
        }
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            if (!seqs[i] || !seqs[j]) continue;
            AdmissibilityReport rep = is_admissible(*seqs[i], *seqs[j], K[i][j]);
            if (!rep.ok) {
                v.ok = false;
                v.failures.push_back("pair (" + std::to_string(i + 1) + "," +
                                     std::to_string(j + 1) + ") with k=" + std::to_string(K[i][j]) +
                                     " is not admissible: " + rep.failing_clause);
            }
        }
    if (d > 1) {
        CompatibilityReport comp = check_compatibility(K);
        if (!comp.ok) {
            v.ok = false;
            v.failures.push_back("splitting numbers incompatible: " + comp.detail);
        }
    }
    return v;
}

std::string tree_to_dot(const MultiplicityTree& T) {
    std::ostringstream os;
    os << "digraph multiplicity_tree {\n  rankdir=BT;\n  node [shape=ellipse];\n";
    for (size_t i = 0; i < T.nodes().size(); ++i) {
        const TreeNode& n = T.nodes()[i];
        os << "  \"" << T.node_id(static_cast<int>(i)) << "\" [label=\"" << n.weight.str()
           << "\"];\n";
    }
    for (size_t i = 0; i < T.nodes().size(); ++i) {
        const TreeNode& n = T.nodes()[i];
        if (n.parent >= 0)
            os << "  \"" << T.node_id(n.parent) << "\" -> \"" << T.node_id(static_cast<int>(i))
               << "\";\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace goodsemi
