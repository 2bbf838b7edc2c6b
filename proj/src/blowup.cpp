#include "goodsemi/blowup.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "goodsemi/errors.hpp"

namespace goodsemi {

LevelPartition shift_levels(const LevelPartition& P, const Point& omega, ShiftDirection dir) {
    const int d = omega.dim();
    if (P.omega.dim() != d) fail("DimensionMismatch", "shift_levels: dimension mismatch");
    const Nat N = P.count();

    LevelPartition out;
    out.omega = P.omega;
    if (dir == ShiftDirection::up) {
        Point newcap = P.cap - omega * (N - 1);
        for (int i = 0; i < d; ++i)
            if (newcap[i] < 0)
                fail("NegativeCoordinate", "shift_levels: cap drops below zero; not a curve Apery partition");
        out.cap = newcap;
        for (int lvl = 0; lvl < P.count(); ++lvl) {
            PointSet shifted;
            const Point step = omega * lvl;
            for (const auto& a : P.levels[lvl]) {
                for (int i = 0; i < d; ++i)
                    if (a[i] < step[i])
                        fail("NegativeCoordinate", "shift_levels: element " + a.str() +
                                                       " of level " + std::to_string(lvl) +
                                                       " does not dominate " + step.str());
                shifted.push_back(clamp(a - step, newcap));
            }
            sort_unique(shifted);
            out.levels.push_back(std::move(shifted));
        }
    } else {
        Point newcap = P.cap + omega * (N - 1);
        out.cap = newcap;
        for (int lvl = 0; lvl < P.count(); ++lvl) {
            PointSet shifted;
            const Point step = omega * lvl;
            for (const auto& a : P.levels[lvl]) {
                // capped coordinates expand into the grown box
                std::vector<std::pair<Nat, Nat>> range(d);
                for (int i = 0; i < d; ++i) {
                    if (a[i] == P.cap[i])
                        range[i] = {P.cap[i] + step[i], newcap[i]};
                    else
                        range[i] = {a[i] + step[i], a[i] + step[i]};
                }
                std::vector<Nat> cur(d);
                for (int i = 0; i < d; ++i) cur[i] = range[i].first;
                while (true) {
                    shifted.push_back(Point(cur));
                    int i = d - 1;
                    while (i >= 0 && cur[i] == range[i].second) {
                        cur[i] = range[i].first;
                        --i;
                    }
                    if (i < 0) break;
                    ++cur[i];
                }
            }
            sort_unique(shifted);
            out.levels.push_back(std::move(shifted));
        }
    }
    return out;
}

GoodSemigroup semigroup_from_apery(const PointSet& apery, const Point& omega, const Point& cap) {
    const int d = omega.dim();
    if (apery.empty() || !set_contains(apery, Point::zero(d)))
        fail("NotGood", "semigroup_from_apery: 0 must belong to the Apery set");
    for (int i = 0; i < d; ++i)
        if (omega[i] <= 0) fail("OmegaNotPositive", "semigroup_from_apery: omega must be positive");

    auto member = [&](const Point& p) {
        Point q = p;
        while (true) {
            if (set_contains(apery, clamp(q, cap))) return true;
            bool ok = true;
            for (int i = 0; i < d; ++i)
                if ((q[i] -= omega[i]) < 0) ok = false;
            if (!ok) return false;
        }
    };

    const Point W = cap + omega * 2;  // working box for the conductor search
    // membership and its up-set closure over [0, W]
    std::vector<Nat> radix(d);
    long long vol = 1;
    for (int i = 0; i < d; ++i) {
        radix[i] = W[i] + 1;
        vol *= radix[i];
        if (vol > (1LL << 27)) fail("BoxTooLarge", "semigroup_from_apery: working box too large");
    }
    auto index = [&](const Point& p) {
        long long ix = 0;
        for (int i = 0; i < d; ++i) ix = ix * radix[i] + p[i];
        return ix;
    };
    std::vector<long long> stride(d, 1);
    for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * radix[i + 1];
    std::vector<char> mem(static_cast<size_t>(vol));
    for_box(Point::zero(d), W, [&](const Point& p) { mem[index(p)] = member(p) ? 1 : 0; });
    // full[q] == 1 iff every point of [q, W] is a member
    std::vector<char> full = mem;
    for (long long ix = vol - 1; ix >= 0; --ix) {
        if (!full[ix]) continue;
        long long t = ix;
        for (int i = d - 1; i >= 0 && full[ix]; --i) {
            Nat pi = t % radix[i];
            t /= radix[i];
            if (pi < W[i] && !full[ix + stride[i]]) full[ix] = 0;
        }
    }

    auto fullcheck = [&](const Point& q) { return full[index(q)] != 0; };
    if (!fullcheck(W)) fail("NotGood", "semigroup_from_apery: no conductor inside the working box");
    Point m = W;
    for (int i = 0; i < d; ++i) {
        Point q = W;
        while (q[i] > 0) {
            q[i] -= 1;
            if (!fullcheck(q)) { q[i] += 1; break; }
        }
        m[i] = q[i];
    }
    if (!fullcheck(m)) fail("NotGood", "semigroup_from_apery: conductor candidates do not meet");

    PointSet smalls;
    for_box(Point::zero(d), m, [&](const Point& p) {
        if (mem[index(p)]) smalls.push_back(p);
    });
    return GoodSemigroup(Point(m), std::move(smalls), true);
}

GoodSemigroup semigroup_from_apery(const LevelPartition& P) {
    return semigroup_from_apery(P.all_elements(), P.omega, P.cap);
}

Blowup blow_up_semigroup(const GoodSemigroup& S) {
    if (!S.is_local()) fail("NotLocal", "blow_up_semigroup needs a local semigroup");
    Point e = fine_multiplicity(S);
    LevelPartition P = partition_levels(apery_set(S, e));
    LevelPartition Pu = shift_levels(P, e, ShiftDirection::up);
    return Blowup{semigroup_from_apery(Pu), e};
}

GoodSemigroup blow_down_semigroup(const GoodSemigroup& S_blow, const Point& omega) {
    LevelPartition P = partition_levels(apery_set(S_blow, omega));
    LevelPartition Pd = shift_levels(P, omega, ShiftDirection::down);
    return semigroup_from_apery(Pd);
}

namespace {

Point restrict_point(const Point& p, const std::vector<int>& coords1) {
    std::vector<Nat> v;
    v.reserve(coords1.size());
    for (int c : coords1) v.push_back(p[c - 1]);
    return Point(std::move(v));
}

}  // namespace

std::vector<SplitBlock> split_product(const GoodSemigroup& S) {
    const int d = S.dim();
    std::vector<int> all(d);
    std::iota(all.begin(), all.end(), 1);
    if (d == 1 || S.is_local()) return {SplitBlock{all, S}};

    // candidate binary splits containing coordinate 1, smallest first
    std::vector<uint32_t> masks;
    for (uint32_t m = 1; m < (1u << d) - 1; ++m)
        if (m & 1u) masks.push_back(m);
    std::sort(masks.begin(), masks.end(), [](uint32_t a, uint32_t b) {
        int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
        return pa != pb ? pa < pb : a < b;
    });

    for (uint32_t m : masks) {
        std::vector<int> I, J;
        for (int i = 0; i < d; ++i) ((m >> i) & 1u ? I : J).push_back(i + 1);
        GoodSemigroup SI = GoodSemigroup::full(1), SJ = GoodSemigroup::full(1);
        try {
            SI = project(S, I);
            SJ = project(S, J);
        } catch (const DomainError&) {
            continue;  // projection not good; not a product split
        }
        bool match = true;
        for_box(Point::zero(d), S.conductor(), [&](const Point& a) {
            if (!match) return;
            bool lhs = S.contains(a);
            bool rhs = SI.contains(restrict_point(a, I)) && SJ.contains(restrict_point(a, J));
            if (lhs != rhs) match = false;
        });
        if (!match) continue;

        std::vector<SplitBlock> blocks;
        for (auto& sub : split_product(SI)) {
            std::vector<int> mapped;
            for (int c : sub.coords) mapped.push_back(I[c - 1]);
            blocks.push_back({std::move(mapped), std::move(sub.factor)});
        }
        for (auto& sub : split_product(SJ)) {
            std::vector<int> mapped;
            for (int c : sub.coords) mapped.push_back(J[c - 1]);
            blocks.push_back({std::move(mapped), std::move(sub.factor)});
        }
        std::sort(blocks.begin(), blocks.end(),
                  [](const SplitBlock& a, const SplitBlock& b) { return a.coords[0] < b.coords[0]; });
        return blocks;
    }
    return {SplitBlock{all, S}};
}

MultiplicityTree semigroup_tree(const GoodSemigroup& S) {
    const int d = S.dim();
    const GoodSemigroup line = GoodSemigroup::full(1);
    const Nat depth_bound = 4 * coord_sum(fine_multiplicity(S)) + 4;

    std::vector<TreeNode> nodes;
    std::vector<int> last_depth(d, -1);

    std::function<void(const GoodSemigroup&, const std::vector<int>&, int, int)> grow =
        [&](const GoodSemigroup& factor, const std::vector<int>& coords0, int depth, int parent) {
            if (depth > depth_bound)
                fail("NonTermination", "semigroup_tree: blow-up chain exceeded its depth bound");
            auto blocks = split_product(factor);
            if (blocks.size() > 1) {
                for (auto& b : blocks) {
                    std::vector<int> mapped;
                    for (int c : b.coords) mapped.push_back(coords0[c - 1]);
                    grow(b.factor, mapped, depth, parent);
                }
                return;
            }
            Point e = fine_multiplicity(factor);
            TreeNode n;
            n.depth = depth;
            n.branches = coords0;
            n.weight = Point::zero(d);
            for (size_t i = 0; i < coords0.size(); ++i) n.weight[coords0[i]] = e[static_cast<int>(i)];
            n.parent = parent;
            int idx = static_cast<int>(nodes.size());
            nodes.push_back(std::move(n));
            if (factor == line) {
                last_depth[coords0[0]] = depth;
                return;
            }
            grow(blow_up_semigroup(factor).semigroup, coords0, depth + 1, idx);
        };

    std::vector<int> all(d);
    std::iota(all.begin(), all.end(), 0);
    grow(S, all, 0, -1);

    // pad unit chains so every branch reaches the common final explicit depth
    int t_unit = *std::max_element(last_depth.begin(), last_depth.end());
    std::map<std::pair<int, int>, int> at;
    for (size_t i = 0; i < nodes.size(); ++i)
        for (int b : nodes[i].branches) at[{nodes[i].depth, b}] = static_cast<int>(i);
    for (int b = 0; b < d; ++b)
        for (int t = last_depth[b] + 1; t <= t_unit; ++t) {
            TreeNode n;
            n.depth = t;
            n.branches = {b};
            n.weight = Point::unit(d, b);
            n.parent = at.at({t - 1, b});
            at[{t, b}] = static_cast<int>(nodes.size());
            nodes.push_back(std::move(n));
        }

    return MultiplicityTree(d, t_unit + 1, std::move(nodes));
}

GoodSemigroup semigroup_from_tree(const MultiplicityTree& T) {
    TreeValidation v = validate_tree(T);
    if (!v.ok) fail("InvalidTree", "semigroup_from_tree: " + v.failures.front());
    const int d = T.branch_count();

    std::vector<std::vector<int>> children(T.nodes().size());
    std::vector<int> roots;
    for (size_t i = 0; i < T.nodes().size(); ++i) {
        int p = T.nodes()[i].parent;
        if (p >= 0)
            children[p].push_back(static_cast<int>(i));
        else
            roots.push_back(static_cast<int>(i));
    }

    // product over parts, reordered so coordinates follow ascending branch index
    auto assemble = [&](const std::vector<GoodSemigroup>& parts,
                        const std::vector<std::vector<int>>& part_branches) {
        GoodSemigroup P = parts[0];
        std::vector<int> order = part_branches[0];
        for (size_t i = 1; i < parts.size(); ++i) {
            P = product(P, parts[i]);
            order.insert(order.end(), part_branches[i].begin(), part_branches[i].end());
        }
        std::vector<int> sorted = order;
        std::sort(sorted.begin(), sorted.end());
        std::vector<int> perm(order.size());
        for (size_t i = 0; i < sorted.size(); ++i) {
            auto it = std::find(order.begin(), order.end(), sorted[i]);
            perm[i] = static_cast<int>(it - order.begin());
        }
        return permute_coords(P, perm);
    };

    std::function<GoodSemigroup(int)> build = [&](int idx) -> GoodSemigroup {
        const TreeNode& n = T.nodes()[idx];
        Point w = restrict_point(n.weight, [&] {
            std::vector<int> c1;
            for (int b : n.branches) c1.push_back(b + 1);
            return c1;
        }());
        if (children[idx].empty()) {
            // singleton tail node: everything below is smooth
            GoodSemigroup below = GoodSemigroup::full(1);
            return w == Point::ones(1) ? below : blow_down_semigroup(below, w);
        }
        std::vector<GoodSemigroup> parts;
        std::vector<std::vector<int>> part_branches;
        for (int c : children[idx]) {
            parts.push_back(build(c));
            part_branches.push_back(T.nodes()[c].branches);
        }
        GoodSemigroup P = assemble(parts, part_branches);
        return blow_down_semigroup(P, w);
    };

    std::vector<GoodSemigroup> parts;
    std::vector<std::vector<int>> part_branches;
    for (int r : roots) {
        parts.push_back(build(r));
        part_branches.push_back(T.nodes()[r].branches);
    }
    return assemble(parts, part_branches);
}

}  // namespace goodsemi
