#include "goodsemi/apery.hpp"

#include <algorithm>

#include "goodsemi/errors.hpp"

namespace goodsemi {

AperySet apery_set(const GoodSemigroup& S, const Point& omega, std::optional<Point> cap_override) {
    const int d = S.dim();
    if (omega.dim() != d) fail("DimensionMismatch", "apery: dimension mismatch");
    for (int i = 0; i < d; ++i)
        if (omega[i] <= 0) fail("OmegaNotPositive", "apery: omega must be positive in every coordinate");
    if (!S.contains(omega)) fail("OmegaNotInS", "apery: omega " + omega.str() + " is not in S");

    Point cap = S.conductor() + omega;
    if (cap_override) {
        if (!leq(cap, *cap_override))
            fail("BadCap", "apery: cap override must not be below the default cap " + cap.str());
        cap = *cap_override;
    }

    PointSet elems;
    for_box(Point::zero(d), cap, [&](const Point& a) {
        if (!S.contains(a)) return;
        if (leq(omega, a) && S.contains(a - omega)) return;
        elems.push_back(a);
    });
    return AperySet{S, omega, cap, std::move(elems)};
}

PointSet LevelPartition::all_elements() const {
    PointSet all;
    for (const auto& lvl : levels) all.insert(all.end(), lvl.begin(), lvl.end());
    sort_unique(all);
    return all;
}

LevelPartition partition_levels(const AperySet& A) {
    const Point& cap = A.cap;
    const Nat N = coord_sum(A.omega);

    PointSet remaining = A.elements;
    std::vector<PointSet> groups;  // D^(1), D^(2), ...
    while (!remaining.empty()) {
        if (static_cast<Nat>(groups.size()) >= N)
            fail("InvalidLevels", "level recursion did not exhaust the set within the expected count");
        PointSet B;
        for (const auto& a : remaining) {
            bool dominated = false;
            for (const auto& b : remaining)
                if (dominates_capped(a, b, cap)) { dominated = true; break; }
            if (!dominated) B.push_back(a);
        }
        PointSet D;
        for (const auto& a : B)
            if (!complete_infimum_witness(B, a, cap)) D.push_back(a);
        if (D.empty()) fail("InvalidLevels", "empty level while partitioning");
        groups.push_back(D);
        PointSet rest;
        std::set_difference(remaining.begin(), remaining.end(), D.begin(), D.end(),
                            std::back_inserter(rest));
        remaining = std::move(rest);
    }
    if (static_cast<Nat>(groups.size()) != N)
        fail("InvalidLevels", "level count differs from the coordinate sum of omega");

    LevelPartition P;
    P.omega = A.omega;
    P.cap = cap;
    P.levels.assign(groups.rbegin(), groups.rend());
    P.source = A;
    return P;
}

int level_function(const LevelPartition& P, const Point& alpha) {
    if (!P.source) fail("InvalidLevels", "level function needs a partition tied to a semigroup");
    const GoodSemigroup& S = P.source->parent;
    if (alpha.dim() != S.dim()) fail("DimensionMismatch", "level function: dimension mismatch");
    if (!S.contains(alpha)) fail("NotInSemigroup", "level function: " + alpha.str() + " is not in S");

    const Point th = clamp(alpha, P.cap);
    for (int i = 0; i < P.count(); ++i)
        if (set_contains(P.levels[i], th)) return i;

    const bool beyond = alpha != th;
    int best = -1;
    for (int i = P.count() - 1; i > best; --i) {
        for (const auto& tau : P.levels[i]) {
            if (!leq(tau, th)) continue;
            if (tau == th && !beyond) continue;  // need a point strictly below alpha
            best = i;
            break;
        }
    }
    return best + 1;
}

int level_via_product(const LevelPartition& P1, const LevelPartition& P2, const Point& alpha) {
    const int d1 = P1.omega.dim();
    const int d2 = P2.omega.dim();
    if (alpha.dim() != d1 + d2)
        fail("DimensionMismatch", "level_via_product: point does not split over the factors");
    std::vector<Nat> a1(alpha.coords().begin(), alpha.coords().begin() + d1);
    std::vector<Nat> a2(alpha.coords().begin() + d1, alpha.coords().end());
    return level_function(P1, Point(std::move(a1))) + level_function(P2, Point(std::move(a2)));
}

}  // namespace goodsemi
