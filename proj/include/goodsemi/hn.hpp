#pragma once

#include <optional>
#include <vector>

#include "goodsemi/plane_sequence.hpp"
#include "goodsemi/series.hpp"

namespace goodsemi {

struct BranchParam {
    TruncatedSeries x, y;
};

// z_{j-1} = sum_{i=1..h} a_i z_j^i + z_j^h z_{j+1}
struct HNRow {
    Nat h = 1;
    std::vector<Rational> a;  // a[i-1] = a_{j,i}, size h

    bool operator==(const HNRow& o) const { return h == o.h && a == o.a; }
};

// Finite rows 0..r-1 followed by the infinite row z_{r-1} = series(z_r)
// (for r = 0 the series expresses y in x). n[j] = ord(z_j); n[r] = 1 on a
// branch.
struct HNExpansion {
    std::vector<HNRow> finite_rows;
    TruncatedSeries final_series;
    std::vector<Nat> n;

    int r() const { return static_cast<int>(finite_rows.size()); }
};

HNExpansion hn_expand(const BranchParam& b);
BranchParam hn_to_param(const HNExpansion& h, Nat precision);
PlaneSequence multiplicity_sequence(const HNExpansion& h);

// Expansion of type H(e) with deterministic coefficients 1,2,3,... at the free
// slots (counting from `seed`).
HNExpansion synth_branch(const PlaneSequence& e, Nat seed = 1, Nat precision = 64);

struct SplitResult {
    int s = 0;           // first row where the expansions differ
    Nat t = 1;           // first differing coefficient slot inside row s
    Nat k = 0;           // splitting number
    Nat intersection = 0;
};

SplitResult splitting_data(const HNExpansion& a, const HNExpansion& b);

Nat noether_intersection(const PlaneSequence& e, const PlaneSequence& ep, long long k);
long long splitting_from_intersection(const PlaneSequence& e, const PlaneSequence& ep, Nat m);

// Expansion with multiplicity sequence e whose splitting number against `ref`
// is exactly k; free coefficients from `seed`.
HNExpansion synth_branch_with_splitting(const PlaneSequence& e, const HNExpansion& ref, int k,
                                        Nat seed, Nat precision = 64);

// Branches realizing the sequences E with pairwise splitting numbers K; the
// K entries must be admissible and compatible.
std::vector<BranchParam> synth_curve(const std::vector<PlaneSequence>& E,
                                     const std::vector<std::vector<int>>& K, Nat precision = 64);

}  // namespace goodsemi
