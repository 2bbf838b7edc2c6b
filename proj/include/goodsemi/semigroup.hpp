#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goodsemi/point.hpp"

namespace goodsemi {

struct AxiomViolation {
    std::string axiom;  // "zero", "truncation", "G1", "G2", "additive", "conductor"
    Point a, b;
    std::string detail;
};

struct VerifyReport {
    bool ok = true;
    std::vector<AxiomViolation> violations;
};

// Axiom check on a truncated point set. `bound` is the storage box (defaults
// to the conductor); (G2) witnesses are searched inside the box and pairs
// sharing only a capped coordinate are skipped, both justified by finite
// determination. Conductor minimality is checked against `conductor`.
VerifyReport verify_good(const PointSet& smalls, const Point& conductor);
VerifyReport verify_good(const PointSet& smalls, const Point& conductor, const Point& bound);

// Finite representation of a good semigroup: the small elements up to the
// conductor. Membership of any point follows by clamping.
class GoodSemigroup {
public:
    GoodSemigroup(Point conductor, PointSet smalls, bool check = true);

    static GoodSemigroup full(int dim);  // N^d

    int dim() const { return conductor_.dim(); }
    const Point& conductor() const { return conductor_; }
    Point gamma() const;  // conductor - 1
    const PointSet& smalls() const { return smalls_; }

    bool contains(const Point& alpha) const;
    bool is_local() const;

    bool operator==(const GoodSemigroup& o) const {
        return conductor_ == o.conductor_ && smalls_ == o.smalls_;
    }
    bool operator!=(const GoodSemigroup& o) const { return !(*this == o); }

private:
    Point conductor_;
    PointSet smalls_;
};

// Minimal element of S with every coordinate positive (the paper's e).
Point fine_multiplicity(const GoodSemigroup& S);

GoodSemigroup product(const GoodSemigroup& a, const GoodSemigroup& b);

// Reindexes coordinates: new coordinate i is old coordinate perm[i].
GoodSemigroup permute_coords(const GoodSemigroup& S, const std::vector<int>& perm);

// Projection onto the 1-based coordinate set I, retruncated at the minimal
// valid conductor of the projected set. Errors NotGood when the projection
// fails the axioms.
GoodSemigroup project(const GoodSemigroup& S, const std::vector<int>& coords);

enum class DeltaKind { exact, weak, single, all };

// Truncated Delta-sets. `cap` defaults to the conductor; callers pass a wider
// box (e.g. c_E) when working inside an Apery context.
PointSet delta_set(const GoodSemigroup& S, const Point& alpha, DeltaKind kind,
                   const std::vector<int>& index_set = {},
                   std::optional<Point> cap = std::nullopt);

struct InfimumWitness {
    std::vector<Point> betas;            // r >= 2 witnesses
    std::vector<std::vector<int>> fsets; // 1-based coordinate sets, empty meet
};

// Complete-infimum witness search inside A (capped semantics relative to
// `cap`). A pair of witnesses suffices: any witness family contains one.
std::optional<InfimumWitness> complete_infimum_witness(const PointSet& A,
                                                       const Point& alpha,
                                                       const Point& cap);

// Enumerates the box [lo, hi] in lexicographic order through a callback.
template <typename F>
void for_box(const Point& lo, const Point& hi, F&& f) {
    const int d = lo.dim();
    Point cur = lo;
    while (true) {
        f(static_cast<const Point&>(cur));
        int i = d - 1;
        while (i >= 0 && cur[i] == hi[i]) {
            cur[i] = lo[i];
            --i;
        }
        if (i < 0) break;
        ++cur[i];
    }
}

}  // namespace goodsemi
