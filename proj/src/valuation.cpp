#include "goodsemi/valuation.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "goodsemi/errors.hpp"

namespace goodsemi {

Point value_of(const MultiSeries& f) {
    std::vector<Nat> v;
    v.reserve(f.size());
    for (const auto& s : f) v.push_back(s.order_checked("value_of: component"));
    return Point(std::move(v));
}

std::vector<std::pair<std::vector<int>, CurveParam>> split_param_groups(const CurveParam& c) {
    std::map<Rational, std::pair<std::vector<int>, CurveParam>> groups;
    for (int i = 0; i < c.dim(); ++i) {
        const BranchParam& b = c.branches[i];
        if (b.y.precision() <= 0)
            fail("InsufficientPrecision", "split: y has no known coefficients");
        Rational c0 = b.y.coeff(0);
        auto& slot = groups[c0];
        slot.first.push_back(i + 1);
        BranchParam nb = b;
        if (c0 != 0) {
            TruncatedSeries cst(b.y.precision());
            cst.add_term(0, c0);
            nb.y = b.y - cst;
        }
        slot.second.branches.push_back(std::move(nb));
    }
    std::vector<std::pair<std::vector<int>, CurveParam>> out;
    for (auto& [key, grp] : groups) {
        (void)key;
        out.push_back(std::move(grp));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first[0] < b.first[0]; });
    return out;
}

namespace {

Point restrict_to(const Point& p, const std::vector<int>& coords1) {
    std::vector<Nat> v;
    v.reserve(coords1.size());
    for (int c : coords1) v.push_back(p[c - 1]);
    return Point(std::move(v));
}

// rank data over the slot grid for one local curve
class RankEngine {
public:
    RankEngine(const CurveParam& c, const Point& bound) : d_(c.dim()), bound_(bound) {
        // slot (i, e) with e <= bound_i + 1
        offsets_.resize(d_ + 1, 0);
        for (int i = 0; i < d_; ++i) offsets_[i + 1] = offsets_[i] + (bound_[i] + 2);
        total_slots_ = offsets_[d_];

        std::vector<Nat> vx(d_), vy(d_, -1);
        for (int i = 0; i < d_; ++i) {
            const auto& b = c.branches[i];
            vx[i] = b.x.order_checked("value_semigroup: x");
            if (vx[i] < 1) fail("NotTransversal", "value_semigroup: ord(x) must be positive");
            auto oy = b.y.order();
            if (oy) {
                vy[i] = *oy;
                if (vy[i] < 1)
                    fail("NotTransversal", "value_semigroup: ord(y) must be positive here");
            }
            if (b.x.precision() < bound_[i] + 2 ||
                b.y.precision() < bound_[i] + 2)
                fail("InsufficientPrecision",
                     "value_semigroup: series precision must exceed the bound by 2");
        }

        // monomials x^a y^b whose value meets the box in some coordinate
        Nat maxb = 0, maxa = 0;
        for (int i = 0; i < d_; ++i) {
            maxa = std::max(maxa, (bound_[i] + 1) / vx[i] + 1);
            if (vy[i] >= 1) maxb = std::max(maxb, (bound_[i] + 1) / vy[i] + 1);
        }
        auto relevant = [&](Nat a, Nat b) {
            for (int i = 0; i < d_; ++i) {
                if (vy[i] < 0) {
                    if (b == 0 && a * vx[i] <= bound_[i] + 1) return true;
                } else if (a * vx[i] + b * vy[i] <= bound_[i] + 1) {
                    return true;
                }
            }
            return false;
        };
        std::vector<TruncatedSeries> ypow;  // per branch, running power of y
        std::vector<TruncatedSeries> xpow;
        for (int i = 0; i < d_; ++i) {
            TruncatedSeries one(c.branches[i].x.precision() + c.branches[i].y.precision());
            one.add_term(0, 1);
            xpow.push_back(one);
        }
        for (Nat a = 0; a <= maxa; ++a) {
            ypow.clear();
            for (int i = 0; i < d_; ++i) ypow.push_back(xpow[i]);
            for (Nat b = 0; b <= maxb; ++b) {
                if (relevant(a, b)) {
                    std::vector<Rational> rowvec(static_cast<size_t>(total_slots_));
                    for (int i = 0; i < d_; ++i)
                        for (const auto& [e, coef] : ypow[i].terms())
                            if (e <= bound_[i] + 1) rowvec[offsets_[i] + e] = coef;
                    rows_.push_back(std::move(rowvec));
                }
                if (b < maxb)
                    for (int i = 0; i < d_; ++i) ypow[i] = ypow[i] * c.branches[i].y;
            }
            if (a < maxa)
                for (int i = 0; i < d_; ++i) xpow[i] = xpow[i] * c.branches[i].x;
        }
        compute_rank_grid();
    }

    // rank of the constraint columns {(i, e) : e < alpha_i}
    int rho(const Point& alpha) const { return rho_[grid_index(alpha)]; }

    bool attained(const Point& alpha) const {
        int base = rho(alpha);
        for (int i = 0; i < d_; ++i) {
            Point q = alpha;
            q[i] += 1;
            if (rho(q) <= base) return false;
        }
        return true;
    }

private:
    long long grid_index(const Point& a) const {
        long long ix = 0;
        for (int i = 0; i < d_; ++i) ix = ix * (bound_[i] + 3) + a[i];
        return ix;
    }

    void compute_rank_grid() {
        long long vol = 1;
        for (int i = 0; i < d_; ++i) {
            vol *= bound_[i] + 3;
            if (vol > (1LL << 24)) fail("BoxTooLarge", "value_semigroup: bound box too large");
        }
        rho_.assign(static_cast<size_t>(vol), 0);

        // chain along the widest coordinate; one elimination per chain
        int chain = 0;
        for (int i = 1; i < d_; ++i)
            if (bound_[i] > bound_[chain]) chain = i;

        Point lo = Point::zero(d_);
        Point hi = Point::zero(d_);
        for (int i = 0; i < d_; ++i) hi[i] = i == chain ? 0 : bound_[i] + 2;
        for_box(lo, hi, [&](const Point& base) {
            std::vector<std::vector<Rational>> act = rows_;
            std::vector<char> alive(act.size(), 1);
            int rank = 0;
            auto add_column = [&](long long col) {
                int pivot = -1;
                for (size_t r = 0; r < act.size(); ++r)
                    if (alive[r] && act[r][col] != 0) { pivot = static_cast<int>(r); break; }
                if (pivot < 0) return;
                ++rank;
                alive[pivot] = 0;
                const Rational pv = act[pivot][col];
                for (size_t r = 0; r < act.size(); ++r) {
                    if (!alive[r] || act[r][col] == 0) continue;
                    const Rational f = act[r][col] / pv;
                    auto& row = act[r];
                    const auto& prow = act[pivot];
                    for (long long cc = 0; cc < total_slots_; ++cc)
                        if (prow[cc] != 0) row[cc] -= f * prow[cc];
                }
            };
            for (int i = 0; i < d_; ++i) {
                if (i == chain) continue;
                for (Nat e = 0; e < base[i]; ++e) add_column(offsets_[i] + e);
            }
            Point alpha = base;
            alpha[chain] = 0;
            rho_[grid_index(alpha)] = rank;
            for (Nat v = 1; v <= bound_[chain] + 2; ++v) {
                add_column(offsets_[chain] + v - 1);
                alpha[chain] = v;
                rho_[grid_index(alpha)] = rank;
            }
        });
    }

    int d_;
    Point bound_;
    std::vector<Nat> offsets_;
    long long total_slots_ = 0;
    std::vector<std::vector<Rational>> rows_;
    std::vector<int> rho_;
};

GoodSemigroup local_value_semigroup(const CurveParam& c, const Point& bound) {
    const int d = c.dim();
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j)
            if (c.branches[i].x.same_terms(c.branches[j].x) &&
                c.branches[i].y.same_terms(c.branches[j].y))
                fail("IdenticalBranches", "value_semigroup: branches " + std::to_string(i + 1) +
                                              " and " + std::to_string(j + 1) + " coincide");

    RankEngine engine(c, bound);

    // membership over [0, bound+1], then the up-set closure for the conductor
    Point ext = bound + Point::ones(d);
    std::vector<Nat> radix(d);
    long long vol = 1;
    for (int i = 0; i < d; ++i) {
        radix[i] = ext[i] + 1;
        vol *= radix[i];
    }
    auto index = [&](const Point& p) {
        long long ix = 0;
        for (int i = 0; i < d; ++i) ix = ix * radix[i] + p[i];
        return ix;
    };
    std::vector<long long> stride(d, 1);
    for (int i = d - 2; i >= 0; --i) stride[i] = stride[i + 1] * radix[i + 1];
    std::vector<char> mem(static_cast<size_t>(vol));
    for_box(Point::zero(d), ext, [&](const Point& p) { mem[index(p)] = engine.attained(p) ? 1 : 0; });

    std::vector<char> full = mem;
    for (long long ix = vol - 1; ix >= 0; --ix) {
        if (!full[ix]) continue;
        long long t = ix;
        for (int i = d - 1; i >= 0 && full[ix]; --i) {
            Nat pi = t % radix[i];
            t /= radix[i];
            if (pi < ext[i] && !full[ix + stride[i]]) full[ix] = 0;
        }
    }
    auto fullcheck = [&](const Point& q) { return full[index(q)] != 0; };
    if (!fullcheck(clamp(bound, bound)))
        fail("BoundTooSmall", "value_semigroup: no conductor within the bound; enlarge it");
    Point m = bound;
    for (int i = 0; i < d; ++i) {
        Point q = bound;
        while (q[i] > 0) {
            q[i] -= 1;
            if (!fullcheck(q)) { q[i] += 1; break; }
        }
        m[i] = q[i];
    }
    if (!fullcheck(m)) fail("BoundTooSmall", "value_semigroup: conductor candidates do not meet");

    PointSet smalls;
    for_box(Point::zero(d), m, [&](const Point& p) {
        if (mem[index(p)]) smalls.push_back(p);
    });
    return GoodSemigroup(Point(m), std::move(smalls), true);
}

}  // namespace

GoodSemigroup value_semigroup(const CurveParam& c, const Point& bound) {
    const int d = c.dim();
    if (d == 0) fail("EmptySet", "value_semigroup: no branches");
    if (bound.dim() != d) fail("DimensionMismatch", "value_semigroup: bound dimension mismatch");

    bool unit_free = true;
    for (const auto& b : c.branches) {
        auto oy = b.y.order();
        if ((oy && *oy == 0) || (!oy && b.y.precision() == 0)) unit_free = false;
    }
    if (unit_free) return local_value_semigroup(c, bound);

    // semilocal parametrization: resolve the points separately and take the product
    auto groups = split_param_groups(c);
    if (groups.size() == 1 && groups[0].second.dim() == d) {
        // single point after recentering
        return local_value_semigroup(groups[0].second, bound);
    }
    GoodSemigroup P = GoodSemigroup::full(0);
    std::vector<int> order;
    bool first = true;
    for (auto& [coords, grp] : groups) {
        GoodSemigroup part = value_semigroup(grp, restrict_to(bound, coords));
        if (first) {
            P = part;
            first = false;
        } else {
            P = product(P, part);
        }
        order.insert(order.end(), coords.begin(), coords.end());
    }
    std::vector<int> perm(d);
    for (int i = 0; i < d; ++i) {
        auto it = std::find(order.begin(), order.end(), i + 1);
        perm[i] = static_cast<int>(it - order.begin());
    }
    return permute_coords(P, perm);
}

CurveParam blow_up_param(const CurveParam& c) {
    CurveParam out;
    for (int i = 0; i < c.dim(); ++i) {
        const BranchParam& b = c.branches[i];
        Nat nx = b.x.order_checked("blow_up_param: x");
        auto oy = b.y.order();
        if (oy && *oy < nx)
            fail("NotTransversal", "blow_up_param: branch " + std::to_string(i + 1) +
                                       " has ord(y) < ord(x); apply coordinate_change first");
        if (!oy && b.y.precision() <= nx)
            fail("InsufficientPrecision", "blow_up_param: cannot compare ord(y) with ord(x)");
        out.branches.push_back(BranchParam{b.x, b.y.divided_by(b.x)});
    }
    return out;
}

CurveParam coordinate_change(const CurveParam& c, CoordChange kind, const Rational& lambda) {
    CurveParam out;
    for (const auto& b : c.branches) {
        if (kind == CoordChange::swap)
            out.branches.push_back(BranchParam{b.y, b.x});
        else
            out.branches.push_back(BranchParam{b.x, b.y + b.x * lambda});
    }
    return out;
}

}  // namespace goodsemi
