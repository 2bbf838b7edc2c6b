#include "goodsemi/hn.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <stdexcept>

#include "goodsemi/errors.hpp"
#include "goodsemi/tree.hpp"

namespace goodsemi {

namespace {

constexpr Nat kInf = std::numeric_limits<Nat>::max() / 4;

TruncatedSeries constant(const Rational& c, Nat precision) {
    TruncatedSeries s(precision);
    s.add_term(0, c);
    return s;
}

// uniform slot access over the rows of an expansion
struct RowView {
    const HNExpansion* e;

    int rows_with_final() const { return e->r() + 1; }
    bool is_final(int row) const { return row == e->r(); }
    Nat h(int row) const { return is_final(row) ? kInf : e->finite_rows[row].h; }
    // nullopt: final-series coefficient beyond the known precision
    std::optional<Rational> value(int row, Nat i) const {
        if (!is_final(row)) return e->finite_rows[row].a[static_cast<size_t>(i - 1)];
        if (i >= e->final_series.precision()) return std::nullopt;
        return e->final_series.coeff(i);
    }
};

// The combinatorial frame of an expansion of type H(e): row lengths, the
// order chain n_j, and which coefficient slots are free.
struct Skeleton {
    std::vector<Nat> h;       // finite rows only
    std::vector<Nat> n;       // n_0..n_r
    std::vector<Nat> kslot;   // per finite row: first free slot, 0 = none free
    Nat final_first_free = 1; // k_g, or 1 when r = 0
    int r() const { return static_cast<int>(h.size()); }

    bool is_free(int row, Nat i) const {
        if (row == r()) return i >= final_first_free;
        if (row == 0) return true;
        return kslot[row] != 0 && i >= kslot[row];
    }
};

Skeleton make_skeleton(const PlaneSequence& e) {
    HType H = h_from_sequence(e);
    Skeleton sk;
    const int r = H.r();
    sk.n.assign(r + 1, 1);
    for (int j = r; j >= 1; --j) {
        const HRow& row = H.rows()[j];
        if (row.k)
            sk.n[j - 1] = static_cast<Nat>(*row.k) * sk.n[j];
        else
            sk.n[j - 1] = static_cast<Nat>(*row.h) * sk.n[j] + (j + 1 <= r ? sk.n[j + 1] : 1);
    }
    sk.h.resize(r);
    sk.kslot.assign(r, 0);
    for (int j = 0; j < r; ++j) {
        sk.h[j] = *H.rows()[j].h;
        if (H.rows()[j].k) sk.kslot[j] = *H.rows()[j].k;
    }
    sk.final_first_free = r >= 1 ? static_cast<Nat>(*H.rows()[r].k) : 1;
    return sk;
}

HNExpansion assemble(const Skeleton& sk, const std::vector<std::vector<Rational>>& row_vals,
                     const std::map<Nat, Rational>& final_vals, Nat precision) {
    HNExpansion out;
    out.n = sk.n;
    for (int j = 0; j < sk.r(); ++j) out.finite_rows.push_back({sk.h[j], row_vals[j]});
    TruncatedSeries fin(precision);
    for (const auto& [e, c] : final_vals) fin.add_term(e, c);
    out.final_series = fin;
    return out;
}

}  // namespace

HNExpansion hn_expand(const BranchParam& b) {
    const Nat nx = b.x.order_checked("hn_expand: transversal parameter");
    if (nx < 1) fail("NotTransversal", "hn_expand: x must vanish at the origin");
    auto oy = b.y.order();
    if (oy && *oy < nx)
        fail("NotTransversal", "hn_expand: ord(y) < ord(x); swap coordinates first");
    if (!oy && b.y.precision() <= nx)
        fail("InsufficientPrecision", "hn_expand: cannot compare ord(y) with ord(x)");

    HNExpansion out;
    out.n.push_back(nx);
    TruncatedSeries zj = b.x;
    TruncatedSeries zprev = b.y;
    while (true) {
        const Nat nzj = out.n.back();
        if (nzj == 1) {
            // final row: z_{r-1} as a series in the uniformizer z_r
            std::map<Nat, Rational> fin;
            TruncatedSeries w = zprev;
            Nat i = 0;
            while (true) {
                TruncatedSeries u = w.divided_by(zj);
                if (u.precision() <= 0) break;
                ++i;
                Rational a = u.coeff(0);
                if (a != 0) fin[i] = a;
                w = u - constant(a, u.precision());
            }
            TruncatedSeries S(i + 1);
            for (const auto& [e, c] : fin) S.add_term(e, c);
            out.final_series = S;
            return out;
        }
        std::vector<Rational> coeffs;
        TruncatedSeries w = zprev;
        while (true) {
            TruncatedSeries u = w.divided_by(zj);
            if (u.precision() <= 0)
                fail("InsufficientPrecision", "hn_expand: cannot decide the next coefficient");
            Rational a = u.coeff(0);
            TruncatedSeries wn = u - constant(a, u.precision());
            coeffs.push_back(a);
            auto ow = wn.order();
            if (!ow)
                fail("InsufficientPrecision",
                     "hn_expand: remainder vanishes to precision; cannot close the row");
            if (*ow < nzj) {
                out.finite_rows.push_back({static_cast<Nat>(coeffs.size()), coeffs});
                out.n.push_back(*ow);
                zprev = zj;
                zj = wn;
                break;
            }
            w = wn;
        }
    }
}

BranchParam hn_to_param(const HNExpansion& h, Nat precision) {
    const int r = h.r();
    TruncatedSeries t = TruncatedSeries::monomial(1, 1, precision);
    // z_{r-1} from the final row (for r = 0 this is y itself, with x = t)
    TruncatedSeries z_hi = t;
    TruncatedSeries z_lo(std::min(precision, h.final_series.precision()));
    for (const auto& [e, c] : h.final_series.terms()) z_lo.add_term(e, c);
    for (int j = r - 1; j >= 0; --j) {
        const HNRow& row = h.finite_rows[j];
        TruncatedSeries acc = z_lo.pow(row.h) * z_hi;
        TruncatedSeries pw = z_lo;
        for (Nat i = 1; i <= row.h; ++i) {
            acc = acc + pw * row.a[static_cast<size_t>(i - 1)];
            if (i < row.h) pw = pw * z_lo;
        }
        z_hi = z_lo;
        z_lo = acc;
    }
    if (r == 0) return BranchParam{t, z_lo};
    return BranchParam{z_hi, z_lo};
}

PlaneSequence multiplicity_sequence(const HNExpansion& h) {
    if (h.n.empty() || h.n.back() != 1)
        fail("InvalidHType", "multiplicity_sequence: not a branch expansion (final order != 1)");
    std::vector<int> seq;
    for (int j = 0; j < h.r(); ++j)
        for (Nat c = 0; c < h.finite_rows[j].h; ++c) seq.push_back(static_cast<int>(h.n[j]));
    seq.push_back(1);
    return PlaneSequence(std::move(seq));
}

HNExpansion synth_branch(const PlaneSequence& e, Nat seed, Nat precision) {
    Skeleton sk = make_skeleton(e);
    Nat counter = seed;
    std::vector<std::vector<Rational>> row_vals(sk.r());
    for (int j = 0; j < sk.r(); ++j) {
        row_vals[j].assign(static_cast<size_t>(sk.h[j]), Rational(0));
        for (Nat i = 1; i <= sk.h[j]; ++i)
            if (sk.is_free(j, i)) row_vals[j][static_cast<size_t>(i - 1)] = Rational(counter++);
    }
    std::map<Nat, Rational> final_vals;
    final_vals[sk.final_first_free] = Rational(counter++);
    return assemble(sk, row_vals, final_vals, precision);
}

Nat noether_intersection(const PlaneSequence& e, const PlaneSequence& ep, long long k) {
    Nat sum = 0;
    for (long long j = 0; j <= k; ++j)
        sum += static_cast<Nat>(e.at(static_cast<int>(j))) * ep.at(static_cast<int>(j));
    return sum;
}

long long splitting_from_intersection(const PlaneSequence& e, const PlaneSequence& ep, Nat m) {
    if (m == 0) return -1;
    Nat sum = 0;
    for (long long k = 0;; ++k) {
        sum += static_cast<Nat>(e.at(static_cast<int>(k))) * ep.at(static_cast<int>(k));
        if (sum == m) return k;
        if (sum > m) fail("NoSuchK", std::to_string(m) + " is not a partial Noether sum");
    }
}

SplitResult splitting_data(const HNExpansion& A, const HNExpansion& B) {
    RowView ra{&A}, rb{&B};
    int s = 0;
    while (s < A.r() && s < B.r() && A.finite_rows[s] == B.finite_rows[s]) ++s;

    const Nat ha = ra.h(s);
    const Nat hb = rb.h(s);
    const Nat hmin = std::min(ha, hb);
    Nat t = 1;
    bool diff_found = false;
    while (t <= hmin) {
        auto va = ra.value(s, t);
        auto vb = rb.value(s, t);
        if (!va || !vb) {
            if (ha == kInf && hb == kInf)
                fail("IdenticalBranches",
                     "expansions agree to full precision; branches are not distinct");
            fail("InsufficientPrecision", "splitting_data: coefficient beyond known precision");
        }
        if (*va != *vb) { diff_found = true; break; }
        ++t;
    }
    if (!diff_found) {
        if (ha == hb)
            throw std::logic_error("splitting_data: identical finite rows escaped the row scan");
        t = hmin + 1;  // the shorter row ends; structural difference
    }

    Nat k = t - 1;
    Nat inter = 0;
    for (int j = 0; j < s; ++j) {
        k += A.finite_rows[j].h;
        inter += A.finite_rows[j].h * A.n[j] * B.n[j];
    }
    if (t <= hmin) {
        inter += t * A.n[s] * B.n[s];
    } else if (hb < ha) {
        inter += hb * A.n[s] * B.n[s] + B.n[s + 1] * A.n[s];
    } else {
        inter += ha * A.n[s] * B.n[s] + A.n[s + 1] * B.n[s];
    }

    SplitResult res;
    res.s = s;
    res.t = t;
    res.k = k;
    res.intersection = inter;
    return res;
}

HNExpansion synth_branch_with_splitting(const PlaneSequence& e, const HNExpansion& ref, int k,
                                        Nat seed, Nat precision) {
    if (k < 0) fail("NotAdmissible", "synth against a reference needs k >= 0");
    {
        PlaneSequence eref = multiplicity_sequence(ref);
        AdmissibilityReport rep = is_admissible(eref, e, k);
        if (!rep.ok) fail("NotAdmissible", rep.failing_clause);
    }
    Skeleton sk = make_skeleton(e);
    RowView rv{&ref};
    Nat counter = seed;

    std::vector<std::vector<Rational>> row_vals(sk.r());
    for (int j = 0; j < sk.r(); ++j) row_vals[j].assign(static_cast<size_t>(sk.h[j]), Rational(0));
    std::map<Nat, Rational> final_vals;

    auto store = [&](int row, Nat i, const Rational& v) {
        if (row < sk.r())
            row_vals[row][static_cast<size_t>(i - 1)] = v;
        else if (v != 0)
            final_vals[i] = v;
    };
    auto misfit = [&](const char* what) -> void {
        throw std::logic_error(std::string("synth_branch_with_splitting: ") + what +
                               " (admissible data should never reach this)");
    };

    int row = 0;
    Nat i = 1;
    bool aligned = true;
    auto sk_h = [&](int rr) { return rr == sk.r() ? kInf : sk.h[rr]; };

    // copy the k common points
    for (Nat pos = 1; pos <= static_cast<Nat>(k); ++pos) {
        while (row < sk.r() && i > sk_h(row)) {
            if (rv.h(row) != sk_h(row)) misfit("row boundary mismatch inside the common prefix");
            ++row;
            i = 1;
        }
        if (!aligned || row >= rv.rows_with_final() || i > rv.h(row))
            misfit("reference expansion exhausted inside the common prefix");
        auto v = rv.value(row, i);
        if (!v)
            fail("InsufficientPrecision",
                 "synth: the reference expansion is too short for the requested splitting");
        if (!sk.is_free(row, i)) {
            if (*v != 0) misfit("forced-zero slot meets a nonzero reference coefficient");
        } else {
            store(row, i, *v);
        }
        ++i;
    }

    // the slot where the branches must part
    while (row < sk.r() && i > sk_h(row)) {
        if (rv.h(row) != sk_h(row)) aligned = false;
        ++row;
        i = 1;
    }
    bool ref_has = aligned && row < rv.rows_with_final() && i <= rv.h(row);
    if (sk.is_free(row, i)) {
        std::optional<Rational> avoid;
        if (ref_has) {
            auto v = rv.value(row, i);
            if (!v)
                fail("InsufficientPrecision",
                     "synth: cannot read the reference coefficient at the splitting slot");
            avoid = *v;
        }
        while (avoid && Rational(counter) == *avoid) ++counter;
        store(row, i, Rational(counter++));
    } else if (ref_has) {
        auto v = rv.value(row, i);
        if (!v) fail("InsufficientPrecision", "synth: undecidable reference coefficient");
        if (*v == 0) misfit("cannot part at a slot forced to zero on both sides");
    }
    ++i;

    // generic values for everything after the parting slot
    while (row < sk.r()) {
        for (; i <= sk_h(row); ++i)
            if (sk.is_free(row, i)) store(row, i, Rational(counter++));
        ++row;
        i = 1;
    }
    if (i <= sk.final_first_free)
        store(sk.r(), sk.final_first_free, Rational(counter++));
    if (!final_vals.count(sk.final_first_free))
        misfit("final row lost its leading coefficient");

    return assemble(sk, row_vals, final_vals, precision);
}

std::vector<BranchParam> synth_curve(const std::vector<PlaneSequence>& E,
                                     const std::vector<std::vector<int>>& K, Nat precision) {
    const int d = static_cast<int>(E.size());
    if (d == 0) fail("BadSplittingData", "no sequences");
    if (d == 1) return {hn_to_param(synth_branch(E[0], 1, precision), precision)};
    if (static_cast<int>(K.size()) != d) fail("BadSplittingData", "K size mismatch");
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            AdmissibilityReport rep = is_admissible(E[a], E[b], K[a][b]);
            if (!rep.ok)
                fail("NotAdmissible", "pair (" + std::to_string(a + 1) + "," +
                                          std::to_string(b + 1) + "): " + rep.failing_clause);
        }
    CompatibilityReport comp = check_compatibility(K);
    if (!comp.ok) fail("NotCompatible", comp.detail);

    // classes of branches through a common point (k >= 0)
    std::vector<int> root(d);
    for (int a = 0; a < d; ++a) root[a] = a;
    std::function<int(int)> find = [&](int x) { return root[x] == x ? x : root[x] = find(root[x]); };
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            if (K[a][b] >= 0) root[find(a)] = find(b);
    std::map<int, std::vector<int>> classes;
    for (int a = 0; a < d; ++a) classes[find(a)].push_back(a);

    auto seed_of = [](int branch) { return static_cast<Nat>(1 + 101 * branch); };
    std::vector<std::optional<HNExpansion>> exps(d);
    for (auto& [cls, members] : classes) {
        (void)cls;
        std::sort(members.begin(), members.end());
        for (int idx = static_cast<int>(members.size()) - 1; idx >= 0; --idx) {
            int b0 = members[idx];
            if (idx == static_cast<int>(members.size()) - 1) {
                exps[b0] = synth_branch(E[b0], seed_of(b0), precision);
                continue;
            }
            int jstar = members[idx + 1];
            for (size_t j = idx + 2; j < members.size(); ++j)
                if (K[b0][members[j]] > K[b0][jstar]) jstar = members[j];
            bool done = false;
            for (Nat salt = 0; salt < 64 && !done; ++salt) {
                HNExpansion cand = synth_branch_with_splitting(E[b0], *exps[jstar], K[b0][jstar],
                                                               seed_of(b0) + 37 * salt, precision);
                done = true;
                for (size_t j = idx + 1; j < members.size() && done; ++j) {
                    SplitResult sp = splitting_data(cand, *exps[members[j]]);
                    if (static_cast<int>(sp.k) != K[b0][members[j]]) done = false;
                }
                if (done) exps[b0] = std::move(cand);
            }
            if (!done)
                throw std::logic_error("synth_curve: could not avoid coefficient collisions");
        }
    }

    std::vector<BranchParam> params;
    params.reserve(d);
    for (int b = 0; b < d; ++b) params.push_back(hn_to_param(*exps[b], precision));
    return params;
}

}  // namespace goodsemi
