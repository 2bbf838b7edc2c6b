#pragma once

// Test-only oracles, independent of the library's computation paths.

#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "goodsemi/plane_sequence.hpp"
#include "goodsemi/semigroup.hpp"

namespace goodsemi::oracle {

// Numerical semigroup generated by `gens`, truncated at its conductor.
// The working bound must comfortably exceed the Frobenius number.
inline GoodSemigroup numerical_from_gens(const std::vector<Nat>& gens, Nat bound = 256) {
    std::vector<char> in(static_cast<size_t>(bound + 1), 0);
    in[0] = 1;
    for (Nat g : gens)
        if (g >= 1 && g <= bound) in[static_cast<size_t>(g)] = 1;
    for (Nat v = 1; v <= bound; ++v) {
        if (in[v]) continue;
        for (Nat g : gens)
            if (g >= 1 && g <= v && in[v - g]) {
                in[v] = 1;
                break;
            }
    }
    Nat c = bound;
    while (c > 0 && in[c - 1]) --c;
    PointSet smalls;
    for (Nat v = 0; v <= c; ++v)
        if (in[v]) smalls.push_back(Point({v}));
    return GoodSemigroup(Point({c}), std::move(smalls), true);
}

// Monomial-curve blow-up: closure of {s - e : s in S, s >= e} + {0} under
// addition. For 2-generated plane semigroups this is the ring blow-up too.
inline GoodSemigroup naive_numerical_blowup(const GoodSemigroup& S) {
    Nat e = fine_multiplicity(S)[0];
    Nat bound = S.conductor()[0] + 2 * e + 4;
    std::vector<Nat> gens;
    for (const auto& p : S.smalls())
        if (p[0] >= e) gens.push_back(p[0] - e);
    // elements above the conductor also shift down
    for (Nat v = S.conductor()[0]; v <= bound; ++v) gens.push_back(v - e);
    gens.erase(std::remove(gens.begin(), gens.end(), 0), gens.end());
    return numerical_from_gens(gens, bound);
}

// All plane sequences whose branch semigroup has conductor (= sum e_i(e_i-1))
// at most `max_conductor`.
inline std::vector<PlaneSequence> plane_sequences_upto(int max_conductor) {
    std::vector<PlaneSequence> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int last, int cost) {
        if (!cur.empty()) {
            std::vector<int> cand = cur;
            cand.push_back(1);
            SequenceReport rep = analyze_sequence(cand);
            if (rep.ok) out.push_back(PlaneSequence(cand));
        }
        for (int v = 2; v <= last; ++v) {
            int c = cost + v * (v - 1);
            if (c > max_conductor) continue;
            cur.push_back(v);
            rec(v, c);
            cur.pop_back();
        }
    };
    out.push_back(PlaneSequence::smooth());
    rec(6, 0);  // e_0(e_0 - 1) <= 30 forces e_0 <= 6
    std::sort(out.begin(), out.end(),
              [](const PlaneSequence& a, const PlaneSequence& b) { return a.prefix() < b.prefix(); });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// Brute-force good-semigroup generator: closes a random generating set under
// wedge, clamped addition and (G2)-completions inside a box, then truncates at
// the minimal conductor.
inline GoodSemigroup random_good(std::mt19937& rng, int d, Nat max_coord) {
    auto coord = [&](Nat lo, Nat hi) {
        return std::uniform_int_distribution<Nat>(lo, hi)(rng);
    };
    while (true) {
        Point B = Point::zero(d);
        for (int i = 0; i < d; ++i) B[i] = coord(2, max_coord);
        std::set<Point> S;
        S.insert(Point::zero(d));
        S.insert(B);
        int ngens = static_cast<int>(coord(1, 3));
        for (int g = 0; g < ngens; ++g) {
            Point p = Point::zero(d);
            bool nz = false;
            for (int i = 0; i < d; ++i) {
                p[i] = coord(0, B[i]);
                nz = nz || p[i] > 0;
            }
            if (nz) S.insert(p);
        }
        // closure loop
        bool changed = true;
        while (changed) {
            changed = false;
            std::vector<Point> elems(S.begin(), S.end());
            for (size_t a = 0; a < elems.size() && !changed; ++a)
                for (size_t b = a; b < elems.size() && !changed; ++b) {
                    Point w = wedge(elems[a], elems[b]);
                    if (!S.count(w)) {
                        S.insert(w);
                        changed = true;
                        break;
                    }
                    Point s = clamp(elems[a] + elems[b], B);
                    if (!S.count(s)) {
                        S.insert(s);
                        changed = true;
                        break;
                    }
                    if (a == b) continue;
                    for (int i = 0; i < d; ++i) {
                        if (elems[a][i] != elems[b][i] || elems[a][i] >= B[i]) continue;
                        bool found = false;
                        for (const auto& e : S) {
                            if (e[i] <= elems[a][i]) continue;
                            bool okw = true;
                            for (int j = 0; j < d && okw; ++j) {
                                if (j == i) continue;
                                if (elems[a][j] != elems[b][j])
                                    okw = e[j] == std::min(elems[a][j], elems[b][j]);
                                else
                                    okw = e[j] >= elems[a][j];
                            }
                            if (okw) { found = true; break; }
                        }
                        if (!found) {
                            Point eps = wedge(elems[a], elems[b]);
                            eps[i] = elems[a][i] + 1;
                            S.insert(eps);
                            changed = true;
                            break;
                        }
                    }
                }
        }
        // minimal conductor inside the box
        auto member = [&](const Point& p) { return S.count(clamp(p, B)) != 0; };
        auto valid = [&](const Point& q) {
            bool ok = true;
            for_box(q, B, [&](const Point& beta) {
                if (ok && !member(beta)) ok = false;
            });
            return ok;
        };
        Point m = B;
        for (int i = 0; i < d; ++i) {
            Point q = B;
            while (q[i] > 0) {
                q[i] -= 1;
                if (!valid(q)) { q[i] += 1; break; }
            }
            m[i] = q[i];
        }
        if (!valid(m)) continue;
        PointSet smalls;
        for (const auto& p : S) smalls.push_back(clamp(p, m));
        sort_unique(smalls);
        try {
            return GoodSemigroup(Point(m), std::move(smalls), true);
        } catch (...) {
            // extremely rare: retruncation broke an axiom; draw again
        }
    }
}

}  // namespace goodsemi::oracle
