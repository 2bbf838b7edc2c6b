#include "goodsemi/plane_sequence.hpp"

#include <algorithm>
#include <sstream>

#include "goodsemi/blowup.hpp"
#include "goodsemi/errors.hpp"

namespace goodsemi {

namespace {

int entry_at(const std::vector<int>& e, int j) {
    return j < static_cast<int>(e.size()) ? e[j] : 1;
}

// h(i) on a raw non-increasing positive list; -1 when no exact decomposition.
int raw_span(const std::vector<int>& e, int i) {
    int target = entry_at(e, i);
    int sum = 0;
    for (int h = 1; h <= target; ++h) {
        sum += entry_at(e, i + h);
        if (sum == target) return h;
        if (sum > target) return -1;
    }
    return -1;
}

int raw_restriction(const std::vector<int>& e, int j) {
    if (j == 0) return 1;  // the origin counts as a free point
    int count = 0;
    int lo = std::max(0, j - entry_at(e, 0));
    for (int i = lo; i < j; ++i) {
        int h = raw_span(e, i);
        if (h >= 0 && j <= i + h) ++count;
    }
    return count;
}

}  // namespace

SequenceReport analyze_sequence(const std::vector<int>& entries) {
    SequenceReport rep;
    auto reject = [&](std::string why) {
        rep.ok = false;
        rep.reason = std::move(why);
        return rep;
    };
    if (entries.empty()) return reject("empty sequence");
    for (int v : entries)
        if (v <= 0) return reject("entries must be positive");
    for (size_t i = 0; i + 1 < entries.size(); ++i)
        if (entries[i] < entries[i + 1]) return reject("sequence must be non-increasing");
    if (entries.back() != 1) return reject("sequence must end at 1 (tail of 1's is implicit)");

    for (size_t i = 0; i + 1 < entries.size(); ++i) {
        int ei = entries[i];
        int en = entries[i + 1];
        if (ei == en) continue;
        int q = ei / en;
        int r = ei % en;
        for (int j = 1; j <= q; ++j)
            if (entry_at(entries, static_cast<int>(i) + j) != en) {
                std::ostringstream os;
                os << "proximity fails at index " << i << ": expected " << q << " copies of " << en;
                return reject(os.str());
            }
        if (r != 0 && entry_at(entries, static_cast<int>(i) + q + 1) != r) {
            std::ostringstream os;
            os << "proximity fails at index " << i << ": remainder " << r << " missing";
            return reject(os.str());
        }
    }

    int span0 = raw_span(entries, 0);
    int report_len = static_cast<int>(entries.size()) + std::max(span0, 1);
    for (int j = 0; j < report_len; ++j) {
        int r = raw_restriction(entries, j);
        rep.restriction_numbers.push_back(r);
        rep.satellite.push_back(r == 2);
    }
    return rep;
}

PlaneSequence::PlaneSequence(std::vector<int> entries) {
    SequenceReport rep = analyze_sequence(entries);
    if (!rep.ok) fail("InvalidSequence", "not a plane sequence: " + rep.reason);
    auto it = std::find(entries.begin(), entries.end(), 1);
    prefix_.assign(entries.begin(), it + 1);
}

PlaneSequence PlaneSequence::shifted() const {
    if (prefix_.size() == 1) return smooth();
    return PlaneSequence(std::vector<int>(prefix_.begin() + 1, prefix_.end()));
}

int proximity_span(const PlaneSequence& e, int i) {
    int h = raw_span(e.prefix(), i);
    if (h < 0) fail("InvalidSequence", "no proximity decomposition");
    return h;
}

int restriction_number(const PlaneSequence& e, int j) {
    return raw_restriction(e.prefix(), j);
}

HType::HType(std::vector<HRow> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) fail("InvalidHType", "no rows");
    const int r = static_cast<int>(rows_.size()) - 1;
    for (int j = 0; j <= r; ++j) {
        const HRow& row = rows_[j];
        if (j < r) {
            if (!row.h || *row.h < 1) fail("InvalidHType", "non-final rows need a finite h >= 1");
        } else if (row.h) {
            fail("InvalidHType", "the final row is infinite");
        }
        if (row.k) {
            if (j == 0) fail("InvalidHType", "row 0 cannot be bracketed");
            if (*row.k < 2) fail("InvalidHType", "bracket k must be at least 2");
            if (row.h && *row.k > *row.h) fail("InvalidHType", "bracket k exceeds h");
        }
    }
    if (r >= 1 && !rows_[r].k) fail("InvalidHType", "the final row must be bracketed when r >= 1");
}

HType h_from_sequence(const PlaneSequence& e) {
    // runs n_0 > n_1 > ... > n_r = 1 with repetition counts h_0..h_{r-1}
    std::vector<int> n, h;
    const auto& p = e.prefix();
    for (size_t i = 0; i < p.size();) {
        size_t j = i;
        while (j < p.size() && p[j] == p[i]) ++j;
        n.push_back(p[i]);
        h.push_back(static_cast<int>(j - i));
        i = j;
    }
    const int r = static_cast<int>(n.size()) - 1;
    std::vector<HRow> rows(r + 1);
    for (int j = 0; j < r; ++j) rows[j].h = h[j];
    for (int j = 1; j <= r; ++j)
        if (n[j - 1] % n[j] == 0) rows[j].k = n[j - 1] / n[j];
    return HType(std::move(rows));
}

PlaneSequence sequence_from_h(const HType& H) {
    const int r = H.r();
    std::vector<Nat> n(r + 1, 1);
    for (int j = r; j >= 1; --j) {
        const HRow& row = H.rows()[j];
        if (row.k)
            n[j - 1] = static_cast<Nat>(*row.k) * n[j];
        else
            n[j - 1] = static_cast<Nat>(*row.h) * n[j] + (j + 1 <= r ? n[j + 1] : 1);
    }
    std::vector<int> seq;
    for (int j = 0; j < r; ++j)
        for (int c = 0; c < *H.rows()[j].h; ++c) seq.push_back(static_cast<int>(n[j]));
    seq.push_back(1);
    return PlaneSequence(std::move(seq));
}

GoodSemigroup semigroup_from_sequence(const PlaneSequence& e) {
    if (e.prefix_length() == 1) return GoodSemigroup::full(1);
    GoodSemigroup up = semigroup_from_sequence(e.shifted());
    return blow_down_semigroup(up, Point({static_cast<Nat>(e.at(0))}));
}

PlaneSequence sequence_from_semigroup(const GoodSemigroup& S0) {
    if (S0.dim() != 1) fail("DimensionMismatch", "sequence_from_semigroup is a d=1 operation");
    std::vector<int> seq;
    GoodSemigroup S = S0;
    const GoodSemigroup line = GoodSemigroup::full(1);
    Nat guard = S0.conductor()[0] + 3;
    try {
        while (S != line) {
            if (--guard < 0) fail("NotPlane", "blow-up chain does not terminate");
            seq.push_back(static_cast<int>(fine_multiplicity(S)[0]));
            S = blow_up_semigroup(S).semigroup;
        }
    } catch (const DomainError& e) {
        // NegativeCoordinate / NotGood along the chain: not a plane-branch semigroup
        fail("NotPlane", std::string("blow-up chain broke: ") + e.what());
    }
    seq.push_back(1);
    SequenceReport rep = analyze_sequence(seq);
    if (!rep.ok) fail("NotPlane", "multiplicity chain is not a plane sequence: " + rep.reason);
    PlaneSequence result(seq);
    if (semigroup_from_sequence(result) != S0)
        fail("NotPlane", "semigroup is not reconstructed by its multiplicity chain");
    return result;
}

}  // namespace goodsemi
