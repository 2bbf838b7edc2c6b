#pragma once

#include <optional>
#include <string>
#include <vector>

#include "goodsemi/semigroup.hpp"

namespace goodsemi {

struct SequenceReport {
    bool ok = true;
    std::string reason;
    std::vector<int> restriction_numbers;  // r(e_j) for the reported prefix
    std::vector<bool> satellite;           // r(e_j) == 2
};

// Non-increasing + proximity check on a raw entry list (trailing 1 required).
SequenceReport analyze_sequence(const std::vector<int>& entries);

// Multiplicity sequence of a plane branch; stored up to its first 1, the tail
// of 1's is implicit.
class PlaneSequence {
public:
    explicit PlaneSequence(std::vector<int> entries);  // throws InvalidSequence
    static PlaneSequence smooth() { return PlaneSequence({1}); }

    int at(int j) const { return j < static_cast<int>(prefix_.size()) ? prefix_[j] : 1; }
    const std::vector<int>& prefix() const { return prefix_; }
    int prefix_length() const { return static_cast<int>(prefix_.size()); }
    PlaneSequence shifted() const;  // (e_1, e_2, ...)

    bool operator==(const PlaneSequence& o) const { return prefix_ == o.prefix_; }
    bool operator!=(const PlaneSequence& o) const { return prefix_ != o.prefix_; }

private:
    std::vector<int> prefix_;
};

// h(i): the unique h with e_i = e_{i+1} + ... + e_{i+h}.
int proximity_span(const PlaneSequence& e, int i);
// r(e_j): number of proximity sums containing e_j; r(e_0) = 1 by convention.
int restriction_number(const PlaneSequence& e, int j);

// Hamburger-Noether combinatorial type: one entry per row; h absent on the
// final (infinite) row, k present on bracketed rows [k, h].
struct HRow {
    std::optional<int> h;
    std::optional<int> k;
    bool operator==(const HRow& o) const { return h == o.h && k == o.k; }
};

class HType {
public:
    explicit HType(std::vector<HRow> rows);  // throws InvalidHType
    const std::vector<HRow>& rows() const { return rows_; }
    int r() const { return static_cast<int>(rows_.size()) - 1; }
    bool operator==(const HType& o) const { return rows_ == o.rows_; }

private:
    std::vector<HRow> rows_;
};

HType h_from_sequence(const PlaneSequence& e);
PlaneSequence sequence_from_h(const HType& H);

// Recursive blow-down: the numerical semigroup of a plane branch with the
// given multiplicity sequence.
GoodSemigroup semigroup_from_sequence(const PlaneSequence& e);
// Multiplicities along the iterated blow-up chain; errors NotPlane when S is
// not the value semigroup of a plane branch.
PlaneSequence sequence_from_semigroup(const GoodSemigroup& S);

}  // namespace goodsemi
