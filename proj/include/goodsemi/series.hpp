#pragma once

#include <map>
#include <optional>

#include "goodsemi/point.hpp"
#include "goodsemi/rational.hpp"

namespace goodsemi {

// Exact-rational power series truncated at a known-correct order: coefficients
// are stored (nonzero only) for exponents below `precision`; nothing is known
// beyond it.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    explicit TruncatedSeries(Nat precision) : precision_(precision) {}
    static TruncatedSeries monomial(Nat exp, const Rational& c, Nat precision);

    Nat precision() const { return precision_; }
    const std::map<Nat, Rational>& terms() const { return terms_; }
    Rational coeff(Nat e) const;
    void add_term(Nat e, const Rational& c);  // within precision; merges, drops zeros

    std::optional<Nat> order() const;  // least nonzero exponent below precision
    Nat order_checked(const char* what) const;

    TruncatedSeries truncated(Nat p) const;
    TruncatedSeries shifted(Nat k) const;  // multiply by t^k

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator*(const Rational& c) const;
    TruncatedSeries operator-() const;

    // quotient at the precision the data supports; the divisor must have a
    // decidable order not exceeding this one's
    TruncatedSeries divided_by(const TruncatedSeries& g) const;

    TruncatedSeries pow(Nat n) const;
    // substitution this(g) with ord(g) >= 1
    TruncatedSeries compose(const TruncatedSeries& g) const;

    bool same_terms(const TruncatedSeries& o) const { return terms_ == o.terms_; }

private:
    Nat precision_ = 0;
    std::map<Nat, Rational> terms_;
};

}  // namespace goodsemi
