#include "goodsemi/series.hpp"

#include <algorithm>

#include "goodsemi/errors.hpp"

namespace goodsemi {

std::string rational_str(const Rational& r) { return r.str(); }

Rational parse_rational(const std::string& s) {
    if (s.empty()) fail("BadNumber", "empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) fail("BadNumber", "zero denominator");
        return Rational(num, den);
    } catch (const std::runtime_error&) {
        fail("BadNumber", "cannot parse rational '" + s + "'");
    }
}

TruncatedSeries TruncatedSeries::monomial(Nat exp, const Rational& c, Nat precision) {
    TruncatedSeries s(precision);
    s.add_term(exp, c);
    return s;
}

Rational TruncatedSeries::coeff(Nat e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(Nat e, const Rational& c) {
    if (e < 0) fail("BadNumber", "negative exponent");
    if (e >= precision_ || c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

std::optional<Nat> TruncatedSeries::order() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
}

Nat TruncatedSeries::order_checked(const char* what) const {
    auto o = order();
    if (!o)
        fail("InsufficientPrecision",
             std::string(what) + ": order undecidable (series vanishes to precision " +
                 std::to_string(precision_) + ")");
    return *o;
}

TruncatedSeries TruncatedSeries::truncated(Nat p) const {
    TruncatedSeries s(std::min(p, precision_));
    for (const auto& [e, c] : terms_) s.add_term(e, c);
    return s;
}

TruncatedSeries TruncatedSeries::shifted(Nat k) const {
    TruncatedSeries s(precision_ + k);
    for (const auto& [e, c] : terms_) s.add_term(e + k, c);
    return s;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    TruncatedSeries s(std::min(precision_, o.precision_));
    for (const auto& [e, c] : terms_) s.add_term(e, c);
    for (const auto& [e, c] : o.terms_) s.add_term(e, c);
    return s;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    TruncatedSeries s(std::min(precision_, o.precision_));
    for (const auto& [e, c] : terms_) s.add_term(e, c);
    for (const auto& [e, c] : o.terms_) s.add_term(e, -c);
    return s;
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries s(precision_);
    for (const auto& [e, c] : terms_) s.add_term(e, -c);
    return s;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    const Nat lb1 = order().value_or(precision_);
    const Nat lb2 = o.order().value_or(o.precision_);
    TruncatedSeries s(std::min(precision_ + lb2, o.precision_ + lb1));
    for (const auto& [e1, c1] : terms_)
        for (const auto& [e2, c2] : o.terms_) s.add_term(e1 + e2, c1 * c2);
    return s;
}

TruncatedSeries TruncatedSeries::operator*(const Rational& c) const {
    TruncatedSeries s(precision_);
    if (c != 0)
        for (const auto& [e, cc] : terms_) s.add_term(e, cc * c);
    return s;
}

TruncatedSeries TruncatedSeries::divided_by(const TruncatedSeries& g) const {
    const Nat a = g.order_checked("series division");
    if (terms_.empty()) {
        // a zero dividend up to precision: quotient is zero up to what the data supports
        return TruncatedSeries(std::max<Nat>(precision_ - a, 0));
    }
    const Nat b = order_checked("series division");
    if (b < a) fail("NotDivisible", "series division would produce a negative order");
    const Nat m = b - a;
    // h known modulo t^K with f = g h
    const Nat K = std::min(precision_, g.precision_ + m) - a;
    TruncatedSeries h(K);
    const Rational g0 = g.coeff(a);
    std::map<Nat, Rational> rem = terms_;  // running remainder of f - g*h
    for (Nat e = m; e < K; ++e) {
        auto it = rem.find(e + a);
        Rational c = it == rem.end() ? Rational(0) : it->second;
        if (c == 0) continue;
        Rational he = c / g0;
        h.add_term(e, he);
        for (const auto& [ge, gc] : g.terms()) {
            Nat ee = ge + e;
            auto [rit, ins] = rem.emplace(ee, -gc * he);
            if (!ins) {
                rit->second -= gc * he;
                if (rit->second == 0) rem.erase(rit);
            } else if (rit->second == 0) {
                rem.erase(rit);
            }
        }
    }
    return h;
}

TruncatedSeries TruncatedSeries::pow(Nat n) const {
    if (n == 0) {
        // 1 has no intrinsic truncation; cap generously by this precision
        TruncatedSeries one(precision_ + order().value_or(precision_));
        one.add_term(0, 1);
        return one;
    }
    TruncatedSeries r = *this;
    for (Nat i = 1; i < n; ++i) r = r * (*this);
    return r;
}

TruncatedSeries TruncatedSeries::compose(const TruncatedSeries& g) const {
    const Nat gl = g.order().value_or(g.precision_);
    if (gl < 1) fail("NotDivisible", "composition needs a substituend of positive order");
    // Horner over the stored exponents, highest first
    TruncatedSeries acc(precision_ * gl);
    Nat prev = 0;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        if (first) {
            prev = it->first;
            first = false;
            acc = TruncatedSeries(precision_ * gl);
            acc.add_term(0, it->second);
            continue;
        }
        acc = acc * g.pow(prev - it->first);
        TruncatedSeries c(acc.precision());
        c.add_term(0, it->second);
        acc = acc + c;
        prev = it->first;
    }
    if (first) return TruncatedSeries(precision_ * gl);  // zero series
    acc = acc * g.pow(prev);
    // the unknown tail of this series enters at order >= precision * ord(g)
    return acc.truncated(precision_ * gl);
}

}  // namespace goodsemi
