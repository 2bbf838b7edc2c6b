#include "goodsemi/point.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <sstream>

namespace goodsemi {

Point Point::unit(int dim, int i) {
    std::vector<Nat> c(dim, 0);
    c[i] = 1;
    return Point(std::move(c));
}

Point Point::operator+(const Point& o) const {
    assert(dim() == o.dim());
    std::vector<Nat> r(c_);
    for (int i = 0; i < dim(); ++i) r[i] += o.c_[i];
    return Point(std::move(r));
}

Point Point::operator-(const Point& o) const {
    assert(dim() == o.dim());
    std::vector<Nat> r(c_);
    for (int i = 0; i < dim(); ++i) r[i] -= o.c_[i];
    return Point(std::move(r));
}

Point Point::operator*(Nat k) const {
    std::vector<Nat> r(c_);
    for (auto& v : r) v *= k;
    return Point(std::move(r));
}

std::string Point::str() const {
    std::ostringstream os;
    os << *this;
    return os.str();
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
    os << '(';
    for (int i = 0; i < p.dim(); ++i) {
        if (i) os << ',';
        os << p[i];
    }
    return os << ')';
}

Point wedge(const Point& a, const Point& b) {
    assert(a.dim() == b.dim());
    std::vector<Nat> r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = std::min(a[i], b[i]);
    return Point(std::move(r));
}

Point vee(const Point& a, const Point& b) {
    assert(a.dim() == b.dim());
    std::vector<Nat> r(a.dim());
    for (int i = 0; i < a.dim(); ++i) r[i] = std::max(a[i], b[i]);
    return Point(std::move(r));
}

Point clamp(const Point& p, const Point& cap) { return wedge(p, cap); }

bool leq(const Point& a, const Point& b) {
    for (int i = 0; i < a.dim(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

bool lt(const Point& a, const Point& b) { return leq(a, b) && a != b; }

bool dominates(const Point& a, const Point& b) {
    for (int i = 0; i < a.dim(); ++i)
        if (a[i] >= b[i]) return false;
    return true;
}

Nat coord_sum(const Point& p) {
    Nat s = 0;
    for (int i = 0; i < p.dim(); ++i) s += p[i];
    return s;
}

bool dominates_capped(const Point& a, const Point& b, const Point& cap) {
    if (a == b) return false;
    for (int i = 0; i < a.dim(); ++i)
        if (b[i] != cap[i] && b[i] <= a[i]) return false;
    return true;
}

void sort_unique(PointSet& s) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
}

bool set_contains(const PointSet& s, const Point& p) {
    return std::binary_search(s.begin(), s.end(), p);
}

void set_insert(PointSet& s, const Point& p) {
    auto it = std::lower_bound(s.begin(), s.end(), p);
    if (it == s.end() || *it != p) s.insert(it, p);
}

}  // namespace goodsemi
