#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace goodsemi {

using Nat = long long;

// Element of N^d. Truncated contexts clamp coordinates to a cap point; a
// coordinate equal to the cap stands for that value and everything above it
// (the paper's inf convention), so plain integer comparison already treats
// two capped coordinates as equal and a capped one as above any uncapped one.
class Point {
public:
    Point() = default;
    explicit Point(std::vector<Nat> coords) : c_(std::move(coords)) {}

    static Point zero(int dim) { return Point(std::vector<Nat>(dim, 0)); }
    static Point ones(int dim) { return Point(std::vector<Nat>(dim, 1)); }
    static Point unit(int dim, int i);
    static Point constant(int dim, Nat v) { return Point(std::vector<Nat>(dim, v)); }

    int dim() const { return static_cast<int>(c_.size()); }
    Nat operator[](int i) const { return c_[i]; }
    Nat& operator[](int i) { return c_[i]; }
    const std::vector<Nat>& coords() const { return c_; }

    bool operator==(const Point& o) const { return c_ == o.c_; }
    bool operator!=(const Point& o) const { return c_ != o.c_; }
    // lexicographic; the canonical storage order for point sets
    bool operator<(const Point& o) const { return c_ < o.c_; }

    Point operator+(const Point& o) const;
    Point operator-(const Point& o) const;  // caller ensures nonnegativity
    Point operator*(Nat k) const;

    std::string str() const;

private:
    std::vector<Nat> c_;
};

std::ostream& operator<<(std::ostream& os, const Point& p);

Point wedge(const Point& a, const Point& b);  // componentwise min
Point vee(const Point& a, const Point& b);    // componentwise max
Point clamp(const Point& p, const Point& cap);

bool leq(const Point& a, const Point& b);         // componentwise <=
bool lt(const Point& a, const Point& b);          // <= and !=
bool dominates(const Point& a, const Point& b);   // a_i < b_i for all i
Nat coord_sum(const Point& p);

// Domination between capped representatives: subspace(b) dominates every
// point of subspace(a) iff for each i either b is capped at i or b_i > a_i.
bool dominates_capped(const Point& a, const Point& b, const Point& cap);

// Sorted-unique lexicographic point list; the canonical set representation.
using PointSet = std::vector<Point>;

void sort_unique(PointSet& s);
bool set_contains(const PointSet& s, const Point& p);
void set_insert(PointSet& s, const Point& p);

}  // namespace goodsemi
