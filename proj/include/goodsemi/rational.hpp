#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace goodsemi {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// canonical form: "n" for integers, "n/d" otherwise, sign on the numerator
std::string rational_str(const Rational& r);
Rational parse_rational(const std::string& s);

}  // namespace goodsemi
