#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace ppnfifo::presburger {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// An integer point of a parameter-free set, in the space's column order.
using Point = std::vector<std::int64_t>;

/// Values for the symbolic parameters of a set, relation or schedule.
using ParamAssignment = std::map<std::string, std::int64_t>;

Integer floor_div(const Integer& num, const Integer& den);
Integer ceil_div(const Integer& num, const Integer& den);
Integer floor(const Rational& r);
Integer ceil(const Rational& r);

/// Narrows to 64 bits; throws ppnfifo::Error when the value does not fit.
std::int64_t to_int64(const Integer& v);

}  // namespace ppnfifo::presburger
