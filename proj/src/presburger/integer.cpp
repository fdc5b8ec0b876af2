#include "ppnfifo/presburger/integer.hpp"

#include <limits>

#include "ppnfifo/errors.hpp"

namespace ppnfifo::presburger {

Integer floor_div(const Integer& num, const Integer& den) {
  Integer q;
  Integer r;
  boost::multiprecision::divide_qr(num, den, q, r);
  if (r != 0 && ((r < 0) != (den < 0))) --q;
  return q;
}

Integer ceil_div(const Integer& num, const Integer& den) {
  return -floor_div(-num, den);
}

Integer floor(const Rational& r) {
  return floor_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

Integer ceil(const Rational& r) {
  return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

std::int64_t to_int64(const Integer& v) {
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error("integer value " + v.str() + " does not fit in 64 bits");
  }
  return static_cast<std::int64_t>(v);
}

}  // namespace ppnfifo::presburger
