#pragma once

#include <boost/rational.hpp>

namespace rasym {

// Exact arithmetic for all closed-form quantities; floats appear only in
// empirical means and p-values.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace rasym
