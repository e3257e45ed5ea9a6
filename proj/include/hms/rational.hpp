#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hms {

using Int = long long;
using Rat = boost::rational<Int>;

inline Rat rat(Int p, Int q = 1) { return Rat(p, q); }

inline double to_double(const Rat& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline bool is_integer(const Rat& r) { return r.denominator() == 1; }

// floor division for exact rationals
inline Int rat_floor(const Rat& r) {
  Int p = r.numerator(), q = r.denominator();
  Int d = p / q;
  if (p % q != 0 && (p < 0) != (q < 0)) --d;
  return d;
}

inline Int rat_ceil(const Rat& r) { return -rat_floor(-r); }

// representative of r mod 1 in [0,1)
inline Rat mod1(const Rat& r) { return r - Rat(rat_floor(r)); }

inline Int floor_div(Int a, Int b) {
  Int d = a / b;
  if (a % b != 0 && (a < 0) != (b < 0)) --d;
  return d;
}

inline Int mod_euclid(Int a, Int b) { return a - floor_div(a, b) * b; }

inline Int gcd_ll(Int a, Int b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

inline std::string rat_str(const Rat& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// parses "p", "p/q", or a plain decimal with a short fractional part
inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Int p = std::stoll(s.substr(0, slash));
    Int q = std::stoll(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(p, q);
  }
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    std::string frac = s.substr(dot + 1);
    if (frac.size() > 9) throw std::invalid_argument("decimal too long for exact parse: " + s);
    Int scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    std::string head = s.substr(0, dot);
    bool neg = !head.empty() && head[0] == '-';
    Int whole = head.empty() || head == "-" ? 0 : std::stoll(head);
    Int fr = frac.empty() ? 0 : std::stoll(frac);
    Rat v = Rat(whole) + (neg ? -Rat(fr, scale) : Rat(fr, scale));
    return v;
  }
  return Rat(std::stoll(s));
}

}  // namespace hms
