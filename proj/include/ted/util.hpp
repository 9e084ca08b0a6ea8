#pragma once

#include <chrono>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "ted/errors.hpp"

namespace ted {

/// Exact non-negative rational. Kept normalized with den > 0. Used wherever a
/// threshold must be compared without floating-point drift.
struct Fraction {
  long long num = 0;
  long long den = 1;

  Fraction() = default;
  Fraction(long long n, long long d) : num(n), den(d) {
    if (den <= 0) throw ConfigError("fraction denominator must be positive");
    if (num < 0) throw ConfigError("fraction must be non-negative");
    long long g = std::gcd(num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  /// Accepts decimal ("0.5", ".5", "1", "1.0") and ratio ("7/20") forms.
  static Fraction parse(const std::string& text) {
    if (text.empty()) throw ConfigError("empty fraction");
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      long long n = parse_digits(text.substr(0, slash), text);
      long long d = parse_digits(text.substr(slash + 1), text);
      if (d == 0) throw ConfigError("zero denominator in '" + text + "'");
      return Fraction(n, d);
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Fraction(parse_digits(text, text), 1);
    std::string ip = text.substr(0, dot);
    std::string fp = text.substr(dot + 1);
    if (ip.empty() && fp.empty()) throw ConfigError("invalid fraction '" + text + "'");
    if (fp.size() > 12) throw ConfigError("too many decimal digits in '" + text + "'");
    long long den = 1;
    for (size_t i = 0; i < fp.size(); ++i) den *= 10;
    long long num = (ip.empty() ? 0 : parse_digits(ip, text)) * den +
                    (fp.empty() ? 0 : parse_digits(fp, text));
    return Fraction(num, den);
  }

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  bool operator==(const Fraction&) const = default;

 private:
  static long long parse_digits(const std::string& part, const std::string& whole) {
    if (part.empty()) throw ConfigError("invalid fraction '" + whole + "'");
    if (part.size() > 18) throw ConfigError("fraction component too large in '" + whole + "'");
    long long v = 0;
    for (char c : part) {
      if (c < '0' || c > '9') throw ConfigError("invalid fraction '" + whole + "'");
      v = v * 10 + (c - '0');
    }
    return v;
  }
};

inline int varint_size(unsigned long long v) {
  int n = 1;
  while (v >= 128) {
    v >>= 7;
    ++n;
  }
  return n;
}

/// Fixed-size bitset sized at construction. Enough for coverage arithmetic
/// over a database's global edge ids.
class Bits {
 public:
  Bits() = default;
  explicit Bits(size_t n) : n_(n), w_((n + 63) / 64, 0) {}

  size_t size() const { return n_; }

  void set(size_t i) { w_[i >> 6] |= (uint64_t{1} << (i & 63)); }
  bool test(size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1; }

  void or_assign(const Bits& o) {
    for (size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
  }

  size_t count() const {
    size_t c = 0;
    for (uint64_t w : w_) c += static_cast<size_t>(__builtin_popcountll(w));
    return c;
  }

  /// |this \ other|
  size_t count_andnot(const Bits& other) const {
    size_t c = 0;
    for (size_t i = 0; i < w_.size(); ++i)
      c += static_cast<size_t>(__builtin_popcountll(w_[i] & ~other.w_[i]));
    return c;
  }

  static size_t count_union(const Bits& a, const Bits& b) {
    size_t c = 0;
    for (size_t i = 0; i < a.w_.size(); ++i)
      c += static_cast<size_t>(__builtin_popcountll(a.w_[i] | b.w_[i]));
    return c;
  }

 private:
  size_t n_ = 0;
  std::vector<uint64_t> w_;
};

/// Optional wall-clock budget checked at loop boundaries.
struct Deadline {
  std::optional<std::chrono::steady_clock::time_point> end;

  static Deadline none() { return Deadline{}; }

  static Deadline after_seconds(double seconds) {
    Deadline d;
    d.end = std::chrono::steady_clock::now() +
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                std::chrono::duration<double>(seconds));
    return d;
  }

  bool active() const { return end.has_value(); }

  void check() const {
    if (end && std::chrono::steady_clock::now() > *end)
      throw TimeLimitError("time limit exceeded");
  }
};

}  // namespace ted
