// weight.h
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MGD_FST_WEIGHT_H_
#define MGD_FST_WEIGHT_H_

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <string_view>

#include "mgd/base/error.h"

namespace mgd {

constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Default quantization step used when weights are compared or hashed by
// the determinization and minimization algorithms. A power of two, so that
// dyadic weights are never perturbed.
constexpr double kQuantizeDelta = 1.0 / (1 << 30) / 4;  // 2^-32

inline double QuantizeValue(double v, double delta) {
  if (!std::isfinite(v)) return v;
  return std::floor(v / delta + 0.5) * delta;
}

std::string FormatDouble(double v, int precision);
double ParseDouble(std::string_view text);  // throws FormatError

// Min-plus semiring over costs (negated log probabilities).
class TropicalWeight {
 public:
  constexpr TropicalWeight() : value_(kInfinity) {}
  constexpr explicit TropicalWeight(double v) : value_(v) {}

  static constexpr TropicalWeight Zero() { return TropicalWeight(kInfinity); }
  static constexpr TropicalWeight One() { return TropicalWeight(0.0); }
  static const char *Type() { return "tropical"; }
  static constexpr bool kIdempotent = true;

  constexpr double Value() const { return value_; }
  bool Member() const {
    return !std::isnan(value_) && value_ != -kInfinity;
  }
  TropicalWeight Quantize(double delta = kQuantizeDelta) const {
    return TropicalWeight(QuantizeValue(value_, delta));
  }

  std::string ToString(int precision) const {
    return FormatDouble(value_, precision);
  }
  static TropicalWeight FromString(std::string_view text) {
    return TropicalWeight(ParseDouble(text));
  }

  friend constexpr bool operator==(TropicalWeight a, TropicalWeight b) {
    return a.value_ == b.value_;
  }
  friend constexpr bool operator!=(TropicalWeight a, TropicalWeight b) {
    return !(a == b);
  }

 private:
  double value_;
};

inline TropicalWeight Plus(TropicalWeight a, TropicalWeight b) {
  return a.Value() < b.Value() ? a : b;
}

inline TropicalWeight Times(TropicalWeight a, TropicalWeight b) {
  if (a == TropicalWeight::Zero() || b == TropicalWeight::Zero())
    return TropicalWeight::Zero();
  return TropicalWeight(a.Value() + b.Value());
}

// Left division: the x with Times(b, x) == a.
inline TropicalWeight Divide(TropicalWeight a, TropicalWeight b) {
  if (b == TropicalWeight::Zero())
    throw FstError("tropical division by the zero weight");
  if (a == TropicalWeight::Zero()) return TropicalWeight::Zero();
  return TropicalWeight(a.Value() - b.Value());
}

// Natural order of the tropical semiring: a <= b iff Plus(a, b) == a.
inline bool NaturalLess(TropicalWeight a, TropicalWeight b) {
  return a.Value() < b.Value();
}

// Log semiring: plus is the negated log of summed probabilities.
class LogWeight {
 public:
  constexpr LogWeight() : value_(kInfinity) {}
  constexpr explicit LogWeight(double v) : value_(v) {}

  static constexpr LogWeight Zero() { return LogWeight(kInfinity); }
  static constexpr LogWeight One() { return LogWeight(0.0); }
  static const char *Type() { return "log"; }
  static constexpr bool kIdempotent = false;

  constexpr double Value() const { return value_; }
  bool Member() const {
    return !std::isnan(value_) && value_ != -kInfinity;
  }
  LogWeight Quantize(double delta = kQuantizeDelta) const {
    return LogWeight(QuantizeValue(value_, delta));
  }

  std::string ToString(int precision) const {
    return FormatDouble(value_, precision);
  }
  static LogWeight FromString(std::string_view text) {
    return LogWeight(ParseDouble(text));
  }

  friend constexpr bool operator==(LogWeight a, LogWeight b) {
    return a.value_ == b.value_;
  }
  friend constexpr bool operator!=(LogWeight a, LogWeight b) {
    return !(a == b);
  }

 private:
  double value_;
};

inline LogWeight Plus(LogWeight a, LogWeight b) {
  const double x = a.Value(), y = b.Value();
  if (x == kInfinity) return b;
  if (y == kInfinity) return a;
  const double lo = std::min(x, y);
  return LogWeight(lo - std::log1p(std::exp(-std::fabs(x - y))));
}

inline LogWeight Times(LogWeight a, LogWeight b) {
  if (a == LogWeight::Zero() || b == LogWeight::Zero())
    return LogWeight::Zero();
  return LogWeight(a.Value() + b.Value());
}

inline LogWeight Divide(LogWeight a, LogWeight b) {
  if (b == LogWeight::Zero())
    throw FstError("log division by the zero weight");
  if (a == LogWeight::Zero()) return LogWeight::Zero();
  return LogWeight(a.Value() - b.Value());
}

template <class W>
bool ApproxEqual(W a, W b, double delta) {
  if (a == b) return true;
  return std::fabs(a.Value() - b.Value()) <= delta;
}

}  // namespace mgd

#endif  // MGD_FST_WEIGHT_H_
