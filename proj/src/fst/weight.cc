// weight.cc
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

#include "mgd/fst/weight.h"

#include <charconv>
#include <string>

namespace mgd {

std::string FormatDouble(double v, int precision) {
  if (v == kInfinity) return "Infinity";
  if (v == -kInfinity) return "-Infinity";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", precision, v);
  // Avoid printing "-0.000000" for tiny negative residues.
  std::string out(buf);
  if (out[0] == '-' && out.find_first_not_of("-0.") == std::string::npos)
    out.erase(0, 1);
  return out;
}

double ParseDouble(std::string_view text) {
  if (text == "Infinity" || text == "inf" || text == "INF") return kInfinity;
  if (text == "-Infinity" || text == "-inf") return -kInfinity;
  const std::string copy(text);
  char *end = nullptr;
  const double v = std::strtod(copy.c_str(), &end);
  if (copy.empty() || *end != '\0')
    throw FormatError("not a number: '" + copy + "'");
  return v;
}

}  // namespace mgd
