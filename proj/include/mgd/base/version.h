// version.h
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

#ifndef MGD_BASE_VERSION_H_
#define MGD_BASE_VERSION_H_

#include <string>

namespace mgd {

inline constexpr const char *kToolkitVersion = "1.0.0";

// Bumped whenever the corresponding file layout changes.
inline constexpr int kGraphFormatVersion = 1;
inline constexpr int kLatticeFormatVersion = 1;
inline constexpr int kScoresFormatVersion = 1;
inline constexpr int kNBestFormatVersion = 1;
inline constexpr int kReferenceFormatVersion = 1;

inline std::string VersionString() {
  return std::string("mgd ") + kToolkitVersion +
         "\nformats: arpa (standard), graph " + std::to_string(kGraphFormatVersion) +
         ", lattice archive " + std::to_string(kLatticeFormatVersion) +
         ", scores archive " + std::to_string(kScoresFormatVersion) +
         ", n-best " + std::to_string(kNBestFormatVersion) +
         ", references " + std::to_string(kReferenceFormatVersion);
}

}  // namespace mgd

#endif  // MGD_BASE_VERSION_H_
