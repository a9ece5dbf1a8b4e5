// random.h
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

#ifndef MGD_BASE_RANDOM_H_
#define MGD_BASE_RANDOM_H_

#include <cstdint>
#include <random>
#include <string_view>

namespace mgd {

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view data);

// Independent generator for the named substream of `seed`. Each consumer of
// randomness draws from its own stream, so adding draws in one stage never
// shifts another stage's numbers.
std::mt19937_64 SubstreamRng(uint64_t seed, std::string_view name);

}  // namespace mgd

#endif  // MGD_BASE_RANDOM_H_
