// arpa.h
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

#ifndef MGD_LM_ARPA_H_
#define MGD_LM_ARPA_H_

#include <iosfwd>
#include <string>

#include "mgd/lm/ngram_model.h"

namespace mgd {

// ARPA backoff format. Values are written with 7 significant digits; a
// backoff weight is written only when it differs from log10(1) = 0.
void WriteArpa(const NGramModel &model, std::ostream &os);
void WriteArpaFile(const NGramModel &model, const std::string &path);

// Throws FormatError with the offending line number. The vocabulary is taken
// from the unigram section in file order.
NGramModel ReadArpa(std::istream &is, const std::string &source);
NGramModel ReadArpaFile(const std::string &path);

}  // namespace mgd

#endif  // MGD_LM_ARPA_H_
