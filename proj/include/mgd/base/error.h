// error.h
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

#ifndef MGD_BASE_ERROR_H_
#define MGD_BASE_ERROR_H_

#include <stdexcept>
#include <string>

namespace mgd {

// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string &what) : std::runtime_error(what) {}
};

// Malformed or inconsistent input data (files, symbol tables, models).
class FormatError : public Error {
 public:
  explicit FormatError(const std::string &what) : Error(what) {}
};

// Precondition violated by an algorithm argument.
class FstError : public Error {
 public:
  explicit FstError(const std::string &what) : Error(what) {}
};

class SymbolTableError : public FstError {
 public:
  explicit SymbolTableError(const std::string &what) : FstError(what) {}
};

// Determinization exceeded its state budget.
class DeterminizeError : public FstError {
 public:
  explicit DeterminizeError(const std::string &what) : FstError(what) {}
};

class LmError : public Error {
 public:
  explicit LmError(const std::string &what) : Error(what) {}
};

// Beam search ended without a surviving hypothesis.
class SearchError : public Error {
 public:
  explicit SearchError(const std::string &what) : Error(what) {}
};

class UsageError : public Error {
 public:
  explicit UsageError(const std::string &what) : Error(what) {}
};

}  // namespace mgd

#endif  // MGD_BASE_ERROR_H_
