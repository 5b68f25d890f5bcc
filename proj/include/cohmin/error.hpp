// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COHMIN_ERROR_HPP_
#define COHMIN_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <vector>

namespace cohmin {

enum class ErrorKind {
  kUnknownLabel,
  kUnknownState,
  kMissingInitial,
  kSignatureMismatch,
  kResourceLimit,
  kLabelClash,
  kSameState,
  kParseError,
  kUnboundReference,
  kTypeError,
  kOverflow,
  kDomainExceeded,
  kNotAProtocol,
  kInvalidModel,
};

const char *ErrorKindName(ErrorKind kind);

// All library failures are reported through this type. `item` names the
// offending label, state, or reference when there is one.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string item, const std::string &message);

  ErrorKind kind() const { return kind_; }
  const std::string &item() const { return item_; }

 private:
  ErrorKind kind_;
  std::string item_;
};

// Raised by validation; carries every violation found, not just the first.
// kind() reports the first violation.
class ValidationError : public Error {
 public:
  struct Violation {
    ErrorKind kind;
    std::string item;
  };

  explicit ValidationError(std::vector<Violation> violations);

  const std::vector<Violation> &violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

class ParseError : public Error {
 public:
  ParseError(int line, int column, const std::string &message,
             std::string item = {});

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace cohmin

#endif  // COHMIN_ERROR_HPP_
