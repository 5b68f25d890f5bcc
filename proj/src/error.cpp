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

#include "cohmin/error.hpp"

#include <sstream>

namespace cohmin {

const char *ErrorKindName(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kUnknownLabel: return "UnknownLabel";
    case ErrorKind::kUnknownState: return "UnknownState";
    case ErrorKind::kMissingInitial: return "MissingInitial";
    case ErrorKind::kSignatureMismatch: return "SignatureMismatch";
    case ErrorKind::kResourceLimit: return "ResourceLimit";
    case ErrorKind::kLabelClash: return "LabelClash";
    case ErrorKind::kSameState: return "SameState";
    case ErrorKind::kParseError: return "ParseError";
    case ErrorKind::kUnboundReference: return "UnboundReference";
    case ErrorKind::kTypeError: return "TypeError";
    case ErrorKind::kOverflow: return "Overflow";
    case ErrorKind::kDomainExceeded: return "DomainExceeded";
    case ErrorKind::kNotAProtocol: return "NotAProtocol";
    case ErrorKind::kInvalidModel: return "InvalidModel";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, std::string item, const std::string &message)
    : std::runtime_error(std::string(ErrorKindName(kind)) + ": " + message),
      kind_(kind),
      item_(std::move(item)) {}

namespace {

std::string DescribeViolations(
    const std::vector<ValidationError::Violation> &violations) {
  std::ostringstream out;
  for (std::size_t i = 0; i < violations.size(); ++i) {
    if (i > 0) out << "; ";
    out << ErrorKindName(violations[i].kind) << "(" << violations[i].item
        << ")";
  }
  return out.str();
}

}  // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : Error(violations.empty() ? ErrorKind::kInvalidModel : violations[0].kind,
            violations.empty() ? std::string() : violations[0].item,
            DescribeViolations(violations)),
      violations_(std::move(violations)) {}

ParseError::ParseError(int line, int column, const std::string &message,
                       std::string item)
    : Error(ErrorKind::kParseError, std::move(item),
            std::to_string(line) + ":" + std::to_string(column) + ": " +
                message),
      line_(line),
      column_(column) {}

}  // namespace cohmin
