#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cbd/system.hpp"

namespace cbd {

/// Malformed document; the message carries a line/column or a JSON path.
class DocumentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Well-formed document describing an invalid system.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(std::vector<Violation> violations);
  const std::vector<Violation>& violations() const { return violations_; }

 private:
  std::vector<Violation> violations_;
};

/// Parses a system document:
///
///   {"contents": ["q_o.", ...],
///    "contexts": [{"name": "c_ox", "contents": ["q_o.", "q_.x"],
///                  "table": {"+-": "1/2", "--": "1/2"}}, ...]}
///
/// Table keys list one '+'/'-' per context content; omitted keys have
/// probability 0. Probabilities are strings holding a fraction or a
/// terminating decimal. The parsed system must pass validate_system.
System parse_system_document(std::string_view text);

System load_system_document(const std::string& path);

/// Canonical rendering: nonzero table entries only, "+" before "-" with the
/// first content varying slowest, probabilities as reduced fractions.
std::string serialize_system_document(const System& s);

}  // namespace cbd
