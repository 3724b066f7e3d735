#pragma once

#include <stdexcept>
#include <string>

namespace timm {

// Malformed input text (tournament matrix or certificate). Carries a
// human-readable position, e.g. "line 3, column 5: ...".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A quantity the algorithms guarantee by construction was observed to be
// violated at runtime. what() names the broken inequality; reaching this
// means either a bug or an input outside the guaranteed regime.
class InternalConsistencyError : public std::logic_error {
 public:
  InternalConsistencyError(std::string inequality, std::string detail)
      : std::logic_error(inequality + (detail.empty() ? "" : ": " + detail)),
        inequality_(std::move(inequality)) {}

  const std::string& inequality() const noexcept { return inequality_; }

 private:
  std::string inequality_;
};

}  // namespace timm
