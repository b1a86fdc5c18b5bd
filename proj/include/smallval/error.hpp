#pragma once

#include <stdexcept>
#include <string>

namespace smallval {

enum class ErrorKind {
  Precondition,   // caller-supplied data violates a documented requirement
  Hypothesis,     // a certified hypothesis check failed or could not be certified
  Inconclusive,   // enclosures could not decide a question within the precision cap
  Config,         // unknown suite, malformed input text, bad flag
  Internal        // a step that cannot fail unless the implementation is wrong
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
  case ErrorKind::Precondition: return "precondition";
  case ErrorKind::Hypothesis: return "hypothesis";
  case ErrorKind::Inconclusive: return "inconclusive";
  case ErrorKind::Config: return "config";
  case ErrorKind::Internal: return "internal";
  }
  return "unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) {
  throw Error(kind, what);
}

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(ErrorKind::Precondition, what);
}

} // namespace smallval
