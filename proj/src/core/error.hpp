#pragma once

#include <stdexcept>
#include <string>

namespace simpson {

enum class Status {
  ok = 0,
  invalid_input,
  not_divisible,
  precision_exhausted,
  not_small,
  non_commuting,
  property_violation,
};

const char* status_name(Status s);

class Error : public std::runtime_error {
 public:
  Error(Status code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Status code() const { return code_; }

 private:
  Status code_;
};

[[noreturn]] inline void fail(Status code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, const std::string& what) {
  if (!cond) fail(Status::invalid_input, what);
}

}  // namespace simpson
