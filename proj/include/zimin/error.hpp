#pragma once

#include <stdexcept>
#include <string>

namespace zimin {

enum class Errc {
  ok = 0,
  invalid_argument,
  out_of_range,
  empty_word,
  budget_exhausted,
  region_violation,
  singular_system,
  no_convergence,
  disagreement,
  assertion,
  parse_error,
  hypothesis_violation,
  io_error,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

inline void require(bool cond, Errc code, const char* what) {
  if (!cond) fail(code, what);
}

}  // namespace zimin
