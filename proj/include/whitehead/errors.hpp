#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace whitehead {

// Malformed graph input. `line` is 1-based, 0 when the whole document is bad.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}

  int line() const noexcept { return line_; }

 private:
  int line_;
};

// A precondition on the mathematical input was violated (unknown vertex,
// dominating vertex where a reduced graph is required, incompatible
// generator set, ...).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Enumeration exceeded its element cap.
class resource_error : public std::runtime_error {
 public:
  resource_error(const std::string& what, std::size_t partial_count)
      : std::runtime_error(what), partial_count_(partial_count) {}

  std::size_t partial_count() const noexcept { return partial_count_; }

 private:
  std::size_t partial_count_;
};

// A case analysis fell through or an internal assertion failed.
class internal_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace whitehead
