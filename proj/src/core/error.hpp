#pragma once

#include <stdexcept>
#include <string>

namespace mis3d {

enum class errc {
  invalid_argument,
  parse,
  degree_bound,
  routing,
  size_limit,
  inconsistent,
  internal,
};

// Single exception type for the whole core; the C wrapper maps `code` onto the
// public status enum instead of parsing message text.
class error : public std::runtime_error {
public:
  error(errc c, const std::string& what) : std::runtime_error(what), code_(c) {}
  errc code() const { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc c, const std::string& what) { throw error(c, what); }

} // namespace mis3d
