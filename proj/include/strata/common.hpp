#pragma once
// Shared error types and small helpers used across the library.

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>

namespace strata {

// Library error. `contract` marks misuse of an interface (caller bug),
// `integrity` marks a broken internal invariant detected at runtime.
class Error : public std::runtime_error {
 public:
  enum class Kind { contract, integrity, construction, io };

  Error(Kind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

namespace detail {
inline void format_into(std::ostringstream&) {}
template <typename T, typename... Rest>
void format_into(std::ostringstream& os, const T& head, const Rest&... rest) {
  os << head;
  format_into(os, rest...);
}
}  // namespace detail

template <typename... Args>
std::string concat(const Args&... args) {
  std::ostringstream os;
  detail::format_into(os, args...);
  return os.str();
}

template <typename... Args>
[[noreturn]] void raise_contract(const Args&... args) {
  throw Error(Error::Kind::contract, concat(args...));
}

template <typename... Args>
[[noreturn]] void raise_integrity(const Args&... args) {
  throw Error(Error::Kind::integrity, concat(args...));
}

template <typename... Args>
[[noreturn]] void raise_construction(const Args&... args) {
  throw Error(Error::Kind::construction, concat(args...));
}

#define STRATA_REQUIRE(cond, ...)            \
  do {                                       \
    if (!(cond)) ::strata::raise_contract(__VA_ARGS__); \
  } while (0)

#define STRATA_CHECK(cond, ...)              \
  do {                                       \
    if (!(cond)) ::strata::raise_integrity(__VA_ARGS__); \
  } while (0)

}  // namespace strata
