#ifndef SCS_ERROR_HPP_
#define SCS_ERROR_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace scs {

/// Base of everything the library throws on bad input or refused work.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Caller misuse: empty menus, x == y pairs, mismatched spaces, bad flags.
class UsageError : public Error {
  public:
    using Error::Error;
};

/// A relation that should be a weak order is not complete or not transitive.
class ClassificationError : public Error {
  public:
    using Error::Error;
};

/// weak_of() produced something that is not a weak order.
class ReconstructionError : public Error {
  public:
    using Error::Error;
};

/// Malformed ranking/profile/rule/certificate text. `line` is 1-based, 0 when
/// the input had no line structure.
class ParseError : public Error {
  public:
    ParseError(std::size_t line, const std::string& what)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

  private:
    std::size_t line_;
};

/// Work refused because it exceeds the configured caps. `required` is the
/// budget the query would need (instances or search nodes).
class CapExceeded : public Error {
  public:
    CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t allowed)
        : Error(what + " (requires budget " + std::to_string(required) + ", allowed " +
                std::to_string(allowed) + "; raise SCS_MAX_BUDGET to override)"),
          required_(required), allowed_(allowed) {}

    std::uint64_t required() const noexcept { return required_; }
    std::uint64_t allowed() const noexcept { return allowed_; }

  private:
    std::uint64_t required_;
    std::uint64_t allowed_;
};

/// A rule handed to an operation does not meet its precondition.
class PreconditionError : public Error {
  public:
    using Error::Error;
};

/// The engine reached a state that a conforming input cannot produce.
class InternalConsistencyError : public Error {
  public:
    using Error::Error;
};

}  // namespace scs

#endif  // SCS_ERROR_HPP_
