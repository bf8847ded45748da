#ifndef QFAC_ERRORS_HPP
#define QFAC_ERRORS_HPP

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace qfac {

// Mixed fields, unsupported characteristic, division by zero, ...
class field_error : public std::runtime_error {
public:
    explicit field_error(const std::string& what) : std::runtime_error(what) {}
};

// Text input rejected; position is a 0-based byte offset into the input.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& what, std::size_t position)
        : std::runtime_error(what + " (at position " + std::to_string(position) + ")"),
          position_(position) {}
    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// An exhaustive enumeration would exceed the configured budget.
// required() is the budget that would have been needed.
class budget_error : public std::runtime_error {
public:
    budget_error(const std::string& what, std::uint64_t required)
        : std::runtime_error(what + " (required budget " + std::to_string(required) + ")"),
          required_(required) {}
    std::uint64_t required() const { return required_; }

private:
    std::uint64_t required_;
};

// A certified-impossible state was observed (e.g. Hessian rank 5 at a
// singular point). Maps to exit code 3 in the CLI.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

} // namespace qfac

#endif
