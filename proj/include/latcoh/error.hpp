#ifndef LATCOH_ERROR_HPP
#define LATCOH_ERROR_HPP

#include <stdexcept>
#include <string>

namespace latcoh
{

// Malformed or out-of-contract input (dimension mismatch, bad file, ...).
class InputError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Two routes that must agree did not. Signals a bug or a non-good semigroup.
class ConsistencyError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// The branch jets were truncated too early to decide the requested value.
class TruncationError : public std::runtime_error
{
public:
    TruncationError(const std::string &what, int branch, long suggested)
        : std::runtime_error(what), branch_(branch), suggested_(suggested)
    {
    }

    int branch() const noexcept { return branch_; }
    long suggested_truncation() const noexcept { return suggested_; }

private:
    int branch_;
    long suggested_;
};

// Operation precondition that depends on the instance (e.g. H^1 != 0).
class NotApplicableError : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// Thrown by the checked int64 arithmetic; callers retry with big integers.
class OverflowError : public std::overflow_error
{
public:
    OverflowError() : std::overflow_error("int64 overflow in exact arithmetic") {}
};

} // namespace latcoh

#endif
