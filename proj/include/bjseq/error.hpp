#pragma once

#include <stdexcept>
#include <string>

namespace bjseq {

/// Malformed input: bad representation, bad parameter value, field mismatch.
class ValidationError : public std::invalid_argument {
public:
    explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input outside the operation's domain (non-membership, x = 0, p = 2 ...).
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A library invariant was violated. Always a bug.
class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

/// A randomized search ran out of budget without finding what it looked for.
class SearchExhausted : public std::runtime_error {
public:
    explicit SearchExhausted(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace bjseq
