#pragma once

#include <stdexcept>
#include <string>

namespace healthadvisor {

// An input document is structurally bad: wrong header, duplicate ids,
// unreadable file, malformed line. Carries the offending path/line in the
// message so the CLI can forward it verbatim.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
};

// An operation was called outside its domain: empty dataset, unknown
// attribute, schema mismatch.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace healthadvisor
