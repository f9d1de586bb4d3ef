#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace keymine {

/// Base of every error the library throws. Callers that only need a message
/// can catch this; the subclasses carry the structured detail.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input bytes (bad UTF-8) or an unreadable source.
class IngestError : public Error {
public:
    IngestError(const std::string& what, std::size_t byte_offset)
        : Error(what), byte_offset_(byte_offset) {}

    std::size_t byte_offset() const noexcept { return byte_offset_; }

private:
    std::size_t byte_offset_;
};

/// A value that violates a type's stated domain (item outside the universe,
/// wrong n-graph order, threshold out of range...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Malformed file content. `field_path` points at the offending element,
/// e.g. "mapping.ক" or "[3].cost".
class ParseError : public Error {
public:
    ParseError(const std::string& what, std::string field_path)
        : Error(what), field_path_(std::move(field_path)) {}

    const std::string& field_path() const noexcept { return field_path_; }

private:
    std::string field_path_;
};

/// Exhaustive enumeration refused because the input is too large.
class RefusalError : public Error {
public:
    using Error::Error;
};

/// An internal invariant did not hold; indicates a bug, not bad input.
class ConsistencyError : public Error {
public:
    using Error::Error;
};

/// A hand has more letters than the geometry offers positions.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::size_t overflow, std::vector<std::string> letters)
        : Error(what), overflow_(overflow), letters_(std::move(letters)) {}

    std::size_t overflow() const noexcept { return overflow_; }
    const std::vector<std::string>& overflow_letters() const noexcept { return letters_; }

private:
    std::size_t overflow_;
    std::vector<std::string> letters_;
};

class AuditImpossibleError : public Error {
public:
    using Error::Error;
};

class IncomparableReportsError : public Error {
public:
    using Error::Error;
};

}  // namespace keymine
