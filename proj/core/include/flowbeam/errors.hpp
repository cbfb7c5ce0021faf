#ifndef FLOWBEAM_ERRORS_HPP
#define FLOWBEAM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace flowbeam {

/// Base class of every exception thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InvalidInstance : public Error {
public:
    using Error::Error;
};

/// A job sequence that is not a permutation of the instance jobs.
class InvalidPermutation : public Error {
public:
    using Error::Error;
};

class InstanceTooLarge : public Error {
public:
    using Error::Error;
};

class JobAlreadyScheduled : public Error {
public:
    using Error::Error;
};

/// Rejected search or command-line configuration.
class ConfigError : public Error {
public:
    using Error::Error;
};

class MissingBestKnown : public Error {
public:
    using Error::Error;
};

class MissingRecord : public Error {
public:
    using Error::Error;
};

/// An internal consistency check failed (e.g. an incumbent that does not re-evaluate to its value).
class InvariantViolation : public Error {
public:
    using Error::Error;
};

enum class ParseErrorKind {
    MalformedHeader,
    ShortMatrix,
    NonIntegerToken,
    BadPairCount,
    MachineIndexOutOfRange,
    UnknownFormat,
    MalformedCsv,
};

const char *toString(ParseErrorKind kind) noexcept;

/// Benchmark file or CSV parse failure. Carries the byte offset and, for
/// multi-block Taillard files, the 0-based block index.
class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t offset, std::size_t block, const std::string &detail);

    [[nodiscard]] ParseErrorKind kind() const noexcept { return kind_; }
    [[nodiscard]] std::size_t offset() const noexcept { return offset_; }
    [[nodiscard]] std::size_t block() const noexcept { return block_; }

private:
    ParseErrorKind kind_;
    std::size_t offset_;
    std::size_t block_;
};

} // namespace flowbeam

#endif // FLOWBEAM_ERRORS_HPP
