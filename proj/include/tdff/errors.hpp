#ifndef TDFF_ERRORS_HPP
#define TDFF_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tdff {

/// Base class for all library errors.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ZeroVectorError : public Error {
public:
    explicit ZeroVectorError(const std::string& msg = "vector norm below epsilon") : Error(msg) {}
};

class DimMismatchError : public Error {
public:
    explicit DimMismatchError(const std::string& msg) : Error(msg) {}
};

class EmptyVideoError : public Error {
public:
    explicit EmptyVideoError(const std::string& msg = "video has no frames") : Error(msg) {}
};

class MixedTemplateError : public Error {
public:
    explicit MixedTemplateError(const std::string& msg) : Error(msg) {}
};

class MissingFeatureError : public Error {
public:
    explicit MissingFeatureError(const std::string& msg) : Error(msg) {}
};

class EmptyTemplateError : public Error {
public:
    explicit EmptyTemplateError(const std::string& msg) : Error(msg) {}
};

class EmptyNegativesError : public Error {
public:
    explicit EmptyNegativesError(const std::string& msg = "negative set is empty") : Error(msg) {}
};

class NonConvergenceError : public Error {
public:
    explicit NonConvergenceError(const std::string& msg) : Error(msg) {}
};

class EmptyScoresError : public Error {
public:
    explicit EmptyScoresError(const std::string& msg = "score list is empty") : Error(msg) {}
};

class MissingMateError : public Error {
public:
    explicit MissingMateError(const std::string& msg) : Error(msg) {}
};

class NoNonMatedProbesError : public Error {
public:
    explicit NoNonMatedProbesError(const std::string& msg = "open-set metrics need non-mated probes")
        : Error(msg) {}
};

class KeyMismatchError : public Error {
public:
    explicit KeyMismatchError(const std::string& msg) : Error(msg) {}
};

class BadMagicError : public Error {
public:
    explicit BadMagicError(const std::string& msg) : Error(msg) {}
};

class UnsupportedVersionError : public Error {
public:
    explicit UnsupportedVersionError(const std::string& msg) : Error(msg) {}
};

/// File ended (or was unreadable) mid-structure; carries the byte offset
/// at which the read failed.
class TruncatedError : public Error {
public:
    TruncatedError(std::uint64_t offset, const std::string& what_failed)
        : Error("truncated at byte offset " + std::to_string(offset) + " while reading " + what_failed),
          offset_(offset) {}

    std::uint64_t offset() const { return offset_; }

private:
    std::uint64_t offset_;
};

class DuplicateMediaIdError : public Error {
public:
    explicit DuplicateMediaIdError(const std::string& msg) : Error(msg) {}
};

class ParseError : public Error {
public:
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& msg) : Error(msg) {}
};

}  // namespace tdff

#endif  // TDFF_ERRORS_HPP
