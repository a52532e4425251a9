#ifndef GEVREY_ERRORS_HPP
#define GEVREY_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gevrey
{

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Sequence index outside a finite table.
struct RangeError : Error {
    using Error::Error;
};

// A BigFloat intermediate overflowed or became NaN.
struct PrecisionError : Error {
    using Error::Error;
};

// The requested backend cannot represent a value exactly.
struct BackendError : Error {
    using Error::Error;
};

struct DimensionError : Error {
    using Error::Error;
};

struct ParameterError : Error {
    using Error::Error;
};

struct ValidationError : Error {
    using Error::Error;
};

// A series was not truncated far enough for the requested computation.
struct TruncationError : Error {
    using Error::Error;
};

struct FitError : Error {
    using Error::Error;
};

class ParseError : public Error
{
public:
    ParseError(std::string message, std::string path, std::size_t line = 0, std::size_t column = 0,
               const std::string &source = "")
        : Error(format(message, path, line, column, source)), path_(std::move(path)), line_(line), column_(column)
    {
    }

    const std::string &path() const noexcept { return path_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    static std::string format(const std::string &message, const std::string &path, std::size_t line,
                              std::size_t column, const std::string &source)
    {
        std::string out = source;
        if (line != 0) {
            out += (out.empty() ? "" : ":") + std::to_string(line) + ":" + std::to_string(column);
        }
        if (!out.empty()) {
            out += ": ";
        }
        if (!path.empty()) {
            out += path + ": ";
        }
        return out + message;
    }

    std::string path_;
    std::size_t line_;
    std::size_t column_;
};

} // namespace gevrey

#endif
