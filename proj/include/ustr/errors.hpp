#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ustr {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed input text. Carries the file (may be empty for in-memory input)
/// and the 1-based line number of the offending line.
class ParseError : public Error {
public:
    ParseError(std::string file, std::size_t line, const std::string& what)
        : Error(format(file, line, what)), file_(std::move(file)), line_(line) {}

    const std::string& file() const noexcept { return file_; }
    std::size_t line() const noexcept { return line_; }

private:
    static std::string format(const std::string& file, std::size_t line, const std::string& what) {
        return (file.empty() ? std::string("<input>") : file) + ":" + std::to_string(line) + ": " + what;
    }

    std::string file_;
    std::size_t line_;
};

/// Query threshold below the construction threshold of the index.
class ThresholdError : public Error {
public:
    using Error::Error;
};

/// A configured size cap was exceeded. `cap_name` names the knob to raise.
class CapacityError : public Error {
public:
    CapacityError(std::string cap_name, const std::string& what)
        : Error(what), cap_name_(std::move(cap_name)) {}

    const std::string& cap_name() const noexcept { return cap_name_; }

private:
    std::string cap_name_;
};

class RangeError : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

}  // namespace ustr
