#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gracefill {

/// Base class for all data-level failures (bad files, bad shapes, bad
/// parameters). CLI maps these to exit code 2.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Non-finite values showed up where the math requires finite ones.
/// CLI maps these to exit code 3.
class NumericError : public std::runtime_error {
public:
    explicit NumericError(const std::string& msg) : std::runtime_error(msg) {}
};

// ---- ingest ----

class MissingHeaderTerminator : public DataError {
public:
    explicit MissingHeaderTerminator(const std::string& path)
        : DataError("no header terminator found in: " + path) {}
};

class MalformedRecord : public DataError {
public:
    MalformedRecord(std::size_t line_no, const std::string& what)
        : DataError("malformed record at line " + std::to_string(line_no) + ": " + what),
          line_no(line_no) {}
    std::size_t line_no;
};

class NonMonotonicTime : public DataError {
public:
    explicit NonMonotonicTime(std::size_t line_no)
        : DataError("non-monotonic timestamp at line " + std::to_string(line_no)),
          line_no(line_no) {}
    std::size_t line_no;
};

// ---- preprocess ----

class EmptyInput : public DataError {
public:
    explicit EmptyInput(const std::string& where) : DataError("empty input in " + where) {}
};

class DegenerateScale : public DataError {
public:
    explicit DegenerateScale(const std::string& what)
        : DataError("degenerate scaler: " + what) {}
};

class TooShort : public DataError {
public:
    explicit TooShort(std::size_t n)
        : DataError("series too short to split: length " + std::to_string(n)) {}
};

// ---- model core ----

class ShapeMismatch : public DataError {
public:
    explicit ShapeMismatch(const std::string& what) : DataError("shape mismatch: " + what) {}
};

class LengthMismatch : public DataError {
public:
    LengthMismatch(std::size_t a, std::size_t b)
        : DataError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b)) {}
};

class TooFewPairs : public DataError {
public:
    explicit TooFewPairs(std::size_t n)
        : DataError("need at least 2 training pairs, got " + std::to_string(n)) {}
};

// ---- forecast / report ----

class ScalerMismatch : public DataError {
public:
    explicit ScalerMismatch(const std::string& what) : DataError("scaler mismatch: " + what) {}
};

class BadWindowLength : public DataError {
public:
    BadWindowLength(std::size_t got, std::size_t want)
        : DataError("seed window length " + std::to_string(got) + ", model expects " +
                    std::to_string(want)) {}
};

class IoError : public DataError {
public:
    explicit IoError(const std::string& what) : DataError("I/O error: " + what) {}
};

}  // namespace gracefill
