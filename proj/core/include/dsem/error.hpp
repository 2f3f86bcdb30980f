#pragma once

#include <stdexcept>
#include <string>

namespace dsem {

// Malformed input data (unparseable file, bad field, invalid value).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Inputs that are individually well formed but inconsistent with each other,
// e.g. an embedding matrix whose row count differs from the dialogue length.
class mismatch_error : public std::runtime_error {
public:
    explicit mismatch_error(const std::string& what) : std::runtime_error(what) {}
};

// Request exceeds a hard size bound (exhaustive enumeration limits).
class size_bound_error : public std::runtime_error {
public:
    explicit size_bound_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace dsem
