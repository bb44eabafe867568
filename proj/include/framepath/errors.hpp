#pragma once

#include <stdexcept>
#include <string>

namespace framepath {

// Base class for all library errors. Subtypes map onto the CLI exit codes:
// precondition violations (domain/bounds/shape/alignment/resolution) -> 2,
// capacity -> 3, io -> 4.
struct error : std::runtime_error {
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct domain_error : error {
    explicit domain_error(const std::string& what) : error(what) {}
};

struct bounds_error : error {
    explicit bounds_error(const std::string& what) : error(what) {}
};

struct shape_error : error {
    explicit shape_error(const std::string& what) : error(what) {}
};

struct alignment_error : error {
    explicit alignment_error(const std::string& what) : error(what) {}
};

struct resolution_error : error {
    explicit resolution_error(const std::string& what) : error(what) {}
};

struct capacity_error : error {
    explicit capacity_error(const std::string& what) : error(what) {}
};

struct io_error : error {
    explicit io_error(const std::string& what) : error(what) {}
};

}  // namespace framepath
