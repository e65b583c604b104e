#pragma once

#include <stdexcept>
#include <string>

namespace selfprod {

/// Thrown when an operation would exceed its documented memory cap.
/// The CLI maps this to exit code 3.
class resource_error : public std::runtime_error {
public:
    explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// Thrown on file I/O failure.  The CLI maps this to exit code 2.
class io_error : public std::runtime_error {
public:
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace selfprod
