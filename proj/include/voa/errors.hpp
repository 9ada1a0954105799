#pragma once

#include <stdexcept>
#include <string>

namespace voa {

// Bad user input: unreadable files, schema violations, unknown ids,
// out-of-range parameters. Maps to exit code 2 at the CLI.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Failure while computing on otherwise valid inputs (e.g. an observation
// with zero likelihood under every pose). Maps to exit code 1 at the CLI.
class ComputeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace voa
