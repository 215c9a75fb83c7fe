#ifndef sbk_error_hpp
#define sbk_error_hpp

#include <stdexcept>
#include <string>

namespace sbk {

// Error categories map to process exit codes in the CLI:
// usage errors -> 1, malformed input -> 2, broken internal invariant -> 3.

class UsageError : public std::runtime_error {
public:
    explicit UsageError(const std::string& msg) : std::runtime_error(msg) {}
};

class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

class InternalError : public std::logic_error {
public:
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}

#endif
