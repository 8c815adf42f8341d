#pragma once

#include <stdexcept>
#include <string>

namespace socialai {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct StateError : std::logic_error {
    using std::logic_error::logic_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ProviderError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace socialai
