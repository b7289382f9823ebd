#ifndef QTOMO_ERRORS_HPP
#define QTOMO_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qtomo {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonHermitianInput : Error {
    explicit NonHermitianInput(const std::string& msg) : Error(msg) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error(msg) {}
};

struct UnsupportedDimension : Error {
    explicit UnsupportedDimension(const std::string& msg) : Error(msg) {}
};

struct NotInformationallyComplete : Error {
    explicit NotInformationallyComplete(const std::string& msg) : Error(msg) {}
};

struct InvalidEfficiency : Error {
    explicit InvalidEfficiency(const std::string& msg) : Error(msg) {}
};

struct InvalidThreshold : Error {
    explicit InvalidThreshold(const std::string& msg) : Error(msg) {}
};

struct InvalidTarget : Error {
    explicit InvalidTarget(const std::string& msg) : Error(msg) {}
};

struct InvalidLoss : Error {
    explicit InvalidLoss(const std::string& msg) : Error(msg) {}
};

struct UnphysicalState : Error {
    explicit UnphysicalState(const std::string& msg) : Error(msg) {}
};

// Alias used by the loss functions for non-PSD arguments.
using UnphysicalInput = UnphysicalState;

} // namespace qtomo

#endif
