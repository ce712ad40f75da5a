#pragma once

#include <stdexcept>
#include <string>

namespace greenlift {

struct DegenerateForm : std::runtime_error {
    explicit DegenerateForm(const std::string& m) : std::runtime_error(m) {}
};
struct RatioOutOfRange : std::runtime_error {
    explicit RatioOutOfRange(const std::string& m) : std::runtime_error(m) {}
};
struct DegeneratePair : std::runtime_error {
    explicit DegeneratePair(const std::string& m) : std::runtime_error(m) {}
};
struct NearDivisor : std::runtime_error {
    explicit NearDivisor(const std::string& m) : std::runtime_error(m) {}
};
struct PoleAtNonPositiveInteger : std::runtime_error {
    explicit PoleAtNonPositiveInteger(const std::string& m) : std::runtime_error(m) {}
};
struct NonConvergent : std::runtime_error {
    explicit NonConvergent(const std::string& m) : std::runtime_error(m) {}
};
struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& m) : std::runtime_error(m) {}
};
struct BoundTooLarge : std::runtime_error {
    explicit BoundTooLarge(const std::string& m) : std::runtime_error(m) {}
};
struct DegenerateT : std::runtime_error {
    explicit DegenerateT(const std::string& m) : std::runtime_error(m) {}
};
struct SaturationFailure : std::runtime_error {
    explicit SaturationFailure(const std::string& m) : std::runtime_error(m) {}
};
struct NonFundamentalDiscriminant : std::runtime_error {
    explicit NonFundamentalDiscriminant(const std::string& m) : std::runtime_error(m) {}
};
struct NotInUpperHalfPlane : std::runtime_error {
    explicit NotInUpperHalfPlane(const std::string& m) : std::runtime_error(m) {}
};

} // namespace greenlift
