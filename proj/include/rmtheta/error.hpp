#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rmtheta {

enum class Errc {
    // field layer
    CompositeCharacteristic,
    EvenCharacteristic,
    NotMonic,
    InvalidModulus,
    TowerTooDeep,
    Reducible,
    FieldMismatch,
    DivisionByZero,
    SyntaxError,
    CoefficientCountMismatch,
    // relations
    MissingVariable,
    DegreeMismatch,
    // pipeline
    RepeatedBranchPoint,
    NoSquareRoots,
    NotAThetaNullPoint,
    NotSymmetric,
    AllZero,
    NoLift,
    DegenerateThetaPoint,
    NoSolutionInField,
    InvalidCurve,
    CharacteristicDividesSix,
    FieldTooSmall,
    NotEllipticThetaNull,
    // cli
    UnknownSet,
    Io,
    InvalidArgument,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

} // namespace rmtheta
