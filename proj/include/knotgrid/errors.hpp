#pragma once

#include <stdexcept>
#include <string>

namespace knotgrid {

enum class Err {
    MalformedCode,
    NonplanarCode,
    CorruptRotation,
    SizeMismatch,
    UnknownVertex,
    NotFourRegular,
    BlueBlueEdge,
    LoopEdge,
    UntriangulatedComponent,
    TreeViolation,
    NotNormal,
    NotCutVertex,
    InvalidSelection,
    LabelMismatch,
    OrderConflict,
    PreconditionFaceWeight,
    BelowThreshold,
    NotTerminal,
    OrderMisalignment,
    UnknownLabel,
    DegreeNotFour,
    ComponentMismatch,
    SelfIntersection,
    EmptyInput,
    TooManyCrossings,
    NoGenericDirection,
    Unsupported,
    Internal,
};

const char* err_name(Err e);

/// Exception carrying a structured error code; `what()` includes the code name.
class Error : public std::runtime_error {
public:
    Error(Err code, const std::string& msg)
        : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
    Err code() const { return code_; }

private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
    if (!cond) fail(code, msg);
}

} // namespace knotgrid
