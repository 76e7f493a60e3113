// Error taxonomy shared by all modules. The C API maps these codes to
// its status enum; the C++ core throws.

#pragma once

#include <stdexcept>
#include <string>

namespace topo {

enum class Errc {
    InvalidArgument,
    BasisMismatch,
    NotUnitary,
    NonCyclic,
    SnapFailure,
    Borderline,
    ScenarioMismatch,
    ParseError,
    SemanticError,
    Io,
};

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& msg)
        : std::runtime_error(msg), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

// Parse and semantic errors carry a 1-based source location.
class ScriptError : public Error {
public:
    ScriptError(Errc code, const std::string& msg, int line, int col)
        : Error(code, msg), line_(line), col_(col) {}
    int line() const noexcept { return line_; }
    int col() const noexcept { return col_; }

private:
    int line_;
    int col_;
};

} // namespace topo
