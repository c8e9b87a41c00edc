#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace oflat {

// Canonical error codes shared by the library, the CLI and the HTTP service.
enum class ErrorCode {
    EmptyStateName,
    InvalidStateName,
    SymbolNotSingle,
    InvalidWord,
    UnknownState,
    MalformedDocument,
    MissingField,
    InvalidAutomaton,
    UnknownKind,
    NoAutomaton,
    UnknownSession,
    SessionGone,
};

// "EMPTY_STATE_NAME", "SYMBOL_NOT_SINGLE", ...
std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::string detail = {});

    ErrorCode code() const noexcept { return code_; }
    // Extra context, e.g. the field name for MISSING_FIELD.
    const std::string& detail() const noexcept { return detail_; }

private:
    ErrorCode code_;
    std::string detail_;
};

}  // namespace oflat
