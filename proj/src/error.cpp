#include "oflat/error.hpp"

#include <utility>

namespace oflat {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::EmptyStateName: return "EMPTY_STATE_NAME";
        case ErrorCode::InvalidStateName: return "INVALID_STATE_NAME";
        case ErrorCode::SymbolNotSingle: return "SYMBOL_NOT_SINGLE";
        case ErrorCode::InvalidWord: return "INVALID_WORD";
        case ErrorCode::UnknownState: return "UNKNOWN_STATE";
        case ErrorCode::MalformedDocument: return "MALFORMED_DOCUMENT";
        case ErrorCode::MissingField: return "MISSING_FIELD";
        case ErrorCode::InvalidAutomaton: return "INVALID_AUTOMATON";
        case ErrorCode::UnknownKind: return "UNKNOWN_KIND";
        case ErrorCode::NoAutomaton: return "NO_AUTOMATON";
        case ErrorCode::UnknownSession: return "UNKNOWN_SESSION";
        case ErrorCode::SessionGone: return "SESSION_GONE";
    }
    return "UNKNOWN";
}

Error::Error(ErrorCode code, std::string message, std::string detail)
    : std::runtime_error(std::move(message)), code_(code), detail_(std::move(detail)) {}

}  // namespace oflat
