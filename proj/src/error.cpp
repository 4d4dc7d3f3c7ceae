#include "tkb/error.hpp"

namespace tkb {

std::string_view to_string(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::EmptySurface: return "EmptySurface";
        case ErrorCode::DuplicateSurface: return "DuplicateSurface";
        case ErrorCode::DuplicateName: return "DuplicateName";
        case ErrorCode::UnknownTerm: return "UnknownTerm";
        case ErrorCode::UnknownParent: return "UnknownParent";
        case ErrorCode::UnknownConcept: return "UnknownConcept";
        case ErrorCode::UnknownEntity: return "UnknownEntity";
        case ErrorCode::CycleWouldForm: return "CycleWouldForm";
        case ErrorCode::UnregisteredTypeWithoutDefinition: return "UnregisteredTypeWithoutDefinition";
        case ErrorCode::ViewpointConflict: return "ViewpointConflict";
        case ErrorCode::SpanOutOfBounds: return "SpanOutOfBounds";
        case ErrorCode::SpanMismatch: return "SpanMismatch";
        case ErrorCode::LabelInUse: return "LabelInUse";
        case ErrorCode::InvalidArgument: return "InvalidArgument";
        case ErrorCode::EmptyDocument: return "EmptyDocument";
        case ErrorCode::EmptyQuery: return "EmptyQuery";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::IntegrityError: return "IntegrityError";
        case ErrorCode::VersionUnsupported: return "VersionUnsupported";
        case ErrorCode::IoError: return "IoError";
        case ErrorCode::BadRequest: return "BadRequest";
    }
    return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& rule, const std::string& message) {
    std::string out(to_string(code));
    if (!rule.empty()) out += "(" + rule + ")";
    out += ": ";
    out += message;
    return out;
}

}  // namespace

Error::Error(ErrorCode code, std::string message, std::vector<std::string> entities,
             std::string rule)
    : std::runtime_error(decorate(code, rule, message)),
      code_(code),
      entities_(std::move(entities)),
      rule_(std::move(rule)) {}

}  // namespace tkb
