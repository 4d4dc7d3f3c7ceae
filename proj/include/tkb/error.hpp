#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tkb {

// Every failure the engine reports. The names double as the wire-level error
// codes of the CLI and the HTTP API, so they are spelled exactly once here.
enum class ErrorCode {
    EmptySurface,
    DuplicateSurface,
    DuplicateName,
    UnknownTerm,
    UnknownParent,
    UnknownConcept,
    UnknownEntity,
    CycleWouldForm,
    UnregisteredTypeWithoutDefinition,
    ViewpointConflict,
    SpanOutOfBounds,
    SpanMismatch,
    LabelInUse,
    InvalidArgument,
    EmptyDocument,
    EmptyQuery,
    ParseError,
    IntegrityError,
    VersionUnsupported,
    IoError,
    BadRequest,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, std::string message, std::vector<std::string> entities = {},
          std::string rule = {});

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return to_string(code_); }

    // Ids of the records the failure is about (e.g. the concept a term already
    // designates under a conflicting viewpoint).
    const std::vector<std::string>& entities() const noexcept { return entities_; }

    // Sub-classification for IntegrityError: the violated rule
    // (ViewpointConflict, Cycle, DanglingReference, ...). Empty otherwise.
    const std::string& rule() const noexcept { return rule_; }

private:
    ErrorCode code_;
    std::vector<std::string> entities_;
    std::string rule_;
};

}  // namespace tkb
