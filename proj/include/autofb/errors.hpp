#pragma once

#include <stdexcept>
#include <string>

namespace autofb {

// Base for all recoverable errors raised by the library. `code()` is a
// stable identifier suitable for machine-readable reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define AUTOFB_DEFINE_ERROR(Name)                                     \
    class Name : public Error {                                       \
    public:                                                           \
        explicit Name(const std::string& message) : Error(#Name, message) {} \
    }

// geometry-core
AUTOFB_DEFINE_ERROR(InsufficientPoints);
AUTOFB_DEFINE_ERROR(DegenerateConfiguration);

// scale-recovery
AUTOFB_DEFINE_ERROR(RulerNotFound);
AUTOFB_DEFINE_ERROR(InconsistentSpacing);

// biometry-pipeline
AUTOFB_DEFINE_ERROR(NoAnatomy);

// evaluation
AUTOFB_DEFINE_ERROR(DegenerateClass);
AUTOFB_DEFINE_ERROR(ShapeMismatch);
AUTOFB_DEFINE_ERROR(EmptyInput);
AUTOFB_DEFINE_ERROR(TooFewSubjects);

// phantom
AUTOFB_DEFINE_ERROR(SpecOutOfBounds);
AUTOFB_DEFINE_ERROR(UnresolvableTicks);

// cli-io
AUTOFB_DEFINE_ERROR(UnreadableFile);
AUTOFB_DEFINE_ERROR(IllegalLabelValue);
AUTOFB_DEFINE_ERROR(NoInputs);

#undef AUTOFB_DEFINE_ERROR

}  // namespace autofb
