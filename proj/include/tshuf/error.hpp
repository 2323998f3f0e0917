#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace tshuf {

// How an error surfaces at the command line: usage problems (exit 2),
// negative verdicts (exit 1) and internal assertions that would contradict
// a proven identity (exit 3).
enum class ErrorClass { usage, verdict, internal };

class Error : public std::runtime_error {
public:
    Error(const std::string& what, ErrorClass cls, std::string witness = {})
        : std::runtime_error(what), class_(cls), witness_(std::move(witness)) {}

    ErrorClass error_class() const noexcept { return class_; }

    // Serialized JSON document describing the failure (may be empty).
    const std::string& witness() const noexcept { return witness_; }

private:
    ErrorClass class_;
    std::string witness_;
};

#define TSHUF_DEFINE_ERROR(Name, Cls)                                              \
    class Name : public Error {                                                    \
    public:                                                                        \
        explicit Name(const std::string& what, std::string witness = {})           \
            : Error(#Name ": " + what, ErrorClass::Cls, std::move(witness)) {}     \
    };

TSHUF_DEFINE_ERROR(ArityMismatch, usage)
TSHUF_DEFINE_ERROR(ArityCapExceeded, usage)
TSHUF_DEFINE_ERROR(RegionViolation, usage)
TSHUF_DEFINE_ERROR(InvalidArgument, usage)
TSHUF_DEFINE_ERROR(ParseError, usage)
TSHUF_DEFINE_ERROR(NotInS, usage)
TSHUF_DEFINE_ERROR(NotDivisible, verdict)
TSHUF_DEFINE_ERROR(NotPolynomial, verdict)
TSHUF_DEFINE_ERROR(NotInSpan, verdict)
TSHUF_DEFINE_ERROR(TruncationUnstable, internal)
TSHUF_DEFINE_ERROR(NonTermination, internal)
TSHUF_DEFINE_ERROR(CalibrationFailure, internal)
TSHUF_DEFINE_ERROR(InternalAssertion, internal)

#undef TSHUF_DEFINE_ERROR

}  // namespace tshuf
