#pragma once

#include <stdexcept>
#include <string>

namespace invgamma {

enum class ErrorCode {
    pole,
    overflow,
    domain,
    invalid_branch,
    no_branch,
    below_extremum,
    non_convergence,
    pole_point,
    unsupported_branch,
    not_in_range,
    trim_failure,
};

/// Base of every error the library throws; `code()` identifies the failure
/// without a dynamic_cast chain.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

#define INVGAMMA_DEFINE_ERROR(Name, Code)                                       \
    class Name : public Error {                                                 \
    public:                                                                     \
        explicit Name(const std::string& what) : Error(ErrorCode::Code, what) {} \
    };

INVGAMMA_DEFINE_ERROR(PoleError, pole)
INVGAMMA_DEFINE_ERROR(OverflowError, overflow)
INVGAMMA_DEFINE_ERROR(DomainError, domain)
INVGAMMA_DEFINE_ERROR(InvalidBranch, invalid_branch)
INVGAMMA_DEFINE_ERROR(NoBranch, no_branch)
INVGAMMA_DEFINE_ERROR(BelowExtremum, below_extremum)
INVGAMMA_DEFINE_ERROR(NonConvergence, non_convergence)
INVGAMMA_DEFINE_ERROR(PolePoint, pole_point)
INVGAMMA_DEFINE_ERROR(UnsupportedBranch, unsupported_branch)
INVGAMMA_DEFINE_ERROR(NotInRange, not_in_range)
INVGAMMA_DEFINE_ERROR(TrimFailure, trim_failure)

#undef INVGAMMA_DEFINE_ERROR

}  // namespace invgamma
