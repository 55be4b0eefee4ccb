#pragma once

#include <stdexcept>
#include <string>

namespace dynacurve {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonZeroRemainder : Error { using Error::Error; };
struct RingMismatch : Error { using Error::Error; };
struct MalformedInput : Error { using Error::Error; };
struct ResourceCapExceeded : Error { using Error::Error; };
struct IdentityViolation : Error { using Error::Error; };
struct NonIntegerGenus : Error { using Error::Error; };
struct PreconditionViolated : Error { using Error::Error; };
struct NonConvergence : Error { using Error::Error; };
struct UnclassifiableRoot : Error { using Error::Error; };
struct DegenerateTangent : Error { using Error::Error; };
struct TrackingFailure : Error { using Error::Error; };
struct GroupTooLarge : Error { using Error::Error; };
struct RayTraceUnresolved : Error { using Error::Error; };

}  // namespace dynacurve
