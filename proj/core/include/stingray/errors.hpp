#pragma once

#include <stdexcept>
#include <string>

namespace stingray {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotAPrimePower : Error { using Error::Error; };
struct DivisionByZero : Error { using Error::Error; };
struct NonMonic : Error { using Error::Error; };
struct Singular : Error { using Error::Error; };
struct AmbientMismatch : Error { using Error::Error; };
struct EnumerationTooLarge : Error { using Error::Error; };
struct NotInvertible : Error { using Error::Error; };
struct IdentityInput : Error { using Error::Error; };
struct NotADuo : Error { using Error::Error; };
struct CapExceeded : Error { using Error::Error; };
struct EmptyClass : Error { using Error::Error; };
struct RejectionBudgetExceeded : Error { using Error::Error; };
struct RankOutOfRange : Error { using Error::Error; };
struct NegativeE : Error { using Error::Error; };
struct BoundNotApplicable : Error { using Error::Error; };
struct TrivialQuotient : Error { using Error::Error; };

}  // namespace stingray
