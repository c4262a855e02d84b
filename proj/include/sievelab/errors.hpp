#pragma once

#include <stdexcept>
#include <string>

namespace sievelab {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define SIEVELAB_ERROR(Name)                   \
  class Name : public Error {                  \
   public:                                     \
    explicit Name(const std::string& what)     \
        : Error(#Name ": " + what) {}          \
  }

SIEVELAB_ERROR(InvalidArgument);
SIEVELAB_ERROR(NotInvertible);
SIEVELAB_ERROR(NotInGroup);
SIEVELAB_ERROR(NotAUnit);
SIEVELAB_ERROR(ModulusOverflow);
SIEVELAB_ERROR(NotDistinct);
SIEVELAB_ERROR(RangeTooLong);
SIEVELAB_ERROR(SizeCap);
SIEVELAB_ERROR(FormatError);
SIEVELAB_ERROR(LengthMismatch);

#undef SIEVELAB_ERROR

}  // namespace sievelab
