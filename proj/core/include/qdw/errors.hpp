#pragma once

#include <stdexcept>
#include <string>

namespace qdw {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

#define QDW_DEFINE_ERROR(Name)                                                 \
    class Name : public Error {                                               \
      public:                                                                  \
        using Error::Error;                                                    \
    }

QDW_DEFINE_ERROR(DimensionMismatch);
QDW_DEFINE_ERROR(NotHermitian);
QDW_DEFINE_ERROR(InvalidDimension);
QDW_DEFINE_ERROR(OutOfRange);
QDW_DEFINE_ERROR(InvalidProbabilities);
QDW_DEFINE_ERROR(InvalidRank);
QDW_DEFINE_ERROR(NotUnit);
QDW_DEFINE_ERROR(SettingCountMismatch);
QDW_DEFINE_ERROR(UnsupportedDimension);
QDW_DEFINE_ERROR(InvalidConfig);
QDW_DEFINE_ERROR(EmptySetting);
QDW_DEFINE_ERROR(InvalidParams);
QDW_DEFINE_ERROR(ParseError);

#undef QDW_DEFINE_ERROR

} // namespace qdw
