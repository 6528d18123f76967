#ifndef CHARGE_LADDER_ERRORS_HPP
#define CHARGE_LADDER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace charge_ladder {

// Every failure raised by the library derives from Error so callers (the CLI in
// particular) can map outcome classes to exit codes in one place.
class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

#define CHARGE_LADDER_DEFINE_ERROR(Name)                                       \
  class Name : public Error {                                                  \
  public:                                                                      \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {}      \
  }

CHARGE_LADDER_DEFINE_ERROR(ParseError);
CHARGE_LADDER_DEFINE_ERROR(DivisionByZero);
CHARGE_LADDER_DEFINE_ERROR(UndefinedGcd);
CHARGE_LADDER_DEFINE_ERROR(NotSquarefree);
CHARGE_LADDER_DEFINE_ERROR(NotCoprime);
CHARGE_LADDER_DEFINE_ERROR(UnsupportedLambda);
CHARGE_LADDER_DEFINE_ERROR(InvariantViolation);
CHARGE_LADDER_DEFINE_ERROR(FieldRequired);
CHARGE_LADDER_DEFINE_ERROR(ConvergenceFailure);
CHARGE_LADDER_DEFINE_ERROR(CollisionError);
CHARGE_LADDER_DEFINE_ERROR(StepSizeUnderflow);

#undef CHARGE_LADDER_DEFINE_ERROR

} // namespace charge_ladder

#endif
