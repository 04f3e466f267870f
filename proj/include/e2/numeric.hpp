#pragma once
#include <gmpxx.h>
#include <stdexcept>
#include <string>

namespace e2 {

using Rat = mpq_class;
using Int = mpz_class;

// Base for every structured error the engine can raise. The CLI prints
// name() on the diagnostic stream and maps it to exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& what)
        : std::runtime_error(name + ": " + what), name_(std::move(name)) {}
    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define E2_DEFINE_ERROR(NAME)                                        \
    class NAME : public Error {                                      \
    public:                                                          \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

E2_DEFINE_ERROR(CompositionNotZero);
E2_DEFINE_ERROR(DegreeZeroGenerator);
E2_DEFINE_ERROR(NotPolynomial);
E2_DEFINE_ERROR(NotRegular);
E2_DEFINE_ERROR(OracleTooLarge);
E2_DEFINE_ERROR(ActionOrderMismatch);
E2_DEFINE_ERROR(BidegreeMismatch);
E2_DEFINE_ERROR(MarkerInDifferentialPath);
E2_DEFINE_ERROR(InvalidPresentation);
E2_DEFINE_ERROR(InvalidInput);

#undef E2_DEFINE_ERROR

inline Rat rat_from_string(const std::string& s)
{
    Rat q;
    if (q.set_str(s, 10) != 0)
        throw InvalidInput("cannot parse rational '" + s + "'");
    q.canonicalize();
    return q;
}

}  // namespace e2
