#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

namespace cdsw {

using Integer = mpz_class;
using Rational = mpq_class;

using RatVec = std::vector<Rational>;
using RatMat = std::vector<RatVec>;

/// "p/q" or "p" for integral values.
inline std::string to_string(const Rational& r)
{
    return r.get_str();
}

/// n/d in canonical form (the two-argument mpq_class constructor does not canonicalize).
inline Rational make_rational(long n, long d)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

inline Rational rational_from_string(const std::string& s)
{
    Rational r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("not a rational: " + s);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& r)
{
    return r.get_den() == 1;
}

/// Raised when a requested computation exceeds a configured size budget.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Raised when a verification identity fails; carries a human-readable witness.
class CheckFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace cdsw
