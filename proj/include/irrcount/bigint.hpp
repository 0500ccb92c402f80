#pragma once

#include <irrcount/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace irrcount
{
    // expression templates off: values are stored in `auto` locals all over the place
    using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
    using BigRational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                                      boost::multiprecision::et_off>;

    inline BigInt big_pow(BigInt base, std::uint64_t exp)
    {
        BigInt result = 1;
        while (exp)
        {
            if (exp & 1)
                result *= base;
            exp >>= 1;
            if (exp)
                base *= base;
        }
        return result;
    }

    /// Division that must be exact; a remainder means an integrality invariant failed.
    inline BigInt exact_div(BigInt const& numerator, BigInt const& denominator, char const* what)
    {
        ensure(denominator != 0, std::string(what) + ": division by zero");
        BigInt quotient, remainder;
        boost::multiprecision::divide_qr(numerator, denominator, quotient, remainder);
        ensure(remainder == 0, std::string(what) + ": non-exact division " + numerator.str() + " / " + denominator.str());
        return quotient;
    }

    inline std::string to_string(BigInt const& value) { return value.str(); }
}
