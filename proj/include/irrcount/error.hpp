#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace irrcount
{
    enum class ErrorKind
    {
        InvalidInput,
        InvalidPrime,
        InvalidDegree,
        SubfieldViolation,
        ZeroHasNoLog,
        EnumerationCapExceeded,
        OracleCapExceeded,
        OrderMismatch,
        BadResidue,
        UnsupportedGeneralQ,
        TableNotApplicable,
        NotApplicable,
        OutOfCatalog,
        Unsupported,
        NoCandidateMatch,
        InvariantViolation,
    };

    constexpr std::string_view to_string(ErrorKind kind) noexcept
    {
        switch (kind)
        {
        case ErrorKind::InvalidInput: return "InvalidInput";
        case ErrorKind::InvalidPrime: return "InvalidPrime";
        case ErrorKind::InvalidDegree: return "InvalidDegree";
        case ErrorKind::SubfieldViolation: return "SubfieldViolation";
        case ErrorKind::ZeroHasNoLog: return "ZeroHasNoLog";
        case ErrorKind::EnumerationCapExceeded: return "EnumerationCapExceeded";
        case ErrorKind::OracleCapExceeded: return "OracleCapExceeded";
        case ErrorKind::OrderMismatch: return "OrderMismatch";
        case ErrorKind::BadResidue: return "BadResidue";
        case ErrorKind::UnsupportedGeneralQ: return "UnsupportedGeneralQ";
        case ErrorKind::TableNotApplicable: return "TableNotApplicable";
        case ErrorKind::NotApplicable: return "NotApplicable";
        case ErrorKind::OutOfCatalog: return "OutOfCatalog";
        case ErrorKind::Unsupported: return "Unsupported";
        case ErrorKind::NoCandidateMatch: return "NoCandidateMatch";
        case ErrorKind::InvariantViolation: return "InvariantViolation";
        }
        return "Unknown";
    }

    class Error : public std::runtime_error
    {
    public:
        Error(ErrorKind kind, std::string const& message)
            : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
        {
        }

        ErrorKind kind() const noexcept { return kind_; }

    private:
        ErrorKind kind_;
    };

    // Internal consistency check; failure means an exactness invariant was broken.
    inline void ensure(bool condition, std::string const& what)
    {
        if (!condition)
            throw Error(ErrorKind::InvariantViolation, what);
    }
}
