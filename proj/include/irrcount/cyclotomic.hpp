#pragma once

#include <irrcount/bigint.hpp>
#include <irrcount/error.hpp>
#include <irrcount/numtheory.hpp>

#include <complex>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace irrcount
{
    using nt::u64;

    namespace detail
    {
        using IntPoly = std::vector<BigInt>;

        inline IntPoly poly_mul(IntPoly const& a, IntPoly const& b)
        {
            IntPoly out(a.size() + b.size() - 1);
            for (std::size_t i = 0; i < a.size(); ++i)
                if (a[i] != 0)
                    for (std::size_t j = 0; j < b.size(); ++j)
                        out[i + j] += a[i] * b[j];
            return out;
        }

        /// Exact division by a monic divisor.
        inline IntPoly poly_div_exact(IntPoly num, IntPoly const& den)
        {
            std::size_t const dn = den.size() - 1;
            IntPoly quo(num.size() - dn);
            for (std::size_t k = num.size(); k-- > dn;)
            {
                BigInt const c = num[k];
                quo[k - dn] = c;
                for (std::size_t j = 0; j <= dn; ++j)
                    num[k - dn + j] -= c * den[j];
            }
            for (auto const& c : num)
                ensure(c == 0, "cyclotomic polynomial division left a remainder");
            return quo;
        }
    }

    /// Coefficients of the L-th cyclotomic polynomial, low degree first (cached).
    inline std::vector<BigInt> const& cyclotomic_polynomial(u64 L)
    {
        static std::mutex mutex;
        static std::map<u64, std::vector<BigInt>> cache;
        std::lock_guard lock(mutex);
        auto it = cache.find(L);
        if (it != cache.end())
            return it->second;
        detail::IntPoly num{1}, den{1};
        for (auto d : nt::divisors(L))
        {
            int const mu = nt::mobius(L / d);
            if (mu == 0)
                continue;
            detail::IntPoly factor(d + 1);
            factor[0] = -1;
            factor[d] = 1;
            (mu > 0 ? num : den) = detail::poly_mul(mu > 0 ? num : den, factor);
        }
        return cache.emplace(L, detail::poly_div_exact(std::move(num), den)).first->second;
    }

    /// Element of Z[zeta_L], held as sum c_k zeta_L^k in Z[x]/(x^L - 1).
    class CycInt
    {
    public:
        CycInt() : CycInt(1) {}
        explicit CycInt(u64 L) : coeffs_(L)
        {
            if (L == 0)
                throw Error(ErrorKind::InvalidInput, "root of unity order must be positive");
        }
        CycInt(u64 L, std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs))
        {
            if (L == 0 || coeffs_.size() != L)
                throw Error(ErrorKind::InvalidInput, "coefficient vector length must equal L");
        }

        static CycInt integer(u64 L, BigInt const& value)
        {
            CycInt out(L);
            out.coeffs_[0] = value;
            return out;
        }

        /// zeta_L^k
        static CycInt root(u64 L, std::int64_t k)
        {
            CycInt out(L);
            out.coeffs_[static_cast<std::size_t>(nt::mod_floor(k, static_cast<std::int64_t>(L)))] = 1;
            return out;
        }

        /// sum_k counts[k] zeta_L^k
        template <class Count>
        static CycInt from_counts(u64 L, std::span<Count const> counts)
        {
            if (counts.size() != L)
                throw Error(ErrorKind::InvalidInput, "histogram length must equal L");
            CycInt out(L);
            for (u64 k = 0; k < L; ++k)
                out.coeffs_[k] = BigInt(counts[k]);
            return out;
        }

        u64 order() const noexcept { return coeffs_.size(); }
        std::vector<BigInt> const& coeffs() const noexcept { return coeffs_; }
        BigInt const& operator[](u64 k) const { return coeffs_[k]; }

        CycInt& operator+=(CycInt const& o)
        {
            check_same(o);
            for (u64 k = 0; k < order(); ++k)
                coeffs_[k] += o.coeffs_[k];
            return *this;
        }
        CycInt& operator-=(CycInt const& o)
        {
            check_same(o);
            for (u64 k = 0; k < order(); ++k)
                coeffs_[k] -= o.coeffs_[k];
            return *this;
        }
        CycInt& operator*=(BigInt const& c)
        {
            for (auto& x : coeffs_)
                x *= c;
            return *this;
        }

        friend CycInt operator+(CycInt a, CycInt const& b) { return a += b; }
        friend CycInt operator-(CycInt a, CycInt const& b) { return a -= b; }
        friend CycInt operator*(CycInt a, BigInt const& c) { return a *= c; }
        friend CycInt operator*(BigInt const& c, CycInt a) { return a *= c; }
        CycInt operator-() const
        {
            CycInt out = *this;
            for (auto& x : out.coeffs_)
                x = -x;
            return out;
        }

        friend CycInt operator*(CycInt const& a, CycInt const& b)
        {
            a.check_same(b);
            u64 const L = a.order();
            CycInt out(L);
            for (u64 i = 0; i < L; ++i)
            {
                if (a.coeffs_[i] == 0)
                    continue;
                for (u64 j = 0; j < L; ++j)
                    if (b.coeffs_[j] != 0)
                        out.coeffs_[(i + j) % L] += a.coeffs_[i] * b.coeffs_[j];
            }
            return out;
        }
        CycInt& operator*=(CycInt const& o) { return *this = *this * o; }

        CycInt pow(u64 e) const
        {
            CycInt result = integer(order(), 1), base = *this;
            while (e)
            {
                if (e & 1)
                    result = (result * base).reduced_rep();
                e >>= 1;
                if (e)
                    base = (base * base).reduced_rep();
            }
            return result;
        }

        /// Complex conjugate: zeta^k -> zeta^{-k}.
        CycInt conj() const
        {
            u64 const L = order();
            CycInt out(L);
            for (u64 k = 0; k < L; ++k)
                out.coeffs_[(L - k) % L] = coeffs_[k];
            return out;
        }

        /// Multiply by zeta_L^k.
        CycInt shift(std::int64_t k) const
        {
            u64 const L = order();
            u64 const s = static_cast<u64>(nt::mod_floor(k, static_cast<std::int64_t>(L)));
            CycInt out(L);
            for (u64 i = 0; i < L; ++i)
                out.coeffs_[(i + s) % L] = coeffs_[i];
            return out;
        }

        /// zeta_L -> zeta_{L'}^{L'/L}
        CycInt embed(u64 target) const
        {
            if (target == 0 || target % order() != 0)
                throw Error(ErrorKind::OrderMismatch, "cannot embed order " + std::to_string(order()) + " into " +
                                                          std::to_string(target));
            u64 const step = target / order();
            CycInt out(target);
            for (u64 k = 0; k < order(); ++k)
                out.coeffs_[k * step] = coeffs_[k];
            return out;
        }

        /// Remainder modulo Phi_L (length phi(L)).
        std::vector<BigInt> reduce() const
        {
            auto const& phi = cyclotomic_polynomial(order());
            std::size_t const deg = phi.size() - 1;
            std::vector<BigInt> r = coeffs_;
            for (std::size_t k = r.size(); k-- > deg;)
            {
                if (r[k] == 0)
                    continue;
                BigInt const c = r[k];
                for (std::size_t j = 0; j <= deg; ++j)
                    r[k - deg + j] -= c * phi[j];
            }
            r.resize(deg);
            return r;
        }

        /// Same value, coefficients reduced modulo Phi_L (support in [0, phi(L))).
        CycInt reduced_rep() const
        {
            auto r = reduce();
            r.resize(order());
            return CycInt(order(), std::move(r));
        }

        bool is_zero() const
        {
            for (auto const& c : reduce())
                if (c != 0)
                    return false;
            return true;
        }

        /// The value as a rational integer, or nullopt when it is not one.
        std::optional<BigInt> as_integer() const
        {
            auto const r = reduce();
            for (std::size_t k = 1; k < r.size(); ++k)
                if (r[k] != 0)
                    return std::nullopt;
            return r.empty() ? BigInt(0) : r[0];
        }

        /// Numerical value with zeta_L = exp(2 pi i / L); diagnostics only.
        std::complex<double> approx() const
        {
            std::complex<double> z{0.0, 0.0};
            double const step = 2.0 * 3.14159265358979323846 / static_cast<double>(order());
            for (u64 k = 0; k < order(); ++k)
                if (coeffs_[k] != 0)
                    z += coeffs_[k].convert_to<double>() * std::polar(1.0, step * static_cast<double>(k));
            return z;
        }

        friend bool operator==(CycInt const& a, CycInt const& b)
        {
            if (a.order() == b.order())
                return (a - b).is_zero();
            u64 const L = std::lcm(a.order(), b.order());
            return (a.embed(L) - b.embed(L)).is_zero();
        }

        std::string to_string() const
        {
            std::string out = "[";
            for (u64 k = 0; k < order(); ++k)
            {
                if (k)
                    out += ',';
                out += coeffs_[k].str();
            }
            return out + "]";
        }

    private:
        void check_same(CycInt const& o) const
        {
            if (o.order() != order())
                throw Error(ErrorKind::OrderMismatch, "root of unity orders differ: " + std::to_string(order()) + " vs " +
                                                          std::to_string(o.order()));
        }

        std::vector<BigInt> coeffs_;
    };

    /// Embed both operands into their common order.
    inline std::pair<CycInt, CycInt> unify(CycInt const& a, CycInt const& b)
    {
        u64 const L = std::lcm(a.order(), b.order());
        return {a.embed(L), b.embed(L)};
    }

    /// sqrt(-D) in Z[zeta_D] for squarefree D = 3 mod 4, as the quadratic Gauss sum
    /// sum_a (a|D) zeta_D^a (positive imaginary part).
    inline CycInt sqrt_neg(u64 D)
    {
        if (D % 4 != 3 || nt::mobius(D) == 0)
            throw Error(ErrorKind::InvalidInput, "sqrt(-D) needs squarefree D = 3 mod 4");
        std::vector<BigInt> c(D);
        for (u64 a = 1; a < D; ++a)
            c[a] = nt::jacobi_symbol(static_cast<std::int64_t>(a), D);
        return CycInt(D, std::move(c));
    }
}
