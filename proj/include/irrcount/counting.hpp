#pragma once

#include <irrcount/char_sums.hpp>
#include <irrcount/count_spec.hpp>
#include <irrcount/jacobi_closed.hpp>
#include <irrcount/oracle.hpp>
#include <irrcount/semiprimitive.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

namespace irrcount
{
    enum class Method
    {
        Auto,
        Brute,       // oracle enumeration
        General,     // direct double sum for M_t
        Monomial,    // M_t from monomial sums (a = 0 and a != 0 forms)
        Gauss,       // M_t from Gauss sums over F_{q^t}
        Jacobi,      // M_t from Jacobi sums over F_q (closed forms where known, else enumeration)
        GaussDh,     // M_t from Gauss sums over F_q lifted by Davenport-Hasse
        Table,       // closed N_t tables
        PrimeClosed, // closed P_m for prime m and s in {2, 3, 4}
        Catalog,     // p = 2, a = 0, s = q - 1 closed forms
    };

    constexpr std::string_view to_string(Method m) noexcept
    {
        switch (m)
        {
        case Method::Auto: return "auto";
        case Method::Brute: return "brute";
        case Method::General: return "general";
        case Method::Monomial: return "monomial";
        case Method::Gauss: return "gauss";
        case Method::Jacobi: return "jacobi";
        case Method::GaussDh: return "gauss-dh";
        case Method::Table: return "table";
        case Method::PrimeClosed: return "prime-closed";
        case Method::Catalog: return "catalog";
        }
        return "?";
    }

    inline std::optional<Method> parse_method(std::string_view name)
    {
        for (auto m : {Method::Auto, Method::Brute, Method::General, Method::Monomial, Method::Gauss, Method::Jacobi,
                       Method::GaussDh, Method::Table, Method::PrimeClosed, Method::Catalog})
            if (to_string(m) == name)
                return m;
        return std::nullopt;
    }

    enum class NtTable
    {
        S2,
        S3,
        S4,
        Semiprimitive,
    };

    constexpr std::string_view to_string(NtTable t) noexcept
    {
        switch (t)
        {
        case NtTable::S2: return "s2";
        case NtTable::S3: return "s3";
        case NtTable::S4: return "s4";
        case NtTable::Semiprimitive: return "semiprimitive";
        }
        return "?";
    }

    enum class MtPath
    {
        Lemma4, // (q-1) sum over H_l of G_t(conj lambda) lambda(g^i0), a = 0
        Lemma5, // Jacobi form, a = 0
        Lemma6, // Jacobi form, a != 0
        Lemma7, // monomial sums, a != 0
    };

    struct NtResult
    {
        unsigned t = 0;
        BigInt value;
        std::string method;
    };

    struct PmResult
    {
        BigInt value;
        std::string method;
        std::vector<NtResult> terms;
    };

    /// Rows of the closed N_t tables: (guard, value) pairs over a shared context.
    struct TableCtx
    {
        CountSpec const* spec = nullptr;
        TParams tp;
        u64 p = 0;
        u64 q = 0;
        unsigned t = 0;
        u64 i0 = 0;
        bool a_zero = true;
        u64 ind_a0 = 0; // ind_g(a0) mod q - 1
        // semiprimitive data
        u64 e = 0;
        u64 n = 0;
        // p = q closed-form data
        std::optional<QuarticParams> quartic;
        std::optional<CubicParams> cubic;

        BigRational qpow(std::int64_t k) const
        {
            return k >= 0 ? BigRational(big_pow(q, static_cast<u64>(k))) : BigRational(BigInt(1), big_pow(q, static_cast<u64>(-k)));
        }
        /// q^{k/2}; exact only when q is a square or k is even
        BigRational sqrtq_pow(std::int64_t k) const
        {
            ensure(k % 2 == 0 || e != 0, "odd power of sqrt(q) outside the semiprimitive table");
            if (k % 2 == 0)
                return qpow(k / 2);
            u64 const root = nt::checked_pow(p, e * n);
            return k >= 0 ? BigRational(big_pow(root, static_cast<u64>(k)))
                          : BigRational(BigInt(1), big_pow(root, static_cast<u64>(-k)));
        }
        static int sign(u64 k) { return k % 2 == 0 ? 1 : -1; }
        /// rho(g^k)
        static int rho(u64 k) { return sign(k); }
        /// rho(-1)
        int rho_minus_one() const { return sign((q - 1) / 2); }
        BigRational dsf() const { return BigRational(BigInt(tp.d), BigInt(spec->s)); }
    };

    struct TableRow
    {
        std::string_view name;
        std::function<bool(TableCtx const&)> guard;
        std::function<BigRational(TableCtx const&)> value;
    };

    namespace tables
    {
        inline BigRational re(GaussianInt const& z) { return BigRational(z.a); }
        inline BigRational re(EisensteinInt const& z) { return BigRational(z.a) - BigRational(z.b, 2); }
        inline GaussianInt i_pow(u64 k)
        {
            switch (k % 4)
            {
            case 0: return {1, 0};
            case 1: return {0, 1};
            case 2: return {-1, 0};
            default: return {0, -1};
            }
        }
        inline bool dl(TableCtx const& c, u64 d, u64 l) { return c.tp.d == d && c.tp.l == l; }

        inline std::vector<TableRow> const& s2()
        {
            using C = TableCtx const&;
            static std::vector<TableRow> const rows = {
                {"a=0 (1,1)", [](C c) { return c.a_zero && dl(c, 1, 1); },
                 [](C c) { return (c.qpow(c.t - 1) - 1) / 2; }},
                {"a=0 (1,2)", [](C c) { return c.a_zero && dl(c, 1, 2); },
                 [](C c) {
                     int const rho = c.t / 2 % 2 == 0 ? 1 : c.rho_minus_one();
                     return (c.qpow(c.t - 1) - 1 - BigRational(c.q - 1) * c.sign(c.spec->h) * c.qpow((c.t - 2) / 2) * rho) / 2;
                 }},
                {"a=0 (2,1)", [](C c) { return c.a_zero && dl(c, 2, 1); }, [](C c) { return c.qpow(c.t - 1) - 1; }},
                {"a!=0 (1,1)", [](C c) { return !c.a_zero && dl(c, 1, 1); },
                 [](C c) {
                     // rho((-1)^{(t-1)/2} m/(ta)) with m/(ta) = -a0
                     int rho = TableCtx::rho(c.ind_a0) * c.rho_minus_one();
                     if ((c.t - 1) / 2 % 2 == 1)
                         rho *= c.rho_minus_one();
                     return (c.qpow(c.t - 1) + c.sign(c.spec->h) * c.qpow((c.t - 1) / 2) * rho) / 2;
                 }},
                {"a!=0 (1,2)", [](C c) { return !c.a_zero && dl(c, 1, 2); },
                 [](C c) {
                     int const rho = c.t / 2 % 2 == 0 ? 1 : c.rho_minus_one();
                     return (c.qpow(c.t - 1) + c.sign(c.spec->h) * c.qpow((c.t - 2) / 2) * rho) / 2;
                 }},
                {"a!=0 (2,1)", [](C c) { return !c.a_zero && dl(c, 2, 1); }, [](C c) { return c.qpow(c.t - 1); }},
            };
            return rows;
        }

        inline std::vector<TableRow> const& s4()
        {
            using C = TableCtx const&;
            // Re(pi^{t/2} i^{i0})
            static auto re_pi = [](C c) { return re(c.quartic->pi.pow(c.t / 2) * i_pow(c.i0)); };
            static auto chi4 = [](C c, u64 k) { return i_pow(k); };
            static std::vector<TableRow> const rows = {
                {"a=0 (1,1)", [](C c) { return c.a_zero && dl(c, 1, 1); },
                 [](C c) { return (c.qpow(c.t - 1) - 1) / 4; }},
                {"a=0 (1,2)", [](C c) { return c.a_zero && dl(c, 1, 2); },
                 [](C c) { return (c.qpow(c.t - 1) - 1 - c.sign(c.i0) * c.qpow((c.t - 2) / 2) * (c.p - 1)) / 4; }},
                {"a=0 (1,4)", [](C c) { return c.a_zero && dl(c, 1, 4); },
                 [](C c) {
                     return (c.qpow(c.t - 1) - 1 -
                             c.sign(c.i0) * c.qpow((c.t - 4) / 4) * (c.p - 1) * (c.qpow(c.t / 4) + 2 * re_pi(c))) /
                            4;
                 }},
                {"a=0 (2,1)", [](C c) { return c.a_zero && dl(c, 2, 1); },
                 [](C c) { return (c.qpow(c.t - 1) - 1) / 2; }},
                {"a=0 (2,2)", [](C c) { return c.a_zero && dl(c, 2, 2); },
                 [](C c) { return (c.qpow(c.t - 1) - 1 - c.sign(c.i0) * c.qpow((c.t - 2) / 2) * (c.p - 1)) / 2; }},
                {"a=0 (4,1)", [](C c) { return c.a_zero && dl(c, 4, 1); }, [](C c) { return c.qpow(c.t - 1) - 1; }},
                {"a!=0 (1,1)", [](C c) { return !c.a_zero && dl(c, 1, 1); },
                 [](C c) {
                     auto const& qp = *c.quartic;
                     // chi4(-a0) = i^{ind(-a0)}, ind(-1) = (p-1)/2
                     u64 const ind_neg = (c.ind_a0 + (c.p - 1) / 2) % 4;
                     GaussianInt Q;
                     if (c.t % 4 == 1)
                         Q = qp.pi.pow((c.t - 1) / 2) * chi4(c, ind_neg).conj() * i_pow(c.i0) *
                             big_pow(c.p, (c.t - 1) / 4);
                     else
                         Q = qp.pi.pow((c.t + 1) / 2) * chi4(c, ind_neg) * i_pow(c.i0) *
                             (BigInt(qp.f % 2 ? -1 : 1) * big_pow(c.p, (c.t - 3) / 4));
                     return (c.qpow(c.t - 1) +
                             c.sign(c.i0) * (c.qpow((c.t - 1) / 2) * TableCtx::rho(c.ind_a0) + 2 * re(Q))) /
                            4;
                 }},
                {"a!=0 (1,2)", [](C c) { return !c.a_zero && dl(c, 1, 2); },
                 [](C c) {
                     return (c.qpow(c.t - 1) + c.sign(c.i0) * BigRational(big_pow(c.p, (c.t - 2) / 4)) *
                                                   (BigRational(big_pow(c.p, (c.t - 2) / 4)) -
                                                    2 * TableCtx::rho(c.ind_a0) * re_pi(c))) /
                            4;
                 }},
                {"a!=0 (1,4)", [](C c) { return !c.a_zero && dl(c, 1, 4); },
                 [](C c) {
                     return (c.qpow(c.t - 1) + c.sign(c.i0) * c.qpow((c.t - 4) / 4) * (c.qpow(c.t / 4) + 2 * re_pi(c))) / 4;
                 }},
                {"a!=0 (2,1)", [](C c) { return !c.a_zero && dl(c, 2, 1); },
                 [](C c) {
                     return (c.qpow(c.t - 1) + c.sign(c.i0) * c.qpow((c.t - 1) / 2) * TableCtx::rho(c.ind_a0)) / 2;
                 }},
                {"a!=0 (2,2)", [](C c) { return !c.a_zero && dl(c, 2, 2); },
                 [](C c) { return (c.qpow(c.t - 1) + c.sign(c.i0) * c.qpow((c.t - 2) / 2)) / 2; }},
                {"a!=0 (4,1)", [](C c) { return !c.a_zero && dl(c, 4, 1); }, [](C c) { return c.qpow(c.t - 1); }},
            };
            return rows;
        }

        inline std::vector<TableRow> const& s3()
        {
            using C = TableCtx const&;
            // Re(pi^{t/3} zeta^{2 i0})
            static auto re_pi = [](C c) {
                return re(c.cubic->pi.pow(c.t / 3) * EisensteinInt::unit_root(static_cast<std::int64_t>(2 * c.i0)));
            };
            static std::vector<TableRow> const rows = {
                {"a=0 (1,1)", [](C c) { return c.a_zero && dl(c, 1, 1); },
                 [](C c) { return (c.qpow(c.t - 1) - 1) / 3; }},
                {"a=0 (1,3)", [](C c) { return c.a_zero && dl(c, 1, 3); },
                 [](C c) {
                     return (c.qpow(c.t - 1) - 1 - 2 * c.sign(c.t) * c.qpow((c.t - 3) / 3) * (c.p - 1) * re_pi(c)) / 3;
                 }},
                {"a=0 (3,1)", [](C c) { return c.a_zero && dl(c, 3, 1); }, [](C c) { return c.qpow(c.t - 1) - 1; }},
                {"a!=0 (1,1)", [](C c) { return !c.a_zero && dl(c, 1, 1); },
                 [](C c) {
                     auto const& cp = *c.cubic;
                     EisensteinInt const chi_a0 = EisensteinInt::unit_root(static_cast<std::int64_t>(c.ind_a0 % 3));
                     EisensteinInt const z2 = EisensteinInt::unit_root(static_cast<std::int64_t>(2 * c.i0));
                     EisensteinInt Q;
                     if (c.t % 3 == 1)
                         Q = cp.pi.pow((c.t - 1) / 3) * chi_a0.conj() * z2 * big_pow(c.p, (c.t - 1) / 3);
                     else
                         Q = cp.pi.pow((c.t + 1) / 3) * chi_a0 * z2 * big_pow(c.p, (c.t - 2) / 3);
                     return (c.qpow(c.t - 1) - 2 * c.sign(c.t) * re(Q)) / 3;
                 }},
                {"a!=0 (1,3)", [](C c) { return !c.a_zero && dl(c, 1, 3); },
                 [](C c) { return (c.qpow(c.t - 1) + 2 * c.sign(c.t) * c.qpow((c.t - 3) / 3) * re_pi(c)) / 3; }},
                {"a!=0 (3,1)", [](C c) { return !c.a_zero && dl(c, 3, 1); }, [](C c) { return c.qpow(c.t - 1); }},
            };
            return rows;
        }

        /// k for the F_{q^t} monomial sums at the table's (e, n).
        inline u64 k_of(TableCtx const& c, u64 s, u64 nt) { return semiprimitive_k(c.p, c.e, nt, s); }

        inline std::vector<TableRow> const& semiprimitive()
        {
            using C = TableCtx const&;
            // l | (k_{s/d} - i0 - ind_{gamma_t} a0), ind_{gamma_t} a0 = t0 ind_g a0
            static auto x_of = [](C c) {
                u64 const sd = c.tp.s_over_d;
                u64 const k = k_of(c, sd, c.n * c.t) % sd;
                u64 const ind = nt::mul_mod(c.tp.t0_mod, c.ind_a0 % sd, sd);
                return (k + 2 * sd - c.i0 % sd - ind) % sd;
            };
            static auto j0_of = [](C c) {
                u64 const x = x_of(c);
                u64 const u = c.tp.u;
                if (u == 1)
                    return u64{0};
                u64 const coeff = (c.tp.t0_mod / c.tp.l) % u;
                return nt::mul_mod((x / c.tp.l) % u, *nt::inv_mod(coeff, u), u);
            };
            static auto j0_at_k = [](C c) {
                u64 const u = c.tp.u;
                return u == 1 || j0_of(c) == k_of(c, u, c.n) % u;
            };
            static auto i0_at_k = [](C c) { return c.tp.l == 1 || c.i0 % c.tp.l == k_of(c, c.tp.l, c.n * c.t) % c.tp.l; };
            static std::vector<TableRow> const rows = {
                {"a=0 l>1, i0 != k_l", [](C c) { return c.a_zero && !i0_at_k(c); },
                 [](C c) {
                     return c.dsf() * (c.qpow(c.t - 1) - 1 + c.sign(c.n * c.t) * BigRational(c.q - 1) *
                                                                   c.sqrtq_pow(static_cast<std::int64_t>(c.t) - 2));
                 }},
                {"a=0 l=1 or i0 = k_l", [](C c) { return c.a_zero && i0_at_k(c); },
                 [](C c) {
                     return c.dsf() * (c.qpow(c.t - 1) - 1 - c.sign(c.n * c.t) * BigRational(c.q - 1) *
                                                                   BigRational(c.tp.l - 1) *
                                                                   c.sqrtq_pow(static_cast<std::int64_t>(c.t) - 2));
                 }},
                {"a!=0 l does not divide", [](C c) { return !c.a_zero && x_of(c) % c.tp.l != 0; },
                 [](C c) {
                     return c.dsf() * (c.qpow(c.t - 1) - c.sign(c.n * c.t) * c.sqrtq_pow(static_cast<std::int64_t>(c.t) - 2));
                 }},
                {"a!=0 l divides, u>1, j0 != k_u", [](C c) { return !c.a_zero && x_of(c) % c.tp.l == 0 && !j0_at_k(c); },
                 [](C c) {
                     BigRational const inner = (c.sign(c.n) * c.sqrtq_pow(1) - 1) * BigRational(c.tp.l) + 1;
                     return c.dsf() * (c.qpow(c.t - 1) - c.sign(c.n * c.t) * inner * c.sqrtq_pow(static_cast<std::int64_t>(c.t) - 2));
                 }},
                {"a!=0 l divides, u=1 or j0 = k_u", [](C c) { return !c.a_zero && x_of(c) % c.tp.l == 0 && j0_at_k(c); },
                 [](C c) {
                     BigRational const inner =
                         (-c.sign(c.n) * BigRational(c.tp.u - 1) * c.sqrtq_pow(1) - 1) * BigRational(c.tp.l) + 1;
                     return c.dsf() * (c.qpow(c.t - 1) - c.sign(c.n * c.t) * inner * c.sqrtq_pow(static_cast<std::int64_t>(c.t) - 2));
                 }},
            };
            return rows;
        }
    }

    /// Counting pipeline with a shared tower cache.
    class Counter
    {
    public:
        explicit Counter(Limits limits = default_limits()) : limits_(limits), towers_(limits) {}

        Limits const& limits() const noexcept { return limits_; }

        /// Tower F_q subset F_{q^t} for the pinned g.
        std::shared_ptr<TowerCtx const> tower(CountSpec const& spec, unsigned t)
        {
            return towers_.get(spec.p, spec.r, t, spec.g);
        }

        /// N_t when restpd fails; empty otherwise.
        static std::optional<BigInt> n_t_special(CountSpec const& spec, unsigned t)
        {
            TParams const tp = derive_params(spec, t);
            if (!tp.i0)
                return BigInt(0);
            if (tp.m_over_t % spec.p == 0)
            {
                if (!spec.a.is_zero())
                    return BigInt(0);
                return exact_div(BigInt(tp.d) * (big_pow(spec.q(), t) - 1), spec.s, "special N_t");
            }
            return std::nullopt;
        }

        /// N_t = d (q^t - 1 + M_t) / (s q).
        static BigInt n_t_from_m(CountSpec const& spec, TParams const& tp, BigInt const& M)
        {
            BigInt const num = BigInt(tp.d) * (big_pow(spec.q(), tp.t) - 1 + M);
            return exact_div(num, BigInt(spec.s) * spec.q(), "N_t from M_t");
        }

        /// Direct double sum over c in F_q^* and x in F_{q^t}^*.
        BigInt m_t_general(CountSpec const& spec, unsigned t)
        {
            TParams const tp = require_restpd(spec, t);
            u64 const q = spec.q();
            u64 const p = spec.p;
            if (std::log2(static_cast<double>(q)) * t > 62.0 || nt::checked_pow(q, t) > limits_.enumeration_cap)
                throw Error(ErrorKind::EnumerationCapExceeded, "q^t exceeds the enumeration cap for the general path");
            auto tw = tower(spec, t);
            auto const tr = subfield_trace_table(*tw, t, limits_);
            u64 const group = tr.size();
            u64 const sd = tp.s_over_d;
            // coset[e][b]: k = e mod s/d with tr(gamma_t^k) = b; x^{s/d} covers <gamma_t^{s/d}> s/d times
            std::vector<u64> coset(sd * p, 0);
            for (u64 k = 0; k < group; ++k)
                ++coset[(k % sd) * p + tr[k]];
            FieldCtx const& B = tw->base();
            // e_1(-(t/m) c a), (t/m) the inverse of m/t in F_p
            u64 const tm = *nt::inv_mod(tp.m_over_t % p, p);
            FieldElement const w = B.neg(B.scale(spec.a, tm));
            std::vector<u64> hist(p, 0);
            for (u64 j = 0; j + 1 < q; ++j)
            {
                FieldElement const c = tw->base_pow_g(j);
                u64 const outer = B.abs_trace(B.mul(w, c));
                // c = g^j = gamma_t^{t0 j}
                u64 const e = (nt::mul_mod(tp.t0_mod, j % sd, sd) + *tp.i0) % sd;
                for (u64 b = 0; b < p; ++b)
                    hist[(b + outer) % p] += sd * coset[e * p + b];
            }
            return integer_of(CycInt::from_counts<u64>(p, hist), "general M_t");
        }

        /// M_t along one of the four closed paths.
        BigInt m_t_closed(CountSpec const& spec, unsigned t, MtPath path)
        {
            TParams const tp = require_restpd(spec, t);
            bool const a_zero = spec.a.is_zero();
            bool const needs_zero = path == MtPath::Lemma4 || path == MtPath::Lemma5;
            if (a_zero != needs_zero)
                throw Error(ErrorKind::NotApplicable, needs_zero ? "this path needs a = 0" : "this path needs a != 0");
            switch (path)
            {
            case MtPath::Lemma4: return m_t_gauss(spec, t);
            case MtPath::Lemma5:
            case MtPath::Lemma6: return m_t_jacobi(spec, t, true, true);
            case MtPath::Lemma7: return m_t_monomial(spec, t);
            }
            (void)tp;
            return 0;
        }

        /// a = 0: (q-1) sum over F_{q^t}^* of e_t(gamma_t^i0 x^l); a != 0: the averaged product of monomial sums.
        BigInt m_t_monomial(CountSpec const& spec, unsigned t)
        {
            TParams const tp = require_restpd(spec, t);
            auto tw = tower(spec, t);
            u64 const q = spec.q();
            if (spec.a.is_zero())
                return BigInt(q - 1) * integer_of(monomial_sum(*tw, t, *tp.i0, tp.l, limits_), "monomial sum");
            u64 const sd = tp.s_over_d;
            u64 const ind_a0 = ind_g(spec, *tp.a0);
            // ind_{gamma_t} a0 = t0 ind_g a0; only its class mod s/d matters
            u64 const base_exp = nt::mul_mod(tp.t0_mod, ind_a0 % sd, sd);
            CycInt total(spec.p);
            for (u64 j = 0; j < tp.u; ++j)
            {
                u64 const i = (base_exp + nt::mul_mod(tp.t0_mod, j % sd, sd) + *tp.i0) % sd;
                CycInt const A = monomial_sum(*tw, t, i, sd, limits_);
                CycInt const B = monomial_sum(*tw, 1, j, tp.u, limits_);
                total += A * B;
            }
            return exact_div(integer_of(total, "monomial path sum"), tp.u, "monomial path average");
        }

        /// Gauss-sum form with G_t computed over F_{q^t}.
        BigInt m_t_gauss(CountSpec const& spec, unsigned t)
        {
            TParams const tp = require_restpd(spec, t);
            auto tw = tower(spec, t);
            return gauss_form(spec, tp, [&](MultChar chi) { return gauss_sum(*tw, t, chi, limits_); },
                              [&](MultChar chi) { return gauss_sum(*tw, 1, chi, limits_); });
        }

        /// Gauss-sum form with G_t = (-1)^{t-1} G_1^t and G_1 over F_q.
        BigInt m_t_gauss_dh(CountSpec const& spec, unsigned t)
        {
            TParams const tp = require_restpd(spec, t);
            auto tw = tower(spec, 1);
            auto g1 = [&](MultChar chi) { return gauss_over_base(spec, *tw, chi); };
            return gauss_form(spec, tp,
                              [&](MultChar chi) {
                                  CycInt const lifted = g1(chi).pow(t);
                                  return t % 2 == 1 ? lifted : -lifted;
                              },
                              g1);
        }

        /// Jacobi form; closed Jacobi sums where allowed, enumeration where allowed.
        BigInt m_t_jacobi(CountSpec const& spec, unsigned t, bool allow_closed, bool allow_brute)
        {
            TParams const tp = require_restpd(spec, t);
            auto tw = tower(spec, 1);
            u64 const q = spec.q();
            BigInt const Q = q;
            if (spec.a.is_zero())
            {
                // (q-1)(-1 + (-1)^t q sum_{H_l^*} J_t(lambda) conj(lambda)(g^i0))
                u64 const l = tp.l;
                CycInt sum(l);
                for (u64 e = 1; e < l; ++e)
                {
                    MultChar const lambda{l, e};
                    CycInt const J = jacobi_value(*tw, lambda, t, allow_closed, allow_brute);
                    sum += J.shift(-static_cast<std::int64_t>(lambda.index(*tp.i0)));
                }
                sum *= (t % 2 == 0 ? Q : BigInt(-Q));
                BigInt const inner = integer_of(sum, "Jacobi path sum (a = 0)") - 1;
                return BigInt(q - 1) * inner;
            }
            // 1 + (-1)^{t-1} q sum_{H_{s/d}^*} J_t(conj lambda) lambda((-a0)^t g^i0)
            u64 const sd = tp.s_over_d;
            FieldCtx const& B = tw->base();
            u64 const ind = (nt::mul_mod(ind_g(spec, B.neg(*tp.a0)) % sd, t % sd, sd) + *tp.i0) % sd;
            CycInt sum(sd);
            for (u64 e = 1; e < sd; ++e)
            {
                MultChar const lambda{sd, e};
                CycInt const J = jacobi_value(*tw, lambda.conj(), t, allow_closed, allow_brute);
                sum += J.shift(static_cast<std::int64_t>(lambda.index(ind)));
            }
            sum *= (t % 2 == 1 ? Q : BigInt(-Q));
            return integer_of(sum, "Jacobi path sum (a != 0)") + 1;
        }

        /// N_t from a closed table; defers to the special values when restpd fails.
        BigInt n_t_table(CountSpec const& spec, unsigned t, NtTable table)
        {
            spec.validate();
            std::string reason;
            if (!table_applicable(spec, table, &reason))
                throw Error(ErrorKind::TableNotApplicable, "table " + std::string(to_string(table)) + ": " + reason);
            if (auto special = n_t_special(spec, t))
                return *special;
            TableCtx ctx = table_ctx(spec, t, table);
            auto const& rows = table_rows(table);
            TableRow const* hit = nullptr;
            for (auto const& row : rows)
            {
                if (row.guard(ctx))
                {
                    ensure(hit == nullptr, "two table rows match: " + std::string(hit ? hit->name : "") + ", " +
                                               std::string(row.name));
                    hit = &row;
                }
            }
            ensure(hit != nullptr, "no table row matches");
            BigRational const value = hit->value(ctx);
            ensure(denominator(value) == 1, "table row " + std::string(hit->name) + " gave the non-integer " + value.str());
            return numerator(value);
        }

        static bool table_applicable(CountSpec const& spec, NtTable table, std::string* reason = nullptr)
        {
            auto fail = [&](char const* why) {
                if (reason)
                    *reason = why;
                return false;
            };
            switch (table)
            {
            case NtTable::S2:
                if (spec.p == 2 || spec.s != 2)
                    return fail("needs odd p and s = 2");
                return true;
            case NtTable::S3:
                if (spec.r != 1 || spec.s != 3)
                    return fail("needs q = p and s = 3");
                return true;
            case NtTable::S4:
                if (spec.r != 1 || spec.s != 4)
                    return fail("needs q = p and s = 4");
                return true;
            case NtTable::Semiprimitive:
            {
                auto e = semiprimitive_exponent(spec.p, spec.s);
                if (!e)
                    return fail("s does not divide p^e + 1 for any e");
                if (spec.r % (2 * *e) != 0)
                    return fail("r is not a multiple of 2e");
                return true;
            }
            }
            return fail("unknown table");
        }

        /// N_t by the given method (Auto picks the cheapest exact route).
        NtResult n_t(CountSpec const& spec, unsigned t, Method method)
        {
            spec.validate();
            NtResult out;
            out.t = t;
            if (method == Method::Brute)
            {
                out.value = brute_n_t(spec, t, limits_);
                out.method = "brute";
                return out;
            }
            if (auto special = n_t_special(spec, t))
            {
                out.value = *special;
                out.method = "special";
                return out;
            }
            TParams const tp = derive_params(spec, t);
            auto from_m = [&](BigInt const& M, std::string name) {
                out.value = n_t_from_m(spec, tp, M);
                out.method = std::move(name);
                return out;
            };
            switch (method)
            {
            case Method::General: return from_m(m_t_general(spec, t), "general");
            case Method::Monomial: return from_m(m_t_monomial(spec, t), "monomial");
            case Method::Gauss: return from_m(m_t_gauss(spec, t), "gauss");
            case Method::Jacobi: return from_m(m_t_jacobi(spec, t, true, true), "jacobi");
            case Method::GaussDh: return from_m(m_t_gauss_dh(spec, t), "gauss-dh");
            case Method::Table:
            {
                for (auto table : {NtTable::S2, NtTable::S4, NtTable::S3, NtTable::Semiprimitive})
                    if (table_applicable(spec, table))
                    {
                        out.value = n_t_table(spec, t, table);
                        out.method = "table:" + std::string(to_string(table));
                        return out;
                    }
                throw Error(ErrorKind::TableNotApplicable, "no closed table covers this spec");
            }
            case Method::Auto: return n_t_auto(spec, t, tp);
            default: throw Error(ErrorKind::NotApplicable, "method " + std::string(to_string(method)) + " works on P_m only");
            }
        }

        /// P_m = (1/m) sum over t | m of mu(m/t) N_t.
        PmResult p_m(CountSpec const& spec, Method method)
        {
            spec.validate();
            PmResult out;
            if (method == Method::Brute)
            {
                out.value = brute_p_m(spec, limits_);
                out.method = "brute";
                return out;
            }
            if (method == Method::PrimeClosed)
            {
                out.value = p_m_prime_closed(spec);
                out.method = "prime-closed";
                return out;
            }
            if (method == Method::Catalog)
                throw Error(ErrorKind::NotApplicable, "catalog values are served by the p = 2 catalog");
            BigInt total = 0;
            for (auto td : nt::divisors(spec.m))
            {
                auto const t = static_cast<unsigned>(td);
                int const mu = nt::mobius(spec.m / t);
                if (mu == 0)
                    continue;
                NtResult term = n_t(spec, t, method);
                total += mu * term.value;
                out.terms.push_back(std::move(term));
            }
            out.value = exact_div(total, spec.m, "Moebius sum");
            ensure(out.value >= 0, "negative polynomial count");
            out.method = std::string(to_string(method));
            return out;
        }

        /// Closed P_m for prime m and s in {2, 3, 4}.
        BigInt p_m_prime_closed(CountSpec const& spec)
        {
            spec.validate();
            u64 const m = spec.m;
            u64 const p = spec.p;
            u64 const q = spec.q();
            if (!nt::is_prime(m) || m == 2)
                throw Error(ErrorKind::NotApplicable, "prime-closed forms need an odd prime m");
            if (spec.s != 2 && spec.s != 3 && spec.s != 4)
                throw Error(ErrorKind::NotApplicable, "prime-closed forms need s in {2, 3, 4}");
            if (spec.s == 2 && p == 2)
                throw Error(ErrorKind::NotApplicable, "s = 2 needs odd q");
            if (spec.s != 2 && spec.r != 1)
                throw Error(ErrorKind::NotApplicable, "s = 3, 4 need q = p");
            if (spec.s == 3 && m == 3)
                throw Error(ErrorKind::NotApplicable, "s = 3 needs m > 3");
            auto tw = tower(spec, 1);
            FieldCtx const& B = tw->base();
            bool const a_zero = spec.a.is_zero();
            u64 const h = spec.h;
            auto sign = [](u64 k) { return k % 2 == 0 ? 1 : -1; };
            BigRational value;
            if (spec.s == 2)
            {
                BigInt const Q = q;
                if (a_zero)
                    value = m == p ? BigRational(big_pow(Q, p - 1) - Q, 2 * p) : BigRational(big_pow(Q, m - 1) - 1, 2 * m);
                else
                {
                    // S = (-1)^h q^{(m-1)/2} rho((-1)^{(m-1)/2} a)
                    u64 ind = tw->ind_g(spec.a);
                    if ((m - 1) / 2 % 2 == 1)
                        ind += (q - 1) / 2;
                    BigInt const S = sign(h) * sign(ind) * big_pow(Q, (m - 1) / 2);
                    if (m == p)
                        value = BigRational(big_pow(Q, p - 1) + S, 2 * p);
                    else
                    {
                        u64 const ind_ma = tw->ind_g(B.scale(spec.a, m % p));
                        value = BigRational(big_pow(Q, m - 1) + S - sign(h) * sign(ind_ma) - 1, 2 * m);
                    }
                }
            }
            else if (spec.s == 4)
            {
                if (a_zero)
                    value = m == p ? BigRational(big_pow(p, p - 2) - 1, 4) : BigRational(big_pow(p, m - 1) - 1, 4 * m);
                else
                {
                    QuarticParams const qp = quartic_params(p, tw->g_base().code);
                    u64 const ind_a = tw->ind_g(spec.a);
                    GaussianInt const chi_a = tables::i_pow(ind_a);
                    GaussianInt const ih = tables::i_pow(h);
                    int const rho_a = sign(ind_a);
                    if (m == p)
                    {
                        GaussianInt const z = qp.pi.pow((p - 1) / 2) * chi_a * ih * big_pow(p, (p - 1) / 4);
                        value = (BigRational(big_pow(p, p - 1)) +
                                 sign(h) * (BigRational(big_pow(p, (p - 1) / 2)) * rho_a + 2 * tables::re(z))) /
                                (4 * p);
                    }
                    else
                    {
                        u64 const ind_m = tw->ind_g(B.constant(static_cast<std::int64_t>(m % p)));
                        int const rho_m = sign(ind_m);
                        GaussianInt const chi_m3a = tables::i_pow(3 * ind_m + ind_a);
                        GaussianInt R;
                        if (m % 4 == 1)
                            R = qp.pi.pow((m - 1) / 2) * chi_a * ih * big_pow(p, (m - 1) / 4) - chi_m3a * ih;
                        else
                            R = qp.pi.pow((m + 1) / 2) * chi_a.conj() * ih *
                                    (BigInt(qp.f % 2 ? -1 : 1) * big_pow(p, (m - 3) / 4)) -
                                chi_m3a * tables::i_pow(3 * h);
                        value = (BigRational(big_pow(p, m - 1)) - 1 +
                                 sign(h) * (BigRational(rho_a) * (BigRational(big_pow(p, (m - 1) / 2)) - rho_m) +
                                            2 * tables::re(R))) /
                                (4 * m);
                    }
                }
            }
            else
            {
                if (a_zero)
                    value = m == p ? BigRational(big_pow(p, p - 2) - 1, 3) : BigRational(big_pow(p, m - 1) - 1, 3 * m);
                else
                {
                    CubicParams const cp = cubic_params(p, tw->g_base().code);
                    u64 const ind_a = tw->ind_g(spec.a);
                    EisensteinInt const chi_a = EisensteinInt::unit_root(static_cast<std::int64_t>(ind_a % 3));
                    EisensteinInt const zh = EisensteinInt::unit_root(static_cast<std::int64_t>(h % 3));
                    EisensteinInt const z2h = EisensteinInt::unit_root(static_cast<std::int64_t>(2 * h % 3));
                    if (m == p)
                    {
                        EisensteinInt const z = cp.pi.pow((p - 1) / 3) * chi_a * z2h * big_pow(p, (p - 1) / 3);
                        value = (BigRational(big_pow(p, p - 1)) + 2 * tables::re(z)) / (3 * p);
                    }
                    else
                    {
                        u64 const ind_m = tw->ind_g(B.constant(static_cast<std::int64_t>(m % p)));
                        EisensteinInt const chi_m_bar = EisensteinInt::unit_root(static_cast<std::int64_t>(ind_m % 3)).conj();
                        EisensteinInt L;
                        if (m % 3 == 1)
                            L = ((cp.pi * BigInt(p)).pow((m - 1) / 3) - chi_m_bar) * chi_a * z2h;
                        else
                            L = (cp.pi.pow((m + 1) / 3) * big_pow(p, (m - 2) / 3) * chi_a * zh - chi_m_bar) * chi_a * zh;
                        value = (BigRational(big_pow(p, m - 1)) - 1 + 2 * tables::re(L)) / (3 * m);
                    }
                }
            }
            ensure(denominator(value) == 1, "prime-closed value " + value.str() + " is not an integer");
            return numerator(value);
        }

        /// Whether the Jacobi path can run from closed forms alone.
        bool jacobi_closed_available(CountSpec const& spec, TParams const& tp) const
        {
            u64 const order = spec.a.is_zero() ? tp.l : tp.s_over_d;
            if (order == 1)
                return true;
            if (order == 2)
                return spec.p != 2;
            return (order == 3 || order == 4) && spec.r == 1;
        }

    private:
        TParams require_restpd(CountSpec const& spec, unsigned t) const
        {
            spec.validate();
            TParams tp = derive_params(spec, t);
            if (!tp.restpd)
                throw Error(ErrorKind::NotApplicable, "p divides m/t or d does not divide h; N_t is a special value");
            return tp;
        }

        static BigInt integer_of(CycInt const& z, char const* what)
        {
            auto v = z.as_integer();
            ensure(v.has_value(), std::string(what) + " is not a rational integer: " + z.to_string());
            return *v;
        }

        u64 ind_g(CountSpec const& spec, FieldElement x) { return tower(spec, 1)->ind_g(x); }

        /// J_t(lambda) over F_q in Z[zeta_N], N = lambda.order.
        CycInt jacobi_value(TowerCtx const& tw, MultChar lambda, unsigned t, bool allow_closed, bool allow_brute)
        {
            u64 const N = lambda.order;
            u64 const gcd = std::gcd(lambda.power % N, N);
            u64 const order = N / gcd;
            u64 const power = (lambda.power % N) / gcd;
            if (order == 1)
                return CycInt::integer(N, big_pow(tw.q(), t - 1));
            bool const closed = order == 2 ? tw.q() % 2 == 1 : (order == 3 || order == 4) && tw.r() == 1;
            if (allow_closed && closed)
            {
                CycInt J = jacobi_closed(static_cast<unsigned>(order), t, tw);
                if (power != 1)
                {
                    ensure(power == order - 1, "unexpected character power");
                    J = J.conj();
                }
                return J.embed(N);
            }
            if (!allow_brute)
                throw Error(ErrorKind::NotApplicable, "no closed Jacobi sum for character order " + std::to_string(order));
            return jacobi_brute(tw, lambda, t, limits_);
        }

        /// a = 0: (q-1) sum_{H_l} G_t(conj lambda) lambda(g^i0);
        /// a != 0: sum_{H_{s/d}} G_t(conj lambda) G_1(lambda^t) lambda(a0^t g^i0).
        template <class Gt, class G1>
        BigInt gauss_form(CountSpec const& spec, TParams const& tp, Gt&& gt, G1&& g1)
        {
            u64 const p = spec.p;
            unsigned const t = tp.t;
            if (spec.a.is_zero())
            {
                u64 const l = tp.l;
                CycInt sum(p * l);
                for (u64 e = 0; e < l; ++e)
                {
                    MultChar const lambda{l, e};
                    sum += gt(lambda.conj()).shift(static_cast<std::int64_t>(p * lambda.index(*tp.i0)));
                }
                return BigInt(spec.q() - 1) * integer_of(sum, "Gauss-form M_t");
            }
            u64 const sd = tp.s_over_d;
            u64 const ind = (nt::mul_mod(ind_g(spec, *tp.a0) % sd, t % sd, sd) + *tp.i0) % sd;
            CycInt sum(p * sd);
            for (u64 e = 0; e < sd; ++e)
            {
                MultChar const lambda{sd, e};
                CycInt term = gt(lambda.conj()) * g1(lambda.pow(t));
                sum += term.shift(static_cast<std::int64_t>(p * lambda.index(ind)));
            }
            return integer_of(sum, "Gauss-form M_t");
        }

        CycInt gauss_over_base(CountSpec const& spec, TowerCtx const& tw, MultChar chi)
        {
            auto key = std::make_tuple(spec.p, spec.r, spec.g ? spec.g->code : UINT64_MAX, chi.order, chi.power % chi.order);
            {
                std::lock_guard lock(mutex_);
                if (auto it = g1_cache_.find(key); it != g1_cache_.end())
                    return it->second;
            }
            CycInt value = gauss_sum(tw, 1, chi, limits_);
            std::lock_guard lock(mutex_);
            g1_cache_.emplace(key, value);
            return value;
        }

        TableCtx table_ctx(CountSpec const& spec, unsigned t, NtTable table)
        {
            TableCtx ctx;
            ctx.spec = &spec;
            ctx.tp = derive_params(spec, t);
            ctx.p = spec.p;
            ctx.q = spec.q();
            ctx.t = t;
            ctx.i0 = *ctx.tp.i0;
            ctx.a_zero = spec.a.is_zero();
            if (!ctx.a_zero)
                ctx.ind_a0 = ind_g(spec, *ctx.tp.a0);
            auto tw = tower(spec, 1);
            if (table == NtTable::S4 && (ctx.tp.l == 4 || (!ctx.a_zero && ctx.tp.d == 1)))
                ctx.quartic = quartic_params(spec.p, tw->g_base().code);
            if (table == NtTable::S3 && (ctx.tp.l == 3 || (!ctx.a_zero && ctx.tp.d == 1)))
                ctx.cubic = cubic_params(spec.p, tw->g_base().code);
            if (table == NtTable::Semiprimitive)
            {
                ctx.e = *semiprimitive_exponent(spec.p, spec.s);
                ctx.n = spec.r / (2 * ctx.e);
            }
            return ctx;
        }

        static std::vector<TableRow> const& table_rows(NtTable table)
        {
            switch (table)
            {
            case NtTable::S2: return tables::s2();
            case NtTable::S3: return tables::s3();
            case NtTable::S4: return tables::s4();
            default: return tables::semiprimitive();
            }
        }

        NtResult n_t_auto(CountSpec const& spec, unsigned t, TParams const& tp)
        {
            NtResult out;
            out.t = t;
            for (auto table : {NtTable::S2, NtTable::S4, NtTable::S3, NtTable::Semiprimitive})
                if (table_applicable(spec, table))
                {
                    out.value = n_t_table(spec, t, table);
                    out.method = "table:" + std::string(to_string(table));
                    return out;
                }
            if (jacobi_closed_available(spec, tp))
            {
                out.value = n_t_from_m(spec, tp, m_t_jacobi(spec, t, true, false));
                out.method = "jacobi-closed";
                return out;
            }
            u64 const order = spec.a.is_zero() ? tp.l : tp.s_over_d;
            u64 const q = spec.q();
            if (q <= limits_.enumeration_cap && spec.p * order <= 4096)
            {
                out.value = n_t_from_m(spec, tp, m_t_gauss_dh(spec, t));
                out.method = "gauss-dh";
                return out;
            }
            if (std::log2(static_cast<double>(q)) * t <= 62.0 && nt::checked_pow(q, t) <= limits_.enumeration_cap)
            {
                out.value = n_t_from_m(spec, tp, m_t_general(spec, t));
                out.method = "general";
                return out;
            }
            throw Error(ErrorKind::EnumerationCapExceeded, "no exact route within the caps for t = " + std::to_string(t));
        }

        Limits limits_;
        TowerCache towers_;
        std::mutex mutex_;
        std::map<std::tuple<u64, unsigned, u64, u64, u64>, CycInt> g1_cache_;
    };
}
