#pragma once

#include <irrcount/count_spec.hpp>
#include <irrcount/parallel.hpp>

#include <algorithm>
#include <cstdint>
#include <memory>
#include <vector>

namespace irrcount
{
    /// Element counts over F_{q^m}^* bucketed by (trace, norm index mod s).
    struct BruteResult
    {
        u64 q = 0;
        unsigned m = 0;
        u64 s = 1;
        std::vector<u64> degree_m; // [a * s + h]: elements of degree exactly m
        std::vector<u64> all;      // [a * s + h]: every element of F_{q^m}^*

        u64 exact_cell(FieldElement a, u64 h) const { return degree_m[a.code * s + h]; }
        u64 any_cell(FieldElement a, u64 h) const { return all[a.code * s + h]; }
        BigInt p_m(FieldElement a, u64 h) const
        {
            return exact_div(BigInt(exact_cell(a, h)), m, "root count per irreducible");
        }
    };

    namespace detail
    {
        inline void require_oracle_range(u64 p, unsigned degree, Limits const& limits)
        {
            if (std::log2(static_cast<double>(p)) * degree > 62.0 || nt::checked_pow(p, degree) > limits.oracle_cap)
                throw Error(ErrorKind::OracleCapExceeded, "field of order " + std::to_string(p) + "^" + std::to_string(degree) +
                                                              " exceeds the oracle cap");
        }

        /// Maps codes of the F_q copy inside the top field to standalone codes.
        inline std::vector<std::uint32_t> base_code_map(TowerCtx const& tower)
        {
            auto const& log = tower.top_log();
            u64 const Q = tower.top().order();
            u64 const q = tower.q();
            std::vector<std::uint32_t> map(Q, UINT32_MAX);
            map[0] = 0;
            u64 const step = (Q - 1) / (q - 1);
            for (u64 j = 0; j + 1 < q; ++j)
                map[log.exp(j * step).code] = static_cast<std::uint32_t>(tower.base_pow_g(j).code);
            return map;
        }

        /// Exponent steps (Q-1)/(q^{t/l}-1) marking the maximal proper subfields of F_{q^t}.
        inline std::vector<u64> subfield_steps(u64 q, unsigned t, u64 group)
        {
            std::vector<u64> steps;
            for (auto ell : nt::prime_divisors(t))
                steps.push_back(group / (nt::checked_pow(q, t / static_cast<unsigned>(ell)) - 1));
            return steps;
        }

        /// Relative trace of gamma^k to F_q via the log table, as a standalone code.
        inline u64 trace_code(LogTable const& log, FieldCtx const& F, u64 k, u64 q, unsigned t, u64 group,
                              std::vector<std::uint32_t> const& map)
        {
            FieldElement sum = F.zero();
            u64 e = k;
            for (unsigned i = 0; i < t; ++i)
            {
                sum = F.add(sum, log.exp(e));
                e = nt::mul_mod(e, q, group);
            }
            std::uint32_t const code = map[sum.code];
            ensure(code != UINT32_MAX, "relative trace left F_q");
            return code;
        }
    }

    /// One pass over F_{q^m}^* filling every (a, coset) cell for the given s.
    inline BruteResult brute_scan(u64 p, unsigned r, unsigned m, u64 s, std::optional<FieldElement> g = std::nullopt,
                                  Limits const& limits = default_limits())
    {
        detail::require_oracle_range(p, r * m, limits);
        TowerCtx const tower(p, r, m, g, limits);
        u64 const q = tower.q();
        if (s == 0 || (q - 1) % s != 0)
            throw Error(ErrorKind::InvalidInput, "s must divide q - 1");
        auto const& F = tower.top();
        auto const& log = tower.top_log();
        u64 const group = F.order() - 1;
        auto const map = detail::base_code_map(tower);
        auto const steps = detail::subfield_steps(q, m, group);
        u64 const cells = q * s;
        auto hist = parallel_histogram(group, 2 * cells, limits.workers, [&](u64 begin, u64 end, std::vector<u64>& h) {
            for (u64 k = begin; k < end; ++k)
            {
                u64 const a = detail::trace_code(log, F, k, q, m, group, map);
                // Norm(gamma^k) = g^k
                u64 const cell = a * s + k % s;
                ++h[cells + cell];
                bool proper = false;
                for (auto st : steps)
                    proper = proper || k % st == 0;
                if (!proper)
                    ++h[cell];
            }
        });
        BruteResult result;
        result.q = q;
        result.m = m;
        result.s = s;
        result.degree_m.assign(hist.begin(), hist.begin() + static_cast<std::ptrdiff_t>(cells));
        result.all.assign(hist.begin() + static_cast<std::ptrdiff_t>(cells), hist.end());
        for (auto c : result.degree_m)
            ensure(c % m == 0, "degree-m root count not divisible by m");
        return result;
    }

    inline BigInt brute_p_m(CountSpec const& spec, Limits const& limits = default_limits())
    {
        spec.validate();
        return brute_scan(spec.p, spec.r, spec.m, spec.s, spec.g, limits).p_m(spec.a, spec.h);
    }

    namespace detail
    {
        /// Elements x of F_{q^t}^* with Tr_m(x) = a and Norm_m(x) in the coset; optionally of degree exactly t.
        inline BigInt brute_subfield_count(CountSpec const& spec, unsigned t, bool exact_degree, Limits const& limits)
        {
            spec.validate();
            if (t == 0 || spec.m % t != 0)
                throw Error(ErrorKind::InvalidInput, "t must divide m");
            require_oracle_range(spec.p, spec.r * t, limits);
            TowerCtx const tower(spec.p, spec.r, t, spec.g, limits);
            u64 const q = tower.q();
            auto const& F = tower.top();
            auto const& log = tower.top_log();
            u64 const group = F.order() - 1;
            auto const map = base_code_map(tower);
            auto const steps = subfield_steps(q, t, group);
            FieldCtx const& B = tower.base();
            u64 const ratio = (spec.m / t) % spec.p;
            // Tr_m(x) = (m/t) Tr_t(x); Norm_m(x) = Norm_t(x)^{m/t} = g^{k m/t}
            std::vector<bool> trace_ok(q);
            for (u64 c = 0; c < q; ++c)
                trace_ok[c] = B.scale({c}, ratio) == spec.a;
            u64 const mt = spec.m / t;
            auto hist = parallel_histogram(group, 1, limits.workers, [&](u64 begin, u64 end, std::vector<u64>& h) {
                for (u64 k = begin; k < end; ++k)
                {
                    if (nt::mul_mod(k % spec.s, mt % spec.s, spec.s) != spec.h)
                        continue;
                    if (exact_degree)
                    {
                        bool proper = false;
                        for (auto st : steps)
                            proper = proper || k % st == 0;
                        if (proper)
                            continue;
                    }
                    if (trace_ok[trace_code(log, F, k, q, t, group, map)])
                        ++h[0];
                }
            });
            return BigInt(hist[0]);
        }
    }

    /// N_t: elements of F_{q^t}^* in S_t.
    inline BigInt brute_n_t(CountSpec const& spec, unsigned t, Limits const& limits = default_limits())
    {
        return detail::brute_subfield_count(spec, t, false, limits);
    }

    /// |T_t|: elements of S_t not in any proper subfield of F_{q^t}.
    inline BigInt brute_t_t(CountSpec const& spec, unsigned t, Limits const& limits = default_limits())
    {
        return detail::brute_subfield_count(spec, t, true, limits);
    }

    struct PolyRecord
    {
        std::vector<FieldElement> coeffs; // low degree first, monic
        FieldElement b;                   // norm of a root
    };

    /// Every counted irreducible, sorted lexicographically by coefficient codes (low degree first).
    inline std::vector<PolyRecord> list_polys(CountSpec const& spec, Limits const& limits = default_limits())
    {
        spec.validate();
        detail::require_oracle_range(spec.p, spec.r * spec.m, limits);
        TowerCtx const tower(spec.p, spec.r, spec.m, spec.g, limits);
        u64 const q = tower.q();
        unsigned const m = spec.m;
        auto const& F = tower.top();
        auto const& B = tower.base();
        auto const& log = tower.top_log();
        u64 const group = F.order() - 1;
        auto const map = detail::base_code_map(tower);
        auto const steps = detail::subfield_steps(q, m, group);
        std::vector<PolyRecord> out;
        for (u64 k = 0; k < group; ++k)
        {
            if (k % spec.s != spec.h)
                continue;
            bool proper = false;
            for (auto st : steps)
                proper = proper || k % st == 0;
            if (proper)
                continue;
            // one root per Frobenius orbit: the smallest exponent
            bool rep = true;
            for (u64 e = nt::mul_mod(k, q, group); e != k; e = nt::mul_mod(e, q, group))
                rep = rep && e > k;
            if (!rep)
                continue;
            if (FieldElement{detail::trace_code(log, F, k, q, m, group, map)} != spec.a)
                continue;
            if (out.size() >= limits.listing_cap)
                throw Error(ErrorKind::EnumerationCapExceeded, "listing exceeds the listing cap");
            FieldElement const x = log.exp(k);
            MinPoly const mp = tower.min_poly(x);
            ensure(mp.degree == m && mp.coeffs.size() == m + 1u, "minimal polynomial has the wrong degree");
            // Vieta from the root itself
            FieldElement const tr = tower.restrict_to_base(tower.trace_rel(x, m));
            FieldElement const nm = tower.restrict_to_base(tower.norm_rel(x, m));
            ensure(tr == spec.a && B.neg(mp.coeffs[m - 1]) == tr, "trace coefficient mismatch");
            FieldElement const signed_b = m % 2 ? B.neg(nm) : nm;
            ensure(mp.coeffs[0] == signed_b, "norm coefficient mismatch");
            ensure(nm == tower.base_pow_g(k), "norm index mismatch");
            // irreducible: all m conjugates are distinct roots
            FieldElement y = x;
            for (unsigned i = 0; i < m; ++i)
            {
                ensure(tower.evaluate(mp.coeffs, y).is_zero(), "conjugate is not a root");
                y = tower.frobenius_q(y, 1);
            }
            out.push_back({mp.coeffs, nm});
        }
        std::sort(out.begin(), out.end(), [](PolyRecord const& x, PolyRecord const& y) {
            return std::lexicographical_compare(x.coeffs.begin(), x.coeffs.end(), y.coeffs.begin(), y.coeffs.end(),
                                                [](FieldElement u, FieldElement v) { return u.code < v.code; });
        });
        return out;
    }
}
