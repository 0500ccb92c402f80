#pragma once

#include <irrcount/cyclotomic.hpp>
#include <irrcount/parallel.hpp>
#include <irrcount/tower.hpp>

#include <cstdint>
#include <vector>

namespace irrcount
{
    /// Multiplicative character of a cyclic group <delta>: delta^k -> zeta_N^{e k}.
    /// For a subfield F_{p^d} of a tower, delta is gamma_m^{(Q-1)/(p^d-1)}; since these
    /// generators are norms of one another, the same (N, e) also describes chi composed
    /// with the norm map on any larger subfield.
    struct MultChar
    {
        u64 order = 1;
        u64 power = 0;

        bool trivial() const noexcept { return power % order == 0; }
        /// Exponent j with chi(delta^k) = zeta_N^j.
        u64 index(u64 k) const { return nt::mul_mod(power % order, k % order, order); }
        MultChar conj() const { return {order, (order - power % order) % order}; }
        MultChar pow(u64 e) const { return {order, nt::mul_mod(power % order, e % order, order)}; }
    };

    /// tr_{F_{p^d}/F_p}(delta_d^k) for k in [0, p^d - 1), with delta_d = gamma_m^{(Q-1)/(p^d-1)}.
    inline std::vector<std::uint32_t> prime_subfield_trace_table(TowerCtx const& tower, unsigned d,
                                                                 Limits const& limits = default_limits())
    {
        auto const& F = tower.top();
        unsigned const total = F.degree();
        if (d == 0 || total % d != 0)
            throw Error(ErrorKind::InvalidInput, "subfield degree must divide the top degree");
        u64 const p = F.characteristic();
        u64 const sub = nt::checked_pow(p, d);
        if (sub > limits.enumeration_cap)
            throw Error(ErrorKind::EnumerationCapExceeded,
                        "F_" + std::to_string(p) + "^" + std::to_string(d) + " exceeds the enumeration cap");
        auto const& log = tower.top_log();
        u64 const group = F.order() - 1;
        u64 const step = group / (sub - 1);
        u64 const ratio = (total / d) % p;
        std::vector<std::uint32_t> table(sub - 1);
        if (ratio != 0)
        {
            // Tr_{top} = (total/d) * Tr_{sub} on the subfield
            u64 const inv = *nt::inv_mod(ratio, p);
            for (u64 k = 0; k < sub - 1; ++k)
                table[k] = static_cast<std::uint32_t>(nt::mul_mod(F.abs_trace(log.exp(k * step)), inv, p));
        }
        else
        {
            for (u64 k = 0; k < sub - 1; ++k)
            {
                FieldElement sum = F.zero();
                u64 e = nt::mul_mod(k, step, group);
                for (unsigned i = 0; i < d; ++i)
                {
                    sum = F.add(sum, log.exp(e));
                    e = nt::mul_mod(e, p, group);
                }
                ensure(sum.code < p, "subfield trace left F_p");
                table[k] = static_cast<std::uint32_t>(sum.code);
            }
        }
        return table;
    }

    /// Absolute traces of gamma_t^k over F_{q^t}, k in [0, q^t - 1).
    inline std::vector<std::uint32_t> subfield_trace_table(TowerCtx const& tower, unsigned t,
                                                           Limits const& limits = default_limits())
    {
        if (t == 0 || tower.m() % t != 0)
            throw Error(ErrorKind::InvalidInput, "t must divide m");
        return prime_subfield_trace_table(tower, tower.r() * t, limits);
    }

    namespace detail
    {
        /// sum_k zeta_p^{tr[k]} zeta_N^{chi(k)} as an element of Z[zeta_{pN}].
        inline CycInt gauss_from_table(std::vector<std::uint32_t> const& tr, u64 p, MultChar chi, unsigned workers)
        {
            u64 const n = tr.size();
            u64 const N = chi.order;
            if (n % N != 0)
                throw Error(ErrorKind::InvalidInput, "character order must divide the group order");
            u64 const L = p * N;
            auto hist = parallel_histogram(n, L, workers, [&](u64 begin, u64 end, std::vector<u64>& h) {
                u64 j = chi.index(begin);
                u64 const step = chi.power % N;
                for (u64 k = begin; k < end; ++k)
                {
                    // zeta_p^a zeta_N^j = zeta_{pN}^{aN + jp}
                    ++h[(tr[k] * N + j * p) % L];
                    j += step;
                    if (j >= N)
                        j -= N;
                }
            });
            return CycInt::from_counts<u64>(L, hist);
        }
    }

    /// sum over x in F_{q^t}^* of e_t(gamma_t^i x^n), as an element of Z[zeta_p].
    inline CycInt monomial_sum(TowerCtx const& tower, unsigned t, u64 i, u64 n, Limits const& limits = default_limits())
    {
        auto const tr = subfield_trace_table(tower, t, limits);
        u64 const p = tower.characteristic();
        u64 const group = tr.size();
        u64 const step = n % group;
        auto hist = parallel_histogram(group, p, limits.workers, [&](u64 begin, u64 end, std::vector<u64>& h) {
            u64 e = (i % group + nt::mul_mod(step, begin, group)) % group;
            for (u64 k = begin; k < end; ++k)
            {
                ++h[tr[e]];
                e += step;
                if (e >= group)
                    e -= group;
            }
        });
        return CycInt::from_counts<u64>(p, hist);
    }

    /// Gauss sum over F_{p^d} (a subfield of the top field) with delta_d^k -> zeta_N^{ek}.
    inline CycInt gauss_sum_prime_subfield(TowerCtx const& tower, unsigned d, MultChar chi,
                                           Limits const& limits = default_limits())
    {
        auto const tr = prime_subfield_trace_table(tower, d, limits);
        return detail::gauss_from_table(tr, tower.characteristic(), chi, limits.workers);
    }

    /// G_t(chi) = sum over x in F_{q^t}^* of e_t(x) chi(x), chi(gamma_t^k) = zeta_N^{ek};
    /// for chi = lambda o Norm_t this is the Gauss sum of lambda (lambda(g^k) = zeta_N^{ek}).
    inline CycInt gauss_sum(TowerCtx const& tower, unsigned t, MultChar chi, Limits const& limits = default_limits())
    {
        if (t == 0 || tower.m() % t != 0)
            throw Error(ErrorKind::InvalidInput, "t must divide m");
        return gauss_sum_prime_subfield(tower, tower.r() * t, chi, limits);
    }

    /// Lift of a Gauss sum over F_{p^{r'}} to F_{p^{r' t'}}: -(-F)^{t'}.
    inline CycInt davenport_hasse_lift(CycInt const& base_sum, unsigned t_prime)
    {
        return -((-base_sum).pow(t_prime));
    }

    inline CycInt gauss_sum_via_dh(TowerCtx const& tower, unsigned r_prime, unsigned t_prime, MultChar chi,
                                   Limits const& limits = default_limits())
    {
        if (t_prime == 0)
            throw Error(ErrorKind::InvalidInput, "t' must be positive");
        return davenport_hasse_lift(gauss_sum_prime_subfield(tower, r_prime, chi, limits), t_prime);
    }

    /// J_t(lambda) over F_q: sum of lambda(x_1...x_t) over tuples with x_1 + ... + x_t = 1,
    /// lambda(g^k) = zeta_n^{ek}, lambda(0) = 0 unless lambda is trivial.
    inline CycInt jacobi_brute(TowerCtx const& tower, MultChar lambda, unsigned t, Limits const& limits = default_limits())
    {
        if (t == 0)
            throw Error(ErrorKind::InvalidInput, "t must be positive");
        auto const& F = tower.base();
        u64 const q = F.order();
        u64 const n = lambda.order;
        if ((q - 1) % n != 0)
            throw Error(ErrorKind::InvalidInput, "character order must divide q - 1");
        u64 const free_count = nt::checked_pow(q, t - 1);
        if (free_count > limits.enumeration_cap)
            throw Error(ErrorKind::EnumerationCapExceeded, "q^(t-1) exceeds the enumeration cap");
        auto const& log = tower.base_log();
        std::vector<u64> hist(n, 0);
        // odometer over (x_1, ..., x_{t-1}); partial sums and log sums per level
        std::vector<u64> digit(t, 0);
        std::vector<FieldElement> partial(t, F.zero());
        std::vector<u64> log_sum(t, 0);
        std::vector<bool> has_zero(t, false);
        auto tally = [&](FieldElement s, u64 ls, bool zero) {
            FieldElement const last = F.sub(F.one(), s);
            if (lambda.trivial())
            {
                ++hist[0];
                return;
            }
            if (zero || last.is_zero())
                return;
            ++hist[lambda.index((ls + log.log(last)) % (q - 1))];
        };
        if (t == 1)
        {
            tally(F.zero(), 0, false);
            return CycInt::from_counts<u64>(n, hist);
        }
        unsigned const free_vars = t - 1;
        for (u64 step = 0; step < free_count; ++step)
        {
            // rebuild partial state from the deepest changed level
            unsigned level = 0;
            if (step > 0)
            {
                level = free_vars - 1;
                while (++digit[level] == q)
                {
                    digit[level] = 0;
                    --level;
                }
            }
            for (unsigned j = level; j < free_vars; ++j)
            {
                FieldElement const x{digit[j]};
                FieldElement const prev_sum = j == 0 ? F.zero() : partial[j - 1];
                u64 const prev_log = j == 0 ? 0 : log_sum[j - 1];
                bool const prev_zero = j == 0 ? false : static_cast<bool>(has_zero[j - 1]);
                partial[j] = F.add(prev_sum, x);
                has_zero[j] = prev_zero || x.is_zero();
                log_sum[j] = x.is_zero() ? prev_log : (prev_log + log.log(x)) % (q - 1);
            }
            tally(partial[free_vars - 1], log_sum[free_vars - 1], has_zero[free_vars - 1]);
        }
        return CycInt::from_counts<u64>(n, hist);
    }

    struct ConnectReport
    {
        CycInt lhs;
        CycInt rhs;
        bool equal = false;
    };

    /// Compare sum e_t(alpha x^n) over F_{q^t}^* with sum over lambda in H_n of
    /// G_t(conj lambda) (lambda o Norm_t)(alpha), for alpha = gamma_t^i and n | q - 1.
    inline ConnectReport char_connect_check(TowerCtx const& tower, unsigned t, u64 i, u64 n,
                                            Limits const& limits = default_limits())
    {
        if (n == 0 || (tower.q() - 1) % n != 0)
            throw Error(ErrorKind::InvalidInput, "n must divide q - 1");
        u64 const p = tower.characteristic();
        ConnectReport report;
        report.lhs = monomial_sum(tower, t, i, n, limits).embed(p * n);
        CycInt rhs(p * n);
        for (u64 e = 0; e < n; ++e)
        {
            MultChar const lambda{n, e};
            CycInt const g = gauss_sum(tower, t, lambda.conj(), limits);
            // (lambda o Norm_t)(gamma_t^i) = lambda(g^i) = zeta_n^{e i} = zeta_{pn}^{p e i}
            rhs += g.shift(static_cast<std::int64_t>(p * lambda.index(i)));
        }
        report.rhs = rhs;
        report.equal = report.lhs == report.rhs;
        return report;
    }
}
