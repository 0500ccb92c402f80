// Acceptance harness: one PASS/FAIL line per criterion; exit status 1 if any fails.
#include <irrcount/irrcount.hpp>

#include <chrono>
#include <iomanip>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace irrcount;

namespace
{
    struct Outcome
    {
        u64 checks = 0;
        u64 failures = 0;
        std::vector<std::string> notes; // first few failures

        void expect(bool ok, std::function<std::string()> const& what)
        {
            ++checks;
            if (ok)
                return;
            ++failures;
            if (notes.size() < 5)
                notes.push_back(what());
        }
    };

    template <class T>
    std::string str(T const& x)
    {
        std::ostringstream ss;
        ss << x;
        return ss.str();
    }

    Engine& engine()
    {
        static Engine e;
        return e;
    }

    CountSpec make(u64 p, unsigned r, unsigned m, u64 s, u64 h, u64 a, std::optional<FieldElement> g = std::nullopt)
    {
        CountSpec spec{p, r, m, s, h, FieldElement{a}, g};
        spec.validate();
        return spec;
    }

    // 1: small-q table by the oracle and by the formula paths
    void table_five(Outcome& out)
    {
        auto& eng = engine();
        std::vector<int> const q2{0, 1, 1, 3, 4, 9, 14, 28, 48, 93, 165, 315};
        std::vector<int> const q4b1{0, 3, 4, 17, 48}, q4b{0, 1, 4, 17, 56};
        auto cell = [&](unsigned r, unsigned m, u64 h, int expected) {
            u64 const q1 = (u64{1} << r) - 1;
            auto spec = make(2, r, m, q1, h, 0);
            for (auto method : {Method::Brute, Method::Catalog, Method::Auto, Method::General})
            {
                BigInt const v = eng.count(spec, method).value;
                out.expect(v == expected, [&] {
                    return "q=" + str(q1 + 1) + " m=" + str(m) + " h=" + str(h) + " " + std::string(to_string(method)) + " gave " +
                           v.str() + ", expected " + str(expected);
                });
            }
        };
        for (unsigned m = 2; m <= 13; ++m)
            cell(1, m, 0, q2[m - 2]);
        for (unsigned m = 2; m <= 6; ++m)
        {
            cell(2, m, 0, q4b1[m - 2]);
            cell(2, m, 1, q4b[m - 2]);
            cell(2, m, 2, q4b[m - 2]);
        }
        for (unsigned m = 2; m <= 3; ++m)
            for (u64 h = 0; h < 7; ++h)
                cell(3, m, h, m == 2 ? 0 : 3);
    }

    // 2: path equivalence grid
    void grid_block(Outcome& out, u64 p, unsigned r, u64 s, unsigned m_max)
    {
        auto& eng = engine();
        u64 const q = nt::checked_pow(p, r);
        for (unsigned m = 2; m <= m_max; ++m)
        {
            if (std::log2(static_cast<double>(q)) * (m + 1) > 22.0 + 1e-9)
                break;
            auto const scan = brute_scan(p, r, m, s);
            for (u64 a = 0; a < q; ++a)
                for (u64 h = 0; h < s; ++h)
                {
                    auto spec = make(p, r, m, s, h, a);
                    BigInt const truth = scan.p_m(FieldElement{a}, h);
                    auto check = [&](std::string const& path, BigInt const& v) {
                        out.expect(v == truth, [&] {
                            return "q=" + str(q) + " s=" + str(s) + " m=" + str(m) + " a=" + str(a) + " h=" + str(h) + " " + path +
                                   "=" + v.str() + " brute=" + truth.str();
                        });
                    };
                    check("general", eng.count(spec, Method::General).value);
                    check("auto", eng.count(spec, Method::Auto).value);
                    bool table = false;
                    for (auto tb : {NtTable::S2, NtTable::S3, NtTable::S4, NtTable::Semiprimitive})
                        table = table || Counter::table_applicable(spec, tb);
                    if (table)
                        check("table", eng.count(spec, Method::Table).value);
                    if (prime_closed_applicable(spec))
                        check("prime-closed", eng.count(spec, Method::PrimeClosed).value);
                }
        }
    }

    void path_grid(Outcome& out)
    {
        for (u64 q : {3, 5, 7, 13})
            grid_block(out, q, 1, 2, 8);
        grid_block(out, 3, 2, 2, 8);
        for (u64 p : {7, 13})
            grid_block(out, p, 1, 3, 6);
        for (u64 p : {5, 13})
            grid_block(out, p, 1, 4, 5);
        // semiprimitive (p, e, n): q = p^{2en}, every s | p^e + 1
        for (auto [p, e, n] : {std::tuple<u64, u64, u64>{2, 1, 1}, {2, 2, 1}, {3, 1, 1}})
            for (auto s : nt::divisors(nt::checked_pow(p, static_cast<unsigned>(e)) + 1))
                grid_block(out, p, static_cast<unsigned>(2 * e * n), s, 6);
    }

    // 3: closed Jacobi sums against enumeration, and G_1^t = -q J_t
    void jacobi(Outcome& out)
    {
        auto one = [&](u64 p, unsigned order, unsigned t_max) {
            TowerCtx const tower(p, 1, 1);
            for (unsigned t = 2; t <= t_max; ++t)
            {
                CycInt const closed = jacobi_closed(order, t, tower);
                CycInt const brute = jacobi_brute(tower, MultChar{order, 1}, t);
                CycInt const lifted = closed.embed(brute.order());
                out.expect(lifted == brute, [&] {
                    return "order " + str(order) + " p=" + str(p) + " t=" + str(t) + ": closed " + closed.to_string() + " vs " +
                           brute.to_string();
                });
            }
        };
        for (u64 p : {3, 5, 7, 13})
            one(p, 2, 5);
        for (u64 p : {7, 13})
            one(p, 3, 4);
        for (u64 p : {5, 13})
            one(p, 4, 4);
        for (u64 p : {3, 5, 7, 13})
        {
            TowerCtx const tower(p, 1, 1);
            for (u64 n : nt::divisors(p - 1))
            {
                if (n == 1)
                    continue;
                for (unsigned t = 2; t <= 4; ++t)
                {
                    if (t % n != 0)
                        continue;
                    MultChar const chi{n, 1};
                    CycInt const G = gauss_sum(tower, 1, chi);
                    CycInt const J = jacobi_brute(tower, chi, t);
                    CycInt rhs = J.embed(G.order());
                    rhs *= BigInt(-static_cast<std::int64_t>(p));
                    out.expect(G.pow(t) == rhs, [&] { return "G^t != -qJ for p=" + str(p) + " n=" + str(n) + " t=" + str(t); });
                }
            }
        }
    }

    // 4: semiprimitive evaluations against direct monomial sums
    void semiprimitive(Outcome& out)
    {
        u64 const cap = u64{1} << 20;
        for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31})
            for (u64 e = 1;; ++e)
            {
                if (std::log2(static_cast<double>(p)) * 2 * e > 20.0 + 1e-9)
                    break;
                u64 const pe1 = nt::checked_pow(p, static_cast<unsigned>(e)) + 1;
                for (u64 n = 1;; ++n)
                {
                    double const bits = std::log2(static_cast<double>(p)) * 2 * e * n;
                    if (bits > 20.0 + 1e-9)
                        break;
                    auto const r = static_cast<unsigned>(2 * e * n);
                    for (unsigned t = 1; bits * t <= 20.0 + 1e-9; ++t)
                    {
                        TowerCtx const tower(p, r, t);
                        auto const tr = subfield_trace_table(tower, t);
                        u64 const group = tr.size();
                        ensure(group + 1 <= cap, "field over the bound");
                        for (u64 s : nt::divisors(pe1))
                        {
                            if (s == 1)
                                continue;
                            // one pass: sum over x of e(gamma^i x^s) = s * sum over k = i mod s of e(gamma^k)
                            std::vector<std::vector<u64>> buckets(s, std::vector<u64>(p, 0));
                            for (u64 k = 0; k < group; ++k)
                                ++buckets[k % s][tr[k]];
                            u64 const ks = semiprimitive_k(p, e, n * t, s);
                            for (u64 i = 0; i < s; ++i)
                            {
                                CycInt sum = CycInt::from_counts<u64>(p, buckets[i]);
                                sum *= BigInt(s);
                                BigInt const expected = semiprimitive_monomial_value(p, e, n, t, s, i);
                                out.expect(sum.as_integer() == expected, [&] {
                                    return "p=" + str(p) + " e=" + str(e) + " n=" + str(n) + " t=" + str(t) + " s=" + str(s) +
                                           " i=" + str(i) + ": " + sum.to_string() + " vs " + expected.str();
                                });
                            }
                            // both branches through the direct sum
                            for (u64 i : {ks % s, (ks + 1) % s})
                            {
                                CycInt const direct = monomial_sum(tower, t, i, s);
                                BigInt const expected = semiprimitive_monomial_value(p, e, n, t, s, i);
                                out.expect(direct.as_integer() == expected, [&] {
                                    return "direct p=" + str(p) + " e=" + str(e) + " n=" + str(n) + " t=" + str(t) + " s=" +
                                           str(s) + " i=" + str(i);
                                });
                            }
                        }
                    }
                }
            }
        // p = 2, sum over the whole field
        for (unsigned rt = 1; rt <= 20; ++rt)
            for (u64 N = 3; N < (u64{1} << rt); N += 2)
            {
                if (((u64{1} << rt) - 1) % N != 0 || !semiprimitive_exponent(2, N) || rt % nt::mult_order(2, N) != 0)
                    continue;
                for (unsigned r : {1u, 2u})
                {
                    if (rt % r != 0)
                        continue;
                    TowerCtx const tower(2, r, rt / r);
                    for (u64 a : {u64{0}, u64{1}, N})
                    {
                        CycInt direct = monomial_sum(tower, rt / r, a, N);
                        direct += CycInt::integer(direct.order(), 1);
                        BigInt const expected = semiprimitive_sum_char2(N, r, rt / r, a);
                        out.expect(direct.as_integer() == expected, [&] {
                            return "char 2: N=" + str(N) + " rt=" + str(rt) + " a=" + str(a);
                        });
                    }
                }
            }
    }

    // 5: small-field Gauss sums
    void gauss(Outcome& out)
    {
        for (u64 N : {7, 15, 21, 23})
        {
            GaussResolution const res = resolve_gauss(N);
            out.expect(res.c == 1 || res.c == -1, [&] { return "no sign for N=" + str(N); });
            out.expect(res.value.norm() == BigRational(big_pow(2, res.r_prime)),
                       [&] { return "|F|^2 != 2^r' for N=" + str(N); });
            out.expect(res.value.to_cyc().embed(2 * N) == res.direct, [&] { return "candidate mismatch for N=" + str(N); });
            if (N == 21)
            {
                TowerCtx const tower(2, 6, 1);
                CycInt const cube = gauss_sum_prime_subfield(tower, 6, MultChar{21, 3});
                out.expect(cube == -res.direct, [&] { return "F_6(chi^3) != -F_6(chi): " + cube.to_string(); });
            }
        }
    }

    // 6: p = 2 catalog against the general path and the oracle
    void catalog_check(Outcome& out)
    {
        auto& eng = engine();
        std::map<unsigned, std::map<u64, int>> signs_by_r;
        for (unsigned r = 1; r <= 6; ++r)
        {
            u64 const q1 = (u64{1} << r) - 1;
            for (unsigned m = 2; m <= 30; ++m)
            {
                std::optional<BruteResult> scan;
                if (r * m <= 22)
                    scan = brute_scan(2, r, m, q1);
                BigInt total = 0;
                for (u64 h = 0; h < q1; ++h)
                {
                    CatalogResult const got = eng.catalog().evaluate(r, m, h);
                    total += got.value;
                    auto where = [&] { return "r=" + str(r) + " m=" + str(m) + " h=" + str(h) + " [" + got.branch + "]"; };
                    out.expect(got.value >= 0, [&] { return where() + " negative"; });
                    BigInt const dh = p2_general_pm(eng.counter(), r, m, h, Method::GaussDh);
                    out.expect(got.value == dh, [&] { return where() + " catalog " + got.value.str() + " vs DH " + dh.str(); });
                    if (scan)
                    {
                        BigInt const truth = scan->p_m(FieldElement{0}, h);
                        out.expect(got.value == truth,
                                   [&] { return where() + " catalog " + got.value.str() + " vs oracle " + truth.str(); });
                    }
                    for (auto [N, c] : got.signs)
                    {
                        auto [it, fresh] = signs_by_r[r].emplace(N, c);
                        out.expect(fresh || it->second == c, [&] { return where() + " sign drift for N=" + str(N); });
                    }
                }
                BigInt const all_b = eng.count(make(2, r, m, 1, 0, 0), Method::Auto).value;
                out.expect(total == all_b, [&] {
                    return "coset sum r=" + str(r) + " m=" + str(m) + ": " + total.str() + " vs " + all_b.str();
                });
            }
        }
    }

    // 7: structural invariants on random specs
    void invariants(Outcome& out, u64& draws)
    {
        auto& eng = engine();
        std::mt19937_64 rng(20261016);
        std::vector<std::pair<u64, unsigned>> const fields{{2, 1}, {2, 2}, {2, 3}, {2, 4}, {3, 1}, {3, 2}, {5, 1}, {7, 1},
                                                           {11, 1}, {13, 1}, {2, 5}, {5, 2}, {17, 1}, {19, 1}};
        draws = 0;
        while (draws < 520)
        {
            auto [p, r] = fields[rng() % fields.size()];
            u64 const q = nt::checked_pow(p, r);
            auto const m = static_cast<unsigned>(2 + rng() % 5);
            if (std::log2(static_cast<double>(q)) * m > 16.0)
                continue;
            auto const divs = nt::divisors(q - 1);
            u64 const s = divs[rng() % divs.size()];
            u64 const a = rng() % q;
            u64 const h = rng() % s;
            ++draws;
            std::string const tag = "p=" + str(p) + " r=" + str(r) + " m=" + str(m) + " s=" + str(s) + " a=" + str(a) + " h=" + str(h);

            // coset partition
            BigInt coset_total = 0;
            for (u64 hh = 0; hh < s; ++hh)
                coset_total += eng.count(make(p, r, m, s, hh, a), Method::Auto).value;
            BigInt const trace_only = eng.count(make(p, r, m, 1, 0, a), Method::Auto).value;
            out.expect(coset_total == trace_only, [&] { return tag + ": coset partition"; });

            // global partition
            if (draws % 4 == 0)
            {
                BigInt all = 0;
                for (u64 aa = 0; aa < q; ++aa)
                    all += eng.count(make(p, r, m, 1, 0, aa), Method::Auto).value;
                out.expect(all == necklace_count(q, m), [&] { return tag + ": necklace"; });
            }

            // Moebius divisibility and the per-t divisibility
            auto spec = make(p, r, m, s, h, a);
            BigInt mobius = 0;
            for (auto td : nt::divisors(m))
            {
                auto const t = static_cast<unsigned>(td);
                NtResult const nt_val = eng.counter().n_t(spec, t, Method::Auto);
                mobius += nt::mobius(m / t) * nt_val.value;
                if (Counter::n_t_special(spec, t))
                    continue;
                TParams const tp = derive_params(spec, t);
                BigInt const M = eng.counter().m_t_general(spec, t);
                BigInt const numerator = BigInt(tp.d) * (big_pow(q, t) - 1 + M);
                out.expect(numerator % (BigInt(s) * q) == 0, [&] { return tag + ": sq does not divide at t=" + str(t); });
            }
            out.expect(mobius % m == 0, [&] { return tag + ": m does not divide the Moebius sum"; });

            // independence of the primitive element for coset-keyed counts
            TowerCtx const tower(p, r, 1);
            FieldCtx const& F = tower.base();
            std::vector<FieldElement> prims;
            for (u64 code = 1; code < q; ++code)
                if (F.is_primitive({code}))
                    prims.push_back({code});
            FieldElement const g2 = prims[rng() % prims.size()];
            FieldElement const b{1 + rng() % (q - 1)};
            TowerCtx const tower2(p, r, 1, g2);
            u64 const h1 = tower.ind_g(b) % s;
            u64 const h2 = tower2.ind_g(b) % s;
            BigInt const v1 = eng.count(make(p, r, m, s, h1, a), Method::Auto).value;
            BigInt const v2 = eng.count(make(p, r, m, s, h2, a, g2), Method::Auto).value;
            BigInt const v3 = eng.count(make(p, r, m, s, h2, a, g2), Method::Brute).value;
            out.expect(v1 == v2 && v2 == v3, [&] {
                return tag + ": g-dependence " + v1.str() + " / " + v2.str() + " / " + v3.str() + " with g'=" + str(g2.code);
            });
        }
    }

    bool report(int id, std::string const& name, std::function<void(Outcome&)> const& body)
    {
        auto const start = std::chrono::steady_clock::now();
        Outcome out;
        std::string error;
        try
        {
            body(out);
        }
        catch (std::exception const& e)
        {
            error = e.what();
        }
        double const secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        bool const pass = error.empty() && out.failures == 0 && out.checks > 0;
        std::cout << (pass ? "PASS" : "FAIL") << " criterion " << id << ": " << name << " (" << out.checks << " checks, "
                  << out.failures << " failures, " << std::fixed << std::setprecision(1) << secs << " s)\n";
        if (!error.empty())
            std::cout << "    error: " << error << "\n";
        for (auto const& n : out.notes)
            std::cout << "    " << n << "\n";
        std::cout.flush();
        return pass;
    }
}

int main()
{
    bool ok = true;
    ok &= report(1, "small-q table by oracle and formula paths", table_five);
    ok &= report(2, "path equivalence grid", path_grid);
    ok &= report(3, "closed Jacobi sums vs enumeration, G^t = -qJ", jacobi);
    ok &= report(4, "semiprimitive evaluations vs monomial sums", semiprimitive);
    ok &= report(5, "small-field Gauss sums vs two-candidate forms", gauss);
    ok &= report(6, "p = 2 catalog vs DH path, oracle, coset sums", catalog_check);
    u64 draws = 0;
    ok &= report(7, "structural invariants on random specs", [&](Outcome& o) { invariants(o, draws); });
    std::cout << "random draws: " << draws << "\n";
    return ok ? 0 : 1;
}
