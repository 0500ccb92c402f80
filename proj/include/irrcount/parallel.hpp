#pragma once

#include <irrcount/numtheory.hpp>

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace irrcount
{
    using nt::u64;

    inline unsigned resolve_workers(unsigned requested)
    {
        if (requested != 0)
            return requested;
        return std::max(1u, std::thread::hardware_concurrency());
    }

    /// Split [0, n) into contiguous chunks, fill one histogram of `bins` counters per chunk
    /// with fn(begin, end, hist), and return the componentwise sum.
    template <class Fn>
    std::vector<u64> parallel_histogram(u64 n, std::size_t bins, unsigned workers, Fn&& fn)
    {
        workers = resolve_workers(workers);
        if (workers == 1 || n < (u64{1} << 14))
        {
            std::vector<u64> hist(bins, 0);
            fn(u64{0}, n, hist);
            return hist;
        }
        workers = static_cast<unsigned>(std::min<u64>(workers, n));
        std::vector<std::vector<u64>> parts(workers, std::vector<u64>(bins, 0));
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> threads;
        for (unsigned w = 0; w < workers; ++w)
        {
            u64 const begin = n / workers * w + std::min<u64>(w, n % workers);
            u64 const end = begin + n / workers + (w < n % workers ? 1 : 0);
            threads.emplace_back([&, w, begin, end] {
                try
                {
                    fn(begin, end, parts[w]);
                }
                catch (...)
                {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto& th : threads)
            th.join();
        for (auto const& e : errors)
            if (e)
                std::rethrow_exception(e);
        for (unsigned w = 1; w < workers; ++w)
            for (std::size_t b = 0; b < bins; ++b)
                parts[0][b] += parts[w][b];
        return std::move(parts[0]);
    }
}
