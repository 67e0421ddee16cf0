#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dcp {

/// Prime power p^m appearing in a factorization.
struct PrimePower {
    std::uint32_t prime;
    std::uint32_t exponent;

    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Smallest-prime-factor table for 1..limit.
class Sieve {
public:
    explicit Sieve(std::uint32_t limit) : spf_(static_cast<std::size_t>(limit) + 1, 0)
    {
        for (std::uint32_t i = 2; i <= limit; ++i) {
            if (spf_[i] != 0) continue;
            primes_.push_back(i);
            for (std::uint64_t j = i; j <= limit; j += i)
                if (spf_[j] == 0) spf_[j] = i;
        }
    }

    [[nodiscard]] std::uint32_t limit() const { return static_cast<std::uint32_t>(spf_.size() - 1); }
    [[nodiscard]] const std::vector<std::uint32_t>& primes() const { return primes_; }

    [[nodiscard]] bool is_prime(std::uint32_t n) const
    {
        check(n);
        return n >= 2 && spf_[n] == n;
    }

    [[nodiscard]] std::vector<PrimePower> factorize(std::uint32_t n) const
    {
        check(n);
        std::vector<PrimePower> out;
        while (n > 1) {
            std::uint32_t p = spf_[n], m = 0;
            while (n % p == 0) {
                n /= p;
                ++m;
            }
            out.push_back({p, m});
        }
        return out;
    }

    /// Number of prime factors counted with multiplicity.
    [[nodiscard]] unsigned big_omega(std::uint32_t n) const
    {
        check(n);
        unsigned k = 0;
        while (n > 1) {
            n /= spf_[n];
            ++k;
        }
        return k;
    }

    /// Divisors of n in increasing order.
    [[nodiscard]] std::vector<std::uint32_t> divisors(std::uint32_t n) const
    {
        std::vector<std::uint32_t> ds{1};
        for (auto [p, m] : factorize(n)) {
            std::size_t base = ds.size();
            std::uint32_t pk = 1;
            for (std::uint32_t e = 1; e <= m; ++e) {
                pk *= p;
                for (std::size_t i = 0; i < base; ++i) ds.push_back(ds[i] * pk);
            }
        }
        std::sort(ds.begin(), ds.end());
        return ds;
    }

private:
    void check(std::uint32_t n) const
    {
        if (n == 0 || n >= spf_.size()) throw std::out_of_range("Sieve: index outside table");
    }

    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

/// Shared sieve covering at least 1..n. Tables only grow; older handles stay valid.
inline std::shared_ptr<const Sieve> sieve_upto(std::uint32_t n)
{
    static std::mutex mu;
    static std::shared_ptr<const Sieve> cached;
    std::lock_guard lock(mu);
    if (!cached || cached->limit() < n) {
        std::uint32_t size = std::max<std::uint32_t>(n, cached ? cached->limit() * 2 : 1024);
        cached = std::make_shared<const Sieve>(size);
    }
    return cached;
}

}  // namespace dcp
