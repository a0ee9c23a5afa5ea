#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace redsched {

// Exact rational on 64-bit numerator/denominator.  Invariants: denominator
// positive, fraction fully reduced, zero stored as 0/1.  Intermediates use
// 128-bit arithmetic; a result that does not fit back into 64 bits throws
// std::overflow_error, division by zero throws std::domain_error.
class Rat {
public:
    constexpr Rat() noexcept : n_(0), d_(1) {}
    constexpr Rat(std::int64_t n) noexcept : n_(n), d_(1) {}
    Rat(std::int64_t n, std::int64_t d) { *this = make(n, d); }

    std::int64_t num() const noexcept { return n_; }
    std::int64_t den() const noexcept { return d_; }

    bool is_integer() const noexcept { return d_ == 1; }
    bool is_zero() const noexcept { return n_ == 0; }

    std::int64_t floor() const noexcept {
        std::int64_t q = n_ / d_;
        return (n_ % d_ != 0 && n_ < 0) ? q - 1 : q;
    }
    std::int64_t ceil() const noexcept {
        std::int64_t q = n_ / d_;
        return (n_ % d_ != 0 && n_ > 0) ? q + 1 : q;
    }
    double to_double() const noexcept {
        return static_cast<double>(n_) / static_cast<double>(d_);
    }

    Rat operator-() const {
        Rat r;
        r.n_ = checked64(-static_cast<__int128>(n_));
        r.d_ = d_;
        return r;
    }

    Rat& operator+=(const Rat& o) {
        if (d_ == 1 && o.d_ == 1) {
            n_ = checked64(static_cast<__int128>(n_) + o.n_);
            return *this;
        }
        return *this = make(static_cast<__int128>(n_) * o.d_ +
                                static_cast<__int128>(o.n_) * d_,
                            static_cast<__int128>(d_) * o.d_);
    }
    Rat& operator-=(const Rat& o) {
        if (d_ == 1 && o.d_ == 1) {
            n_ = checked64(static_cast<__int128>(n_) - o.n_);
            return *this;
        }
        return *this = make(static_cast<__int128>(n_) * o.d_ -
                                static_cast<__int128>(o.n_) * d_,
                            static_cast<__int128>(d_) * o.d_);
    }
    Rat& operator*=(const Rat& o) {
        if (d_ == 1 && o.d_ == 1) {
            n_ = checked64(static_cast<__int128>(n_) * o.n_);
            return *this;
        }
        return *this = make(static_cast<__int128>(n_) * o.n_,
                            static_cast<__int128>(d_) * o.d_);
    }
    Rat& operator/=(const Rat& o) {
        if (o.n_ == 0) throw std::domain_error("rational: division by zero");
        return *this = make(static_cast<__int128>(n_) * o.d_,
                            static_cast<__int128>(d_) * o.n_);
    }

    friend Rat operator+(Rat a, const Rat& b) { return a += b; }
    friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
    friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
    friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

    friend bool operator==(const Rat& a, const Rat& b) noexcept {
        return a.n_ == b.n_ && a.d_ == b.d_;
    }
    friend std::strong_ordering operator<=>(const Rat& a,
                                            const Rat& b) noexcept {
        __int128 l = static_cast<__int128>(a.n_) * b.d_;
        __int128 r = static_cast<__int128>(b.n_) * a.d_;
        return l < r   ? std::strong_ordering::less
               : l > r ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }

    // Accepts "3", "-4/7", "2.125".  Throws std::invalid_argument on
    // malformed input.
    static Rat parse(const std::string& s);

    // "n" when integral, "n/d" otherwise; parse(str()) round-trips.
    std::string str() const;

private:
    static Rat make(__int128 n, __int128 d);
    static std::int64_t checked64(__int128 v) {
        if (v > INT64_MAX || v < INT64_MIN)
            throw std::overflow_error("rational: overflow");
        return static_cast<std::int64_t>(v);
    }
    std::int64_t n_, d_;
};

inline const Rat& min(const Rat& a, const Rat& b) { return b < a ? b : a; }
inline const Rat& max(const Rat& a, const Rat& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Rat& r);

}  // namespace redsched

template <>
struct std::hash<redsched::Rat> {
    std::size_t operator()(const redsched::Rat& r) const noexcept {
        std::uint64_t h = static_cast<std::uint64_t>(r.num()) * 0x9e3779b97f4a7c15ULL;
        h ^= static_cast<std::uint64_t>(r.den()) + 0x9e3779b97f4a7c15ULL +
             (h << 6) + (h >> 2);
        return static_cast<std::size_t>(h);
    }
};
