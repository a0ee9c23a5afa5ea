#include "redsched/rational.hpp"

#include <cctype>
#include <ostream>

namespace redsched {

namespace {

unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
        unsigned __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

Rat Rat::make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("rational: division by zero");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    if (n != 0) {
        unsigned __int128 an =
            n < 0 ? static_cast<unsigned __int128>(-n)
                  : static_cast<unsigned __int128>(n);
        unsigned __int128 g = gcd128(an, static_cast<unsigned __int128>(d));
        n /= static_cast<__int128>(g);
        d /= static_cast<__int128>(g);
    } else {
        d = 1;
    }
    Rat r;
    r.n_ = checked64(n);
    r.d_ = checked64(d);
    return r;
}

Rat Rat::parse(const std::string& s) {
    std::size_t i = 0;
    bool neg = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
        neg = s[i] == '-';
        ++i;
    }
    auto digits = [&](__int128& out) {
        std::size_t start = i;
        out = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            if (out > (INT64_MAX - 9) / 10)
                throw std::overflow_error("rational: overflow");
            out = out * 10 + (s[i] - '0');
            ++i;
        }
        return i > start;
    };
    __int128 num = 0;
    if (!digits(num)) throw std::invalid_argument("rational: bad literal '" + s + "'");
    __int128 den = 1;
    if (i < s.size() && s[i] == '/') {
        ++i;
        if (!digits(den))
            throw std::invalid_argument("rational: bad literal '" + s + "'");
    } else if (i < s.size() && s[i] == '.') {
        ++i;
        std::size_t start = i;
        __int128 frac = 0;
        if (!digits(frac))
            throw std::invalid_argument("rational: bad literal '" + s + "'");
        for (std::size_t k = 0; k < i - start; ++k) {
            if (den > INT64_MAX / 10)
                throw std::overflow_error("rational: overflow");
            den *= 10;
        }
        num = num * den + frac;
    }
    if (i != s.size())
        throw std::invalid_argument("rational: bad literal '" + s + "'");
    return make(neg ? -num : num, den);
}

std::string Rat::str() const {
    std::string out = std::to_string(n_);
    if (d_ != 1) {
        out += '/';
        out += std::to_string(d_);
    }
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) {
    return os << r.str();
}

}  // namespace redsched
