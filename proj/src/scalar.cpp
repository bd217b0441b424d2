#include "polyrel/scalar.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <system_error>
#include <utility>

namespace polyrel {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // deterministic Miller-Rabin base set for n < 2^64
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = modarith::powmod(a % n, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = modarith::mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

FieldConfig FieldConfig::prime(std::uint64_t p) {
    if (p < 101)
        throw Error("prime field modulus must be >= 101, got " + std::to_string(p));
    if (!is_prime_u64(p))
        throw Error(std::to_string(p) + " is not prime");
    return {FieldKind::Prime, p};
}

std::string FieldConfig::name() const {
    switch (kind) {
    case FieldKind::Rational: return "rational";
    case FieldKind::Prime: return "prime:" + std::to_string(p);
    case FieldKind::Float64: return "float64";
    }
    return "?";
}

namespace modarith {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
    a %= p;
    if (a == 0) throw DivisionByZero();
    // extended Euclid over signed 128-bit intermediates
    __int128 t = 0, newt = 1;
    __int128 r = p, newr = a;
    while (newr != 0) {
        __int128 q = r / newr;
        t = std::exchange(newt, t - q * newt);
        r = std::exchange(newr, r - q * newr);
    }
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

} // namespace modarith

Scalar Scalar::rational(const mpq_class& q) {
    mpq_class c = q;
    c.canonicalize();
    return Scalar(std::move(c));
}

Scalar Scalar::rational(long num, long den) {
    if (den == 0) throw DivisionByZero();
    mpq_class q(num, den);
    q.canonicalize();
    return Scalar(std::move(q));
}

Scalar Scalar::residue(std::uint64_t v, std::uint64_t p) {
    if (p < 2) throw Error("modulus must be >= 2");
    return Scalar(Residue{v % p, p});
}

Scalar Scalar::zero(const FieldConfig& f) {
    switch (f.kind) {
    case FieldKind::Rational: return rational(0);
    case FieldKind::Prime: return residue(0, f.p);
    case FieldKind::Float64: return real(0.0);
    }
    throw Error("bad field kind");
}

Scalar Scalar::one(const FieldConfig& f) {
    switch (f.kind) {
    case FieldKind::Rational: return rational(1);
    case FieldKind::Prime: return residue(1, f.p);
    case FieldKind::Float64: return real(1.0);
    }
    throw Error("bad field kind");
}

FieldConfig Scalar::field() const {
    switch (kind()) {
    case FieldKind::Rational: return FieldConfig::rational();
    case FieldKind::Prime: return {FieldKind::Prime, modulus()};
    case FieldKind::Float64: return FieldConfig::float64();
    }
    throw Error("bad field kind");
}

bool Scalar::is_zero() const {
    switch (kind()) {
    case FieldKind::Rational: return sgn(rat()) == 0;
    case FieldKind::Prime: return res() == 0;
    case FieldKind::Float64: return dbl() == 0.0;
    }
    return false;
}

namespace {

void check_same_field(const Scalar& a, const Scalar& b) {
    if (a.kind() != b.kind())
        throw FieldMismatch(a.field().name() + " vs " + b.field().name());
    if (a.kind() == FieldKind::Prime && a.modulus() != b.modulus())
        throw FieldMismatch(a.field().name() + " vs " + b.field().name());
}

} // namespace

Scalar Scalar::operator-() const {
    switch (kind()) {
    case FieldKind::Rational: return rational(-rat());
    case FieldKind::Prime: {
        std::uint64_t p = modulus();
        return residue(res() == 0 ? 0 : p - res(), p);
    }
    case FieldKind::Float64: return real(-dbl());
    }
    throw Error("bad field kind");
}

Scalar Scalar::inv() const {
    if (is_zero()) throw DivisionByZero();
    switch (kind()) {
    case FieldKind::Rational: return rational(1 / rat());
    case FieldKind::Prime: return residue(modarith::invmod(res(), modulus()), modulus());
    case FieldKind::Float64: return real(1.0 / dbl());
    }
    throw Error("bad field kind");
}

Scalar operator+(const Scalar& a, const Scalar& b) {
    check_same_field(a, b);
    switch (a.kind()) {
    case FieldKind::Rational: return Scalar::rational(a.rat() + b.rat());
    case FieldKind::Prime: {
        std::uint64_t p = a.modulus();
        auto s = static_cast<unsigned __int128>(a.res()) + b.res();
        if (s >= p) s -= p;
        return Scalar::residue(static_cast<std::uint64_t>(s), p);
    }
    case FieldKind::Float64: return Scalar::real(a.dbl() + b.dbl());
    }
    throw Error("bad field kind");
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    check_same_field(a, b);
    switch (a.kind()) {
    case FieldKind::Rational: return Scalar::rational(a.rat() * b.rat());
    case FieldKind::Prime:
        return Scalar::residue(modarith::mulmod(a.res(), b.res(), a.modulus()), a.modulus());
    case FieldKind::Float64: return Scalar::real(a.dbl() * b.dbl());
    }
    throw Error("bad field kind");
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    check_same_field(a, b);
    if (b.is_zero()) throw DivisionByZero();
    if (a.kind() == FieldKind::Float64) return Scalar::real(a.dbl() / b.dbl());
    return a * b.inv();
}

bool operator==(const Scalar& a, const Scalar& b) {
    check_same_field(a, b);
    switch (a.kind()) {
    case FieldKind::Rational: return cmp(a.rat(), b.rat()) == 0;
    case FieldKind::Prime: return a.res() == b.res();
    case FieldKind::Float64:
        throw FieldMismatch("exact comparison is not defined for float64; use Scalar::close");
    }
    return false;
}

bool Scalar::close(const Scalar& a, const Scalar& b, double tol) {
    check_same_field(a, b);
    if (a.kind() == FieldKind::Float64) return std::abs(a.dbl() - b.dbl()) <= tol;
    return a == b;
}

std::string shortest_double(double d) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), d);
    if (ec != std::errc{}) throw Error("double formatting failed");
    return std::string(buf, end);
}

std::string Scalar::str() const {
    switch (kind()) {
    case FieldKind::Rational: return rat().get_str();
    case FieldKind::Prime: return std::to_string(res());
    case FieldKind::Float64: return shortest_double(dbl());
    }
    throw Error("bad field kind");
}

Scalar Scalar::parse(const std::string& text, const FieldConfig& f) {
    if (text.empty()) throw Error("empty scalar text");
    switch (f.kind) {
    case FieldKind::Rational: {
        auto slash = text.find('/');
        try {
            if (slash == std::string::npos) {
                mpq_class q(mpz_class(text), 1);
                q.canonicalize();
                return rational(q);
            }
            mpz_class num(text.substr(0, slash));
            mpz_class den(text.substr(slash + 1));
            if (den == 0) throw DivisionByZero();
            mpq_class q(num, den);
            q.canonicalize();
            return rational(q);
        } catch (const std::invalid_argument&) {
            throw Error("bad rational literal: " + text);
        }
    }
    case FieldKind::Prime: {
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw Error("bad residue literal: " + text);
        return residue(v, f.p);
    }
    case FieldKind::Float64: {
        char* end = nullptr;
        double d = std::strtod(text.c_str(), &end);
        if (end != text.c_str() + text.size())
            throw Error("bad double literal: " + text);
        return real(d);
    }
    }
    throw Error("bad field kind");
}

double Scalar::to_double() const {
    switch (kind()) {
    case FieldKind::Rational: return rat().get_d();
    case FieldKind::Prime: return static_cast<double>(res());
    case FieldKind::Float64: return dbl();
    }
    throw Error("bad field kind");
}

Scalar sample_scalar(Rng& rng, const FieldConfig& f) {
    switch (f.kind) {
    case FieldKind::Rational: {
        long num = rng.int_in(-50, 50);
        long den = 0;
        do {
            den = rng.int_in(-50, 50);
        } while (den == 0);
        return Scalar::rational(num, den);
    }
    case FieldKind::Prime: return Scalar::residue(rng.below(f.p), f.p);
    case FieldKind::Float64: return Scalar::real(rng.symmetric());
    }
    throw Error("bad field kind");
}

} // namespace polyrel
