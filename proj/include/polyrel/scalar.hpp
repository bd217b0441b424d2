#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "polyrel/errors.hpp"
#include "polyrel/rng.hpp"

namespace polyrel {

enum class FieldKind { Rational, Prime, Float64 };

bool is_prime_u64(std::uint64_t n);

/// Describes the field the computation runs over. Prime fields must have
/// p >= 101: smaller fields make genericity sampling fail too often.
struct FieldConfig {
    FieldKind kind = FieldKind::Rational;
    std::uint64_t p = 0; // modulus, only for Prime

    static FieldConfig rational() { return {FieldKind::Rational, 0}; }
    static FieldConfig float64() { return {FieldKind::Float64, 0}; }
    static FieldConfig prime(std::uint64_t p);

    bool exact() const { return kind != FieldKind::Float64; }
    std::string name() const;

    friend bool operator==(const FieldConfig&, const FieldConfig&) = default;
};

namespace modarith {

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
/// Inverse of a modulo prime p; throws DivisionByZero for a == 0 (mod p).
std::uint64_t invmod(std::uint64_t a, std::uint64_t p);

} // namespace modarith

/// One element of the configured field. Rationals are arbitrary-precision
/// and always kept in lowest terms with positive denominator; prime-field
/// values are residues in [0, p); float64 is the numerical-lab adapter.
///
/// Scalars are immutable values and safe to share between threads. Exact
/// equality is only defined for the exact kinds; float64 comparisons must go
/// through close().
class Scalar {
public:
    struct Residue {
        std::uint64_t v;
        std::uint64_t p;
    };

    Scalar() : v_(mpq_class(0)) {}

    static Scalar rational(const mpq_class& q);
    static Scalar rational(long num, long den = 1);
    static Scalar residue(std::uint64_t v, std::uint64_t p);
    static Scalar real(double d) { return Scalar(d); }

    static Scalar zero(const FieldConfig& f);
    static Scalar one(const FieldConfig& f);

    FieldKind kind() const { return static_cast<FieldKind>(v_.index()); }
    FieldConfig field() const;
    bool is_zero() const;

    const mpq_class& rat() const { return std::get<mpq_class>(v_); }
    std::uint64_t res() const { return std::get<Residue>(v_).v; }
    std::uint64_t modulus() const { return std::get<Residue>(v_).p; }
    double dbl() const { return std::get<double>(v_); }

    Scalar operator-() const;
    Scalar inv() const;

    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);

    Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

    /// Exact equality; throws FieldMismatch for float64 operands.
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

    /// Tolerance comparison for float64 (|a-b| <= tol); exact kinds compare exactly.
    static bool close(const Scalar& a, const Scalar& b, double tol);

    /// Text form: "num/den" or "num" for rationals, decimal residue for prime
    /// fields, shortest round-trip decimal for float64.
    std::string str() const;
    static Scalar parse(const std::string& text, const FieldConfig& f);

    /// Lossy cast to double (exact kinds included); used by the numerical lab.
    double to_double() const;

private:
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(Residue r) : v_(r) {}
    explicit Scalar(double d) : v_(d) {}

    // variant index order must match FieldKind
    std::variant<mpq_class, Residue, double> v_;
};

/// Uniform draw from the field's sampling pool: rationals num/den with
/// num, den in [-50, 50], den != 0; residues uniform in [0, p); doubles
/// uniform in [-1, 1).
Scalar sample_scalar(Rng& rng, const FieldConfig& f);

std::string shortest_double(double d);

} // namespace polyrel
