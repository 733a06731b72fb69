#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <string>

namespace weylab {

// Exact binary fraction in [0,1) with a fixed number of fractional bits.
// Addition and multiplication by integers wrap modulo 1, so polynomial
// phases alpha * x^j stay exact no matter how large x^j gets.
class FixedReal {
public:
    static constexpr int kDefaultBits = 192;

    FixedReal() : bits_(kDefaultBits), v_(0) {}
    explicit FixedReal(int bits) : bits_(bits), v_(0) {}

    static FixedReal from_rational(const mpz_class& num, const mpz_class& den,
                                   int bits = kDefaultBits);
    static FixedReal from_double(double x, int bits = kDefaultBits);
    // "sqrt2", "pi", "golden": the fractional part, rounded once to F bits.
    static FixedReal named(const std::string& name, int bits = kDefaultBits);
    // Accepts "a/b", decimal strings, or a named irrational.
    static FixedReal parse(const std::string& text, int bits = kDefaultBits);

    int bits() const { return bits_; }
    const mpz_class& raw() const { return v_; }
    mpz_class modulus() const;

    FixedReal operator+(const FixedReal& o) const;
    FixedReal operator-(const FixedReal& o) const;
    FixedReal operator-() const;
    FixedReal mul_int(const mpz_class& n) const;

    bool operator==(const FixedReal& o) const { return v_ == o.v_; }
    bool is_zero() const { return v_ == 0; }

    // Exact value as a rational v / 2^F.
    mpq_class to_rational() const;
    double to_double() const;

    // Distance to the nearest integer, exact and as double.
    mpq_class norm_exact() const;
    double norm() const;

private:
    int bits_;
    mpz_class v_;   // invariant: 0 <= v_ < 2^bits_

    void reduce();
};

}  // namespace weylab
