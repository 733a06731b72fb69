#include "weylab/fixedreal.hpp"

#include <mpfr.h>
#include <cmath>
#include <stdexcept>

namespace weylab {

void FixedReal::reduce() {
    mpz_fdiv_r_2exp(v_.get_mpz_t(), v_.get_mpz_t(), bits_);
}

mpz_class FixedReal::modulus() const {
    mpz_class m = 1;
    m <<= bits_;
    return m;
}

FixedReal FixedReal::from_rational(const mpz_class& num, const mpz_class& den,
                                   int bits) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    FixedReal r(bits);
    mpz_class scaled = num;
    scaled <<= bits;
    mpz_fdiv_q(r.v_.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
    r.reduce();
    return r;
}

FixedReal FixedReal::from_double(double x, int bits) {
    if (!std::isfinite(x)) throw std::invalid_argument("non-finite value");
    mpq_class q(x);
    return from_rational(q.get_num(), q.get_den(), bits);
}

FixedReal FixedReal::named(const std::string& name, int bits) {
    mpfr_t t;
    mpfr_init2(t, bits + 64);
    if (name == "sqrt2") {
        mpfr_sqrt_ui(t, 2, MPFR_RNDN);
    } else if (name == "pi") {
        mpfr_const_pi(t, MPFR_RNDN);
    } else if (name == "golden") {
        mpfr_sqrt_ui(t, 5, MPFR_RNDN);
        mpfr_add_ui(t, t, 1, MPFR_RNDN);
        mpfr_div_ui(t, t, 2, MPFR_RNDN);
    } else {
        mpfr_clear(t);
        throw std::invalid_argument("unknown named irrational: " + name);
    }
    mpfr_frac(t, t, MPFR_RNDN);
    mpfr_mul_2ui(t, t, bits, MPFR_RNDN);
    FixedReal r(bits);
    mpfr_get_z(r.v_.get_mpz_t(), t, MPFR_RNDN);
    mpfr_clear(t);
    r.reduce();
    return r;
}

FixedReal FixedReal::parse(const std::string& text, int bits) {
    if (text.empty()) throw std::invalid_argument("empty coefficient");
    if (std::isalpha(static_cast<unsigned char>(text[0])))
        return named(text, bits);
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        mpz_class num(text.substr(0, slash), 10);
        mpz_class den(text.substr(slash + 1), 10);
        return from_rational(num, den, bits);
    }
    auto dot = text.find('.');
    if (dot != std::string::npos) {
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        mpz_class num(digits, 10);
        mpz_class den = 1;
        for (size_t i = dot + 1; i < text.size(); ++i) den *= 10;
        return from_rational(num, den, bits);
    }
    return from_rational(mpz_class(text, 10), 1, bits);
}

FixedReal FixedReal::operator+(const FixedReal& o) const {
    FixedReal r(bits_);
    r.v_ = v_ + o.v_;
    r.reduce();
    return r;
}

FixedReal FixedReal::operator-(const FixedReal& o) const {
    FixedReal r(bits_);
    r.v_ = v_ - o.v_;
    r.reduce();
    return r;
}

FixedReal FixedReal::operator-() const {
    FixedReal r(bits_);
    r.v_ = -v_;
    r.reduce();
    return r;
}

FixedReal FixedReal::mul_int(const mpz_class& n) const {
    FixedReal r(bits_);
    r.v_ = v_ * n;
    r.reduce();
    return r;
}

mpq_class FixedReal::to_rational() const {
    mpq_class q(v_, modulus());
    q.canonicalize();
    return q;
}

double FixedReal::to_double() const {
    return mpq_class(v_, modulus()).get_d();
}

mpq_class FixedReal::norm_exact() const {
    mpz_class m = modulus();
    mpz_class other = m - v_;
    mpq_class q(v_ <= other ? v_ : other, m);
    q.canonicalize();
    return q;
}

double FixedReal::norm() const { return norm_exact().get_d(); }

}  // namespace weylab
