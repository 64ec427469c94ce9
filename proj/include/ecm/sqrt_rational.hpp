#pragma once

#include <gmpxx.h>

#include <cmath>
#include <ostream>

#include "ecm/arith.hpp"

namespace ecm {

// Exact value of the form  coeff * sqrt(surd)  with rational coeff and
// squarefree surd >= 1.  The family averages of products of normalized
// Frobenius eigenvalue functions live in Q or Q*sqrt(p); carrying the surd
// explicitly keeps closed-form vs brute-force comparisons exact.
class SqrtRational {
public:
    SqrtRational() : coeff_(0), surd_(1) {}
    SqrtRational(const mpq_class& c) : coeff_(c), surd_(1) { normalize(); }  // NOLINT(google-explicit-constructor)
    SqrtRational(long v) : coeff_(v), surd_(1) {}                            // NOLINT(google-explicit-constructor)
    SqrtRational(const mpq_class& c, const mpz_class& squarefree_surd)
        : coeff_(c), surd_(squarefree_surd) {
        if (surd_ <= 0) throw Error("SqrtRational: surd must be positive");
        normalize();
    }

    // p^(e/2) for integer e (possibly negative or odd)
    static SqrtRational half_power(i64 p, i64 e) {
        mpz_class pz(static_cast<long>(p));
        mpq_class c(1);
        i64 whole = (e >= 0) ? e / 2 : -((-e + 1) / 2);  // floor(e/2)
        if (whole >= 0) {
            mpz_class num;
            mpz_pow_ui(num.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(whole));
            c = mpq_class(num);
        } else {
            mpz_class den;
            mpz_pow_ui(den.get_mpz_t(), pz.get_mpz_t(), static_cast<unsigned long>(-whole));
            c = mpq_class(1) / mpq_class(den);
        }
        if (e % 2 != 0) return SqrtRational(c, pz);  // p^e = p^floor(e/2) * sqrt(p)
        return SqrtRational(c);
    }

    const mpq_class& coeff() const { return coeff_; }
    const mpz_class& surd() const { return surd_; }
    bool is_zero() const { return coeff_ == 0; }
    bool is_rational() const { return surd_ == 1; }

    SqrtRational& operator*=(const SqrtRational& o) {
        mpz_class g;
        mpz_gcd(g.get_mpz_t(), surd_.get_mpz_t(), o.surd_.get_mpz_t());
        coeff_ *= o.coeff_;
        coeff_ *= mpq_class(g);
        surd_ = (surd_ / g) * (o.surd_ / g);
        normalize();
        return *this;
    }
    friend SqrtRational operator*(SqrtRational a, const SqrtRational& b) { return a *= b; }

    SqrtRational& operator+=(const SqrtRational& o) {
        if (o.coeff_ == 0) return *this;
        if (coeff_ == 0) { *this = o; return *this; }
        if (surd_ != o.surd_)
            throw Error("SqrtRational: addition across distinct surds");
        coeff_ += o.coeff_;
        normalize();
        return *this;
    }
    friend SqrtRational operator+(SqrtRational a, const SqrtRational& b) { return a += b; }
    SqrtRational operator-() const { return SqrtRational(mpq_class(-coeff_), surd_); }
    SqrtRational& operator-=(const SqrtRational& o) { return *this += -o; }
    friend SqrtRational operator-(SqrtRational a, const SqrtRational& b) { return a -= b; }

    bool operator==(const SqrtRational& o) const {
        if (coeff_ == 0 && o.coeff_ == 0) return true;
        return coeff_ == o.coeff_ && surd_ == o.surd_;
    }
    bool operator!=(const SqrtRational& o) const { return !(*this == o); }

    double to_double() const {
        if (coeff_ == 0) return 0.0;
        return coeff_.get_d() * std::sqrt(surd_.get_d());
    }

    friend std::ostream& operator<<(std::ostream& os, const SqrtRational& v) {
        os << v.coeff_;
        if (v.surd_ != 1) os << "*sqrt(" << v.surd_ << ")";
        return os;
    }

private:
    void normalize() {
        if (coeff_ == 0) surd_ = 1;
        coeff_.canonicalize();
    }

    mpq_class coeff_;
    mpz_class surd_;
};

}  // namespace ecm
