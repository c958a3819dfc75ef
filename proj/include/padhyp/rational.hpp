#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace padhyp {

using Integer = mpz_class;
using Rational = mpq_class;

/// p-adic valuation of a nonzero integer / rational.
long vp(const Integer& n, unsigned long p);
long vp(const Rational& r, unsigned long p);

Integer ipow(unsigned long base, unsigned long exp);

/// Canonical representative r' of r modulo p^k: v_p(r - r') >= k, and r' = 0
/// when v_p(r) >= k. Otherwise r' = p^v * w with w in [0, p^(k-v)).
Rational reduce_mod_pk(const Rational& r, unsigned long p, long k);

/// Unit part: r / p^{v_p(r)}.
Rational unit_part(const Rational& r, unsigned long p);

/// "a" for integers, "a/b" otherwise.
std::string to_string(const Rational& r);
Rational parse_rational(std::string_view text);

double log_p(double x, unsigned long p);
/// log_p of a positive big integer without overflow.
double log_p(const Integer& n, unsigned long p);

bool is_prime(unsigned long n);

/// Floor and ceiling division for possibly negative numerators (d > 0).
long floor_div(long n, long d);
long ceil_div(long n, long d);

}  // namespace padhyp
