#pragma once

#include "mukai/arith.hpp"
#include "mukai/lattice.hpp"

#include <stdexcept>

namespace mukai {

/** Exponents (a, b, c) of a line bundle H^a x H'^b twisted by the c-th Poincare power. */
struct TwistBundle {
    Int a;
    Int b;
    Int c;
    Int n;
};

struct TwistResult {
    TwistBundle bundle;
    bool is_ample;
    Int chi_L;
};

struct CoverDegrees {
    Int phi_v;
    Int k_L_order;
};

namespace detail {

inline void require_orthogonal(const MukaiVector& v, const MukaiVector& w, const Surface& s,
                               const char* where) {
    if (!is_orthogonal(v, w, s))
        throw std::domain_error(std::string(where) + ": vectors are not orthogonal");
}

inline void require_rank_one_ns(const Surface& s, const char* where) {
    if (s.ns_rank != 1)
        throw std::domain_error(std::string(where) + ": ns_rank must be 1");
}

/** (prefactor * C(dv+dw, dv)) / (dv+dw), asserting the division is exact. */
inline Int scaled_binomial(const Int& prefactor, const Int& dv, const Int& dw,
                           const char* where) {
    return exact_quotient(prefactor * binomial(dv + dw, dv), dv + dw, where);
}

}  // namespace detail

/** Euler characteristic of the theta bundle on the Albanese fiber: dv^2/(dv+dw) * C(dv+dw, dv). */
inline Int verlinde_kummer(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    detail::require_orthogonal(v, w, s, "verlinde_kummer");
    const Int dv = discriminant_half(v, s);
    const Int dw = discriminant_half(w, s);
    if (dv < 1 || dw < 1)
        throw std::domain_error("verlinde_kummer: half discriminants must be at least 1");
    return detail::scaled_binomial(dv * dv, dv, dw, "verlinde_kummer");
}

/** Theta Euler characteristic for the fixed-determinant flavor: n b^2/(dv+dw) * C(dv+dw, dv). */
inline Int verlinde_plus(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    detail::require_rank_one_ns(s, "verlinde_plus");
    detail::require_orthogonal(v, w, s, "verlinde_plus");
    const Int dv = discriminant_half(v, s);
    const Int dw = discriminant_half(w, s);
    const Int b = v.r * w.c1.coords[0] + w.r * v.c1.coords[0];
    return detail::scaled_binomial(s.n * b * b, dv, dw, "verlinde_plus");
}

/** Theta Euler characteristic for the dual-side flavor: n a^2/(dv+dw) * C(dv+dw, dv). */
inline Int verlinde_minus(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    detail::require_rank_one_ns(s, "verlinde_minus");
    detail::require_orthogonal(v, w, s, "verlinde_minus");
    if (v.chi == 0 || w.chi == 0)
        throw std::domain_error("verlinde_minus: chi must be nonzero");
    const Int dv = discriminant_half(v, s);
    const Int dw = discriminant_half(w, s);
    const Int a = -(v.chi * w.c1.coords[0] + w.chi * v.c1.coords[0]);
    return detail::scaled_binomial(s.n * a * a, dv, dw, "verlinde_minus");
}

/**
 * The twist bundle induced on the product of the surface with its dual by an
 * orthogonal pair, with the ampleness criterion a > 0, b > 0, abn > c^2 and
 * chi_L = (abn - c^2)^2.
 */
inline TwistResult albanese_twist_bundle(const MukaiVector& v, const MukaiVector& w,
                                         const Surface& s) {
    detail::require_rank_one_ns(s, "albanese_twist_bundle");
    detail::require_orthogonal(v, w, s, "albanese_twist_bundle");
    const Int& d = v.c1.coords[0];
    const Int& dp = w.c1.coords[0];
    TwistBundle t;
    t.a = -(v.chi * dp + w.chi * d);
    t.b = v.r * dp + w.r * d;
    t.c = d * dp * s.n + w.r * v.chi;
    t.n = s.n;
    if (t.c != -d * dp * s.n - v.r * w.chi)
        throw std::logic_error("albanese_twist_bundle: the two expressions for c disagree");
    const Int disc = t.a * t.b * s.n - t.c * t.c;
    const Int dv = discriminant_half(v, s);
    const Int dw = discriminant_half(w, s);
    if (disc != dv * dw)
        throw std::logic_error("albanese_twist_bundle: abn - c^2 != dv*dw");
    TwistResult out;
    out.bundle = t;
    out.is_ample = t.a > 0 && t.b > 0 && disc > 0;
    out.chi_L = disc * disc;
    return out;
}

/** Degrees of the etale covers attached to an orthogonal pair: (dv^4, (dv dw)^4). */
inline CoverDegrees cover_degrees(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    detail::require_orthogonal(v, w, s, "cover_degrees");
    const Int dv = discriminant_half(v, s);
    const Int dw = discriminant_half(w, s);
    Int dv4 = dv * dv;
    dv4 *= dv4;
    Int dvdw = dv * dw;
    dvdw *= dvdw;
    return {dv4, dvdw * dvdw};
}

}  // namespace mukai
