#pragma once

#include "mukai/arith.hpp"
#include "mukai/lattice.hpp"
#include "mukai/walls.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mukai {

/** Outcome of the movable-cone membership decision for a theta class. */
struct MovableVerdict {
    bool movable = false;
    bool positive = false;
    Rat coeff_w0;
    Rat coeff_w1;
    struct Exceptional {
        std::string case_label;  // "rank2-u001" or "product-(1,-1)"
        Int p;
        Int e;  // H . eta of the witness
        Int q;
    };
    std::optional<Exceptional> exceptional;
    std::vector<std::string> checked_cases;
};

struct SignOracleEntry {
    WallVector u;
    int sign_w0;
    int sign_w1;
};

/** The large-polarization class (r, r m H, -2 m n d - chi) attached to v = (r, dH, chi). */
inline MukaiVector junli_vector(const MukaiVector& v, const Surface& s, const Int& m) {
    if (s.ns_rank != 1) throw std::domain_error("junli_vector: ns_rank must be 1");
    if (m < 1) throw std::domain_error("junli_vector: m must be positive");
    const Int& d = v.c1.coords[0];
    return {v.r, NSClass{v.r * m}, -2 * m * s.n * d - v.chi};
}

namespace detail {

/** <w, a_m> as an affine form in m: (leading, constant). */
inline std::pair<Int, Int> junli_pairing_form(const MukaiVector& v, const MukaiVector& w,
                                              const Surface& s) {
    const Int& d = v.c1.coords[0];
    const Int& dp = w.c1.coords[0];
    return {2 * s.n * (dp * v.r + d * w.r), w.r * v.chi - v.r * w.chi};
}

/** Eventual sign of an affine form in m, by (leading, constant) lexicographic comparison. */
inline int eventual_sign(const std::pair<Int, Int>& form) {
    if (form.first != 0) return sign_of(form.first);
    return sign_of(form.second);
}

}  // namespace detail

/**
 * True iff <w,w> > 0 and the pairing of w with the large-polarization class
 * is positive for all sufficiently large m.
 */
inline bool positivity_check(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    if (s.ns_rank != 1) throw std::domain_error("positivity_check: ns_rank must be 1");
    if (!is_orthogonal(v, w, s))
        throw std::domain_error("positivity_check: vectors are not orthogonal");
    if (mukai_pairing(w, w, s) <= 0) return false;
    return detail::eventual_sign(detail::junli_pairing_form(v, w, s)) > 0;
}

/**
 * Coefficients expressing w over the boundary classes w0 = (0, rH, -2nd) and
 * w1 = (2nd, -chi H, 0) of v = (r, dH, chi): w = (-chi'/(2nd)) w0 + (r'/(2nd)) w1.
 */
inline std::pair<Rat, Rat> w0_w1_decomposition(const MukaiVector& v, const MukaiVector& w,
                                               const Surface& s) {
    if (s.ns_rank != 1) throw std::domain_error("w0_w1_decomposition: ns_rank must be 1");
    if (v.chi == 0) throw std::domain_error("w0_w1_decomposition: chi must be nonzero");
    const Int& d = v.c1.coords[0];
    if (d <= 0) throw std::domain_error("w0_w1_decomposition: d must be positive");
    const Int twond = 2 * s.n * d;
    const Rat c0 = Rat(-w.chi) / Rat(twond);
    const Rat c1 = Rat(w.r) / Rat(twond);
    // reconstruct w coordinatewise; failure flags a non-orthogonal input
    const Rat rank = c1 * Rat(twond);
    const Rat cls = c0 * Rat(v.r) + c1 * Rat(-v.chi);
    const Rat euler = c0 * Rat(-twond);
    if (rank != Rat(w.r) || cls != Rat(w.c1.coords[0]) || euler != Rat(w.chi))
        throw std::domain_error("w0_w1_decomposition: vectors are not orthogonal");
    return {c0, c1};
}

/**
 * Signs of the two wall-side forms of an isotropic u = (p, eH, q) against
 * v = (r, dH, chi): sign(-2nre + 2ndp) and sign(2nechi - 2ndq).
 */
inline std::pair<int, int> wall_side_signs(const MukaiVector& v, const WallVector& u,
                                           const Surface& s) {
    if (s.ns_rank != 1) throw std::domain_error("wall_side_signs: ns_rank must be 1");
    if (u.p < 0) throw std::domain_error("wall_side_signs: u must have nonnegative rank");
    const Int& e = u.eta.coords[0];
    if (ns_intersect(u.eta, u.eta, s) != 2 * u.p * u.q)
        throw std::domain_error("wall_side_signs: u is not isotropic");
    const Int& d = v.c1.coords[0];
    const Int he = 2 * s.n * e;  // H . eta
    return {sign_of(-v.r * he + 2 * s.n * d * u.p), sign_of(v.chi * he - 2 * s.n * d * u.q)};
}

/**
 * Decides whether the theta class of w on the moduli space of v lies in the
 * movable cone, running the wall case analysis symbolically over all isotropic
 * u = (p, eta, q) with <v, u> in {1, 2}.  The verdict is negative exactly when
 * (d, chi) = (1, -1) on a product of elliptic curves, where the fiber class
 * supplies a separating wall; the witness records that vector with e = H . eta.
 */
inline MovableVerdict movable_membership(const MukaiVector& v, const MukaiVector& w,
                                         const Surface& s) {
    if (s.ns_rank != 1) throw std::domain_error("movable_membership: ns_rank must be 1");
    if (v.r < 2) throw std::domain_error("movable_membership: rank of v must be at least 2");
    const Int& d = v.c1.coords[0];
    const Int& dp = w.c1.coords[0];
    if (d <= 0 || dp <= 0) throw std::domain_error("movable_membership: d must be positive");
    if (v.chi >= 0 || w.chi >= 0)
        throw std::domain_error("movable_membership: chi must be negative");
    if (!is_orthogonal(v, w, s))
        throw std::domain_error("movable_membership: vectors are not orthogonal");
    if (gcd3(v.r, d, v.chi) != 1)
        throw std::domain_error("movable_membership: v must be primitive");

    MovableVerdict verdict;
    verdict.positive = positivity_check(v, w, s);
    auto coeffs = w0_w1_decomposition(v, w, s);
    verdict.coeff_w0 = coeffs.first;
    verdict.coeff_w1 = coeffs.second;

    const Int& r = v.r;
    const Int& n = s.n;
    const Int& chi = v.chi;

    // p = 0: isotropy forces eta = 0, so u = (0, 0, q) with <v,u> = -rq in {1,2};
    // r >= 2 leaves only r = 2, |q| = 1, where w0 lies on the wall and the
    // large-polarization class adjudicates: <a_m, u> = -r and <w1, u> = -2nd
    // must carry the same strict sign.
    if (r == 2 && sign_of(-r) != sign_of(-2 * n * d)) {
        verdict.movable = false;
        verdict.exceptional = MovableVerdict::Exceptional{"rank2-u001", 0, 0, 1};
        verdict.checked_cases.push_back("p=0");
        return verdict;
    }
    verdict.checked_cases.push_back("p=0");

    // p > 0, H.eta = 0: isotropy forces q = 0 and the forms are (2ndp, 0)
    if (!(n >= 1 && d >= 1))
        throw std::logic_error("movable_membership: positivity of n, d failed");
    verdict.checked_cases.push_back("p>0,Heta=0");

    // p > 0, H.eta < 0: the first form is positive outright; a negative second
    // form would force <v,u> < p chi - rq <= -3, outside {1,2}
    if (!(r >= 2 && chi <= -1))
        throw std::logic_error("movable_membership: sign bounds for the negative case failed");
    verdict.checked_cases.push_back("p>0,Heta<0");

    // p > 0, H.eta > 0: the second form is negative outright once q > 0; a
    // positive first form would force <v,u> > n + 1 >= 2.  q = 0 needs an
    // isotropic eta with H.eta > 0, which exists only on a product, and
    // <v,u> = d(H.eta) - p chi >= 2 with equality pinning (d, chi) = (1, -1).
    verdict.checked_cases.push_back("p>0,Heta>0");
    if (s.is_product && d == 1 && chi == -1) {
        verdict.movable = false;
        verdict.exceptional = MovableVerdict::Exceptional{"product-(1,-1)", 1, 1, 0};
    } else {
        verdict.movable = true;
    }
    return verdict;
}

/**
 * Enumerates isotropic u = (p, eH, q) with 0 <= p <= box and |e| <= box
 * (q = n e^2 / p for p > 0; e = 0, |q| <= box for p = 0), keeps those with
 * <v, u> equal to 1 or 2 after sign normalization, and reports both wall-side
 * signs for each.
 */
inline std::vector<SignOracleEntry> brute_force_sign_oracle(const MukaiVector& v,
                                                            const Surface& s, const Int& box) {
    if (s.ns_rank != 1)
        throw std::domain_error("brute_force_sign_oracle: ns_rank must be 1");
    std::vector<SignOracleEntry> out;
    auto emit = [&](const Int& p, const Int& e, const Int& q) {
        WallVector u{p, NSClass{e}, q, 0, std::nullopt};
        u.pairing_with_v = mukai_pairing(v, MukaiVector{p, u.eta, q}, s);
        if (u.pairing_with_v != 1 && u.pairing_with_v != 2) return;
        auto signs = wall_side_signs(v, u, s);
        out.push_back({std::move(u), signs.first, signs.second});
    };
    // rank-zero family: isotropy forces e = 0; -u normalizes the pairing
    for (Int q = 1; q <= box; ++q) {
        emit(0, 0, q);
        emit(0, 0, -q);
    }
    for (Int p = 1; p <= box; ++p)
        for (Int e = -box; e <= box; ++e) {
            if ((s.n * e * e) % p != 0) continue;
            emit(p, e, s.n * e * e / p);
        }
    return out;
}

}  // namespace mukai
