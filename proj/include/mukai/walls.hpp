#pragma once

#include "mukai/arith.hpp"
#include "mukai/lattice.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace mukai {

/**
 * Isotropic vector u = (p, eta, q) recorded against a reference vector v,
 * with the pairing <v, u> and the polarization parameter at which slopes
 * align (absent when they align for every polarization).
 */
struct WallVector {
    Int p;
    NSClass eta;
    Int q;
    Int pairing_with_v;
    std::optional<Rat> slope_k;  // nullopt means "all"
};

/** One step of a filtration: a Mukai vector and its multiplicity over a primitive vector. */
struct HNPart {
    MukaiVector v;
    Int ell;
};

struct HNPartition {
    std::vector<HNPart> parts;
};

struct StratumDims {
    Int dim_F;
    Int codim;
};

struct ProductBundle {
    Int L_sigma;
    Int L_f;
    Int chi_L;
};

/** Report of the product-surface wall search for v = (r, sigma + n f, -1). */
struct ProductWallReport {
    std::vector<WallVector> candidates;  // isotropic, pairing 1 or 2, aligned at some k >= n
    Int companion_rank;                  // 2n - r, the rank forced on the orthogonal partner
    Int p1_square;                       // value of (r eta - p H)^2 in the p = 1, pairing 2 case
    Int examined;                        // isotropic vectors that met the pairing condition
};

/**
 * Dimension of the stack of semistable sheaves with vector v = ell * (primitive):
 * <v,v> + 1 when <v,v> > 0, and ell when v is isotropic.
 */
inline Int stack_dimension(const MukaiVector& v, const Surface& s, const Int& ell) {
    if (ell < 1) throw std::domain_error("stack_dimension: ell must be positive");
    const Int sq = mukai_pairing(v, v, s);
    if (sq < 0) throw std::domain_error("stack_dimension: self-pairing must be nonnegative");
    if (sq > 0) return sq + 1;
    return ell;
}

/**
 * All isotropic u = (p, eH, q) with 1 <= p <= p_max whose slope matches that of
 * v = (r, dH, chi) and whose pairing with v is 1, 2, -1, or -2, ordered by p.
 * Slope alignment forces e r = d p and isotropy forces q = n e^2 / p; vectors
 * where either value is non-integral do not exist in the lattice and are skipped.
 */
inline std::vector<WallVector> enumerate_slope_aligned_isotropic(const MukaiVector& v,
                                                                 const Surface& s,
                                                                 const Int& p_max) {
    if (s.ns_rank != 1)
        throw std::domain_error("enumerate_slope_aligned_isotropic: ns_rank must be 1");
    if (v.r < 1)
        throw std::domain_error("enumerate_slope_aligned_isotropic: rank of v must be positive");
    const Int& d = v.c1.coords[0];
    std::vector<WallVector> out;
    for (Int p = 1; p <= p_max; ++p) {
        if ((d * p) % v.r != 0) continue;
        const Int e = d * p / v.r;
        if ((s.n * e * e) % p != 0) continue;
        const Int q = s.n * e * e / p;
        const MukaiVector u{p, NSClass{e}, q};
        const Int pr = mukai_pairing(v, u, s);
        if (pr == 1 || pr == 2 || pr == -1 || pr == -2)
            out.push_back({p, NSClass{e}, q, pr, std::nullopt});
    }
    return out;
}

/** Sufficient condition for the absence of walls: <v,v> > 4 r. */
inline bool has_no_wall_guarantee(const MukaiVector& v, const Surface& s) {
    if (v.r <= 0) throw std::domain_error("has_no_wall_guarantee: rank of v must be positive");
    return mukai_pairing(v, v, s) > 4 * v.r;
}

namespace detail {

inline Int content(const MukaiVector& v) {
    Int g = boost::multiprecision::gcd(v.r, v.chi);
    for (const auto& c : v.c1.coords) g = boost::multiprecision::gcd(g, c);
    return g;
}

}  // namespace detail

/**
 * Dimension of the filtration stratum attached to an ordered partition of v,
 * and its codimension inside the <v,v> + 1 dimensional ambient stack.
 */
inline StratumDims hn_stratum_codimension(const MukaiVector& v, const HNPartition& partition,
                                          const Surface& s) {
    if (partition.parts.empty())
        throw std::domain_error("hn_stratum_codimension: partition must be nonempty");
    MukaiVector sum{0, NSClass(std::vector<Int>(s.ns_rank, 0)), 0};
    for (const auto& part : partition.parts) {
        if (part.v.r < 1)
            throw std::domain_error("hn_stratum_codimension: parts must have positive rank");
        if (mukai_pairing(part.v, part.v, s) < 0)
            throw std::domain_error("hn_stratum_codimension: parts must have nonnegative square");
        if (part.ell < 1 || detail::content(part.v) != part.ell)
            throw std::domain_error(
                "hn_stratum_codimension: multiplicity must equal the content of the part");
        sum = sum + part.v;
    }
    if (sum != v)
        throw std::domain_error("hn_stratum_codimension: parts do not sum to v");
    Int dim_F = 0;
    for (const auto& part : partition.parts) dim_F += stack_dimension(part.v, s, part.ell);
    for (std::size_t i = 0; i < partition.parts.size(); ++i)
        for (std::size_t j = i + 1; j < partition.parts.size(); ++j)
            dim_F += mukai_pairing(partition.parts[i].v, partition.parts[j].v, s);
    const Int ambient = mukai_pairing(v, v, s) + 1;
    return {dim_F, ambient - dim_F};
}

namespace detail {

inline void require_product_preset(const Surface& s, const char* where) {
    const bool preset = s.ns_rank == 2 && s.is_product && s.gram[0][0] == 0 &&
                        s.gram[0][1] == 1 && s.gram[1][0] == 1 && s.gram[1][1] == 0 &&
                        s.H.coords[0] == 1 && s.H.coords[1] == s.n;
    if (!preset) throw std::domain_error(std::string(where) + ": surface is not the product preset");
}

}  // namespace detail

/**
 * For orthogonal v, w on the product preset with c1 = sigma + n f on both:
 * the exponents of the induced bundle on the product of the two elliptic
 * factors and its Euler characteristic (r + r')(-(chi + chi')) = dv + dw.
 */
inline ProductBundle product_fm_bookkeeping(const MukaiVector& v, const MukaiVector& w,
                                            const Surface& s) {
    detail::require_product_preset(s, "product_fm_bookkeeping");
    if (v.c1 != s.H || w.c1 != s.H)
        throw std::domain_error("product_fm_bookkeeping: c1 must equal sigma + n f");
    if (!is_orthogonal(v, w, s))
        throw std::domain_error("product_fm_bookkeeping: vectors are not orthogonal");
    ProductBundle out;
    out.L_sigma = v.r + w.r;
    out.L_f = -(v.chi + w.chi);
    out.chi_L = out.L_sigma * out.L_f;
    if (out.chi_L != discriminant_half(v, s) + discriminant_half(w, s))
        throw std::logic_error("product_fm_bookkeeping: chi_L != dv + dw");
    return out;
}

/**
 * Searches the product preset for isotropic u = (p, alpha sigma + beta f, q),
 * 1 <= p <= box, |alpha|, |beta| <= box * max(r, n), with <v, u> in {1, 2},
 * whose slope aligns with v at some polarization sigma + k f with k >= n.
 * Candidates are expected to be absent; the square identities for r eta - p H
 * are verified on every vector meeting the pairing condition.
 */
inline ProductWallReport product_surface_wall_check(const MukaiVector& v, const Surface& s,
                                                    const Int& box) {
    detail::require_product_preset(s, "product_surface_wall_check");
    if (box < 1) throw std::domain_error("product_surface_wall_check: box must be positive");
    if (v.chi != -1) throw std::domain_error("product_surface_wall_check: chi must be -1");
    if (v.c1 != s.H)
        throw std::domain_error("product_surface_wall_check: c1 must equal sigma + n f");
    if (v.r < 2) throw std::domain_error("product_surface_wall_check: rank must be at least 2");
    const Int& r = v.r;
    const Int& n = s.n;
    ProductWallReport report;
    report.companion_rank = 2 * n - r;
    report.p1_square = 2 * n - 2 * r;
    report.examined = 0;
    const Int bound = box * (r > n ? r : n);
    for (Int p = 1; p <= box; ++p)
        for (Int alpha = -bound; alpha <= bound; ++alpha)
            for (Int beta = -bound; beta <= bound; ++beta) {
                if ((alpha * beta) % p != 0) continue;
                const Int q = alpha * beta / p;
                const MukaiVector u{p, NSClass{alpha, beta}, q};
                const Int pr = mukai_pairing(v, u, s);
                if (pr != 1 && pr != 2) continue;
                ++report.examined;
                // (r eta - p H)^2 = 2 p (p (n + r) - r <v,u>), specialized below
                const Int square = 2 * (r * alpha - p) * (r * beta - p * n);
                if (square != 2 * p * (p * (n + r) - r * pr))
                    throw std::logic_error(
                        "product_surface_wall_check: square identity failed");
                if (p == 1 && pr == 2 && square != 2 * n - 2 * r)
                    throw std::logic_error(
                        "product_surface_wall_check: p = 1 square identity failed");
                if (p >= 2 && pr == 2 && square != 2 * n * p * p + 2 * p * r * (p - 2))
                    throw std::logic_error(
                        "product_surface_wall_check: p >= 2 square identity failed");
                const Int den = alpha * r - p;
                if (den == 0) {
                    // r eta = p H: slopes agree at every polarization or at none
                    if (beta * r == n * p)
                        report.candidates.push_back({p, u.c1, q, pr, std::nullopt});
                    continue;
                }
                const Rat k = Rat(n * p - beta * r) / Rat(den);
                if (k >= Rat(n)) report.candidates.push_back({p, u.c1, q, pr, k});
            }
    return report;
}

}  // namespace mukai
