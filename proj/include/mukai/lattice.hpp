#pragma once

#include "mukai/arith.hpp"

#include <cstddef>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace mukai {

/** Integral divisor class in coordinates for the Neron-Severi lattice. */
struct NSClass {
    std::vector<Int> coords;

    NSClass() = default;
    NSClass(std::initializer_list<Int> c) : coords(c) {}
    explicit NSClass(std::vector<Int> c) : coords(std::move(c)) {}

    std::size_t size() const { return coords.size(); }

    friend NSClass operator+(const NSClass& a, const NSClass& b) {
        if (a.size() != b.size())
            throw std::domain_error("NSClass: coordinate lengths differ");
        NSClass out = a;
        for (std::size_t i = 0; i < out.coords.size(); ++i) out.coords[i] += b.coords[i];
        return out;
    }
    friend NSClass operator-(const NSClass& a) {
        NSClass out = a;
        for (auto& c : out.coords) c = -c;
        return out;
    }
    friend NSClass operator*(const Int& t, const NSClass& a) {
        NSClass out = a;
        for (auto& c : out.coords) c *= t;
        return out;
    }
    friend bool operator==(const NSClass& a, const NSClass& b) { return a.coords == b.coords; }
    friend bool operator!=(const NSClass& a, const NSClass& b) { return !(a == b); }
};

/**
 * Polarized abelian surface: an even symmetric intersection form on the
 * Neron-Severi lattice together with a polarization H of square 2n.
 */
struct Surface {
    int ns_rank;
    std::vector<std::vector<Int>> gram;
    NSClass H;
    Int n;
    bool is_product;

    Surface(std::vector<std::vector<Int>> gram_in, NSClass H_in, bool product_flag = false)
        : ns_rank(static_cast<int>(gram_in.size())),
          gram(std::move(gram_in)),
          H(std::move(H_in)),
          n(0),
          is_product(product_flag) {
        if (ns_rank < 1 || ns_rank > 2)
            throw std::domain_error("Surface: ns_rank must be 1 or 2");
        for (const auto& row : gram)
            if (row.size() != static_cast<std::size_t>(ns_rank))
                throw std::domain_error("Surface: gram matrix must be square");
        for (int i = 0; i < ns_rank; ++i) {
            if (gram[i][i] % 2 != 0)
                throw std::domain_error("Surface: gram diagonal must be even");
            for (int j = 0; j < ns_rank; ++j)
                if (gram[i][j] != gram[j][i])
                    throw std::domain_error("Surface: gram matrix must be symmetric");
        }
        if (H.size() != static_cast<std::size_t>(ns_rank))
            throw std::domain_error("Surface: polarization length must match ns_rank");
        Int hh = 0;
        for (int i = 0; i < ns_rank; ++i)
            for (int j = 0; j < ns_rank; ++j) hh += H.coords[i] * gram[i][j] * H.coords[j];
        if (hh <= 0 || hh % 2 != 0)
            throw std::domain_error("Surface: H.H must be a positive even integer");
        n = hh / 2;
    }

    /** NS rank 1 with H the primitive ample generator, H.H = 2n. */
    static Surface rank_one(const Int& n, bool product_flag = false) {
        if (n <= 0) throw std::domain_error("Surface: n must be positive");
        return Surface({{2 * n}}, NSClass{1}, product_flag);
    }

    /** Product of elliptic curves: hyperbolic basis (section, fiber), H = sigma + n f. */
    static Surface product(const Int& n) {
        if (n <= 0) throw std::domain_error("Surface: n must be positive");
        return Surface({{0, 1}, {1, 0}}, NSClass{1, n}, true);
    }

    /** The dual surface, modeled as a fresh rank-1 surface with the same n. */
    Surface dual_surface() const { return rank_one(n); }
};

/** Mukai vector (rank, first Chern class, Euler characteristic). */
struct MukaiVector {
    Int r;
    NSClass c1;
    Int chi;

    friend bool operator==(const MukaiVector& a, const MukaiVector& b) {
        return a.r == b.r && a.c1 == b.c1 && a.chi == b.chi;
    }
    friend bool operator!=(const MukaiVector& a, const MukaiVector& b) { return !(a == b); }
    friend MukaiVector operator+(const MukaiVector& a, const MukaiVector& b) {
        return {a.r + b.r, a.c1 + b.c1, a.chi + b.chi};
    }
    friend MukaiVector operator*(const Int& t, const MukaiVector& a) {
        return {t * a.r, t * a.c1, t * a.chi};
    }
};

/** Value of a central charge: exact rational real and imaginary parts. */
struct CentralCharge {
    Rat re;
    Rat im;
};

inline Int ns_intersect(const NSClass& x, const NSClass& y, const Surface& s) {
    if (x.size() != static_cast<std::size_t>(s.ns_rank) ||
        y.size() != static_cast<std::size_t>(s.ns_rank))
        throw std::domain_error("ns_intersect: coordinate length must match ns_rank");
    Int out = 0;
    for (int i = 0; i < s.ns_rank; ++i)
        for (int j = 0; j < s.ns_rank; ++j) out += x.coords[i] * s.gram[i][j] * y.coords[j];
    return out;
}

inline Int mukai_pairing(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    return ns_intersect(v.c1, w.c1, s) - v.r * w.chi - v.chi * w.r;
}

/** v with its first Chern class negated; an involution. */
inline MukaiVector dual(const MukaiVector& v) {
    return {v.r, -v.c1, v.chi};
}

inline MukaiVector mukai_product(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    return {v.r * w.r,
            v.r * w.c1 + w.r * v.c1,
            v.r * w.chi + w.r * v.chi + ns_intersect(v.c1, w.c1, s)};
}

/** True iff <dual(v), w> = 0. */
inline bool is_orthogonal(const MukaiVector& v, const MukaiVector& w, const Surface& s) {
    return mukai_pairing(dual(v), w, s) == 0;
}

/** Half the self-pairing; the self-pairing of a Mukai vector is always even. */
inline Int discriminant_half(const MukaiVector& v, const Surface& s) {
    const Int sq = mukai_pairing(v, v, s);
    if (sq % 2 != 0)
        throw std::logic_error("discriminant_half: odd self-pairing, gram matrix is invalid");
    return sq / 2;
}

struct ModuliDims {
    Int dim_M;
    Int dim_K;
};

/** Dimensions of the moduli space and of its Albanese fiber. */
inline ModuliDims moduli_dims(const MukaiVector& v, const Surface& s) {
    const Int d = discriminant_half(v, s);
    if (d < 1) throw std::domain_error("moduli_dims: half discriminant must be at least 1");
    return {2 * d + 2, 2 * d - 2};
}

/**
 * Cohomological Fourier-Mukai transform for v = (r, dH, chi) in NS rank 1;
 * the result lives on the dual surface (rank 1, same n).
 */
inline MukaiVector fm_transform(const MukaiVector& v, const Surface& s) {
    if (s.ns_rank != 1) throw std::domain_error("fm_transform: ns_rank must be 1");
    if (v.chi == 0) throw std::domain_error("fm_transform: chi must be nonzero");
    const Int& d = v.c1.coords[0];
    if (v.chi < 0) return {-v.chi, NSClass{d}, -v.r};
    return {v.chi, NSClass{d}, v.r};
}

/** Central charge of v = (r, dH, chi) at the parameter s + it, t > 0. */
inline CentralCharge central_charge(const MukaiVector& v, const Surface& s, const Rat& sparam,
                                    const Rat& tparam) {
    if (s.ns_rank != 1) throw std::domain_error("central_charge: ns_rank must be 1");
    if (tparam <= 0) throw std::domain_error("central_charge: t must be positive");
    const Int& d = v.c1.coords[0];
    const Rat nd2 = Rat(2 * s.n * d);
    CentralCharge z;
    z.re = nd2 * sparam - Rat(v.chi) - Rat(s.n * v.r) * (sparam * sparam - tparam * tparam);
    z.im = nd2 * tparam - Rat(2 * s.n * v.r) * sparam * tparam;
    return z;
}

/**
 * All orthogonal pairs v = (r, dH, chi), w = (r', d'H, chi') with
 * 2 <= r, r' <= r_max, 1 <= d, d' <= d_max, chi_min <= chi, chi' <= -1,
 * in lexicographic order.
 */
inline std::vector<std::pair<MukaiVector, MukaiVector>> generate_orthogonal_pairs(
    const Surface& s, const Int& r_max, const Int& d_max, const Int& chi_min) {
    if (r_max < 1 || d_max < 1)
        throw std::domain_error("generate_orthogonal_pairs: bounds must be positive");
    if (chi_min >= 0)
        throw std::domain_error("generate_orthogonal_pairs: chi_min must be negative");
    std::vector<std::pair<MukaiVector, MukaiVector>> out;
    for (Int r = 2; r <= r_max; ++r)
        for (Int d = 1; d <= d_max; ++d)
            for (Int chi = chi_min; chi <= -1; ++chi) {
                const MukaiVector v{r, d * s.H, chi};
                for (Int rp = 2; rp <= r_max; ++rp)
                    for (Int dp = 1; dp <= d_max; ++dp)
                        for (Int chip = chi_min; chip <= -1; ++chip) {
                            const MukaiVector w{rp, dp * s.H, chip};
                            if (is_orthogonal(v, w, s)) out.emplace_back(v, w);
                        }
            }
    return out;
}

}  // namespace mukai
