#pragma once

#include "mukai/arith.hpp"
#include "mukai/verlinde.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace mukai {

/** Group element (z, x, y): central part mod N, translation and character parts. */
struct HeisEl {
    long long z;
    long long x1, x2;
    long long y1, y2;

    friend bool operator==(const HeisEl& a, const HeisEl& b) {
        return a.z == b.z && a.x1 == b.x1 && a.x2 == b.x2 && a.y1 == b.y1 && a.y2 == b.y2;
    }
};

/**
 * Finite Heisenberg group of type (d1, d2) with center of order N:
 * triples (z, x, y) with z mod N, x and y in Z_d1 x Z_d2, multiplied through
 * the commutator cocycle <x, y'> = (N/d1) x1 y'1 + (N/d2) x2 y'2 mod N.
 */
class HeisenbergGroup {
  public:
    HeisenbergGroup(long long d1, long long d2, long long N) : _d1(d1), _d2(d2), _N(N) {
        if (d1 < 1 || d2 < 1 || d2 % d1 != 0)
            throw std::domain_error("HeisenbergGroup: d1 must divide d2");
        if (N < 1 || N % d2 != 0)
            throw std::domain_error("HeisenbergGroup: d2 must divide N");
        _order = N * (d1 * d2) * (d1 * d2);
        if (_order > 4000000)
            throw std::domain_error("HeisenbergGroup: group order exceeds the supported size");
        computeClasses();
    }

    long long d1() const { return _d1; }
    long long d2() const { return _d2; }
    long long N() const { return _N; }
    long long order() const { return _order; }

    long long cocycle(long long x1, long long x2, long long y1, long long y2) const {
        return (mod(x1 * y1, _d1) * (_N / _d1) + mod(x2 * y2, _d2) * (_N / _d2)) % _N;
    }

    HeisEl mul(const HeisEl& a, const HeisEl& b) const {
        return {mod(a.z + b.z + cocycle(a.x1, a.x2, b.y1, b.y2), _N),
                mod(a.x1 + b.x1, _d1), mod(a.x2 + b.x2, _d2),
                mod(a.y1 + b.y1, _d1), mod(a.y2 + b.y2, _d2)};
    }

    HeisEl inverse(const HeisEl& a) const {
        return {mod(-a.z + cocycle(a.x1, a.x2, a.y1, a.y2), _N),
                mod(-a.x1, _d1), mod(-a.x2, _d2), mod(-a.y1, _d1), mod(-a.y2, _d2)};
    }

    long long index_of(const HeisEl& g) const {
        return g.z + _N * (g.x1 + _d1 * (g.x2 + _d2 * (g.y1 + _d1 * g.y2)));
    }

    HeisEl element(long long idx) const {
        HeisEl g;
        g.z = idx % _N;
        idx /= _N;
        g.x1 = idx % _d1;
        idx /= _d1;
        g.x2 = idx % _d2;
        idx /= _d2;
        g.y1 = idx % _d1;
        idx /= _d1;
        g.y2 = idx % _d2;
        return g;
    }

    long long class_count() const { return static_cast<long long>(_class_reps.size()); }
    const std::vector<HeisEl>& class_reps() const { return _class_reps; }
    const std::vector<long long>& class_sizes() const { return _class_sizes; }
    long long class_of(const HeisEl& g) const { return _class_of[index_of(g)]; }

    static long long mod(long long a, long long m) {
        long long r = a % m;
        return r < 0 ? r + m : r;
    }

  private:
    void computeClasses() {
        _class_of.assign(_order, -1);
        std::vector<HeisEl> gens = {{1, 0, 0, 0, 0},
                                    {0, 1, 0, 0, 0},
                                    {0, 0, 1, 0, 0},
                                    {0, 0, 0, 1, 0},
                                    {0, 0, 0, 0, 1}};
        std::vector<long long> stack;
        for (long long i = 0; i < _order; ++i) {
            if (_class_of[i] != -1) continue;
            const long long cls = static_cast<long long>(_class_reps.size());
            _class_reps.push_back(element(i));
            _class_sizes.push_back(0);
            _class_of[i] = cls;
            stack.assign(1, i);
            while (!stack.empty()) {
                const HeisEl h = element(stack.back());
                stack.pop_back();
                ++_class_sizes[cls];
                for (const HeisEl& g : gens) {
                    const HeisEl conj = mul(mul(g, h), inverse(g));
                    const long long j = index_of(conj);
                    if (_class_of[j] == -1) {
                        _class_of[j] = cls;
                        stack.push_back(j);
                    }
                }
            }
        }
    }

    long long _d1, _d2, _N;
    long long _order;
    std::vector<long long> _class_of;
    std::vector<HeisEl> _class_reps;
    std::vector<long long> _class_sizes;
};

inline HeisenbergGroup build_heisenberg(long long d1, long long d2, long long N) {
    return HeisenbergGroup(d1, d2, N);
}

/** Matrix with one nonzero entry per column, a power of the N-th root of unity. */
struct MonomialMatrix {
    long long N;
    std::vector<long long> row;   // row index of the entry in each column
    std::vector<long long> zexp;  // exponent of the entry in each column

    long long dim() const { return static_cast<long long>(row.size()); }

    std::complex<double> entry_value(long long col) const {
        const double arg = 2.0 * std::numbers::pi * double(zexp[col]) / double(N);
        return {std::cos(arg), std::sin(arg)};
    }

    std::complex<double> trace() const {
        std::complex<double> t = 0;
        for (long long c = 0; c < dim(); ++c)
            if (row[c] == c) t += entry_value(c);
        return t;
    }

    friend MonomialMatrix compose(const MonomialMatrix& a, const MonomialMatrix& b) {
        MonomialMatrix out{a.N, std::vector<long long>(b.dim()), std::vector<long long>(b.dim())};
        for (long long c = 0; c < b.dim(); ++c) {
            out.row[c] = a.row[b.row[c]];
            out.zexp[c] = (a.zexp[b.row[c]] + b.zexp[c]) % a.N;
        }
        return out;
    }
    friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
        return a.N == b.N && a.row == b.row && a.zexp == b.zexp;
    }
};

/** Irreducible representation on which the center acts with a fixed weight. */
struct WeightKIrrep {
    long long weight;
    long long dimension;
    std::string label;              // parameters (a1, a2, b1, b2) of the inducing character
    long long a1, a2, b1, b2;
    std::vector<std::complex<double>> character;  // indexed by conjugacy class
};

namespace detail {

/** Monomial matrix of g in the irrep induced from the character (a1, a2, b1, b2). */
inline MonomialMatrix induced_matrix(const HeisenbergGroup& G, long long k, long long a1,
                                     long long a2, long long b1, long long b2,
                                     const HeisEl& g) {
    const long long d1 = G.d1(), d2 = G.d2(), N = G.N();
    const long long g1 = std::gcd(k, d1), g2 = std::gcd(k, d2);
    const long long m1 = d1 / g1, m2 = d2 / g2;  // coset grid dimensions
    MonomialMatrix out{N, std::vector<long long>(m1 * m2), std::vector<long long>(m1 * m2)};
    for (long long c2 = 0; c2 < m2; ++c2)
        for (long long c1 = 0; c1 < m1; ++c1) {
            const long long col = c1 + m1 * c2;
            const long long cp1 = (g.x1 + c1) % m1, cp2 = (g.x2 + c2) % m2;
            const long long s1 = HeisenbergGroup::mod(g.x1 + c1 - cp1, d1) / m1;
            const long long s2 = HeisenbergGroup::mod(g.x2 + c2 - cp2, d2) / m2;
            long long e = HeisenbergGroup::mod(
                k % N * ((g.z - G.cocycle(g.x1 + c1, g.x2 + c2, g.y1, g.y2)) % N), N);
            e = (e + (N / g1) * ((a1 * s1) % g1)) % N;
            e = (e + (N / g2) * ((a2 * s2) % g2)) % N;
            e = (e + (N / d1) * ((b1 * g.y1) % d1)) % N;
            e = (e + (N / d2) * ((b2 * g.y2) % d2)) % N;
            out.row[col] = cp1 + m1 * cp2;
            out.zexp[col] = e;
        }
    return out;
}

}  // namespace detail

inline MonomialMatrix irrep_matrix(const HeisenbergGroup& G, const WeightKIrrep& rep,
                                   const HeisEl& g) {
    return detail::induced_matrix(G, rep.weight, rep.a1, rep.a2, rep.b1, rep.b2, g);
}

/**
 * All irreducible representations with central weight k, one per character of
 * the radical of the weight-k commutator pairing; each has dimension
 * d1 d2 / (gcd(k,d1) gcd(k,d2)) and the dimension squares sum to (d1 d2)^2.
 */
inline std::vector<WeightKIrrep> weight_k_irreps(const HeisenbergGroup& G, long long k) {
    if (k < 1) throw std::domain_error("weight_k_irreps: k must be positive");
    if (G.N() % (k * G.d2()) != 0)
        throw std::domain_error("weight_k_irreps: k*d2 must divide N");
    const long long g1 = std::gcd(k, G.d1()), g2 = std::gcd(k, G.d2());
    const long long dim = (G.d1() * G.d2()) / (g1 * g2);
    std::vector<WeightKIrrep> out;
    for (long long a1 = 0; a1 < g1; ++a1)
        for (long long a2 = 0; a2 < g2; ++a2)
            for (long long b1 = 0; b1 < g1; ++b1)
                for (long long b2 = 0; b2 < g2; ++b2) {
                    WeightKIrrep rep;
                    rep.weight = k;
                    rep.dimension = dim;
                    rep.a1 = a1;
                    rep.a2 = a2;
                    rep.b1 = b1;
                    rep.b2 = b2;
                    rep.label = "(" + std::to_string(a1) + "," + std::to_string(a2) + "," +
                                std::to_string(b1) + "," + std::to_string(b2) + ")";
                    rep.character.reserve(G.class_reps().size());
                    for (const HeisEl& rc : G.class_reps())
                        rep.character.push_back(irrep_matrix(G, rep, rc).trace());
                    out.push_back(std::move(rep));
                }
    return out;
}

/**
 * The weight-1 translation-and-character representation of the type
 * (k d1, k d2) Heisenberg group on functions over Z_{k d1} x Z_{k d2},
 * restricted along (z, x, y) -> (kz, kx, ky); dimension k^2 d1 d2.
 */
struct ModelRep {
    long long d1, d2, N, k;

    long long dim() const { return k * k * d1 * d2; }

    /** The embedding into the type (k d1, k d2) group: k on every coordinate. */
    HeisEl embed(const HeisEl& g) const {
        return {HeisenbergGroup::mod(k * g.z, N), HeisenbergGroup::mod(k * g.x1, k * d1),
                HeisenbergGroup::mod(k * g.x2, k * d2), HeisenbergGroup::mod(k * g.y1, k * d1),
                HeisenbergGroup::mod(k * g.y2, k * d2)};
    }

    /** Weight-1 action of an element of the type (k d1, k d2) group itself. */
    MonomialMatrix big_matrix(const HeisEl& g) const {
        const long long D1 = k * d1, D2 = k * d2;
        MonomialMatrix out{N, std::vector<long long>(dim()), std::vector<long long>(dim())};
        for (long long t2 = 0; t2 < D2; ++t2)
            for (long long t1 = 0; t1 < D1; ++t1) {
                const long long col = t1 + D1 * t2;
                const long long u1 = HeisenbergGroup::mod(t1 - g.x1, D1);
                const long long u2 = HeisenbergGroup::mod(t2 - g.x2, D2);
                out.row[col] = u1 + D1 * u2;
                out.zexp[col] = (g.z + (N / D1) * ((u1 * g.y1) % D1) +
                                 (N / D2) * ((u2 * g.y2) % D2)) %
                                N;
            }
        return out;
    }

    MonomialMatrix matrix(const HeisEl& g) const { return big_matrix(embed(g)); }
};

inline ModelRep model_sections(const HeisenbergGroup& G, long long k) {
    if (k < 1) throw std::domain_error("model_sections: k must be positive");
    if (G.N() % (k * G.d2()) != 0)
        throw std::domain_error("model_sections: k*d2 must divide N");
    return {G.d1(), G.d2(), G.N(), k};
}

/**
 * Multiplicity of each weight-k irreducible inside the restricted model
 * representation, by character inner products over conjugacy classes.
 */
inline std::map<std::string, long long> multiplicity_decomposition(const HeisenbergGroup& G,
                                                                   long long k) {
    const auto irreps = weight_k_irreps(G, k);
    const ModelRep model = model_sections(G, k);
    std::vector<std::complex<double>> model_char;
    model_char.reserve(G.class_reps().size());
    for (const HeisEl& rc : G.class_reps()) model_char.push_back(model.matrix(rc).trace());
    std::map<std::string, long long> out;
    long long dim_sum = 0;
    for (const auto& rep : irreps) {
        std::complex<double> ip = 0;
        for (std::size_t c = 0; c < model_char.size(); ++c)
            ip += double(G.class_sizes()[c]) * model_char[c] * std::conj(rep.character[c]);
        ip /= double(G.order());
        const double rounded = std::round(ip.real());
        if (std::abs(ip.imag()) > 1e-6 || std::abs(ip.real() - rounded) > 1e-6)
            throw std::logic_error("multiplicity_decomposition: non-integral multiplicity");
        out[rep.label] = static_cast<long long>(rounded);
        dim_sum += out[rep.label] * rep.dimension;
    }
    if (dim_sum != k * k * G.d1() * G.d2())
        throw std::logic_error("multiplicity_decomposition: dimension accounting failed");
    return out;
}

/** True iff every weight-k irreducible occurs in the model with multiplicity >= 1. */
inline bool verify_multiplicity_lemma(long long d1, long long d2, long long k) {
    if (k < 1) throw std::domain_error("verify_multiplicity_lemma: k must be positive");
    long long l = 1;
    for (long long i = 2; i <= k; ++i) l = std::lcm(l, i);
    const HeisenbergGroup G(d1, d2, d2 * l);
    for (const auto& [label, mult] : multiplicity_decomposition(G, k))
        if (mult < 1) return false;
    return true;
}

struct EtaleDegrees {
    Int phi;
    Int gamma;
    Int psi;
};

/** Degrees of the section-space comparison covers: (chi^2, a^4, a^4 chi^2). */
inline EtaleDegrees etale_degrees(const Int& a, const Int& chi) {
    if (a < 1) throw std::domain_error("etale_degrees: a must be at least 1");
    if (chi < 2) throw std::domain_error("etale_degrees: chi must be at least 2");
    const Int a2 = a * a;
    return {chi * chi, a2 * a2, a2 * a2 * chi * chi};
}

/**
 * Both sides of the rank-one dimension identity with half discriminants a and b:
 * the theta Euler characteristic on the Albanese fiber of (1, 0, -a) against
 * (1, H, a) on the surface with n = a + b, and the closed binomial form.
 */
inline std::pair<Int, Int> rank_one_dims(const Int& a, const Int& b) {
    if (a < 1 || b < 1) throw std::domain_error("rank_one_dims: a and b must be at least 1");
    const Surface s = Surface::rank_one(a + b);
    const MukaiVector v{1, NSClass{0}, -a};
    const MukaiVector w{1, NSClass{1}, a};
    const Int lhs = verlinde_kummer(v, w, s);
    const Int rhs = exact_quotient(a * a * binomial(a + b, a), a + b, "rank_one_dims");
    return {lhs, rhs};
}

}  // namespace mukai
