#include "mukai/cones.hpp"
#include "mukai/heisenberg.hpp"
#include "mukai/lattice.hpp"
#include "mukai/verlinde.hpp"
#include "mukai/walls.hpp"

#include <chrono>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <string>
#include <vector>

using namespace mukai;

namespace {

struct Checker {
    bool ok = true;
    std::string detail;
    void expect(bool cond, const std::string& what) {
        if (ok && !cond) {
            ok = false;
            detail = what;
        }
    }
};

struct Criterion {
    const char* label;
    long long limit_ms;
    std::function<void(Checker&)> body;
};

using SweepPair = std::pair<MukaiVector, MukaiVector>;

std::vector<std::pair<Surface, SweepPair>> full_sweep() {
    std::vector<std::pair<Surface, SweepPair>> out;
    for (Int n = 1; n <= 10; ++n) {
        const Surface s = Surface::rank_one(n);
        for (const auto& pr : generate_orthogonal_pairs(s, 6, 4, -8)) out.push_back({s, pr});
    }
    return out;
}

void check_twist(Checker& c) {
    long long count = 0;
    for (const auto& [s, pr] : full_sweep()) {
        const auto& [v, w] = pr;
        const TwistResult res = albanese_twist_bundle(v, w, s);
        const Int dd = discriminant_half(v, s) * discriminant_half(w, s);
        c.expect(res.bundle.a * res.bundle.b * s.n - res.bundle.c * res.bundle.c == dd,
                 "determinant identity failed");
        c.expect(res.is_ample, "twist bundle not ample");
        c.expect(res.chi_L == dd * dd, "twisted Euler characteristic mismatch");
        ++count;
    }
    c.expect(count >= 200, "expected at least 200 sweep instances, got " +
                               std::to_string(count));
}

void check_verlinde(Checker& c) {
    for (const auto& [s, pr] : full_sweep()) {
        const auto& [v, w] = pr;
        const Int kvw = verlinde_kummer(v, w, s);
        const Int kwv = verlinde_kummer(w, v, s);
        const Int dv = discriminant_half(v, s), dw = discriminant_half(w, s);
        c.expect(kvw > 0, "kummer value not positive");
        c.expect(verlinde_plus(v, w, s) > 0, "plus value not positive");
        c.expect(verlinde_minus(v, w, s) > 0, "minus value not positive");
        c.expect(kvw * dw * dw == kwv * dv * dv, "reciprocity failed");
        c.expect(verlinde_plus(v, w, s) == verlinde_plus(w, v, s), "plus not symmetric");
        c.expect(verlinde_minus(v, w, s) == verlinde_minus(w, v, s), "minus not symmetric");
    }
    const Surface s2 = Surface::rank_one(2);
    const MukaiVector v2{2, NSClass{1}, -1};
    c.expect(verlinde_kummer(v2, v2, s2) == 140, "pinned kummer value 140 failed");
    c.expect(verlinde_plus(v2, v2, s2) == 280, "pinned plus value 280 failed");
    c.expect(verlinde_minus(v2, v2, s2) == 70, "pinned minus value 70 failed");
    const Surface s4 = Surface::rank_one(4);
    c.expect(verlinde_kummer({2, NSClass{1}, -3}, {2, NSClass{1}, -1}, s4) == 50050,
             "pinned kummer value 50050 failed");
}

void check_no_wall(Checker& c) {
    for (const auto& [s, pr] : full_sweep())
        for (const MukaiVector& v : {pr.first, pr.second}) {
            const Int square = mukai_pairing(v, v, s);
            const auto found = enumerate_slope_aligned_isotropic(v, s, 100);
            if (square > 4 * v.r) {
                c.expect(has_no_wall_guarantee(v, s), "guarantee predicate disagrees");
                c.expect(found.empty(), "candidate found despite the square bound");
            } else {
                for (const WallVector& u : found)
                    c.expect(2 * v.r * u.pairing_with_v >= u.p * square,
                             "rank-weighted pairing bound failed");
            }
        }
}

void check_hn_codim(Checker& c) {
    std::mt19937 rng(20260816u);
    std::uniform_int_distribution<int> pick_n(1, 4), pick_r(1, 4), pick_d(-3, 3),
        pick_chi(-4, 4);
    long long accepted = 0;
    while (accepted < 50) {
        const Surface s = Surface::rank_one(pick_n(rng));
        const MukaiVector v1{pick_r(rng), NSClass{pick_d(rng)}, pick_chi(rng)};
        const MukaiVector v2{pick_r(rng), NSClass{pick_d(rng)}, pick_chi(rng)};
        if (mukai_pairing(v1, v1, s) <= 0 || mukai_pairing(v2, v2, s) <= 0) continue;
        if (gcd3(v1.r, v1.c1.coords[0], v1.chi) != 1) continue;
        if (gcd3(v2.r, v2.c1.coords[0], v2.chi) != 1) continue;
        const StratumDims dims = hn_stratum_codimension(v1 + v2, {{{v1, 1}, {v2, 1}}}, s);
        c.expect(dims.codim == mukai_pairing(v1, v2, s) - 1,
                 "codimension differs from pairing minus one");
        ++accepted;
    }
    for (const auto& [n, d, a] : {std::tuple{2, 1, 1}, {3, 1, 2}, {1, 2, 3}}) {
        const Surface s = Surface::rank_one(n);
        const MukaiVector iso{1, NSClass{d}, n * d * d};
        const MukaiVector extra{1, NSClass{0}, -a};
        for (Int ell = 2; ell <= 3; ++ell) {
            const MukaiVector total = ell * iso + extra;
            const StratumDims coarse =
                hn_stratum_codimension(total, {{{ell * iso, ell}, {extra, 1}}}, s);
            HNPartition fine;
            for (Int i = 0; i < ell; ++i) fine.parts.push_back({iso, 1});
            fine.parts.push_back({extra, 1});
            const StratumDims refined = hn_stratum_codimension(total, fine, s);
            c.expect(coarse.dim_F == refined.dim_F && coarse.codim == refined.codim,
                     "refining an isotropic part changed the stratum dimensions");
        }
    }
}

void check_movable(Checker& c) {
    for (const auto& [s, pr] : full_sweep()) {
        const auto& [v, w] = pr;
        if (gcd3(v.r, v.c1.coords[0], v.chi) != 1) continue;
        c.expect(movable_membership(v, w, s).movable,
                 "expected a movable verdict off the product locus");

        const Surface flagged = Surface::rank_one(s.n, true);
        const MovableVerdict on_product = movable_membership(v, w, flagged);
        if (v.c1.coords[0] == 1 && v.chi == -1) {
            c.expect(!on_product.movable && on_product.exceptional.has_value(),
                     "missing the product exceptional witness");
            if (on_product.exceptional) {
                const auto& e = *on_product.exceptional;
                c.expect(e.case_label == "product-(1,-1)" && e.p == 1 && e.e == 1 && e.q == 0,
                         "product witness is not exact");
            }
        } else {
            c.expect(on_product.movable, "unexpected exceptional case");
        }

        for (const SignOracleEntry& entry : brute_force_sign_oracle(v, s, 20))
            if (entry.u.p != 0)
                c.expect(entry.sign_w0 * entry.sign_w1 != -1,
                         "strict sign disagreement outside the rank-zero family");
    }
}

void check_product_walls(Checker& c) {
    for (Int r = 2; r <= 5; ++r)
        for (Int rp = 2; rp <= 5; ++rp) {
            if ((r + rp) % 2 != 0) continue;
            const Int n = (r + rp) / 2;
            const Surface s = Surface::product(n);
            const MukaiVector v{r, s.H, -1};
            const ProductWallReport report = product_surface_wall_check(v, s, 20);
            c.expect(report.candidates.empty(), "separating candidate reported");
            c.expect(report.companion_rank == rp, "companion rank mismatch");
            c.expect(report.p1_square == 2 * n - 2 * r, "pinned square at p=1 mismatch");
            c.expect(report.examined > 0, "search examined no vectors");
        }
}

void check_heisenberg(Checker& c) {
    const std::vector<std::pair<long long, long long>> types = {
        {1, 1}, {1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 2}};
    for (const auto& [d1, d2] : types) {
        const auto svn = weight_k_irreps(HeisenbergGroup(d1, d2, d2), 1);
        c.expect(svn.size() == 1, "weight-one representation is not unique");
        c.expect(svn[0].dimension == d1 * d2, "weight-one dimension mismatch");

        for (long long k = 1; k <= 4; ++k) {
            c.expect(verify_multiplicity_lemma(d1, d2, k), "multiplicity lemma failed");

            long long l = 1;
            for (long long i = 2; i <= k; ++i) l = std::lcm(l, i);
            const HeisenbergGroup G(d1, d2, d2 * l);
            long long square_sum = 0;
            for (const auto& rep : weight_k_irreps(G, k))
                square_sum += rep.dimension * rep.dimension;
            c.expect(square_sum == (d1 * d2) * (d1 * d2), "dimension squares mismatch");

            const long long dim = (d1 * d2) / (std::gcd(k, d1) * std::gcd(k, d2));
            long long weighted = 0;
            for (const auto& [label, mult] : multiplicity_decomposition(G, k))
                weighted += mult * dim;
            c.expect(weighted == k * k * d1 * d2, "multiplicity-weighted dimension mismatch");
        }
    }
}

void check_rank_one_dims(Checker& c) {
    for (Int a = 1; a <= 12; ++a)
        for (Int b = 1; b <= 12; ++b) {
            const auto [lhs, rhs] = rank_one_dims(a, b);
            c.expect(lhs == rhs, "dimension identity failed");
        }
    c.expect(rank_one_dims(1, 1).first == 1, "pinned value (1,1) failed");
    c.expect(rank_one_dims(2, 1).first == 4, "pinned value (2,1) failed");
    c.expect(rank_one_dims(3, 2).first == 18, "pinned value (3,2) failed");
}

void check_transform(Checker& c) {
    for (const auto& [s, pr] : full_sweep())
        for (const MukaiVector& v : {pr.first, pr.second}) {
            const Surface dual = s.dual_surface();
            const MukaiVector t = fm_transform(v, s);
            c.expect(mukai_pairing(t, t, dual) == mukai_pairing(v, v, s),
                     "transform changed the self-pairing");
            c.expect(fm_transform(t, dual) == v, "transform does not square to the identity");
        }
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {"twist identity and ampleness across the orthogonal sweep", 5000, check_twist},
        {"theta Euler characteristics: positivity, reciprocity, pinned values", 5000,
         check_verlinde},
        {"wall-free guarantee versus isotropic enumeration to p=100", 60000, check_no_wall},
        {"filtration stratum codimension closed form and refinements", 5000, check_hn_codim},
        {"movable verdicts, product witness, and the sign oracle", 60000, check_movable},
        {"product-surface wall search stays empty for small ranks", 60000,
         check_product_walls},
        {"weight-k multiplicity lemma and character accounting", 300000, check_heisenberg},
        {"rank-one dimension identity on the 12x12 grid", 1000, check_rank_one_dims},
        {"cohomological transform involution and square preservation", 1000,
         check_transform},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Checker c;
        const auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].body(c);
        } catch (const std::exception& e) {
            c.expect(false, std::string("unexpected exception: ") + e.what());
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        c.expect(elapsed < criteria[i].limit_ms,
                 "exceeded the time budget of " + std::to_string(criteria[i].limit_ms) +
                     " ms");
        if (c.ok) {
            std::cout << "PASS criterion " << (i + 1) << ": " << criteria[i].label << " ("
                      << elapsed << " ms)\n";
        } else {
            ++failures;
            std::cout << "FAIL criterion " << (i + 1) << ": " << criteria[i].label << " ("
                      << elapsed << " ms) [" << c.detail << "]\n";
        }
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size()
              << " criteria passed\n";
    return failures == 0 ? 0 : 1;
}
