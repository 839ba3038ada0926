#pragma once

// Exact machinery for the two-walker urn on the three-node segment: the
// episode recursion, brute-force path enumeration, the alternating-scheduler
// martingale identity, and the set of reachable weight fractions. Everything
// here is exact rational arithmetic.

#include <set>
#include <stdexcept>
#include <vector>

#include "rwalks/rational.hpp"

namespace rwalks {

// Episode quantities at half-length l, conditioned on edge weights (a, b) at
// the start of the episode:
//   expectation = E[left fraction at episode end; episode takes 2l steps]
//   last_from_left = P[episode takes 2l steps and the final return is from the left]
struct UrnRecursionState {
    Rational a;
    Rational b;
    long long l = 1;
    Rational expectation;
    Rational last_from_left;
};

inline UrnRecursionState two_player_recursion_base(const Rational& a, const Rational& b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("weights must be positive");
    Rational base = a / (2 * (a + b));
    return {a, b, 1, base, base};
}

inline UrnRecursionState two_player_recursion_step(const UrnRecursionState& s) {
    if (s.l < 1) throw std::invalid_argument("recursion starts at l = 1");
    Rational t = s.a + s.b + 2 * s.l;
    Rational diff = s.expectation - s.last_from_left;
    UrnRecursionState next = s;
    next.l = s.l + 1;
    next.expectation = s.expectation / 2 + diff / ((t - 1) * (t + 2));
    next.last_from_left = s.last_from_left / 2 + Rational(1, 4) * t / (t - 1) * diff;
    return next;
}

inline Rational two_player_closed_form(const Rational& a, const Rational& b, long long l) {
    Rational pow2 = 1;
    for (long long i = 0; i < l; ++i) pow2 *= 2;
    return a / (a + b) / pow2;
}

struct PathEnumerationResult {
    Rational expectation;
    Rational last_from_left;
    std::uint64_t path_count = 0;
};

namespace detail {

// DFS over symbol sequences (walker, direction). Positions live on
// {-1, 0, 1}; a walker at an outer node can only move back to the center.
// Paths where both walkers sit at the center before step 2l are pruned.
inline void enumerate_rec(int p1, int p2, long long t, long long horizon, const Rational& a,
                          const Rational& b, long long left_crossings, const Rational& prob,
                          PathEnumerationResult& acc) {
    if (t == horizon) {
        if (p1 != 0 || p2 != 0) return;
        acc.path_count += 1;
        acc.expectation += prob * (a + left_crossings) / (a + b + horizon);
        // the final move brought the outer walker home; handled by caller
        return;
    }
    if (t > 0 && t % 2 == 0 && p1 == 0 && p2 == 0) return; // met too early
    for (int walker = 0; walker < 2; ++walker) {
        int pos = walker == 0 ? p1 : p2;
        for (int dir = -1; dir <= 1; dir += 2) {
            int to = pos + dir;
            if (to < -1 || to > 1) continue; // outer walker forced inward
            Rational factor = Rational(1, 2); // walker-selection coin
            if (pos == 0) {
                Rational wl = a + left_crossings;
                Rational wr = b + (t - left_crossings);
                factor *= (dir < 0 ? wl : wr) / (wl + wr);
            }
            long long new_left = left_crossings + ((pos == 0 && dir < 0) || (pos == -1) ? 1 : 0);
            Rational new_prob = prob * factor;
            int np1 = walker == 0 ? to : p1;
            int np2 = walker == 1 ? to : p2;
            if (t + 1 == horizon && np1 == 0 && np2 == 0 && pos == -1) {
                // record the "last return from the left" mass at the leaf
                acc.last_from_left += new_prob;
            }
            enumerate_rec(np1, np2, t + 1, horizon, a, b, new_left, new_prob, acc);
        }
    }
}

} // namespace detail

// Brute-force oracle for the recursion: sums over all walker histories of
// length 2l whose first joint return to the center is at the end.
inline PathEnumerationResult enumerate_paths(const Rational& a, const Rational& b, long long l) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("weights must be positive");
    if (l < 1 || l > 6) throw std::invalid_argument("enumeration supports 1 <= l <= 6");
    PathEnumerationResult acc;
    detail::enumerate_rec(0, 0, 0, 2 * l, a, b, 0, Rational(1), acc);
    return acc;
}

// The four-step conditional expectation of the left fraction under the
// alternating scheduler; equals a/(a+b) exactly.
inline Rational alternating_martingale_check(const Rational& a, const Rational& b) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("weights must be positive");
    Rational s = a + b;
    Rational ll = a / s * (a + 1) / (s + 1) * (a + 4) / (s + 4);
    Rational lr = a / s * b / (s + 1) * (a + 2) / (s + 4);
    Rational rl = b / s * a / (s + 1) * (a + 2) / (s + 4);
    Rational rr = b / s * (b + 1) / (s + 1) * a / (s + 4);
    return ll + lr + rl + rr;
}

// Values the weight fraction can take at joint center times:
// (a + 2x) / (a + b + 2l) for 0 <= x <= l <= bound.
inline std::set<Rational> reachable_fraction_set(const Rational& a, const Rational& b,
                                                 long long bound) {
    if (a <= 0 || b <= 0) throw std::invalid_argument("weights must be positive");
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    std::set<Rational> out;
    for (long long l = 1; l <= bound; ++l)
        for (long long x = 0; x <= l; ++x) out.insert((a + 2 * x) / (a + b + 2 * l));
    return out;
}

} // namespace rwalks
