#pragma once

#include <cstdint>

#include "loopline/diagram.hpp"
#include "loopline/matrix.hpp"
#include "loopline/presentation.hpp"

namespace loopline {

/// Deterministic generator (splitmix64); identical streams on every
/// platform for a given seed, unlike the distribution templates.
class Rng {
public:
    explicit Rng(uint64_t seed) : state_(seed) {}
    uint64_t next() {
        uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    /// Uniform in [lo, hi], inclusive.
    long range(long lo, long hi) {
        return lo + static_cast<long>(next() % static_cast<uint64_t>(hi - lo + 1));
    }
    bool flip() { return (next() & 1) != 0; }
    int sign() { return flip() ? 1 : -1; }

private:
    uint64_t state_;
};

/// Random presentation with zero net disc passage on every strand and an
/// integral linking matrix.  With `unimodular` the linking matrix is
/// diag(+-1) by construction (one framing self-crossing per strand, mixed
/// crossings in cancelling pairs), so the presentation is special.
SolidTorusPresentation random_net_zero_presentation(Rng& rng, size_t mu, size_t max_events,
                                                    bool unimodular);

/// Hermitian matrix of integer Laurent polynomials with W(1) unimodular.
LaurentMatrix random_hermitian_unimodular(Rng& rng, size_t mu, long max_exp, long coeff_bound);

/// Random symmetric integer matrix U^T D U with D = diag(+-1).
std::vector<std::vector<Rat>> random_symmetric_unimodular(Rng& rng, size_t mu, long coeff_bound);

/// Random unimodular integer matrix (product of elementary row operations).
std::vector<std::vector<Rat>> random_unimodular(Rng& rng, size_t mu, long coeff_bound);

/// Random uni-trivalent multigraph via stub matching: n_internal oriented
/// trivalent vertices and legs with the given labels; some edges optionally
/// carry random Laurent labels.
Diagram random_diagram(Rng& rng, int n_internal, const std::vector<LegLabel>& legs,
                       bool with_labels);

/// Isomorphic shuffle: relabels vertices, rotates or flips cyclic orders and
/// reverses labelled edges.  Returns the copy and the AS sign it carries
/// relative to the input (-1 per orientation flip).
std::pair<Diagram, int> shuffled_copy(Rng& rng, const Diagram& d);

/// Random Laurent polynomial with the given exponent and coefficient bounds
/// (never zero).
LaurentPoly random_laurent(Rng& rng, long max_exp, long coeff_bound, int terms);

} // namespace loopline
