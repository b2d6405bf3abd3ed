#pragma once

#include <climits>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "loopline/diagram.hpp"
#include "loopline/power_series.hpp"

namespace loopline {

/// Truncation caps for diagram series.  grade2 is twice the grade (the
/// trivalent-vertex count), so half-integer grades stay integral.
struct Trunc {
    int max_grade2 = INT_MAX;
    int max_k_legs = INT_MAX;
    int max_x_legs_per_var = INT_MAX;

    bool admits(const Diagram& d) const {
        return d.grade2() <= max_grade2 && d.count_k_legs() <= max_k_legs &&
               d.max_x_leg_count() <= max_x_legs_per_var;
    }
    static Trunc by_grade(int n) { return Trunc{2 * n, INT_MAX, INT_MAX}; }
};

/// Finite rational-linear combination of canonical Jacobi diagrams.
class DiagramSeries {
public:
    struct Entry {
        Diagram rep;   // a concrete representative
        int rep_sign;  // rep = rep_sign * canonical representative
        Rat coeff;     // series contains coeff * rep
    };

    DiagramSeries() = default;
    explicit DiagramSeries(int canon_bound) : canon_bound_(canon_bound) {}

    static DiagramSeries unit(int canon_bound = 24) {
        DiagramSeries s(canon_bound);
        s.add(Diagram{}, Rat(1));
        return s;
    }

    int canon_bound() const { return canon_bound_; }

    /// Adds coeff * d (canonicalizing); silently drops AS-zero diagrams and
    /// cancellations.
    void add(const Diagram& d, const Rat& coeff);
    void add_scaled(const DiagramSeries& other, const Rat& scale);

    bool empty() const { return terms_.empty(); }
    size_t size() const { return terms_.size(); }
    const std::map<std::string, Entry>& terms() const { return terms_; }

    Rat coeff_of(const Diagram& d) const;   // coefficient relative to d itself
    Rat constant_term() const;              // coefficient of the empty diagram

    /// Coefficients normalized to canonical representatives, for equality.
    std::map<std::string, Rat> canonical_coeffs() const;
    bool operator==(const DiagramSeries& o) const {
        return canonical_coeffs() == o.canonical_coeffs();
    }

    DiagramSeries truncated(const Trunc& t) const;
    DiagramSeries operator+(const DiagramSeries& o) const;
    DiagramSeries operator*(const Rat& s) const;

    /// Applies fn to every term (as coeff * rep) and accumulates the results.
    DiagramSeries map_terms(const std::function<void(const Diagram&, const Rat&, DiagramSeries&)>& fn) const;

private:
    int canon_bound_ = 24;
    std::map<std::string, Entry> terms_;
};

DiagramSeries union_product(const DiagramSeries& a, const DiagramSeries& b, const Trunc& t);

/// exp of a series of diagrams under disjoint union, truncated.  Every term
/// must either have positive grade or carry at least one X-leg so the
/// exponential terminates under the caps.
DiagramSeries exp_truncated(const DiagramSeries& c, const Trunc& t);

/// Inverse of exp_truncated; requires constant term 1 (throws NotUnital) and
/// no grade-zero legless terms.
DiagramSeries log_truncated(const DiagramSeries& s, const Trunc& t);

/// Replaces every rational edge label by its t -> e^k expansion into chains
/// of K-legs; labelled circles expand into wheels.
DiagramSeries thr_d(const DiagramSeries& s, const Trunc& t);

/// x_i-legs are independently kept or rerouted to an x'_j-leg through the
/// power-series coupon M[i][j]; expansion is multilinear over the legs.
/// M is indexed by 1-based strand labels: M[i-1][j-1].
DiagramSeries translate(const DiagramSeries& f,
                        const std::vector<std::vector<PowerSeries>>& m, const Trunc& t);

} // namespace loopline
