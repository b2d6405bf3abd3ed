#pragma once

#include <map>
#include <optional>

#include "loopline/glue.hpp"
#include "loopline/presentation.hpp"

namespace loopline {

/// The unique decomposition S = exp(1/2 sum W-chords) u R with R a series of
/// X-substantial diagrams and W Hermitian with det W(1) = +-1.
struct IntegrableElement {
    LaurentMatrix w;
    DiagramSeries r;
};

/// exp of the quadratic chord part of a Gaussian matrix:
/// sum_i (1/2) W_ii c_ii + sum_{i<j} W_ij c_ij, exponentiated under the caps.
DiagramSeries gaussian_chord_exp(const LaurentMatrix& w, const Trunc& t, int canon_bound = 24);

/// Reads the Gaussian matrix off the bare-chord coefficients and divides it
/// out.  Requires constant term 1 and a chord part presented as one labelled
/// chord per strand pair.  Throws NotHermitian / NotIntegrable.
IntegrableElement decompose_integrable(const DiagramSeries& s, size_t mu, const Trunc& t);

/// <exp(-1/2 sum W^{-1}-chords), R>: Wick-glues all X-legs of R with weights
/// -W^{-1}.  Output has rational labels and no X-legs.
DiagramSeries fg_integrate(const IntegrableElement& elem, const Trunc& t, bool parallel = false);
DiagramSeries fg_integrate(const DiagramSeries& s, size_t mu, const Trunc& t,
                           bool parallel = false);

/// Threaded route, defined without rational-label intermediates on the glue
/// edges: <exp(-1/2 sum W^{-1}(e^k)-chords), thr_d(R)>.
DiagramSeries fg_integrate_threaded(const IntegrableElement& elem, int order, const Trunc& t,
                                    bool parallel = false);

// ---------------------------------------------------------------------------
// Wheels line

/// Scalar and single-wheel coefficients of
///   lmo_integrate_n( exp(1/2 sum W_ij(e^k) chords), n )
/// computed by honest matching enumeration; k-leg placement along each cycle
/// is collapsed into an exact series product per cycle.
struct WheelsLine {
    Rat scalar;
    std::map<int, Rat> wheels; // spoke count (even) -> coefficient
};
WheelsLine lmo_chord_exponential(const LaurentMatrix& w, int n, int order, bool parallel = false);

struct WheelsLineCheck {
    Rat scalar_lhs, scalar_rhs;
    std::vector<Rat> exp_lhs, exp_rhs; // exponent coefficients for omega_2, omega_4, ...
    bool equal = false;
};

/// Two-route identity: nu u lmo_integrate_n(exp(1/2 sum W(e^k)-chords))
/// against (-1)^{n sigma_+} Wh'(det W), both collected as scalar * exp(wheel
/// generators).  Compares the scalar and omega_{2m} for m <= min(n, order/2).
WheelsLineCheck wheels_line_check(const LaurentMatrix& w, int n, int order,
                                  bool parallel = false);

// ---------------------------------------------------------------------------
// Surgery assembly

struct LoopExpansion {
    LaurentPoly alexander;       // normalized: A(1) = 1, A(t) = A(1/t)
    LaurentPoly raw_det;         // det of the winding matrix, unnormalized
    std::vector<Rat> wheel_coeffs; // c_2, c_4, ... (exponent of the wheels line)
    std::map<int, DiagramSeries> loop_terms; // i -> connected graphs of Euler char -i
    int sigma_plus = 0, sigma_minus = 0;
    int lmo_degree = 0; // reporting only
    // The surgery normalization denominators enter only through their
    // leading terms (-+1)^n, whose combined contribution is the scalar below.
    Rat normalization_leading = Rat(1);
};

/// Full pipeline for a special presentation: Alexander polynomial and wheels
/// line always; rational loop terms when an X-substantial remainder series is
/// supplied.  Throws NotSpecial / NotIntegrable / MalformedR.
LoopExpansion surgery_assemble(const SolidTorusPresentation& p,
                               const std::optional<DiagramSeries>& r_input, int order,
                               int loop_bound, bool parallel = false);

/// True when den(f) divides alexander^max_power up to units.
bool denominator_divides_power(const RatFunc& f, const LaurentPoly& alexander,
                               int max_power = 8);

} // namespace loopline
