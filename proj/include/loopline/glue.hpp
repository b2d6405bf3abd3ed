#pragma once

#include <set>
#include <vector>

#include "loopline/dseries.hpp"
#include "loopline/matrix.hpp"

namespace loopline {

/// All perfect matchings of the given items, each matching a list of
/// (first, second) index pairs.  Empty input yields the single empty
/// matching; odd input yields none.
std::vector<std::vector<std::pair<int, int>>> perfect_matchings(const std::vector<int>& items);

/// Wick pairing: sums over perfect matchings of the designated legs; a
/// matched pair of an x_i-leg and an x_j-leg is joined by an edge labelled
/// weights(i,j), oriented from the x_i side (i <= j).  Diagrams with an odd
/// number of designated legs contribute nothing.  `weights` must be
/// Hermitian so the orientation convention is consistent under OR.
DiagramSeries pair_glue(const RatFuncMatrix& weights, const DiagramSeries& r,
                        const std::set<LegLabel>& designated, const Trunc& t);
DiagramSeries pair_glue_parallel(const RatFuncMatrix& weights, const DiagramSeries& r,
                                 const std::set<LegLabel>& designated, const Trunc& t);

/// Threaded variant: the connector between a matched (x_i, x_j) pair carries
/// m K-legs with weight [k^m] weights[i-1][j-1].
DiagramSeries pair_glue_series(const std::vector<std::vector<PowerSeries>>& weights,
                               const DiagramSeries& r, const std::set<LegLabel>& designated,
                               const Trunc& t);
DiagramSeries pair_glue_series_parallel(const std::vector<std::vector<PowerSeries>>& weights,
                                        const DiagramSeries& r,
                                        const std::set<LegLabel>& designated, const Trunc& t);

/// Degree-n LMO integration over the variables in x_vars: diagrams carrying
/// exactly 2n legs of every listed variable are glued over all per-variable
/// perfect matchings (the 1/n! (1/2)^n prefactors cancel the matching
/// multiplicities exactly); every closed dashed loop, pre-existing or
/// created, is exchanged for a scalar factor -2n.  Output truncated to
/// grade <= n.
DiagramSeries lmo_integrate_n(const DiagramSeries& f, const std::vector<int>& x_vars, int n,
                              const Trunc& t);
DiagramSeries lmo_integrate_n_parallel(const DiagramSeries& f, const std::vector<int>& x_vars,
                                       int n, const Trunc& t);

/// The X-variable indices appearing in a series.
std::vector<int> x_variables_of(const DiagramSeries& f);

} // namespace loopline
