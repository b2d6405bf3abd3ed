#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "loopline/matrix.hpp"

namespace loopline {

/// One event on a strand, read from base to top:
/// either a passage through the meridional disc (direction +-1) or one end
/// of a crossing, with its over/under role.
struct DiscPass {
    int direction; // +1: passage in the direction that multiplies the cover level by t
    bool operator==(const DiscPass&) const = default;
};
struct CrossingEnd {
    int id;
    bool over;
    bool operator==(const CrossingEnd&) const = default;
};
using Event = std::variant<DiscPass, CrossingEnd>;

/// A framed string link in the solid torus, encoded as per-strand event
/// sequences.  Framing is the blackboard framing of the encoded diagram.
struct SolidTorusPresentation {
    size_t mu = 0;
    std::map<int, int> crossing_sign;          // id -> +-1
    std::vector<std::vector<Event>> strands;   // strands[i]: events of strand i+1

    /// Every crossing id occurs exactly twice, once over and once under.
    void validate() const; // throws DanglingCrossing / UnknownCrossing
};

struct SpecialnessReport {
    std::vector<long> net_disc_passage;     // per strand
    std::vector<std::vector<Rat>> linking;  // = W(1)
    Rat det_lk;
    bool linking_integral = false;
    bool is_special = false;
};

/// Parses the line-oriented presentation grammar:
///   strands <mu>
///   crossing <id> sign=<+1|-1>
///   strand <k>: D+ D- O:<id> U:<id> ...
/// '#' starts a comment.  Throws SyntaxError / DanglingCrossing.
SolidTorusPresentation parse_presentation(const std::string& text);
SolidTorusPresentation parse_presentation_file(const std::string& path);
std::string presentation_to_string(const SolidTorusPresentation& p);

/// Both occurrences of crossing id: (strand, event index), in the order the
/// strand walk from the base meets them (first occurrence first when on one
/// strand).  Throws UnknownCrossing.
struct CrossingSite {
    size_t strand;      // 0-based
    size_t event_index;
};
std::pair<CrossingSite, CrossingSite> locate_crossing(const SolidTorusPresentation& p, int id);

/// Net disc passage of the path that runs from the base along strand i to
/// crossing c, switches strands, and continues to the top along strand j.
/// For a self-crossing the switch happens at the first encounter.
/// `from_first` selects which end of a self-crossing plays the role of i.
long winding_exponent(const SolidTorusPresentation& p, int crossing_id, bool from_first = true);

/// The Hermitian Laurent-polynomial refinement of the linking matrix:
/// off-diagonal entries sum (1/2) sgn(c) t^{eps(i,j,c)} over crossings of i
/// and j, diagonal entries sum (1/2) sgn(c)(t^eps + t^-eps) over
/// self-crossings.
LaurentMatrix winding_matrix(const SolidTorusPresentation& p);

/// winding_matrix evaluated at t = 1 (entries may be half-integers for
/// presentations whose strand pairs cross an odd number of times).
std::vector<std::vector<Rat>> linking_matrix(const SolidTorusPresentation& p);

/// Independent route to the winding matrix through the universal cyclic
/// cover: every inter-passage arc gets a level (the cumulative disc-pass sum
/// from the base) and a crossing between arcs at levels a and b contributes
/// (1/2) sgn(c) t^{a-b} to entry (i,j).
/// Requires zero net passage on every strand (throws NotSpecial).
LaurentMatrix cover_linking_oracle(const SolidTorusPresentation& p);

SpecialnessReport validate_special(const SolidTorusPresentation& p);

// ---------------------------------------------------------------------------
// Isotopy moves (winding-matrix invariant by construction).

struct MoveCancelPair {            // insert or delete an adjacent (D+, D-) pair
    bool insert;
    size_t strand;                 // 0-based
    size_t position;               // event index (insert before it / delete it and the next)
    bool plus_first = true;
};
struct MoveR2 {
    bool insert;
    size_t strand_over, pos_over;  // insertion point of the two over-ends
    size_t strand_under, pos_under;
    int sign_first = 1;            // sign of the first inserted crossing (second gets the opposite)
    int id_a = -1, id_b = -1;      // for delete: the two crossings to remove
};
struct MoveR3 {
    // Three crossings pairwise adjacent on three strand segments; the move
    // swaps each adjacent pair of crossing ends.
    int id_ab, id_ac, id_bc;
};
using Move = std::variant<MoveCancelPair, MoveR2, MoveR3>;

/// Applies the move; throws IllegalMove when adjacency preconditions fail.
SolidTorusPresentation apply_move(const SolidTorusPresentation& p, const Move& move);

} // namespace loopline
