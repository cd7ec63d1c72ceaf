#pragma once

// Diagram moves on open books: the ledgered stabilization moves, crossing
// changes, handle slides, cancelling pairs and summand constructions.
// Each move is a small structured record; `apply_move` performs it (or
// throws IllegalMove), `check_contract` independently audits that a
// before/after pair differs by exactly the documented field deltas, and
// `run_script` replays a whole list with a structured log.

#include <cstddef>
#include <string>
#include <vector>

#include "obk/twist.hpp"

namespace obk {
namespace moves {

enum class DiagMoveKind {
    MoveI,         // zigzag pair: tb - 2, ledger + 1
    MoveIInv,      // undo one ledger mark: tb + 2, ledger - 1
    MoveII,        // crossing change via two ledger marks
    Slide2,        // slide a 2-handle circle over another
    Slide1,        // slide a 1-handle over another
    InvertHandle,  // reverse a 1-handle
    T2Add,         // add a cancelling 1-handle/2-handle pair
    T2Remove,      // remove a cancelling pair
    AddSummand,    // disjoint unknotted circle with rot r, tb -1 - |r|
    Double,        // parallel framed copy of a circle
    Flip,          // reverse a circle's orientation
};

const char* diag_move_name(DiagMoveKind k);

struct DiagMove {
    DiagMoveKind kind{};
    std::string circle;      // primary circle (most moves)
    std::string other;       // MoveII: second circle, empty = self; Slide2: the circle slid over
    std::string handle;      // Slide1 / InvertHandle / T2Add / T2Remove
    std::string by;          // Slide1: the handle slid over
    int sign = 1;            // MoveII / Slide2 / Slide1 / Double direction
    long long rot = 0;       // AddSummand rotation number
    bool with_twist = false; // AddSummand: also append a positive twist
    words::Word via;         // Slide2 conjugator word (may be empty)

    std::string to_string() const;
};

// One move per line; '#' starts a comment.  Formats:
//   moveI K1            moveI_inv K1
//   moveII K1 K2 +      moveII K1 self -
//   slide2 K1 over K2 + [via g H]
//   slide1 g over h -   inverthandle g
//   t2add g K3          t2remove g K3
//   addsummand rot=1 [twist]
//   double K1 +         flip K1
DiagMove parse_move(const std::string& line);
std::vector<DiagMove> parse_script(const std::string& text);

twist::OpenBook apply_move(const twist::OpenBook& b, const DiagMove& m);

struct MoveStep {
    DiagMove move;
    std::vector<std::string> deltas;  // human-readable field changes
    std::string h2;                   // H2 of the closed manifold when computable
};

struct MoveLog {
    std::vector<MoveStep> steps;
    bool aborted = false;
    std::size_t failed_at = 0;  // index of the failing move when aborted
    std::string error;
};

struct RunResult {
    twist::OpenBook book;  // final (or last good) state
    MoveLog log;
    bool ok = true;
};

RunResult run_script(const twist::OpenBook& b, const std::vector<DiagMove>& script);

struct ContractReport {
    bool ok = true;
    std::vector<std::string> violations;
};

// Audits that `after` differs from `before` by exactly the documented
// effect of `m` - nothing more, nothing less.  Deliberately independent
// of apply_move so the two act as cross-checks.
ContractReport check_contract(const twist::OpenBook& before, const twist::OpenBook& after,
                              const DiagMove& m);

}  // namespace moves
}  // namespace obk
