#pragma once

// Free group words and finite presentations, with the classical
// presentation moves (Tietze transformations and their balanced
// Andrews-Curtis restriction), machine-checkable move traces, and a
// bounded search for trivializing move sequences.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "obk/zalg.hpp"

namespace obk {
namespace words {

// A letter is a generator name with exponent +1 or -1.  Generator names
// start with a lowercase letter; in text form the inverse of "a" is "A"
// (first character upcased), and "^-1" is also accepted.
struct Letter {
    std::string gen;
    int exp = 1;

    bool operator==(const Letter& o) const { return gen == o.gen && exp == o.exp; }
    bool operator!=(const Letter& o) const { return !(*this == o); }
};

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    static Word parse(const std::string& text);

    const std::vector<Letter>& letters() const { return letters_; }
    bool empty() const { return letters_.empty(); }
    std::size_t size() const { return letters_.size(); }

    Word inverse() const;
    Word operator*(const Word& o) const;  // concatenation, no reduction
    bool operator==(const Word& o) const { return letters_ == o.letters_; }
    bool operator!=(const Word& o) const { return !(*this == o); }
    bool operator<(const Word& o) const;

    // Total exponent of a generator (image in the abelianization).
    long long exponent_sum(const std::string& gen) const;
    bool mentions(const std::string& gen) const;

    // Replace every occurrence of gen by w (gen^-1 by w^-1), then freely
    // reduce.
    Word substituted(const std::string& gen, const Word& w) const;

    std::string to_string() const;

private:
    std::vector<Letter> letters_;
};

// Cancel adjacent inverse pairs until none remain.
Word free_reduce(const Word& w);

struct Presentation {
    std::vector<std::string> generators;
    std::vector<Word> relations;

    bool balanced() const { return generators.size() == relations.size(); }
    bool has_generator(const std::string& g) const;

    // "<a,b | ab, b>"; uppercase letters are inverses, "< | >" is the
    // empty presentation.
    static Presentation parse(const std::string& text);
    std::string to_string() const;

    bool operator==(const Presentation& o) const {
        return generators == o.generators && relations == o.relations;
    }
    bool operator!=(const Presentation& o) const { return !(*this == o); }
};

enum class MoveKind {
    // Tietze moves on arbitrary presentations.
    T1Double,    // append a copy of relation `index`, or of its inverse
    T1Inverse,   // replace relation `index` by its inverse
    T1Conjugate, // replace relation `index` by gen^e . r . gen^-e
    T1Multiply,  // replace relation `target` by r_target . r_source^e
    T2Add,       // add generator `gen` with defining relation gen . word^-1
    T2Remove,    // remove generator `gen` via relation `index` = gen . w^-1
    // Balanced (Andrews-Curtis) moves.
    AC1,         // invert relation `index`
    AC2,         // conjugate relation `index` by gen^e
    AC3,         // multiply relation `target` by relation `source`^e
    AC4Add,      // append fresh generator `gen` and relation gen
    AC4Remove,   // drop generator `gen` and its bare relation
    // Extended moves (free-group automorphisms), off by default.
    ExtGenMult,  // substitute gen -> gen . by^e everywhere
    ExtGenInv,   // substitute gen -> gen^-1 everywhere
};

const char* move_kind_name(MoveKind k);

struct PresMove {
    MoveKind kind{};
    std::size_t index = 0;   // relation index (0-based internally)
    std::size_t target = 0;  // for T1Multiply / AC3
    std::size_t source = 0;
    std::string gen;
    std::string by;   // second generator for ExtGenMult
    int exp = 1;      // +1 / -1 where a side or sign is needed
    Word word;        // for T2Add

    std::string to_string() const;
};

struct MoveTrace {
    Presentation initial;
    std::vector<PresMove> steps;
    Presentation final;
};

// Options gate the extended moves; everything else is always legal.
struct MoveOptions {
    bool extended = false;
};

// Returns the transformed presentation; throws IllegalMove (or
// UnbalancedInput for AC moves on unbalanced presentations).
Presentation apply_pres_move(const Presentation& p, const PresMove& m,
                             const MoveOptions& opts = {});

struct TraceReport {
    bool accepted = false;
    // First failing step (0-based) when rejected; steps.size() means the
    // final presentation mismatched.
    std::size_t failed_step = 0;
    std::string reason;
};

TraceReport verify_trace(const MoveTrace& t, const MoveOptions& opts = {});

struct SearchLimits {
    int max_depth = 4;
    std::size_t max_relation_length = 12;
    std::size_t max_states = 200000;
    bool extended = false;
};

enum class SearchStatus { Found, Exhausted, StateLimit };

struct SearchOutcome {
    SearchStatus status = SearchStatus::Exhausted;
    std::optional<MoveTrace> trace;  // set when status == Found
    std::uint64_t states_explored = 0;
    int depth_reached = 0;
};

// Iterative-deepening search for a sequence of balanced moves taking p to
// the empty presentation "< | >".  Deterministic for fixed limits.
SearchOutcome ac_search(const Presentation& p, const SearchLimits& limits = {});

// Exponent-sum matrix (rows = generators, columns = relations) followed
// by cokernel.
zalg::AbelianGroup abelianization(const Presentation& p);

}  // namespace words
}  // namespace obk
