#pragma once

// Legendrian front diagrams over a 1-handlebody page, written in a small
// textual format (.obk).  A front is a left-to-right sequence of event
// columns acting on a stack of horizontal strands:
//
//   l<s>          left cusp: a new pair of strands opens at slot s
//   r<s>          right cusp: the strands at slots s, s+1 close up
//   x<s>          crossing: the strands at slots s, s+1 cross
//   h<s>:<g>+     the strand at slot s runs through 1-handle g (+ or -)
//
// Slots count from the top, starting at 0.  Events are grouped under
// `knot <name> [orient -]:` headers purely for naming: the components
// found by tracing the closed curves are ordered by their earliest left
// cusp and bound to the knot names in declaration order.  An optional
// `handles: g h ...` line declares the 1-handles and `twists: K1 K2^-1`
// gives a monodromy word for the compiled open book.

#include <cstddef>
#include <string>
#include <vector>

#include "obk/page.hpp"
#include "obk/twist.hpp"
#include "obk/words.hpp"

namespace obk {
namespace front {

enum class EventKind { LeftCusp, RightCusp, Crossing, HandlePass };

struct Event {
    EventKind kind{};
    int slot = 0;
    std::string handle;  // HandlePass only
    int dir = 1;         // HandlePass: +1 left-to-right through the handle
    int line = 0;        // source position for diagnostics (0 = synthetic)
    int col = 0;

    bool operator==(const Event& o) const {
        return kind == o.kind && slot == o.slot && handle == o.handle && dir == o.dir;
    }
};

struct KnotBlock {
    std::string name;
    bool reversed = false;       // `orient -`
    std::vector<Event> events;   // this block's slice of the global column sequence
};

struct FrontDiagram {
    std::vector<std::string> handles;
    std::vector<KnotBlock> blocks;
    std::vector<std::string> twist_tokens;  // e.g. {"K2", "K1", "K2", "K1"}

    std::vector<Event> all_events() const;
    bool operator==(const FrontDiagram& o) const {
        return handles == o.handles && twist_tokens == o.twist_tokens && blocks_equal(o);
    }

private:
    bool blocks_equal(const FrontDiagram& o) const;
};

FrontDiagram parse_front(const std::string& text);
std::string to_obk(const FrontDiagram& f);

struct ClassicalInvariants {
    Int tb = 0;
    Int rot = 0;
    long long writhe = 0;
    long long cusps = 0;       // total
    long long up_cusps = 0;
    long long down_cusps = 0;
};

// Structural results of tracing the closed strands; component order is
// by earliest left cusp, matching the knot-name binding.
class Analysis {
public:
    explicit Analysis(const FrontDiagram& f);

    std::size_t component_count() const { return names_.size(); }
    const std::vector<std::string>& component_names() const { return names_; }

    const ClassicalInvariants& invariants(std::size_t comp) const { return inv_.at(comp); }
    const words::Word& handle_word(std::size_t comp) const { return word_.at(comp); }
    bool linking_defined(std::size_t a, std::size_t b) const;
    Int linking(std::size_t a, std::size_t b) const;  // throws UndefinedLinking

    std::size_t index_of(const std::string& name) const;

private:
    friend FrontDiagram stabilize_front(const FrontDiagram&, std::size_t, int);
    std::vector<std::string> names_;
    std::vector<ClassicalInvariants> inv_;
    std::vector<words::Word> word_;
    std::vector<bool> nullh_;
    std::vector<std::vector<Int>> cross_;     // symmetric crossing-sign sums
    std::vector<std::size_t> seed_column_;    // global column of the seed cusp
    std::vector<int> seed_slot_;
    std::vector<int> seed_dir_;               // +1 when traced left-to-right
};

ClassicalInvariants classical_invariants(const FrontDiagram& f, std::size_t comp);
ClassicalInvariants classical_invariants(const FrontDiagram& f, const std::string& name);
Int linking(const FrontDiagram& f, std::size_t a, std::size_t b);
words::Word handle_word(const FrontDiagram& f, std::size_t comp);

// Insert a stabilization zigzag right after the component's seed cusp.
// sign +1: rot + 1; sign -1: rot - 1; tb drops by 1 either way.
FrontDiagram stabilize_front(const FrontDiagram& f, std::size_t comp, int sign);

page::PageDiagram compile_to_page(const FrontDiagram& f);
twist::OpenBook compile_to_book(const FrontDiagram& f);

// Deterministic standalone SVG (pure function of the diagram).
std::string render_svg(const FrontDiagram& f);

}  // namespace front
}  // namespace obk
