#pragma once

// Combinatorial shadow of a Stein page: a 4-dimensional 1-handlebody
// carrying a framed link of attaching circles.  Each circle records its
// handle word (how it runs through the 1-handles), its classical framing
// data (tb, rot) and a stabilization ledger sigma used by the diagram
// moves.  Off-diagonal linking numbers exist only for pairs of circles
// that are null-homologous in the handlebody.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "obk/words.hpp"
#include "obk/zalg.hpp"

namespace obk {
namespace page {

struct Circle {
    std::string name;
    words::Word word;   // freely reduced handle word; empty = disjoint from the 1-handles
    Int tb = -1;        // contact framing; the surgery framing is tb - 1
    Int rot = 0;
    long long sigma = 0;  // count of outstanding positive Reidemeister-I ledger marks

    bool null_homologous(const std::vector<std::string>& handles) const;
};

class PageDiagram {
public:
    PageDiagram() = default;

    static PageDiagram make(std::vector<std::string> handles, std::vector<Circle> circles,
                            std::map<std::pair<std::size_t, std::size_t>, Int> linking,
                            std::string provenance = "program");

    const std::vector<std::string>& handles() const { return handles_; }
    const std::vector<Circle>& circles() const { return circles_; }
    const std::string& provenance() const { return provenance_; }

    std::size_t size() const { return circles_.size(); }
    bool empty() const { return circles_.empty() && handles_.empty(); }

    std::size_t index_of(const std::string& circle_name) const;  // throws ValidationError
    std::optional<std::size_t> find(const std::string& circle_name) const;

    bool linking_defined(std::size_t i, std::size_t j) const;
    // Defined linking number (0 when no entry was recorded); throws
    // UndefinedLinking for pairs without one.
    Int linking(std::size_t i, std::size_t j) const;

    // Mutation is reserved for the move engine and builders; they go
    // through these and revalidate.
    std::vector<std::string>& mutable_handles() { return handles_; }
    std::vector<Circle>& mutable_circles() { return circles_; }
    std::map<std::pair<std::size_t, std::size_t>, Int>& mutable_linking() { return linking_; }
    void set_provenance(std::string p) { provenance_ = std::move(p); }
    void validate() const;

    bool operator==(const PageDiagram& o) const;

private:
    std::vector<std::string> handles_;
    std::vector<Circle> circles_;
    // Keys are (i, j) with i < j.  An absent key for a pair of
    // null-homologous circles means linking 0.
    std::map<std::pair<std::size_t, std::size_t>, Int> linking_;
    std::string provenance_ = "program";
};

struct ChernVector {
    std::vector<Int> entries;  // rotation numbers in the attaching-circle basis

    bool operator==(const ChernVector& o) const { return entries == o.entries; }
};

// Symmetric framing matrix: Q_ii = tb_i - 1, Q_ij = linking(i, j).
// Throws UndefinedEntries listing every pair that has no linking number.
zalg::IntMatrix framing_matrix(const PageDiagram& p);

// Generators = 1-handles, relations = the nonempty circle words.
words::Presentation fundamental_group(const PageDiagram& p);

// First homology of the boundary 3-manifold of the 4-dimensional piece,
// coker(Q).  Only supported for pages without 1-handles.
zalg::AbelianGroup boundary_homology(const PageDiagram& p);

zalg::AbelianGroup boundary_homology(const zalg::IntMatrix& framing);

// Rotation numbers as a vector: the first Chern class evaluated against
// the natural basis.
ChernVector first_chern(const PageDiagram& p);

// True when circle i can carry a Dehn twist: framing Q_ii = -2 (tb = -1)
// and the circle stays clear of the 1-handles.
bool validate_twist_support(const PageDiagram& p, std::size_t i);

}  // namespace page
}  // namespace obk
