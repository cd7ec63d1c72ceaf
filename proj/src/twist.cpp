#include "obk/twist.hpp"

#include <algorithm>

#include "obk/errors.hpp"

namespace obk {
namespace twist {

OpenBook make_book(page::PageDiagram pg, std::vector<TwistLetter> monodromy) {
    pg.validate();
    for (const TwistLetter& t : monodromy) {
        if (t.circle >= pg.size()) throw ValidationError("monodromy references a missing circle");
        if (t.exp != 1 && t.exp != -1) throw ValidationError("twist exponent must be +-1");
        if (!page::validate_twist_support(pg, t.circle))
            throw ValidationError("twist along '" + pg.circles()[t.circle].name +
                                  "', which has no sphere support (needs tb = -1 and no handles)");
    }
    return OpenBook{std::move(pg), std::move(monodromy)};
}

OpenBook make_book(page::PageDiagram pg, const std::vector<std::string>& tokens) {
    std::vector<TwistLetter> word;
    for (std::string tok : tokens) {
        int exp = 1;
        if (tok.size() > 3 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
            exp = -1;
            tok.resize(tok.size() - 3);
        }
        word.push_back(TwistLetter{pg.index_of(tok), exp});
    }
    return make_book(std::move(pg), std::move(word));
}

zalg::IntMatrix twist_matrix(const zalg::IntMatrix& framing, std::size_t i, int sign) {
    if (framing.rows() != framing.cols()) throw ValidationError("framing matrix must be square");
    if (i >= framing.rows()) throw ValidationError("twist index out of range");
    if (sign != 1 && sign != -1) throw ValidationError("twist sign must be +-1");
    if (framing.at(i, i) != -2)
        throw ValidationError("twist circle must have framing -2");
    // I + e_i row_i(Q); with Q_ii = -2 this squares to the identity, so
    // the inverse twist has the same action and `sign` does not matter.
    zalg::IntMatrix t = zalg::IntMatrix::identity(framing.rows());
    for (std::size_t j = 0; j < framing.cols(); ++j) t.at(i, j) += framing.at(i, j);
    return t;
}

zalg::IntMatrix monodromy_action(const OpenBook& b) {
    zalg::IntMatrix q = page::framing_matrix(b.page);
    zalg::IntMatrix m = zalg::IntMatrix::identity(b.page.size());
    for (const TwistLetter& t : b.monodromy)
        m = twist_matrix(q, t.circle, t.exp) * m;  // later letters act on the left
    return m;
}

zalg::IntMatrix relative_correction(const OpenBook& b) {
    const std::size_t n = b.page.size();
    zalg::IntMatrix q = page::framing_matrix(b.page);
    zalg::IntMatrix c(n, n);
    // Column i: the class collected by meridian disc i as each twist
    // drags it.  Each letter along circle j adds (delta_ij + <row_j(Q), v>)
    // to coordinate j of the running class v.  A twist and its inverse
    // drag the disc equally (the action is an involution), so the letter
    // sign plays no role here.
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Int> v(n, Int(0));
        for (const TwistLetter& t : b.monodromy) {
            Int coef = (t.circle == i) ? 1 : 0;
            for (std::size_t k = 0; k < n; ++k) coef += q.at(t.circle, k) * v[k];
            v[t.circle] += coef;
        }
        for (std::size_t r = 0; r < n; ++r) c.at(r, i) = v[r];
    }
    return c;
}

namespace {

void require_closed_page(const OpenBook& b, const char* what) {
    if (!b.page.handles().empty())
        throw UnsupportedPage(std::string(what) + " needs a page without 1-handles");
}

}  // namespace

MappingTorusHomology mapping_torus_homology(const OpenBook& b) {
    require_closed_page(b, "mapping torus homology");
    zalg::IntMatrix psi = monodromy_action(b);
    zalg::IntMatrix var = psi - zalg::IntMatrix::identity(psi.rows());
    MappingTorusHomology h;
    h.h1 = zalg::AbelianGroup{1, {}};
    h.h2 = zalg::cokernel(var);
    h.h3 = zalg::AbelianGroup{zalg::kernel_rank(var), {}};
    return h;
}

const char* spin_name(Spin s) {
    switch (s) {
        case Spin::Yes: return "yes";
        case Spin::No: return "no";
        case Spin::Unknown: return "unknown";
    }
    return "?";
}

HomologyProfile open_book_homology(const OpenBook& b) {
    require_closed_page(b, "open book homology");
    zalg::IntMatrix psi = monodromy_action(b);
    zalg::IntMatrix var = psi - zalg::IntMatrix::identity(psi.rows());
    zalg::IntMatrix block = var.hcat(relative_correction(b));

    HomologyProfile p;
    p.h[0] = zalg::AbelianGroup{1, {}};
    p.h[1] = zalg::AbelianGroup{0, {}};
    p.h[2] = zalg::cokernel(block);
    p.h[3] = zalg::AbelianGroup{p.h[2].free_rank, {}};
    p.h[4] = zalg::AbelianGroup{0, {}};
    p.h[5] = zalg::AbelianGroup{1, {}};

    bool all_even = std::all_of(b.page.circles().begin(), b.page.circles().end(),
                                [](const page::Circle& c) { return c.rot % 2 == 0; });
    if (all_even)
        p.spin = Spin::Yes;
    else if (b.trivial_monodromy())
        p.spin = Spin::No;
    else
        p.spin = Spin::Unknown;
    return p;
}

OpenBook double_branched_cover(const OpenBook& b) {
    OpenBook out = b;
    out.monodromy.insert(out.monodromy.end(), b.monodromy.begin(), b.monodromy.end());
    return out;
}

OpenBook book_connected_sum(const OpenBook& a, const OpenBook& b) {
    if (a.page.empty() || b.page.empty())
        throw UnsupportedSphere("connected sum with the empty book is the identity; refusing");
    std::vector<std::string> handles = a.page.handles();
    for (const std::string& h : b.page.handles()) {
        if (std::find(handles.begin(), handles.end(), h) != handles.end())
            throw ValidationError("handle name '" + h + "' appears on both sides");
        handles.push_back(h);
    }
    std::vector<page::Circle> circles = a.page.circles();
    for (const page::Circle& c : b.page.circles()) {
        if (std::any_of(circles.begin(), circles.end(),
                        [&](const page::Circle& d) { return d.name == c.name; }))
            throw ValidationError("circle name '" + c.name + "' appears on both sides");
        circles.push_back(c);
    }
    const std::size_t na = a.page.size();
    std::map<std::pair<std::size_t, std::size_t>, Int> linking;
    for (std::size_t i = 0; i < na; ++i)
        for (std::size_t j = i + 1; j < na; ++j)
            if (a.page.linking_defined(i, j) && a.page.linking(i, j) != 0)
                linking[{i, j}] = a.page.linking(i, j);
    for (std::size_t i = 0; i < b.page.size(); ++i)
        for (std::size_t j = i + 1; j < b.page.size(); ++j)
            if (b.page.linking_defined(i, j) && b.page.linking(i, j) != 0)
                linking[{na + i, na + j}] = b.page.linking(i, j);

    std::vector<TwistLetter> word = a.monodromy;
    for (const TwistLetter& t : b.monodromy) word.push_back(TwistLetter{t.circle + na, t.exp});

    return make_book(page::PageDiagram::make(std::move(handles), std::move(circles),
                                             std::move(linking), "program"),
                     std::move(word));
}

OpenBook stabilize_book(const OpenBook& b) {
    std::vector<page::Circle> circles = b.page.circles();
    std::string name;
    for (int k = 1;; ++k) {
        name = "s" + std::to_string(k);
        if (!b.page.find(name)) break;
    }
    circles.push_back(page::Circle{name, words::Word{}, Int(-1), Int(0), 0});
    std::map<std::pair<std::size_t, std::size_t>, Int> linking;
    for (std::size_t i = 0; i < b.page.size(); ++i)
        for (std::size_t j = i + 1; j < b.page.size(); ++j)
            if (b.page.linking_defined(i, j) && b.page.linking(i, j) != 0)
                linking[{i, j}] = b.page.linking(i, j);
    std::vector<TwistLetter> word = b.monodromy;
    word.push_back(TwistLetter{b.page.size(), 1});
    return make_book(page::PageDiagram::make(b.page.handles(), std::move(circles),
                                             std::move(linking), b.page.provenance()),
                     std::move(word));
}

}  // namespace twist
}  // namespace obk
