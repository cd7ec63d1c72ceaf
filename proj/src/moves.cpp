#include "obk/moves.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <tuple>
#include <utility>

#include "obk/errors.hpp"

namespace obk {
namespace moves {

namespace {

using page::Circle;
using page::PageDiagram;
using twist::OpenBook;
using twist::TwistLetter;
using words::Word;

std::size_t circle_index(const OpenBook& b, const std::string& name, const char* move) {
    auto idx = b.page.find(name);
    if (!idx) throw IllegalMove(std::string(move) + ": no circle named '" + name + "'");
    return *idx;
}

bool twisted(const OpenBook& b, std::size_t i) {
    for (const auto& t : b.monodromy)
        if (t.circle == i) return true;
    return false;
}

void require_untwisted(const OpenBook& b, std::size_t i, const char* move) {
    if (twisted(b, i))
        throw IllegalMove(std::string(move) + ": circle '" + b.page.circles()[i].name +
                          "' carries a monodromy twist");
}

Int get_link(const PageDiagram& p, std::size_t i, std::size_t j) { return p.linking(i, j); }

void set_link(PageDiagram& p, std::size_t i, std::size_t j, const Int& v) {
    auto key = std::minmax(i, j);
    if (v == 0)
        p.mutable_linking().erase({key.first, key.second});
    else
        p.mutable_linking()[{key.first, key.second}] = v;
}

std::string fresh_circle_name(const PageDiagram& p, const std::string& base) {
    for (int k = 1;; ++k) {
        std::string cand = base + std::to_string(k);
        if (!p.find(cand)) return cand;
    }
}

OpenBook finish(PageDiagram page, std::vector<TwistLetter> monodromy) {
    page.validate();
    return twist::make_book(std::move(page), std::move(monodromy));
}

OpenBook apply_move_i(const OpenBook& b, const DiagMove& m, int dir) {
    const char* name = dir > 0 ? "moveI" : "moveI_inv";
    std::size_t i = circle_index(b, m.circle, name);
    require_untwisted(b, i, name);
    OpenBook out = b;
    Circle& c = out.page.mutable_circles()[i];
    if (dir < 0) {
        if (c.sigma < 1)
            throw IllegalMove(std::string(name) + ": circle '" + c.name +
                              "' has no ledger mark to undo");
        c.tb += 2;
        c.sigma -= 1;
    } else {
        c.tb -= 2;
        c.sigma += 1;
    }
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_move_ii(const OpenBook& b, const DiagMove& m) {
    std::size_t i = circle_index(b, m.circle, "moveII");
    require_untwisted(b, i, "moveII");
    OpenBook out = b;
    Circle& c = out.page.mutable_circles()[i];
    if (m.other.empty()) {
        c.tb += 2 * m.sign - 4;
    } else {
        std::size_t j = circle_index(b, m.other, "moveII");
        if (j == i) throw IllegalMove("moveII: self crossing changes use 'self'");
        if (!b.page.linking_defined(i, j))
            throw IllegalMove("moveII: linking of '" + m.circle + "' and '" + m.other +
                              "' is undefined");
        set_link(out.page, i, j, get_link(b.page, i, j) + m.sign);
        c.tb -= 4;
    }
    c.sigma += 2;
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_slide2(const OpenBook& b, const DiagMove& m) {
    std::size_t i = circle_index(b, m.circle, "slide2");
    std::size_t j = circle_index(b, m.other, "slide2");
    if (i == j) throw IllegalMove("slide2: cannot slide a circle over itself");
    require_untwisted(b, i, "slide2");
    if (!b.page.linking_defined(i, j))
        throw IllegalMove("slide2: linking of '" + m.circle + "' and '" + m.other +
                          "' is undefined, framing change cannot be tracked");
    for (const auto& l : m.via.letters())
        if (std::find(b.page.handles().begin(), b.page.handles().end(), l.gen) ==
            b.page.handles().end())
            throw IllegalMove("slide2: conjugator uses unknown handle '" + l.gen + "'");

    OpenBook out = b;
    const Circle& cj = b.page.circles()[j];
    Circle& ci = out.page.mutable_circles()[i];
    Word slid = m.sign > 0 ? cj.word : cj.word.inverse();
    ci.word = words::free_reduce(ci.word * m.via * slid * m.via.inverse());
    ci.rot += m.sign * cj.rot;
    Int lij = get_link(b.page, i, j);
    ci.tb += 2 * m.sign * lij + (cj.tb - 1);
    set_link(out.page, i, j, lij + m.sign * (cj.tb - 1));
    for (std::size_t k = 0; k < b.page.size(); ++k) {
        if (k == i || k == j) continue;
        if (!b.page.linking_defined(j, k)) continue;
        set_link(out.page, i, k, get_link(b.page, i, k) + m.sign * get_link(b.page, j, k));
    }
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_slide1(const OpenBook& b, const DiagMove& m) {
    const auto& hs = b.page.handles();
    if (std::find(hs.begin(), hs.end(), m.handle) == hs.end())
        throw IllegalMove("slide1: no handle named '" + m.handle + "'");
    if (std::find(hs.begin(), hs.end(), m.by) == hs.end())
        throw IllegalMove("slide1: no handle named '" + m.by + "'");
    if (m.handle == m.by) throw IllegalMove("slide1: cannot slide a handle over itself");
    Word image(std::vector<words::Letter>{{m.handle, 1}, {m.by, m.sign}});
    OpenBook out = b;
    for (auto& c : out.page.mutable_circles()) c.word = c.word.substituted(m.handle, image);
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_invert_handle(const OpenBook& b, const DiagMove& m) {
    const auto& hs = b.page.handles();
    if (std::find(hs.begin(), hs.end(), m.handle) == hs.end())
        throw IllegalMove("inverthandle: no handle named '" + m.handle + "'");
    Word image(std::vector<words::Letter>{{m.handle, -1}});
    OpenBook out = b;
    for (auto& c : out.page.mutable_circles()) c.word = c.word.substituted(m.handle, image);
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_t2_add(const OpenBook& b, const DiagMove& m) {
    const auto& hs = b.page.handles();
    if (m.handle.empty() || m.circle.empty())
        throw IllegalMove("t2add: handle and circle names are required");
    if (std::find(hs.begin(), hs.end(), m.handle) != hs.end())
        throw IllegalMove("t2add: handle '" + m.handle + "' already exists");
    if (b.page.find(m.circle))
        throw IllegalMove("t2add: circle '" + m.circle + "' already exists");
    OpenBook out = b;
    out.page.mutable_handles().push_back(m.handle);
    Circle c;
    c.name = m.circle;
    c.word = Word(std::vector<words::Letter>{{m.handle, 1}});
    c.tb = -1;
    out.page.mutable_circles().push_back(std::move(c));
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_t2_remove(const OpenBook& b, const DiagMove& m) {
    std::size_t i = circle_index(b, m.circle, "t2remove");
    require_untwisted(b, i, "t2remove");
    const Circle& c = b.page.circles()[i];
    Word bare(std::vector<words::Letter>{{m.handle, 1}});
    if (c.word != bare)
        throw IllegalMove("t2remove: circle '" + m.circle + "' does not run once through '" +
                          m.handle + "'");
    for (std::size_t k = 0; k < b.page.size(); ++k)
        if (k != i && b.page.circles()[k].word.mentions(m.handle))
            throw IllegalMove("t2remove: handle '" + m.handle + "' is used by circle '" +
                              b.page.circles()[k].name + "'");
    OpenBook out = b;
    auto& hs = out.page.mutable_handles();
    hs.erase(std::find(hs.begin(), hs.end(), m.handle));
    out.page.mutable_circles().erase(out.page.mutable_circles().begin() +
                                     static_cast<std::ptrdiff_t>(i));
    std::map<std::pair<std::size_t, std::size_t>, Int> relinked;
    for (const auto& [key, v] : out.page.mutable_linking()) {
        if (key.first == i || key.second == i) continue;  // cannot exist; drop defensively
        auto shift = [i](std::size_t x) { return x > i ? x - 1 : x; };
        relinked[{shift(key.first), shift(key.second)}] = v;
    }
    out.page.mutable_linking() = std::move(relinked);
    for (auto& t : out.monodromy)
        if (t.circle > i) --t.circle;
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_add_summand(const OpenBook& b, const DiagMove& m) {
    if (m.with_twist && m.rot != 0)
        throw IllegalMove("addsummand: a twist needs framing -2, so rot must be 0");
    OpenBook out = b;
    Circle c;
    c.name = fresh_circle_name(b.page, "c");
    c.tb = -1 - (m.rot < 0 ? -m.rot : m.rot);
    c.rot = m.rot;
    std::size_t idx = out.page.size();
    out.page.mutable_circles().push_back(std::move(c));
    if (m.with_twist) out.monodromy.push_back(TwistLetter{idx, 1});
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_double(const OpenBook& b, const DiagMove& m) {
    std::size_t i = circle_index(b, m.circle, "double");
    OpenBook out = b;
    const Circle& src = b.page.circles()[i];
    Circle c;
    c.name = fresh_circle_name(b.page, src.name + "_");
    c.word = m.sign > 0 ? src.word : src.word.inverse();
    c.tb = src.tb;
    c.rot = m.sign * src.rot;
    c.sigma = src.sigma;
    std::size_t idx = out.page.size();
    out.page.mutable_circles().push_back(std::move(c));
    if (b.page.circles()[i].null_homologous(b.page.handles())) {
        set_link(out.page, i, idx, src.tb - 1);
        for (std::size_t k = 0; k < b.page.size(); ++k) {
            if (k == i || !b.page.linking_defined(i, k)) continue;
            set_link(out.page, k, idx, get_link(b.page, i, k));
        }
    }
    return finish(std::move(out.page), std::move(out.monodromy));
}

OpenBook apply_flip(const OpenBook& b, const DiagMove& m) {
    std::size_t i = circle_index(b, m.circle, "flip");
    OpenBook out = b;
    Circle& c = out.page.mutable_circles()[i];
    c.rot = -c.rot;
    c.word = c.word.inverse();
    return finish(std::move(out.page), std::move(out.monodromy));
}

}  // namespace

const char* diag_move_name(DiagMoveKind k) {
    switch (k) {
        case DiagMoveKind::MoveI: return "moveI";
        case DiagMoveKind::MoveIInv: return "moveI_inv";
        case DiagMoveKind::MoveII: return "moveII";
        case DiagMoveKind::Slide2: return "slide2";
        case DiagMoveKind::Slide1: return "slide1";
        case DiagMoveKind::InvertHandle: return "inverthandle";
        case DiagMoveKind::T2Add: return "t2add";
        case DiagMoveKind::T2Remove: return "t2remove";
        case DiagMoveKind::AddSummand: return "addsummand";
        case DiagMoveKind::Double: return "double";
        case DiagMoveKind::Flip: return "flip";
    }
    return "?";
}

std::string DiagMove::to_string() const {
    std::ostringstream os;
    os << diag_move_name(kind);
    const char* sgn = sign >= 0 ? "+" : "-";
    switch (kind) {
        case DiagMoveKind::MoveI:
        case DiagMoveKind::MoveIInv:
        case DiagMoveKind::Flip: os << ' ' << circle; break;
        case DiagMoveKind::MoveII:
            os << ' ' << circle << ' ' << (other.empty() ? "self" : other) << ' ' << sgn;
            break;
        case DiagMoveKind::Slide2:
            os << ' ' << circle << " over " << other << ' ' << sgn;
            if (!via.empty()) {
                os << " via";
                for (const auto& l : via.letters()) {
                    std::string t = l.gen;
                    if (l.exp < 0) t[0] = static_cast<char>(std::toupper(
                                       static_cast<unsigned char>(t[0])));
                    os << ' ' << t;
                }
            }
            break;
        case DiagMoveKind::Slide1: os << ' ' << handle << " over " << by << ' ' << sgn; break;
        case DiagMoveKind::InvertHandle: os << ' ' << handle; break;
        case DiagMoveKind::T2Add:
        case DiagMoveKind::T2Remove: os << ' ' << handle << ' ' << circle; break;
        case DiagMoveKind::AddSummand:
            os << " rot=" << rot;
            if (with_twist) os << " twist";
            break;
        case DiagMoveKind::Double: os << ' ' << circle << ' ' << sgn; break;
    }
    return os.str();
}

namespace {

int parse_sign(const std::string& tok, const std::string& line) {
    if (tok == "+") return 1;
    if (tok == "-") return -1;
    throw SyntaxError("expected '+' or '-' in move '" + line + "'");
}

void expect_keyword(const std::vector<std::string>& toks, std::size_t at, const char* kw,
                    const std::string& line) {
    if (at >= toks.size() || toks[at] != kw)
        throw SyntaxError("expected '" + std::string(kw) + "' in move '" + line + "'");
}

}  // namespace

DiagMove parse_move(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> t;
    std::string tok;
    while (is >> tok) t.push_back(tok);
    if (t.empty()) throw SyntaxError("empty move");
    auto need = [&](std::size_t n) {
        if (t.size() < n) throw SyntaxError("truncated move '" + line + "'");
    };
    DiagMove m;
    if (t[0] == "moveI" || t[0] == "moveI_inv" || t[0] == "flip") {
        need(2);
        m.kind = t[0] == "moveI"      ? DiagMoveKind::MoveI
                 : t[0] == "moveI_inv" ? DiagMoveKind::MoveIInv
                                       : DiagMoveKind::Flip;
        m.circle = t[1];
        if (t.size() > 2) throw SyntaxError("trailing tokens in move '" + line + "'");
    } else if (t[0] == "moveII") {
        need(4);
        m.kind = DiagMoveKind::MoveII;
        m.circle = t[1];
        if (t[2] != "self") m.other = t[2];
        m.sign = parse_sign(t[3], line);
        if (t.size() > 4) throw SyntaxError("trailing tokens in move '" + line + "'");
    } else if (t[0] == "slide2") {
        need(5);
        m.kind = DiagMoveKind::Slide2;
        m.circle = t[1];
        expect_keyword(t, 2, "over", line);
        m.other = t[3];
        m.sign = parse_sign(t[4], line);
        if (t.size() > 5) {
            expect_keyword(t, 5, "via", line);
            need(7);
            std::string w;
            for (std::size_t k = 6; k < t.size(); ++k) {
                if (k > 6) w += ' ';
                w += t[k];
            }
            m.via = words::Word::parse(w);
        }
    } else if (t[0] == "slide1") {
        need(5);
        m.kind = DiagMoveKind::Slide1;
        m.handle = t[1];
        expect_keyword(t, 2, "over", line);
        m.by = t[3];
        m.sign = parse_sign(t[4], line);
        if (t.size() > 5) throw SyntaxError("trailing tokens in move '" + line + "'");
    } else if (t[0] == "inverthandle") {
        need(2);
        m.kind = DiagMoveKind::InvertHandle;
        m.handle = t[1];
        if (t.size() > 2) throw SyntaxError("trailing tokens in move '" + line + "'");
    } else if (t[0] == "t2add" || t[0] == "t2remove") {
        need(3);
        m.kind = t[0] == "t2add" ? DiagMoveKind::T2Add : DiagMoveKind::T2Remove;
        m.handle = t[1];
        m.circle = t[2];
        if (t.size() > 3) throw SyntaxError("trailing tokens in move '" + line + "'");
    } else if (t[0] == "addsummand") {
        need(2);
        m.kind = DiagMoveKind::AddSummand;
        if (t[1].rfind("rot=", 0) != 0)
            throw SyntaxError("addsummand expects rot=<n> in '" + line + "'");
        try {
            m.rot = std::stoll(t[1].substr(4));
        } catch (const std::exception&) {
            throw SyntaxError("bad rotation number in '" + line + "'");
        }
        if (t.size() > 2) {
            if (t[2] != "twist" || t.size() > 3)
                throw SyntaxError("trailing tokens in move '" + line + "'");
            m.with_twist = true;
        }
    } else if (t[0] == "double") {
        need(3);
        m.kind = DiagMoveKind::Double;
        m.circle = t[1];
        m.sign = parse_sign(t[2], line);
        if (t.size() > 3) throw SyntaxError("trailing tokens in move '" + line + "'");
    } else {
        throw SyntaxError("unknown move '" + t[0] + "'");
    }
    return m;
}

std::vector<DiagMove> parse_script(const std::string& text) {
    std::vector<DiagMove> out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        bool blank = true;
        for (char ch : line)
            if (!std::isspace(static_cast<unsigned char>(ch))) blank = false;
        if (blank) continue;
        try {
            out.push_back(parse_move(line));
        } catch (const SyntaxError& e) {
            throw SyntaxError(std::string(e.what()), lineno, 1);
        }
    }
    return out;
}

twist::OpenBook apply_move(const twist::OpenBook& b, const DiagMove& m) {
    switch (m.kind) {
        case DiagMoveKind::MoveI: return apply_move_i(b, m, +1);
        case DiagMoveKind::MoveIInv: return apply_move_i(b, m, -1);
        case DiagMoveKind::MoveII: return apply_move_ii(b, m);
        case DiagMoveKind::Slide2: return apply_slide2(b, m);
        case DiagMoveKind::Slide1: return apply_slide1(b, m);
        case DiagMoveKind::InvertHandle: return apply_invert_handle(b, m);
        case DiagMoveKind::T2Add: return apply_t2_add(b, m);
        case DiagMoveKind::T2Remove: return apply_t2_remove(b, m);
        case DiagMoveKind::AddSummand: return apply_add_summand(b, m);
        case DiagMoveKind::Double: return apply_double(b, m);
        case DiagMoveKind::Flip: return apply_flip(b, m);
    }
    throw IllegalMove("unknown move kind");
}

namespace {

// Name-keyed snapshot of every observable field of an open book.  The
// contract checker works entirely on snapshots so index bookkeeping in
// apply_move cannot leak into the audit.
struct Snapshot {
    std::vector<std::string> handles;
    std::vector<std::string> order;  // circle names in diagram order
    std::map<std::string, std::tuple<Word, Int, Int, long long>> circles;  // word,tb,rot,sigma
    std::map<std::pair<std::string, std::string>, Int> linking;  // total on defined pairs
    std::vector<std::pair<std::string, int>> monodromy;
    std::string provenance;
};

std::pair<std::string, std::string> name_key(const std::string& a, const std::string& bn) {
    return a < bn ? std::make_pair(a, bn) : std::make_pair(bn, a);
}

Snapshot snapshot(const OpenBook& b) {
    Snapshot s;
    s.handles = b.page.handles();
    s.provenance = b.page.provenance();
    for (const auto& c : b.page.circles()) {
        s.order.push_back(c.name);
        s.circles[c.name] = {c.word, c.tb, c.rot, c.sigma};
    }
    for (std::size_t i = 0; i < b.page.size(); ++i)
        for (std::size_t j = i + 1; j < b.page.size(); ++j)
            if (b.page.linking_defined(i, j))
                s.linking[name_key(b.page.circles()[i].name, b.page.circles()[j].name)] =
                    b.page.linking(i, j);
    for (const auto& t : b.monodromy)
        s.monodromy.push_back({b.page.circles()[t.circle].name, t.exp});
    return s;
}

void set_snap_link(Snapshot& s, const std::string& a, const std::string& bn, const Int& v) {
    s.linking[name_key(a, bn)] = v;
}

Int get_snap_link(const Snapshot& s, const std::string& a, const std::string& bn) {
    auto it = s.linking.find(name_key(a, bn));
    return it == s.linking.end() ? Int(0) : it->second;
}

bool snap_defined(const Snapshot& s, const std::string& a, const std::string& bn) {
    return s.linking.count(name_key(a, bn)) != 0;
}

// Rewrites the snapshot of `before` into the exact state the documented
// move contract promises.
void expected_snapshot(Snapshot& s, const Snapshot& before, const OpenBook& before_book,
                       const DiagMove& m) {
    auto word_of = [&](const std::string& n) -> const Word& {
        return std::get<0>(before.circles.at(n));
    };
    switch (m.kind) {
        case DiagMoveKind::MoveI: {
            auto& [w, tb, rot, sig] = s.circles.at(m.circle);
            (void)w;
            (void)rot;
            tb -= 2;
            sig += 1;
            break;
        }
        case DiagMoveKind::MoveIInv: {
            auto& [w, tb, rot, sig] = s.circles.at(m.circle);
            (void)w;
            (void)rot;
            tb += 2;
            sig -= 1;
            break;
        }
        case DiagMoveKind::MoveII: {
            auto& [w, tb, rot, sig] = s.circles.at(m.circle);
            (void)w;
            (void)rot;
            sig += 2;
            if (m.other.empty()) {
                tb += 2 * m.sign - 4;
            } else {
                tb -= 4;
                set_snap_link(s, m.circle, m.other,
                              get_snap_link(before, m.circle, m.other) + m.sign);
            }
            break;
        }
        case DiagMoveKind::Slide2: {
            auto& [w, tb, rot, sig] = s.circles.at(m.circle);
            (void)sig;
            const auto& [wj, tbj, rotj, sigj] = before.circles.at(m.other);
            (void)sigj;
            Word slid = m.sign > 0 ? word_of(m.other) : word_of(m.other).inverse();
            w = words::free_reduce(word_of(m.circle) * m.via * slid * m.via.inverse());
            (void)wj;
            rot += m.sign * rotj;
            Int lij = get_snap_link(before, m.circle, m.other);
            tb += 2 * m.sign * lij + (tbj - 1);
            set_snap_link(s, m.circle, m.other, lij + m.sign * (tbj - 1));
            for (const auto& name : before.order) {
                if (name == m.circle || name == m.other) continue;
                if (!snap_defined(before, m.other, name)) continue;
                set_snap_link(s, m.circle, name,
                              get_snap_link(before, m.circle, name) +
                                  m.sign * get_snap_link(before, m.other, name));
            }
            break;
        }
        case DiagMoveKind::Slide1: {
            Word image(std::vector<words::Letter>{{m.handle, 1}, {m.by, m.sign}});
            for (auto& [name, data] : s.circles) {
                (void)name;
                std::get<0>(data) = std::get<0>(data).substituted(m.handle, image);
            }
            break;
        }
        case DiagMoveKind::InvertHandle: {
            Word image(std::vector<words::Letter>{{m.handle, -1}});
            for (auto& [name, data] : s.circles) {
                (void)name;
                std::get<0>(data) = std::get<0>(data).substituted(m.handle, image);
            }
            break;
        }
        case DiagMoveKind::T2Add: {
            s.handles.push_back(m.handle);
            s.order.push_back(m.circle);
            s.circles[m.circle] = {Word(std::vector<words::Letter>{{m.handle, 1}}), Int(-1),
                                   Int(0), 0};
            break;
        }
        case DiagMoveKind::T2Remove: {
            s.handles.erase(std::find(s.handles.begin(), s.handles.end(), m.handle));
            s.order.erase(std::find(s.order.begin(), s.order.end(), m.circle));
            s.circles.erase(m.circle);
            break;
        }
        case DiagMoveKind::AddSummand: {
            std::string name;
            for (int k = 1;; ++k) {
                name = "c" + std::to_string(k);
                if (!s.circles.count(name)) break;
            }
            s.order.push_back(name);
            Int r(m.rot);
            s.circles[name] = {Word{}, Int(-1) - (r < 0 ? -r : r), r, 0};
            if (m.with_twist) s.monodromy.push_back({name, 1});
            break;
        }
        case DiagMoveKind::Double: {
            std::string name;
            for (int k = 1;; ++k) {
                name = m.circle + "_" + std::to_string(k);
                if (!s.circles.count(name)) break;
            }
            const auto& [w, tb, rot, sig] = before.circles.at(m.circle);
            Word w2 = m.sign > 0 ? w : w.inverse();
            s.order.push_back(name);
            s.circles[name] = {w2, tb, m.sign > 0 ? rot : Int(-rot), sig};
            std::size_t i2 = before_book.page.index_of(m.circle);
            if (before_book.page.circles()[i2].null_homologous(before_book.page.handles())) {
                set_snap_link(s, m.circle, name, tb - 1);
                for (const auto& other : before.order) {
                    if (other == m.circle) continue;
                    std::size_t k2 = before_book.page.index_of(other);
                    if (!before_book.page.linking_defined(i2, k2)) continue;
                    set_snap_link(s, other, name, get_snap_link(before, m.circle, other));
                }
            }
            break;
        }
        case DiagMoveKind::Flip: {
            auto& [w, tb, rot, sig] = s.circles.at(m.circle);
            (void)tb;
            (void)sig;
            w = w.inverse();
            rot = -rot;
            break;
        }
    }
}

template <typename T>
std::string fmt_pair_diff(const std::string& field, const T& want, const T& got) {
    std::ostringstream os;
    os << field << ": expected " << want << ", found " << got;
    return os.str();
}

}  // namespace

ContractReport check_contract(const twist::OpenBook& before, const twist::OpenBook& after,
                              const DiagMove& m) {
    ContractReport rep;
    Snapshot sb = snapshot(before);
    Snapshot want = sb;
    expected_snapshot(want, sb, before, m);
    Snapshot got = snapshot(after);

    auto fail = [&](std::string msg) {
        rep.ok = false;
        rep.violations.push_back(std::move(msg));
    };

    if (want.handles != got.handles) fail("handle list changed unexpectedly");
    if (want.order != got.order) fail("circle order changed unexpectedly");
    for (const auto& [name, data] : want.circles) {
        auto it = got.circles.find(name);
        if (it == got.circles.end()) {
            fail("missing circle '" + name + "'");
            continue;
        }
        if (std::get<0>(data) != std::get<0>(it->second))
            fail(fmt_pair_diff("word[" + name + "]", std::get<0>(data).to_string(),
                               std::get<0>(it->second).to_string()));
        if (std::get<1>(data) != std::get<1>(it->second))
            fail(fmt_pair_diff("tb[" + name + "]", std::get<1>(data), std::get<1>(it->second)));
        if (std::get<2>(data) != std::get<2>(it->second))
            fail(fmt_pair_diff("rot[" + name + "]", std::get<2>(data), std::get<2>(it->second)));
        if (std::get<3>(data) != std::get<3>(it->second))
            fail(fmt_pair_diff("sigma[" + name + "]", std::get<3>(data), std::get<3>(it->second)));
    }
    for (const auto& [name, data] : got.circles) {
        (void)data;
        if (!want.circles.count(name)) fail("unexpected circle '" + name + "'");
    }
    // Compare linking as total functions on the defined pairs of `after`.
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& [k, v] : want.linking) {
        (void)v;
        keys.insert(k);
    }
    for (const auto& [k, v] : got.linking) {
        (void)v;
        keys.insert(k);
    }
    for (const auto& k : keys) {
        Int w = get_snap_link(want, k.first, k.second);
        Int g = get_snap_link(got, k.first, k.second);
        if (w != g)
            fail(fmt_pair_diff("link[" + k.first + "," + k.second + "]", w.str(), g.str()));
    }
    if (want.monodromy != got.monodromy) fail("monodromy changed unexpectedly");
    if (want.provenance != got.provenance) fail("provenance changed unexpectedly");
    return rep;
}

namespace {

std::vector<std::string> log_deltas(const twist::OpenBook& before, const twist::OpenBook& after) {
    std::vector<std::string> out;
    Snapshot a = snapshot(before), b = snapshot(after);
    for (const auto& h : b.handles)
        if (std::find(a.handles.begin(), a.handles.end(), h) == a.handles.end())
            out.push_back("+handle " + h);
    for (const auto& h : a.handles)
        if (std::find(b.handles.begin(), b.handles.end(), h) == b.handles.end())
            out.push_back("-handle " + h);
    for (const auto& [name, d] : b.circles) {
        auto it = a.circles.find(name);
        if (it == a.circles.end()) {
            std::ostringstream os;
            os << "+circle " << name << " (word " << std::get<0>(d).to_string() << ", tb "
               << std::get<1>(d) << ", rot " << std::get<2>(d) << ")";
            out.push_back(os.str());
            continue;
        }
        const auto& e = it->second;
        std::ostringstream os;
        bool any = false;
        os << name << ":";
        if (std::get<0>(d) != std::get<0>(e)) {
            os << " word " << std::get<0>(e).to_string() << " -> " << std::get<0>(d).to_string();
            any = true;
        }
        if (std::get<1>(d) != std::get<1>(e)) {
            os << " tb " << std::get<1>(e) << " -> " << std::get<1>(d);
            any = true;
        }
        if (std::get<2>(d) != std::get<2>(e)) {
            os << " rot " << std::get<2>(e) << " -> " << std::get<2>(d);
            any = true;
        }
        if (std::get<3>(d) != std::get<3>(e)) {
            os << " sigma " << std::get<3>(e) << " -> " << std::get<3>(d);
            any = true;
        }
        if (any) out.push_back(os.str());
    }
    for (const auto& [name, d] : a.circles) {
        (void)d;
        if (!b.circles.count(name)) out.push_back("-circle " + name);
    }
    std::set<std::pair<std::string, std::string>> keys;
    for (const auto& [k, v] : a.linking) {
        (void)v;
        keys.insert(k);
    }
    for (const auto& [k, v] : b.linking) {
        (void)v;
        keys.insert(k);
    }
    for (const auto& k : keys) {
        if (!b.circles.count(k.first) || !b.circles.count(k.second)) continue;
        Int x = get_snap_link(a, k.first, k.second);
        Int y = get_snap_link(b, k.first, k.second);
        if (x != y)
            out.push_back("link[" + k.first + "," + k.second + "] " + x.str() + " -> " + y.str());
    }
    if (a.monodromy != b.monodromy) {
        std::ostringstream os;
        os << "monodromy:";
        for (const auto& [n, e] : b.monodromy) os << ' ' << n << (e < 0 ? "^-1" : "");
        out.push_back(os.str());
    }
    return out;
}

}  // namespace

RunResult run_script(const twist::OpenBook& b, const std::vector<DiagMove>& script) {
    RunResult res;
    res.book = b;
    for (std::size_t k = 0; k < script.size(); ++k) {
        twist::OpenBook next;
        try {
            next = apply_move(res.book, script[k]);
        } catch (const Error& e) {
            res.ok = false;
            res.log.aborted = true;
            res.log.failed_at = k;
            res.log.error = e.what();
            return res;
        }
        MoveStep step;
        step.move = script[k];
        step.deltas = log_deltas(res.book, next);
        if (next.page.handles().empty()) {
            try {
                step.h2 = twist::open_book_homology(next).h[2].to_string();
            } catch (const Error&) {
                step.h2.clear();
            }
        }
        res.book = std::move(next);
        res.log.steps.push_back(std::move(step));
    }
    return res;
}

}  // namespace moves
}  // namespace obk
