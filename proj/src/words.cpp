#include "obk/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "obk/errors.hpp"

namespace obk {
namespace words {

namespace {

bool valid_gen_name(const std::string& s) {
    if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin() + 1, s.end(), [](unsigned char c) {
        return std::islower(c) || std::isdigit(c) || c == '_';
    });
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream is(s);
    std::string t;
    while (is >> t) out.push_back(t);
    return out;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

// One whitespace token -> one letter.  "a" and "A" are inverse of each
// other; an explicit "^-1" suffix also flips.
Letter parse_letter_token(std::string tok) {
    int exp = 1;
    if (tok.size() > 2 && tok.compare(tok.size() - 3, 3, "^-1") == 0) {
        exp = -1;
        tok.resize(tok.size() - 3);
    } else if (tok.size() > 1 && tok.compare(tok.size() - 2, 2, "^1") == 0) {
        tok.resize(tok.size() - 2);
    }
    if (tok.empty()) throw SyntaxError("empty letter token");
    if (std::isupper(static_cast<unsigned char>(tok[0]))) {
        tok[0] = static_cast<char>(std::tolower(static_cast<unsigned char>(tok[0])));
        exp = -exp;
    }
    if (!valid_gen_name(tok)) throw SyntaxError("bad generator name '" + tok + "'");
    return Letter{tok, exp};
}

}  // namespace

Word Word::parse(const std::string& text) {
    std::vector<Letter> letters;
    for (const std::string& tok : split_ws(text)) {
        if (tok == "1") continue;  // empty word marker
        letters.push_back(parse_letter_token(tok));
    }
    return Word(std::move(letters));
}

Word Word::inverse() const {
    std::vector<Letter> out;
    out.reserve(letters_.size());
    for (auto it = letters_.rbegin(); it != letters_.rend(); ++it)
        out.push_back(Letter{it->gen, -it->exp});
    return Word(std::move(out));
}

Word Word::operator*(const Word& o) const {
    std::vector<Letter> out = letters_;
    out.insert(out.end(), o.letters_.begin(), o.letters_.end());
    return Word(std::move(out));
}

bool Word::operator<(const Word& o) const {
    if (letters_.size() != o.letters_.size()) return letters_.size() < o.letters_.size();
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (letters_[i].gen != o.letters_[i].gen) return letters_[i].gen < o.letters_[i].gen;
        if (letters_[i].exp != o.letters_[i].exp) return letters_[i].exp > o.letters_[i].exp;
    }
    return false;
}

long long Word::exponent_sum(const std::string& gen) const {
    long long s = 0;
    for (const Letter& l : letters_)
        if (l.gen == gen) s += l.exp;
    return s;
}

bool Word::mentions(const std::string& gen) const {
    return std::any_of(letters_.begin(), letters_.end(),
                       [&](const Letter& l) { return l.gen == gen; });
}

Word Word::substituted(const std::string& gen, const Word& w) const {
    std::vector<Letter> out;
    const Word winv = w.inverse();
    for (const Letter& l : letters_) {
        if (l.gen != gen) {
            out.push_back(l);
            continue;
        }
        const Word& rep = l.exp > 0 ? w : winv;
        out.insert(out.end(), rep.letters().begin(), rep.letters().end());
    }
    return free_reduce(Word(std::move(out)));
}

std::string Word::to_string() const {
    if (letters_.empty()) return "1";
    bool compact = std::all_of(letters_.begin(), letters_.end(),
                               [](const Letter& l) { return l.gen.size() == 1; });
    std::ostringstream os;
    bool first = true;
    for (const Letter& l : letters_) {
        if (!compact && !first) os << ' ';
        first = false;
        if (l.exp > 0) {
            os << l.gen;
        } else {
            os << static_cast<char>(std::toupper(static_cast<unsigned char>(l.gen[0])))
               << l.gen.substr(1);
        }
    }
    return os.str();
}

Word free_reduce(const Word& w) {
    std::vector<Letter> stack;
    for (const Letter& l : w.letters()) {
        if (!stack.empty() && stack.back().gen == l.gen && stack.back().exp == -l.exp)
            stack.pop_back();
        else
            stack.push_back(l);
    }
    return Word(std::move(stack));
}

bool Presentation::has_generator(const std::string& g) const {
    return std::find(generators.begin(), generators.end(), g) != generators.end();
}

Presentation Presentation::parse(const std::string& text) {
    std::string s = trim(text);
    if (s.size() < 2 || s.front() != '<' || s.back() != '>')
        throw SyntaxError("presentation must be enclosed in <...>");
    s = s.substr(1, s.size() - 2);
    std::size_t bar = s.find('|');
    if (bar == std::string::npos) throw SyntaxError("presentation needs a '|' separator");
    std::string left = s.substr(0, bar), right = s.substr(bar + 1);
    if (right.find('|') != std::string::npos) throw SyntaxError("multiple '|' separators");

    Presentation p;
    {
        std::istringstream is(left);
        std::string item;
        while (std::getline(is, item, ',')) {
            item = trim(item);
            if (item.empty()) {
                if (trim(left).empty()) break;
                throw SyntaxError("empty generator name");
            }
            if (!valid_gen_name(item)) throw SyntaxError("bad generator name '" + item + "'");
            if (p.has_generator(item)) throw SyntaxError("duplicate generator '" + item + "'");
            p.generators.push_back(item);
        }
    }
    if (trim(right).empty()) return p;
    std::istringstream is(right);
    std::string item;
    while (std::getline(is, item, ',')) {
        item = trim(item);
        if (item.empty()) throw SyntaxError("empty relation (write '1' for the trivial word)");
        std::vector<Letter> letters;
        for (const std::string& tok : split_ws(item)) {
            if (tok == "1") continue;
            // A token is either a declared name (possibly inverted) or a
            // run of single-character letters, e.g. "abA".
            bool as_name = false;
            try {
                Letter l = parse_letter_token(tok);
                if (p.has_generator(l.gen)) {
                    letters.push_back(l);
                    as_name = true;
                }
            } catch (const SyntaxError&) {
            }
            if (as_name) continue;
            for (char c : tok) {
                if (!std::isalpha(static_cast<unsigned char>(c)))
                    throw SyntaxError("unknown symbol '" + tok + "' in relation");
                std::string g(1, static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
                if (!p.has_generator(g))
                    throw SyntaxError("relation uses undeclared generator '" + g + "'");
                letters.push_back(Letter{g, std::isupper(static_cast<unsigned char>(c)) ? -1 : 1});
            }
        }
        p.relations.push_back(free_reduce(Word(std::move(letters))));
    }
    return p;
}

std::string Presentation::to_string() const {
    std::ostringstream os;
    os << '<';
    for (std::size_t i = 0; i < generators.size(); ++i) os << (i ? "," : "") << generators[i];
    os << " | ";
    for (std::size_t i = 0; i < relations.size(); ++i)
        os << (i ? ", " : "") << relations[i].to_string();
    os << '>';
    return os.str();
}

const char* move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::T1Double: return "T1double";
        case MoveKind::T1Inverse: return "T1invert";
        case MoveKind::T1Conjugate: return "T1conjugate";
        case MoveKind::T1Multiply: return "T1multiply";
        case MoveKind::T2Add: return "T2add";
        case MoveKind::T2Remove: return "T2remove";
        case MoveKind::AC1: return "AC1";
        case MoveKind::AC2: return "AC2";
        case MoveKind::AC3: return "AC3";
        case MoveKind::AC4Add: return "AC4add";
        case MoveKind::AC4Remove: return "AC4remove";
        case MoveKind::ExtGenMult: return "genmult";
        case MoveKind::ExtGenInv: return "geninv";
    }
    return "?";
}

std::string PresMove::to_string() const {
    std::ostringstream os;
    os << move_kind_name(kind) << '(';
    switch (kind) {
        case MoveKind::T1Double:
            os << index + 1 << (exp < 0 ? ", inverse" : "");
            break;
        case MoveKind::T1Inverse:
        case MoveKind::AC1:
            os << index + 1;
            break;
        case MoveKind::T1Conjugate:
        case MoveKind::AC2:
            os << index + 1 << ", " << gen << "^" << (exp < 0 ? "-1" : "1");
            break;
        case MoveKind::T1Multiply:
        case MoveKind::AC3:
            os << target + 1 << ", " << source + 1 << "^" << (exp < 0 ? "-1" : "1");
            if (!word.empty()) os << ", conj " << word.to_string();
            break;
        case MoveKind::T2Add:
            os << gen << " = " << word.to_string();
            break;
        case MoveKind::T2Remove:
            os << gen << ", " << index + 1;
            break;
        case MoveKind::AC4Add:
        case MoveKind::AC4Remove:
        case MoveKind::ExtGenInv:
            os << gen;
            break;
        case MoveKind::ExtGenMult:
            os << gen << " -> " << gen << " " << (exp < 0 ? by + "^-1" : by);
            break;
    }
    os << ')';
    return os.str();
}

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw IllegalMove(msg);
}

void require_balanced(const Presentation& p) {
    if (!p.balanced())
        throw UnbalancedInput("balanced move applied to an unbalanced presentation (" +
                              std::to_string(p.generators.size()) + " generators, " +
                              std::to_string(p.relations.size()) + " relations)");
}

std::size_t find_bare_relation(const Presentation& p, const std::string& gen) {
    for (std::size_t i = 0; i < p.relations.size(); ++i) {
        const auto& ls = p.relations[i].letters();
        if (ls.size() == 1 && ls[0].gen == gen && ls[0].exp == 1) return i;
    }
    throw IllegalMove("no bare relation for generator '" + gen + "'");
}

}  // namespace

Presentation apply_pres_move(const Presentation& p, const PresMove& m, const MoveOptions& opts) {
    Presentation q = p;
    auto check_index = [&](std::size_t i) {
        require(i < q.relations.size(), "relation index out of range");
    };
    auto check_gen = [&](const std::string& g) {
        require(q.has_generator(g), "unknown generator '" + g + "'");
    };

    switch (m.kind) {
        case MoveKind::T1Double: {
            check_index(m.index);
            q.relations.push_back(m.exp < 0 ? q.relations[m.index].inverse()
                                            : q.relations[m.index]);
            break;
        }
        case MoveKind::AC1:
            require_balanced(q);
            [[fallthrough]];
        case MoveKind::T1Inverse: {
            check_index(m.index);
            q.relations[m.index] = q.relations[m.index].inverse();
            break;
        }
        case MoveKind::AC2:
            require_balanced(q);
            [[fallthrough]];
        case MoveKind::T1Conjugate: {
            check_index(m.index);
            check_gen(m.gen);
            require(m.exp == 1 || m.exp == -1, "conjugation exponent must be +-1");
            Word g(std::vector<Letter>{Letter{m.gen, m.exp}});
            q.relations[m.index] =
                free_reduce(g * q.relations[m.index] * g.inverse());
            break;
        }
        case MoveKind::AC3:
            require_balanced(q);
            [[fallthrough]];
        case MoveKind::T1Multiply: {
            check_index(m.target);
            check_index(m.source);
            require(m.target != m.source, "multiply needs two distinct relations");
            require(m.exp == 1 || m.exp == -1, "multiplier exponent must be +-1");
            for (const Letter& l : m.word.letters()) check_gen(l.gen);
            Word factor = m.exp < 0 ? q.relations[m.source].inverse() : q.relations[m.source];
            factor = m.word * factor * m.word.inverse();
            q.relations[m.target] = free_reduce(q.relations[m.target] * factor);
            break;
        }
        case MoveKind::T2Add: {
            require(!q.has_generator(m.gen), "generator '" + m.gen + "' already exists");
            for (const Letter& l : m.word.letters()) check_gen(l.gen);
            q.generators.push_back(m.gen);
            q.relations.push_back(
                free_reduce(Word(std::vector<Letter>{Letter{m.gen, 1}}) * m.word.inverse()));
            break;
        }
        case MoveKind::T2Remove: {
            check_gen(m.gen);
            check_index(m.index);
            const Word& r = q.relations[m.index];
            require(!r.empty() && r.letters()[0] == Letter{m.gen, 1},
                    "relation must start with the removed generator");
            Word rest(std::vector<Letter>(r.letters().begin() + 1, r.letters().end()));
            require(!rest.mentions(m.gen),
                    "defining relation mentions '" + m.gen + "' more than once");
            Word w = rest.inverse();
            q.relations.erase(q.relations.begin() + static_cast<std::ptrdiff_t>(m.index));
            for (Word& rel : q.relations) rel = rel.substituted(m.gen, w);
            q.generators.erase(std::find(q.generators.begin(), q.generators.end(), m.gen));
            break;
        }
        case MoveKind::AC4Add: {
            require_balanced(q);
            require(!q.has_generator(m.gen), "generator '" + m.gen + "' already exists");
            q.generators.push_back(m.gen);
            q.relations.push_back(Word(std::vector<Letter>{Letter{m.gen, 1}}));
            break;
        }
        case MoveKind::AC4Remove: {
            require_balanced(q);
            check_gen(m.gen);
            std::size_t idx = find_bare_relation(q, m.gen);
            for (std::size_t i = 0; i < q.relations.size(); ++i)
                require(i == idx || !q.relations[i].mentions(m.gen),
                        "generator '" + m.gen + "' still occurs in another relation");
            q.relations.erase(q.relations.begin() + static_cast<std::ptrdiff_t>(idx));
            q.generators.erase(std::find(q.generators.begin(), q.generators.end(), m.gen));
            break;
        }
        case MoveKind::ExtGenMult: {
            require(opts.extended, "extended moves are disabled");
            check_gen(m.gen);
            check_gen(m.by);
            require(m.gen != m.by, "genmult needs two distinct generators");
            require(m.exp == 1 || m.exp == -1, "genmult exponent must be +-1");
            Word image(std::vector<Letter>{Letter{m.gen, 1}, Letter{m.by, m.exp}});
            for (Word& rel : q.relations) rel = rel.substituted(m.gen, image);
            break;
        }
        case MoveKind::ExtGenInv: {
            require(opts.extended, "extended moves are disabled");
            check_gen(m.gen);
            Word image(std::vector<Letter>{Letter{m.gen, -1}});
            for (Word& rel : q.relations) rel = rel.substituted(m.gen, image);
            break;
        }
    }
    for (Word& rel : q.relations) rel = free_reduce(rel);
    return q;
}

TraceReport verify_trace(const MoveTrace& t, const MoveOptions& opts) {
    Presentation p = t.initial;
    for (std::size_t i = 0; i < t.steps.size(); ++i) {
        try {
            p = apply_pres_move(p, t.steps[i], opts);
        } catch (const Error& e) {
            return TraceReport{false, i, std::string("step ") + std::to_string(i + 1) + " (" +
                                             t.steps[i].to_string() + "): " + e.what()};
        }
    }
    if (p != t.final)
        return TraceReport{false, t.steps.size(),
                           "replay ends at " + p.to_string() + ", trace claims " +
                               t.final.to_string()};
    return TraceReport{true, 0, ""};
}

zalg::AbelianGroup abelianization(const Presentation& p) {
    zalg::IntMatrix m(p.generators.size(), p.relations.size());
    for (std::size_t i = 0; i < p.generators.size(); ++i)
        for (std::size_t j = 0; j < p.relations.size(); ++j)
            m.at(i, j) = p.relations[j].exponent_sum(p.generators[i]);
    return zalg::cokernel(m);
}

}  // namespace words
}  // namespace obk
