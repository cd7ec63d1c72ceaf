#include "obk/json_io.hpp"

#include <cctype>
#include <limits>
#include <map>
#include <sstream>
#include <utility>

#include "obk/errors.hpp"

namespace obk {
namespace json_io {

namespace {

[[noreturn]] void shape_error(const std::string& what) {
    throw SyntaxError("JSON shape: " + what);
}

const json& field(const json& j, const char* key) {
    if (!j.is_object()) shape_error("expected an object with a '" + std::string(key) + "' field");
    auto it = j.find(key);
    if (it == j.end()) shape_error("missing field '" + std::string(key) + "'");
    return *it;
}

std::string get_string(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) shape_error("field '" + std::string(key) + "' must be a string");
    return v.get<std::string>();
}

std::string get_string_or(const json& j, const char* key, const std::string& fallback) {
    if (!j.is_object() || !j.contains(key)) return fallback;
    return get_string(j, key);
}

long long get_i64(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) shape_error("field '" + std::string(key) + "' must be an integer");
    return v.get<long long>();
}

int get_sign(const json& j) {
    long long s = get_i64(j, "sign");
    if (s != 1 && s != -1) shape_error("field 'sign' must be +1 or -1");
    return static_cast<int>(s);
}

std::size_t get_index(const json& j, const char* key) {
    long long v = get_i64(j, key);
    if (v < 1) shape_error("field '" + std::string(key) + "' must be a 1-based index");
    return static_cast<std::size_t>(v - 1);
}

words::Word get_word_or_empty(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) return {};
    return words::Word::parse(get_string(j, key));
}

std::string twist_token(const page::PageDiagram& p, const twist::TwistLetter& l) {
    std::string t = p.circles().at(l.circle).name;
    if (l.exp < 0) t += "^-1";
    return t;
}

}  // namespace

json parse(const std::string& text) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw SyntaxError(e.what());
    }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi) return v.convert_to<long long>();
    return v.str();
}

Int int_from_json(const json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        try {
            return Int(s);
        } catch (const std::exception&) {
            throw SyntaxError("not an integer: '" + s + "'");
        }
    }
    shape_error("expected an integer (number or decimal string)");
}

std::string word_text(const words::Word& w) {
    std::string out;
    for (const words::Letter& l : w.letters()) {
        if (!out.empty()) out += ' ';
        if (l.exp > 0) {
            out += l.gen;
        } else {
            std::string g = l.gen;
            g[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(g[0])));
            out += g;
        }
    }
    return out;
}

json matrix_to_json(const zalg::IntMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(int_to_json(m.at(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

zalg::IntMatrix matrix_from_json(const json& j) {
    if (!j.is_array()) shape_error("matrix must be an array of rows");
    std::size_t rows = j.size();
    std::size_t cols = rows == 0 ? 0 : j[0].size();
    zalg::IntMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols)
            shape_error("matrix rows must be arrays of equal length");
        for (std::size_t c = 0; c < cols; ++c) m.at(r, c) = int_from_json(j[r][c]);
    }
    return m;
}

json page_to_json(const page::PageDiagram& p) {
    json j = json::object();
    j["handles"] = p.handles();
    json circles = json::array();
    for (const page::Circle& c : p.circles()) {
        json jc = json::object();
        jc["name"] = c.name;
        jc["word"] = word_text(c.word);
        jc["tb"] = int_to_json(c.tb);
        jc["rot"] = int_to_json(c.rot);
        jc["sigma"] = c.sigma;
        circles.push_back(std::move(jc));
    }
    j["circles"] = std::move(circles);
    json linking = json::object();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t k = i + 1; k < p.size(); ++k)
            if (p.linking_defined(i, k) && p.linking(i, k) != 0)
                linking[std::to_string(i + 1) + "," + std::to_string(k + 1)] =
                    int_to_json(p.linking(i, k));
    j["linking"] = std::move(linking);
    j["provenance"] = p.provenance();
    return j;
}

page::PageDiagram page_from_json(const json& j) {
    if (!j.is_object()) shape_error("diagram must be an object");
    std::vector<std::string> handles;
    if (j.contains("handles")) {
        const json& h = j["handles"];
        if (!h.is_array()) shape_error("'handles' must be an array of names");
        for (const json& x : h) {
            if (!x.is_string()) shape_error("'handles' must be an array of names");
            handles.push_back(x.get<std::string>());
        }
    }
    std::vector<page::Circle> circles;
    const json& cs = field(j, "circles");
    if (!cs.is_array()) shape_error("'circles' must be an array");
    for (const json& jc : cs) {
        page::Circle c;
        c.name = get_string(jc, "name");
        c.word = words::Word::parse(get_string_or(jc, "word", ""));
        c.tb = jc.contains("tb") ? int_from_json(jc["tb"]) : Int(-1);
        c.rot = jc.contains("rot") ? int_from_json(jc["rot"]) : Int(0);
        c.sigma = jc.contains("sigma") ? get_i64(jc, "sigma") : 0;
        circles.push_back(std::move(c));
    }
    std::map<std::pair<std::size_t, std::size_t>, Int> linking;
    if (j.contains("linking")) {
        const json& l = j["linking"];
        if (!l.is_object()) shape_error("'linking' must be an object keyed by \"i,j\"");
        for (auto it = l.begin(); it != l.end(); ++it) {
            const std::string& key = it.key();
            std::size_t comma = key.find(',');
            std::size_t a = 0, b = 0;
            try {
                if (comma == std::string::npos) throw std::invalid_argument(key);
                a = std::stoull(key.substr(0, comma));
                b = std::stoull(key.substr(comma + 1));
            } catch (const std::exception&) {
                shape_error("linking key '" + key + "' is not of the form \"i,j\"");
            }
            if (a < 1 || b < 1 || a == b)
                shape_error("linking key '" + key + "' needs two distinct 1-based indices");
            if (a > b) std::swap(a, b);
            linking[{a - 1, b - 1}] = int_from_json(it.value());
        }
    }
    return page::PageDiagram::make(std::move(handles), std::move(circles), std::move(linking),
                                   get_string_or(j, "provenance", "json"));
}

json book_to_json(const twist::OpenBook& b) {
    json j = page_to_json(b.page);
    json mono = json::array();
    for (const twist::TwistLetter& l : b.monodromy) mono.push_back(twist_token(b.page, l));
    j["monodromy"] = std::move(mono);
    return j;
}

twist::OpenBook book_from_json(const json& j) {
    page::PageDiagram p = page_from_json(j);
    std::vector<std::string> tokens;
    if (j.contains("monodromy")) {
        const json& m = j["monodromy"];
        if (!m.is_array()) shape_error("'monodromy' must be an array of circle tokens");
        for (const json& t : m) {
            if (!t.is_string()) shape_error("'monodromy' must be an array of circle tokens");
            tokens.push_back(t.get<std::string>());
        }
    }
    return twist::make_book(std::move(p), tokens);
}

json homology_report(const twist::OpenBook& b, const twist::HomologyProfile& hp) {
    json j = json::object();
    for (int i = 0; i <= 5; ++i) j["H" + std::to_string(i)] = hp.h[i].to_string();
    j["spin"] = twist::spin_name(hp.spin);
    json pg = json::object();
    pg["m"] = b.page.size();
    pg["Q"] = matrix_to_json(page::framing_matrix(b.page));
    j["page"] = std::move(pg);
    json mono = json::array();
    for (const twist::TwistLetter& l : b.monodromy) mono.push_back(twist_token(b.page, l));
    j["monodromy"] = std::move(mono);
    return j;
}

json classification_report(const classify::ContactClass& c, const page::ChernVector& chern) {
    json j = json::object();
    j["kind"] = classify::contact_kind_name(c.kind);
    j["m"] = c.m;
    j["d"] = int_to_json(c.d);
    j["diffeo_name"] = c.diffeo_name;
    j["contact_name"] = c.contact_name;
    json ch = json::array();
    for (const Int& r : chern.entries) ch.push_back(int_to_json(r));
    j["chern"] = std::move(ch);
    return j;
}

json move_to_json(const moves::DiagMove& m) {
    using moves::DiagMoveKind;
    json j = json::object();
    j["move"] = moves::diag_move_name(m.kind);
    switch (m.kind) {
        case DiagMoveKind::MoveI:
        case DiagMoveKind::MoveIInv:
        case DiagMoveKind::Flip:
            j["circle"] = m.circle;
            break;
        case DiagMoveKind::MoveII:
            j["circle"] = m.circle;
            j["other"] = m.other.empty() ? "self" : m.other;
            j["sign"] = m.sign;
            break;
        case DiagMoveKind::Slide2:
            j["circle"] = m.circle;
            j["over"] = m.other;
            j["sign"] = m.sign;
            if (!m.via.empty()) j["via"] = word_text(m.via);
            break;
        case DiagMoveKind::Slide1:
            j["handle"] = m.handle;
            j["over"] = m.by;
            j["sign"] = m.sign;
            break;
        case DiagMoveKind::InvertHandle:
            j["handle"] = m.handle;
            break;
        case DiagMoveKind::T2Add:
        case DiagMoveKind::T2Remove:
            j["handle"] = m.handle;
            j["circle"] = m.circle;
            break;
        case DiagMoveKind::AddSummand:
            j["rot"] = m.rot;
            if (m.with_twist) j["twist"] = true;
            break;
        case DiagMoveKind::Double:
            j["circle"] = m.circle;
            j["sign"] = m.sign;
            break;
    }
    return j;
}

moves::DiagMove move_from_json(const json& j) {
    using moves::DiagMoveKind;
    const std::string name = get_string(j, "move");
    moves::DiagMove m;
    bool known = false;
    for (DiagMoveKind k :
         {DiagMoveKind::MoveI, DiagMoveKind::MoveIInv, DiagMoveKind::MoveII,
          DiagMoveKind::Slide2, DiagMoveKind::Slide1, DiagMoveKind::InvertHandle,
          DiagMoveKind::T2Add, DiagMoveKind::T2Remove, DiagMoveKind::AddSummand,
          DiagMoveKind::Double, DiagMoveKind::Flip}) {
        if (name == moves::diag_move_name(k)) {
            m.kind = k;
            known = true;
            break;
        }
    }
    if (!known) shape_error("unknown move '" + name + "'");
    switch (m.kind) {
        case DiagMoveKind::MoveI:
        case DiagMoveKind::MoveIInv:
        case DiagMoveKind::Flip:
            m.circle = get_string(j, "circle");
            break;
        case DiagMoveKind::MoveII:
            m.circle = get_string(j, "circle");
            m.other = get_string(j, "other");
            if (m.other == "self") m.other.clear();
            m.sign = get_sign(j);
            break;
        case DiagMoveKind::Slide2:
            m.circle = get_string(j, "circle");
            m.other = get_string(j, "over");
            m.sign = get_sign(j);
            m.via = get_word_or_empty(j, "via");
            break;
        case DiagMoveKind::Slide1:
            m.handle = get_string(j, "handle");
            m.by = get_string(j, "over");
            m.sign = get_sign(j);
            break;
        case DiagMoveKind::InvertHandle:
            m.handle = get_string(j, "handle");
            break;
        case DiagMoveKind::T2Add:
        case DiagMoveKind::T2Remove:
            m.handle = get_string(j, "handle");
            m.circle = get_string(j, "circle");
            break;
        case DiagMoveKind::AddSummand:
            m.rot = get_i64(j, "rot");
            if (j.contains("twist")) {
                if (!j["twist"].is_boolean()) shape_error("field 'twist' must be a boolean");
                m.with_twist = j["twist"].get<bool>();
            }
            break;
        case DiagMoveKind::Double:
            m.circle = get_string(j, "circle");
            m.sign = get_sign(j);
            break;
    }
    return m;
}

json script_to_json(const std::vector<moves::DiagMove>& script) {
    json a = json::array();
    for (const moves::DiagMove& m : script) a.push_back(move_to_json(m));
    return a;
}

std::vector<moves::DiagMove> script_from_json(const json& j) {
    if (!j.is_array()) shape_error("a move script must be a JSON array of moves");
    std::vector<moves::DiagMove> out;
    for (const json& x : j) out.push_back(move_from_json(x));
    return out;
}

json move_log_to_json(const moves::RunResult& r) {
    json j = json::object();
    j["ok"] = r.ok;
    json steps = json::array();
    for (const moves::MoveStep& s : r.log.steps) {
        json js = json::object();
        js["move"] = move_to_json(s.move);
        js["deltas"] = s.deltas;
        if (!s.h2.empty()) js["H2"] = s.h2;
        steps.push_back(std::move(js));
    }
    j["steps"] = std::move(steps);
    if (r.log.aborted) {
        j["failed_at"] = r.log.failed_at + 1;
        j["error"] = r.log.error;
    }
    return j;
}

json pres_move_to_json(const words::PresMove& m) {
    using words::MoveKind;
    json j = json::object();
    j["move"] = words::move_kind_name(m.kind);
    switch (m.kind) {
        case MoveKind::T1Double:
            j["index"] = m.index + 1;
            j["exp"] = m.exp;
            break;
        case MoveKind::T1Inverse:
        case MoveKind::AC1:
            j["index"] = m.index + 1;
            break;
        case MoveKind::T1Conjugate:
        case MoveKind::AC2:
            j["index"] = m.index + 1;
            j["gen"] = m.gen;
            j["exp"] = m.exp;
            break;
        case MoveKind::T1Multiply:
        case MoveKind::AC3:
            j["target"] = m.target + 1;
            j["source"] = m.source + 1;
            j["exp"] = m.exp;
            if (!m.word.empty()) j["conj"] = word_text(m.word);
            break;
        case MoveKind::T2Add:
            j["gen"] = m.gen;
            j["word"] = word_text(m.word);
            break;
        case MoveKind::T2Remove:
            j["gen"] = m.gen;
            j["index"] = m.index + 1;
            break;
        case MoveKind::AC4Add:
        case MoveKind::AC4Remove:
        case MoveKind::ExtGenInv:
            j["gen"] = m.gen;
            break;
        case MoveKind::ExtGenMult:
            j["gen"] = m.gen;
            j["by"] = m.by;
            j["exp"] = m.exp;
            break;
    }
    return j;
}

words::PresMove pres_move_from_json(const json& j) {
    using words::MoveKind;
    const std::string name = get_string(j, "move");
    words::PresMove m;
    bool known = false;
    for (MoveKind k :
         {MoveKind::T1Double, MoveKind::T1Inverse, MoveKind::T1Conjugate, MoveKind::T1Multiply,
          MoveKind::T2Add, MoveKind::T2Remove, MoveKind::AC1, MoveKind::AC2, MoveKind::AC3,
          MoveKind::AC4Add, MoveKind::AC4Remove, MoveKind::ExtGenMult, MoveKind::ExtGenInv}) {
        if (name == words::move_kind_name(k)) {
            m.kind = k;
            known = true;
            break;
        }
    }
    if (!known) shape_error("unknown presentation move '" + name + "'");
    auto get_exp = [&]() {
        long long e = get_i64(j, "exp");
        if (e != 1 && e != -1) shape_error("field 'exp' must be +1 or -1");
        return static_cast<int>(e);
    };
    switch (m.kind) {
        case MoveKind::T1Double:
            m.index = get_index(j, "index");
            m.exp = j.contains("exp") ? get_exp() : 1;
            break;
        case MoveKind::T1Inverse:
        case MoveKind::AC1:
            m.index = get_index(j, "index");
            break;
        case MoveKind::T1Conjugate:
        case MoveKind::AC2:
            m.index = get_index(j, "index");
            m.gen = get_string(j, "gen");
            m.exp = get_exp();
            break;
        case MoveKind::T1Multiply:
        case MoveKind::AC3:
            m.target = get_index(j, "target");
            m.source = get_index(j, "source");
            m.exp = get_exp();
            m.word = get_word_or_empty(j, "conj");
            break;
        case MoveKind::T2Add:
            m.gen = get_string(j, "gen");
            m.word = get_word_or_empty(j, "word");
            break;
        case MoveKind::T2Remove:
            m.gen = get_string(j, "gen");
            m.index = get_index(j, "index");
            break;
        case MoveKind::AC4Add:
        case MoveKind::AC4Remove:
        case MoveKind::ExtGenInv:
            m.gen = get_string(j, "gen");
            break;
        case MoveKind::ExtGenMult:
            m.gen = get_string(j, "gen");
            m.by = get_string(j, "by");
            m.exp = get_exp();
            break;
    }
    return m;
}

json trace_to_json(const words::MoveTrace& t) {
    json j = json::object();
    j["initial"] = t.initial.to_string();
    json steps = json::array();
    for (const words::PresMove& m : t.steps) steps.push_back(pres_move_to_json(m));
    j["steps"] = std::move(steps);
    j["final"] = t.final.to_string();
    return j;
}

words::MoveTrace trace_from_json(const json& j) {
    words::MoveTrace t;
    t.initial = words::Presentation::parse(get_string(j, "initial"));
    const json& steps = field(j, "steps");
    if (!steps.is_array()) shape_error("'steps' must be an array of moves");
    for (const json& s : steps) t.steps.push_back(pres_move_from_json(s));
    t.final = words::Presentation::parse(get_string(j, "final"));
    return t;
}

}  // namespace json_io
}  // namespace obk
