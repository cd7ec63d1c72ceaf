// obk: command-line surface for the open-book calculator.
//
// Subcommands: check, invariants, homology, classify, move,
// tietze-verify, ac-search, render, cover, sum, emit-examples.
// --format text|json selects the output contract (JSON is the stable
// machine interface).  Multi-file commands accept --jobs N and process
// files in parallel, printing reports in input order.
//
// Exit codes: 0 ok, 2 syntax error, 3 validation error, 4 illegal move
// (including rejected traces), 5 unsupported computation, 1 anything
// else.  Human-readable causes go to stderr.

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include <CLI11.hpp>

#include "obk/classify.hpp"
#include "obk/corpus.hpp"
#include "obk/errors.hpp"
#include "obk/front.hpp"
#include "obk/json_io.hpp"
#include "obk/moves.hpp"
#include "obk/page.hpp"
#include "obk/twist.hpp"
#include "obk/words.hpp"

namespace {

using namespace obk;
using json_io::json;

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const SyntaxError*>(&e)) return 2;
    if (dynamic_cast<const IllegalMove*>(&e)) return 4;
    if (dynamic_cast<const UndefinedLinking*>(&e) != nullptr ||
        dynamic_cast<const UndefinedEntries*>(&e) != nullptr ||
        dynamic_cast<const UnsupportedPage*>(&e) != nullptr ||
        dynamic_cast<const UnsupportedSphere*>(&e) != nullptr ||
        dynamic_cast<const NotRealizable*>(&e) != nullptr)
        return 5;
    if (dynamic_cast<const ValidationError*>(&e)) return 3;
    return 1;
}

std::string describe(const std::exception& e) {
    std::string msg = e.what();
    if (const auto* se = dynamic_cast<const SyntaxError*>(&e); se && se->line > 0) {
        msg += " (line " + std::to_string(se->line);
        if (se->col > 0) msg += ", col " + std::to_string(se->col);
        msg += ")";
    }
    return msg;
}

// ANSI styling for terminals; OPENBOOK_COLOR (any value) disables it.
struct Palette {
    bool on = false;
    const char* bold() const { return on ? "\033[1m" : ""; }
    const char* green() const { return on ? "\033[32m" : ""; }
    const char* red() const { return on ? "\033[31m" : ""; }
    const char* reset() const { return on ? "\033[0m" : ""; }
};

Palette palette() {
    Palette p;
    p.on = isatty(STDOUT_FILENO) != 0 && std::getenv("OPENBOOK_COLOR") == nullptr;
    return p;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

bool is_json_path(const std::string& path) {
    return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

twist::OpenBook load_book(const std::string& path) {
    if (is_json_path(path)) return json_io::book_from_json(json_io::parse(slurp(path)));
    return front::compile_to_book(front::parse_front(slurp(path)));
}

std::string monodromy_text(const twist::OpenBook& b) {
    std::string s;
    for (const twist::TwistLetter& l : b.monodromy) {
        if (!s.empty()) s += ' ';
        s += b.page.circles().at(l.circle).name;
        if (l.exp < 0) s += "^-1";
    }
    return s;
}

std::string book_text(const twist::OpenBook& b) {
    std::ostringstream os;
    if (!b.page.handles().empty()) {
        os << "handles:";
        for (const std::string& h : b.page.handles()) os << ' ' << h;
        os << '\n';
    }
    for (const page::Circle& c : b.page.circles()) {
        os << c.name << ": tb " << c.tb << "  rot " << c.rot << "  sigma " << c.sigma;
        if (!c.word.empty()) os << "  word " << json_io::word_text(c.word);
        os << '\n';
    }
    for (std::size_t i = 0; i < b.page.size(); ++i)
        for (std::size_t j = i + 1; j < b.page.size(); ++j)
            if (b.page.linking_defined(i, j) && b.page.linking(i, j) != 0)
                os << "lk(" << b.page.circles()[i].name << "," << b.page.circles()[j].name
                   << ") = " << b.page.linking(i, j) << '\n';
    if (!b.monodromy.empty()) os << "monodromy: " << monodromy_text(b) << '\n';
    return os.str();
}

// ---------------------------------------------------------------- batch

struct FileReport {
    json j;
    std::string text;
};

using ReportFn = std::function<FileReport(const std::string& path)>;

struct Slot {
    FileReport rep;
    bool failed = false;
    int code = 0;
    std::string error;
};

// Runs fn over every file (in parallel under --jobs), then prints the
// reports in input order.  Returns the exit code of the first failing
// file, 0 when all pass.
int run_batch(const std::vector<std::string>& files, const std::string& format, unsigned jobs,
              ReportFn fn) {
    std::vector<Slot> slots(files.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
            try {
                slots[i].rep = fn(files[i]);
            } catch (const std::exception& e) {
                slots[i].failed = true;
                slots[i].code = exit_code_for(e);
                slots[i].error = describe(e);
            }
        }
    };
    unsigned n = std::min<std::size_t>(std::max(1u, jobs), files.size());
    if (n <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
        for (std::thread& t : pool) t.join();
    }

    Palette pal = palette();
    int rc = 0;
    if (format == "json") {
        if (files.size() == 1 && !slots[0].failed) {
            std::cout << json_io::dump(slots[0].rep.j);
        } else {
            json arr = json::array();
            for (std::size_t i = 0; i < files.size(); ++i) {
                json entry = json::object();
                entry["file"] = files[i];
                if (slots[i].failed) {
                    entry["error"] = slots[i].error;
                    entry["exit"] = slots[i].code;
                } else {
                    entry["report"] = slots[i].rep.j;
                }
                arr.push_back(std::move(entry));
            }
            std::cout << json_io::dump(arr);
        }
    } else {
        for (std::size_t i = 0; i < files.size(); ++i) {
            if (files.size() > 1)
                std::cout << pal.bold() << "== " << files[i] << pal.reset() << '\n';
            if (!slots[i].failed) std::cout << slots[i].rep.text;
            if (files.size() > 1 && i + 1 < files.size()) std::cout << '\n';
        }
    }
    for (std::size_t i = 0; i < files.size(); ++i)
        if (slots[i].failed) {
            std::cerr << pal.red() << "obk: " << files[i] << ": " << slots[i].error
                      << pal.reset() << '\n';
            if (rc == 0) rc = slots[i].code;
        }
    return rc;
}

// ----------------------------------------------------------- subcommands

FileReport do_check(const std::string& path) {
    FileReport r;
    r.j = json::object();
    r.j["ok"] = true;
    std::ostringstream os;
    if (is_json_path(path)) {
        json j = json_io::parse(slurp(path));
        if (j.is_object() && j.contains("initial") && j.contains("steps")) {
            words::MoveTrace t = json_io::trace_from_json(j);
            words::TraceReport tr = words::verify_trace(t);
            if (!tr.accepted) throw IllegalMove("trace rejected: " + tr.reason);
            r.j["input"] = "trace";
            r.j["steps"] = t.steps.size();
            os << "ok (trace: " << t.steps.size() << " steps)\n";
        } else {
            twist::OpenBook b = json_io::book_from_json(j);
            r.j["input"] = "book";
            r.j["circles"] = b.page.size();
            r.j["handles"] = b.page.handles().size();
            r.j["twists"] = b.monodromy.size();
            os << "ok (book: " << b.page.size() << " circles, " << b.page.handles().size()
               << " handles, " << b.monodromy.size() << " twists)\n";
        }
    } else {
        front::FrontDiagram f = front::parse_front(slurp(path));
        twist::OpenBook b = front::compile_to_book(f);
        r.j["input"] = "front";
        r.j["components"] = b.page.size();
        r.j["handles"] = b.page.handles().size();
        r.j["twists"] = b.monodromy.size();
        os << "ok (front: " << b.page.size() << " components, " << b.page.handles().size()
           << " handles, " << b.monodromy.size() << " twists)\n";
    }
    r.text = os.str();
    return r;
}

FileReport do_invariants(const std::string& path) {
    if (is_json_path(path))
        throw ValidationError("invariants needs a front (.obk) input; got JSON '" + path + "'");
    front::FrontDiagram f = front::parse_front(slurp(path));
    front::Analysis a(f);
    FileReport r;
    r.j = json::object();
    json comps = json::array();
    std::ostringstream os;
    for (std::size_t c = 0; c < a.component_count(); ++c) {
        const front::ClassicalInvariants& iv = a.invariants(c);
        json jc = json::object();
        jc["name"] = a.component_names()[c];
        jc["tb"] = json_io::int_to_json(iv.tb);
        jc["rot"] = json_io::int_to_json(iv.rot);
        jc["writhe"] = iv.writhe;
        jc["cusps"] = iv.cusps;
        jc["word"] = json_io::word_text(a.handle_word(c));
        comps.push_back(std::move(jc));
        os << a.component_names()[c] << ": tb " << iv.tb << "  rot " << iv.rot << "  writhe "
           << iv.writhe << "  cusps " << iv.cusps;
        if (!a.handle_word(c).empty()) os << "  word " << json_io::word_text(a.handle_word(c));
        os << '\n';
    }
    r.j["components"] = std::move(comps);
    json lk = json::object();
    json undef = json::array();
    for (std::size_t i = 0; i < a.component_count(); ++i)
        for (std::size_t j = i + 1; j < a.component_count(); ++j) {
            std::string key = std::to_string(i + 1) + "," + std::to_string(j + 1);
            if (!a.linking_defined(i, j)) {
                undef.push_back(key);
                os << "lk(" << a.component_names()[i] << "," << a.component_names()[j]
                   << ") undefined\n";
            } else if (a.linking(i, j) != 0) {
                lk[key] = json_io::int_to_json(a.linking(i, j));
                os << "lk(" << a.component_names()[i] << "," << a.component_names()[j]
                   << ") = " << a.linking(i, j) << '\n';
            }
        }
    r.j["linking"] = std::move(lk);
    if (!undef.empty()) r.j["undefined_linking"] = std::move(undef);
    r.text = os.str();
    return r;
}

FileReport do_homology(const std::string& path) {
    twist::OpenBook b = load_book(path);
    twist::HomologyProfile hp = twist::open_book_homology(b);
    FileReport r;
    r.j = json_io::homology_report(b, hp);
    std::ostringstream os;
    for (int i = 0; i <= 5; ++i) os << 'H' << i << ": " << hp.h[i].to_string() << '\n';
    os << "spin: " << twist::spin_name(hp.spin) << '\n';
    os << "m: " << b.page.size() << '\n';
    zalg::IntMatrix q = page::framing_matrix(b.page);
    os << "Q:\n";
    for (std::size_t i = 0; i < q.rows(); ++i) {
        os << "  [";
        for (std::size_t j = 0; j < q.cols(); ++j) os << (j ? ", " : "") << q.at(i, j);
        os << "]\n";
    }
    if (!b.monodromy.empty()) os << "monodromy: " << monodromy_text(b) << '\n';
    r.text = os.str();
    return r;
}

FileReport do_classify(const std::string& path) {
    twist::OpenBook b = load_book(path);
    FileReport r;
    if (b.trivial_monodromy()) {
        classify::ContactClass c = classify::classify_trivial_monodromy(b.page);
        r.j = json_io::classification_report(c, page::first_chern(b.page));
        r.text = c.diffeo_name + ", " + c.contact_name + "\n";
        return r;
    }
    if (auto k = classify::identify_Nk(b)) {
        twist::HomologyProfile hp = twist::open_book_homology(b);
        r.j = json::object();
        r.j["kind"] = "mk-candidate";
        r.j["k"] = json_io::int_to_json(*k);
        r.j["H2"] = hp.h[2].to_string();
        std::ostringstream os;
        if (*k == 1)
            os << "S⁵ candidate (H2 = 0)\n";
        else
            os << "M_" << *k << " candidate (H2 = " << hp.h[2].to_string() << ")\n";
        r.text = os.str();
        return r;
    }
    throw UnsupportedPage(
        "cannot classify '" + path +
        "': nontrivial monodromy and the homology matches no recognized family");
}

int do_move(const std::string& book_path, const std::string& script_path,
            const std::string& format) {
    twist::OpenBook b = load_book(book_path);
    std::string stext = slurp(script_path);
    std::vector<moves::DiagMove> script = is_json_path(script_path)
                                              ? json_io::script_from_json(json_io::parse(stext))
                                              : moves::parse_script(stext);
    moves::RunResult r = moves::run_script(b, script);
    if (format == "json") {
        json j = json_io::move_log_to_json(r);
        j["final"] = json_io::book_to_json(r.book);
        std::cout << json_io::dump(j);
    } else {
        for (std::size_t i = 0; i < r.log.steps.size(); ++i) {
            const moves::MoveStep& s = r.log.steps[i];
            std::cout << (i + 1) << ". " << s.move.to_string() << '\n';
            for (const std::string& d : s.deltas) std::cout << "   " << d << '\n';
            if (!s.h2.empty()) std::cout << "   H2: " << s.h2 << '\n';
        }
        if (r.ok) {
            std::cout << "ok\nfinal diagram:\n" << book_text(r.book);
        } else {
            std::cout << "aborted at step " << (r.log.failed_at + 1) << ": " << r.log.error
                      << '\n';
        }
    }
    if (!r.ok) {
        // Reproduce the failing move on the last good state so the caller
        // sees the precise error class as the exit code.
        moves::apply_move(r.book, script.at(r.log.failed_at));
        return 1;  // unreachable: the move failed once already
    }
    return 0;
}

int do_tietze_verify(const std::string& path, bool extended, const std::string& format) {
    words::MoveTrace t = json_io::trace_from_json(json_io::parse(slurp(path)));
    words::MoveOptions opts;
    opts.extended = extended;
    words::TraceReport r = words::verify_trace(t, opts);
    if (format == "json") {
        json j = json::object();
        j["accepted"] = r.accepted;
        j["steps"] = t.steps.size();
        if (!r.accepted) {
            j["failed_step"] = r.failed_step + 1;
            j["reason"] = r.reason;
        }
        std::cout << json_io::dump(j);
    } else if (r.accepted) {
        std::cout << "accepted (" << t.steps.size() << " steps)\n";
    } else {
        std::cout << "rejected at step " << (r.failed_step + 1) << ": " << r.reason << '\n';
    }
    return r.accepted ? 0 : 4;
}

const char* search_status_name(words::SearchStatus s) {
    switch (s) {
        case words::SearchStatus::Found: return "found";
        case words::SearchStatus::Exhausted: return "exhausted";
        case words::SearchStatus::StateLimit: return "state-limit";
    }
    return "?";
}

int do_ac_search(const std::string& pres_text, const words::SearchLimits& limits,
                 const std::string& format) {
    words::Presentation p = words::Presentation::parse(pres_text);
    words::SearchOutcome o = words::ac_search(p, limits);
    if (format == "json") {
        json j = json::object();
        j["status"] = search_status_name(o.status);
        j["depth_reached"] = o.depth_reached;
        j["states_explored"] = o.states_explored;
        if (o.trace) j["trace"] = json_io::trace_to_json(*o.trace);
        std::cout << json_io::dump(j);
    } else {
        std::cout << "status: " << search_status_name(o.status) << '\n';
        std::cout << "depth reached: " << o.depth_reached << '\n';
        std::cout << "states explored: " << o.states_explored << '\n';
        if (o.trace) {
            std::cout << "steps: " << o.trace->steps.size() << '\n';
            for (std::size_t i = 0; i < o.trace->steps.size(); ++i)
                std::cout << "  " << (i + 1) << ". " << o.trace->steps[i].to_string() << '\n';
        }
    }
    return 0;
}

int do_render(const std::string& path, const std::string& out) {
    std::string svg = front::render_svg(front::parse_front(slurp(path)));
    if (out.empty()) {
        std::cout << svg;
    } else {
        std::ofstream f(out, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + out + "'");
        f << svg;
        if (!f.good()) throw ValidationError("write failed for '" + out + "'");
    }
    return 0;
}

int emit_book(const twist::OpenBook& b, const std::string& format) {
    if (format == "json")
        std::cout << json_io::dump(json_io::book_to_json(b));
    else
        std::cout << book_text(b);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Open-book diagram calculator for contact 5-manifolds"};
    app.require_subcommand(1);

    std::string format = "text";
    long long seed = 0;
    unsigned jobs = 1;
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_option("--seed", seed,
                   "Seed for randomized operations (accepted by every subcommand; the "
                   "current ones are all deterministic)");
    app.add_option("--jobs", jobs, "Worker threads for multi-file commands")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> check_files, invariant_files, homology_files, classify_files;
    auto* c_check = app.add_subcommand("check", "Parse and validate inputs");
    c_check->add_option("files", check_files, "Front (.obk), book (.json) or trace (.json)")
        ->required();
    auto* c_inv = app.add_subcommand("invariants", "Classical invariants of a front");
    c_inv->add_option("files", invariant_files, "Front files (.obk)")->required();
    auto* c_hom = app.add_subcommand("homology", "Homology of the closed 5-manifold");
    c_hom->add_option("files", homology_files, "Front (.obk) or book (.json)")->required();
    auto* c_cls = app.add_subcommand("classify", "Name the contact 5-manifold");
    c_cls->add_option("files", classify_files, "Front (.obk) or book (.json)")->required();

    std::string move_book, move_script;
    auto* c_move = app.add_subcommand("move", "Replay a diagram-move script");
    c_move->add_option("book", move_book, "Front (.obk) or book (.json)")->required();
    c_move->add_option("script", move_script, "Move script (text or .json)")->required();

    std::string trace_file;
    bool extended = false;
    auto* c_tv = app.add_subcommand("tietze-verify", "Check a presentation move trace");
    c_tv->add_option("trace", trace_file, "Trace file (.json)")->required();
    c_tv->add_flag("--extended", extended, "Allow the extended substitution moves");

    std::string pres_text;
    words::SearchLimits limits;
    bool search_extended = false;
    auto* c_ac = app.add_subcommand("ac-search", "Search for a trivializing move sequence");
    c_ac->add_option("presentation", pres_text, "e.g. \"<a,b | ab, b>\"")->required();
    c_ac->add_option("--depth", limits.max_depth, "Iterative-deepening limit")
        ->capture_default_str();
    c_ac->add_option("--max-states", limits.max_states, "State-count bound")
        ->capture_default_str();
    c_ac->add_option("--max-rel-len", limits.max_relation_length, "Relation length bound")
        ->capture_default_str();
    c_ac->add_flag("--extended", search_extended, "Allow the extended substitution moves");

    std::string render_file, render_out;
    auto* c_render = app.add_subcommand("render", "Render a front as SVG");
    c_render->add_option("file", render_file, "Front file (.obk)")->required();
    c_render->add_option("--out", render_out, "Write the SVG here instead of stdout");

    std::string cover_file;
    auto* c_cover = app.add_subcommand("cover", "Double branched cover of an open book");
    c_cover->add_option("file", cover_file, "Front (.obk) or book (.json)")->required();

    std::string sum_a, sum_b;
    auto* c_sum = app.add_subcommand("sum", "Boundary connected sum of two open books");
    c_sum->add_option("left", sum_a, "Front (.obk) or book (.json)")->required();
    c_sum->add_option("right", sum_b, "Front (.obk) or book (.json)")->required();

    std::string emit_dir;
    auto* c_emit = app.add_subcommand("emit-examples", "Write the example corpus");
    c_emit->add_option("dir", emit_dir, "Output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    (void)seed;  // reserved: no current subcommand draws random numbers

    try {
        if (*c_check) return run_batch(check_files, format, jobs, do_check);
        if (*c_inv) return run_batch(invariant_files, format, jobs, do_invariants);
        if (*c_hom) return run_batch(homology_files, format, jobs, do_homology);
        if (*c_cls) return run_batch(classify_files, format, jobs, do_classify);
        if (*c_move) return do_move(move_book, move_script, format);
        if (*c_tv) return do_tietze_verify(trace_file, extended, format);
        if (*c_ac) {
            limits.extended = search_extended;
            return do_ac_search(pres_text, limits, format);
        }
        if (*c_render) return do_render(render_file, render_out);
        if (*c_cover) return emit_book(twist::double_branched_cover(load_book(cover_file)), format);
        if (*c_sum)
            return emit_book(twist::book_connected_sum(load_book(sum_a), load_book(sum_b)),
                             format);
        if (*c_emit) {
            auto written = corpus::emit_examples(emit_dir);
            if (format == "json") {
                json j = json::object();
                j["written"] = written;
                std::cout << json_io::dump(j);
            } else {
                for (const std::string& p : written) std::cout << p << '\n';
            }
            return 0;
        }
    } catch (const Error& e) {
        Palette pal = palette();
        std::cerr << pal.red() << "obk: error: " << describe(e) << pal.reset() << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "obk: error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
