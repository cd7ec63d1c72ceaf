#pragma once

// JSON codecs for every value that crosses the process boundary: page
// diagrams and open books, diagram-move scripts and their run logs,
// presentation move traces, and the homology / classification reports.
// JSON is the machine contract; object key order is fixed so output is
// byte-deterministic.  Integers that fit in 64 bits serialize as JSON
// numbers, anything larger as a decimal string.

#include <string>
#include <vector>

#include <json.hpp>

#include "obk/classify.hpp"
#include "obk/moves.hpp"
#include "obk/page.hpp"
#include "obk/twist.hpp"
#include "obk/words.hpp"
#include "obk/zalg.hpp"

namespace obk {
namespace json_io {

using json = nlohmann::ordered_json;

// Parse with SyntaxError (byte offset reported in the message) instead of
// the library's exception; dump with a trailing newline and 2-space
// indent.
json parse(const std::string& text);
std::string dump(const json& j);

json int_to_json(const Int& v);
Int int_from_json(const json& j);

// Words serialize as space-separated letters ("g h G"), the one form
// that words::Word::parse round-trips for every generator name; the
// empty word is "".
std::string word_text(const words::Word& w);

json matrix_to_json(const zalg::IntMatrix& m);  // array of rows
zalg::IntMatrix matrix_from_json(const json& j);

// {handles, circles:[{name, word, tb, rot, sigma}], linking:{"i,j": n},
// provenance}.  Linking keys are 1-based "i,j" pairs with i < j;
// undefined entries are omitted.
json page_to_json(const page::PageDiagram& p);
page::PageDiagram page_from_json(const json& j);

// Page fields plus monodromy:["K1", "K2^-1", ...] in application order.
json book_to_json(const twist::OpenBook& b);
twist::OpenBook book_from_json(const json& j);

// {H0..H5, spin, page:{m, Q}, monodromy:[...]}.
json homology_report(const twist::OpenBook& b, const twist::HomologyProfile& hp);

// {kind, m, d, diffeo_name, contact_name, chern:[...]}.
json classification_report(const classify::ContactClass& c,
                           const page::ChernVector& chern);

// Diagram moves as tagged objects, e.g.
//   {"move":"slide2","circle":"K1","over":"K2","sign":1,"via":"g h"};
// a script is a JSON array of them.
json move_to_json(const moves::DiagMove& m);
moves::DiagMove move_from_json(const json& j);
json script_to_json(const std::vector<moves::DiagMove>& script);
std::vector<moves::DiagMove> script_from_json(const json& j);

// Replay log for the `move` command.
json move_log_to_json(const moves::RunResult& r);

// Presentation moves as tagged objects with 1-based relation indices,
// e.g. {"move":"AC3","target":1,"source":2,"exp":-1}; a trace is
// {initial, steps:[...], final} with presentations in "<a,b | ab, b>"
// text form.
json pres_move_to_json(const words::PresMove& m);
words::PresMove pres_move_from_json(const json& j);
json trace_to_json(const words::MoveTrace& t);
words::MoveTrace trace_from_json(const json& j);

}  // namespace json_io
}  // namespace obk
