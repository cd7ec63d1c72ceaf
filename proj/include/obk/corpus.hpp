#pragma once

// The worked-example corpus shipped with the tool: small front diagrams
// (.obk) and presentation-move traces (.json) used by the test suite,
// the documentation and the CLI smoke checks.  File contents are fixed
// byte for byte; `emit-examples` regenerates them exactly.

#include <string>
#include <utility>
#include <vector>

namespace obk {
namespace corpus {

// (file name, file contents) in emission order.
const std::vector<std::pair<std::string, std::string>>& files();

// Contents of one corpus file; throws ValidationError for unknown names.
const std::string& text(const std::string& name);

// Write every corpus file into dir (created if needed); returns the
// paths written, in order.
std::vector<std::string> emit_examples(const std::string& dir);

}  // namespace corpus
}  // namespace obk
