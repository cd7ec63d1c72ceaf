#include "obk/page.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "obk/errors.hpp"

namespace obk {
namespace page {

bool Circle::null_homologous(const std::vector<std::string>& handles) const {
    return std::all_of(handles.begin(), handles.end(),
                       [&](const std::string& g) { return word.exponent_sum(g) == 0; });
}

PageDiagram PageDiagram::make(std::vector<std::string> handles, std::vector<Circle> circles,
                              std::map<std::pair<std::size_t, std::size_t>, Int> linking,
                              std::string provenance) {
    PageDiagram p;
    p.handles_ = std::move(handles);
    p.circles_ = std::move(circles);
    p.linking_ = std::move(linking);
    p.provenance_ = std::move(provenance);
    p.validate();
    return p;
}

void PageDiagram::validate() const {
    std::set<std::string> seen;
    for (const std::string& h : handles_) {
        if (h.empty()) throw ValidationError("empty handle name");
        if (!seen.insert(h).second) throw ValidationError("duplicate handle '" + h + "'");
    }
    seen.clear();
    for (const Circle& c : circles_) {
        if (c.name.empty()) throw ValidationError("empty circle name");
        if (!seen.insert(c.name).second) throw ValidationError("duplicate circle '" + c.name + "'");
        if (c.sigma < 0) throw ValidationError("negative stabilization ledger on '" + c.name + "'");
        for (const words::Letter& l : c.word.letters())
            if (std::find(handles_.begin(), handles_.end(), l.gen) == handles_.end())
                throw ValidationError("circle '" + c.name + "' runs through unknown handle '" +
                                      l.gen + "'");
        if (c.word != words::free_reduce(c.word))
            throw ValidationError("handle word of '" + c.name + "' is not freely reduced");
    }
    for (const auto& [key, val] : linking_) {
        auto [i, j] = key;
        (void)val;
        if (i >= j || j >= circles_.size())
            throw ValidationError("linking entry with bad index pair");
        if (!circles_[i].null_homologous(handles_) || !circles_[j].null_homologous(handles_))
            throw ValidationError("linking entry for a pair without a defined linking number");
    }
}

std::size_t PageDiagram::index_of(const std::string& circle_name) const {
    if (auto i = find(circle_name)) return *i;
    throw ValidationError("no circle named '" + circle_name + "'");
}

std::optional<std::size_t> PageDiagram::find(const std::string& circle_name) const {
    for (std::size_t i = 0; i < circles_.size(); ++i)
        if (circles_[i].name == circle_name) return i;
    return std::nullopt;
}

bool PageDiagram::linking_defined(std::size_t i, std::size_t j) const {
    return circles_[i].null_homologous(handles_) && circles_[j].null_homologous(handles_);
}

Int PageDiagram::linking(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    if (i == j) throw ValidationError("self-linking is the framing, not a linking number");
    if (!linking_defined(i, j))
        throw UndefinedLinking("linking(" + circles_[i].name + ", " + circles_[j].name +
                               ") is undefined: a circle is not null-homologous in the handlebody");
    auto it = linking_.find({i, j});
    return it == linking_.end() ? Int(0) : it->second;
}

bool PageDiagram::operator==(const PageDiagram& o) const {
    if (handles_ != o.handles_ || circles_.size() != o.circles_.size()) return false;
    for (std::size_t i = 0; i < circles_.size(); ++i) {
        const Circle &a = circles_[i], &b = o.circles_[i];
        if (a.name != b.name || a.word != b.word || a.tb != b.tb || a.rot != b.rot ||
            a.sigma != b.sigma)
            return false;
    }
    // Compare linking as total functions (absent defined pairs are 0).
    for (std::size_t i = 0; i < circles_.size(); ++i)
        for (std::size_t j = i + 1; j < circles_.size(); ++j) {
            if (linking_defined(i, j) != o.linking_defined(i, j)) return false;
            if (linking_defined(i, j) && linking(i, j) != o.linking(i, j)) return false;
        }
    return true;
}

zalg::IntMatrix framing_matrix(const PageDiagram& p) {
    const std::size_t n = p.size();
    std::vector<std::pair<std::size_t, std::size_t>> missing;
    zalg::IntMatrix q(n, n);
    for (std::size_t i = 0; i < n; ++i) q.at(i, i) = p.circles()[i].tb - 1;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            if (!p.linking_defined(i, j)) {
                missing.emplace_back(i, j);
                continue;
            }
            q.at(i, j) = p.linking(i, j);
            q.at(j, i) = q.at(i, j);
        }
    if (!missing.empty()) {
        std::ostringstream os;
        os << "framing matrix has no entry for";
        for (auto [i, j] : missing)
            os << " (" << p.circles()[i].name << "," << p.circles()[j].name << ")";
        throw UndefinedEntries(os.str(), std::move(missing));
    }
    return q;
}

words::Presentation fundamental_group(const PageDiagram& p) {
    words::Presentation pres;
    pres.generators = p.handles();
    for (const Circle& c : p.circles())
        if (!c.word.empty()) pres.relations.push_back(c.word);
    return pres;
}

zalg::AbelianGroup boundary_homology(const zalg::IntMatrix& framing) {
    return zalg::cokernel(framing);
}

zalg::AbelianGroup boundary_homology(const PageDiagram& p) {
    if (!p.handles().empty())
        throw UnsupportedPage("boundary homology needs a page without 1-handles");
    return boundary_homology(framing_matrix(p));
}

ChernVector first_chern(const PageDiagram& p) {
    ChernVector c;
    c.entries.reserve(p.size());
    for (const Circle& circle : p.circles()) c.entries.push_back(circle.rot);
    return c;
}

bool validate_twist_support(const PageDiagram& p, std::size_t i) {
    if (i >= p.size()) throw ValidationError("circle index out of range");
    const Circle& c = p.circles()[i];
    return c.word.empty() && c.tb == -1;
}

}  // namespace page
}  // namespace obk
