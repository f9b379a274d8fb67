#include "quandlekit/linkdiag.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace qk {

const Arc& Diagram::arc(const std::string& id) const {
    for (const auto& a : arcs)
        if (a.id == id) return a;
    throw DomainError("unknown arc: " + id);
}

bool Diagram::has_arc(const std::string& id) const {
    for (const auto& a : arcs)
        if (a.id == id) return true;
    return false;
}

const Crossing& Diagram::crossing(const std::string& id) const {
    for (const auto& c : crossings)
        if (c.id == id) return c;
    throw DomainError("unknown crossing: " + id);
}

std::vector<std::string> Diagram::arcs_of(int component) const {
    std::vector<std::string> out;
    for (const auto& a : arcs)
        if (a.component == component) out.push_back(a.id);
    return out;
}

bool Diagram::operator==(const Diagram& o) const {
    return name == o.name && mu == o.mu && classical == o.classical && arcs == o.arcs &&
           crossings == o.crossings && under_order == o.under_order && base_arc == o.base_arc;
}

// ---- parser ----

namespace {

std::vector<std::string> tokenize(const std::string& line) {
    std::vector<std::string> toks;
    std::istringstream in(line);
    std::string t;
    while (in >> t) {
        if (t[0] == '#') break;
        toks.push_back(t);
    }
    return toks;
}

// splits "key=value", returns value for the expected key
std::string kv(const std::string& tok, const std::string& key, int lineno) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || tok.substr(0, eq) != key)
        throw ParseError("expected " + key + "=<value>, got '" + tok + "'", lineno, 1);
    return tok.substr(eq + 1);
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
    Diagram d;
    d.name = "unnamed";
    d.mu = 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    bool saw_components = false;
    std::map<int, std::vector<std::string>> orders;
    std::map<int, std::string> bases;
    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line);
        if (toks.empty()) continue;
        const std::string& head = toks[0];
        if (head == "link") {
            if (toks.size() != 2) throw ParseError("link takes one name", lineno, 1);
            d.name = toks[1];
        } else if (head == "components") {
            if (toks.size() != 2) throw ParseError("components takes one integer", lineno, 1);
            try {
                d.mu = std::stoi(toks[1]);
            } catch (...) {
                throw ParseError("bad component count '" + toks[1] + "'", lineno, 1);
            }
            saw_components = true;
        } else if (head == "virtual") {
            if (toks.size() != 1) throw ParseError("virtual takes no arguments", lineno, 1);
            d.classical = false;
        } else if (head == "arc") {
            if (toks.size() != 3) throw ParseError("arc takes <id> <component>", lineno, 1);
            Arc a;
            a.id = toks[1];
            try {
                a.component = std::stoi(toks[2]);
            } catch (...) {
                throw ParseError("bad arc component '" + toks[2] + "'", lineno, 1);
            }
            d.arcs.push_back(a);
        } else if (head == "crossing") {
            if (toks.size() != 6)
                throw ParseError("crossing takes <id> over=<arc> b1=<arc> b2=<arc> sign=<+|->", lineno, 1);
            Crossing c;
            c.id = toks[1];
            c.over = kv(toks[2], "over", lineno);
            c.b1 = kv(toks[3], "b1", lineno);
            c.b2 = kv(toks[4], "b2", lineno);
            std::string s = kv(toks[5], "sign", lineno);
            if (s == "+" || s == "+1")
                c.sign = 1;
            else if (s == "-" || s == "-1")
                c.sign = -1;
            else
                throw ParseError("sign must be + or -, got '" + s + "'", lineno, 1);
            d.crossings.push_back(c);
        } else if (head == "order") {
            if (toks.size() < 2) throw ParseError("order takes <component> <crossing ids...>", lineno, 1);
            int comp;
            try {
                comp = std::stoi(toks[1]);
            } catch (...) {
                throw ParseError("bad order component '" + toks[1] + "'", lineno, 1);
            }
            orders[comp] = std::vector<std::string>(toks.begin() + 2, toks.end());
        } else if (head == "base") {
            if (toks.size() != 3) throw ParseError("base takes <component> <arc>", lineno, 1);
            int comp;
            try {
                comp = std::stoi(toks[1]);
            } catch (...) {
                throw ParseError("bad base component '" + toks[1] + "'", lineno, 1);
            }
            bases[comp] = toks[2];
        } else {
            throw ParseError("unknown directive '" + head + "'", lineno, 1);
        }
    }
    if (!saw_components) throw ValidationError("missing components line");
    if (d.mu < 1) throw ValidationError("component count must be >= 1");
    d.under_order.assign(d.mu, {});
    d.base_arc.assign(d.mu, "");
    for (const auto& [comp, ord] : orders) {
        if (comp < 1 || comp > d.mu) throw ValidationError("order line for unknown component " + std::to_string(comp));
        d.under_order[comp - 1] = ord;
    }
    for (const auto& [comp, arc] : bases) {
        if (comp < 1 || comp > d.mu) throw ValidationError("base line for unknown component " + std::to_string(comp));
        d.base_arc[comp - 1] = arc;
    }
    // default base arc: first arc of the component in file order
    for (int i = 1; i <= d.mu; ++i) {
        if (!d.base_arc[i - 1].empty()) continue;
        for (const auto& a : d.arcs)
            if (a.component == i) {
                d.base_arc[i - 1] = a.id;
                break;
            }
    }
    validate_diagram(d);
    return d;
}

void validate_diagram(const Diagram& d) {
    if (d.mu < 1) throw ValidationError("component count must be >= 1");
    std::set<std::string> arc_ids;
    std::set<int> comps_seen;
    for (const auto& a : d.arcs) {
        if (!arc_ids.insert(a.id).second) throw ValidationError("duplicate arc id " + a.id);
        if (a.component < 1 || a.component > d.mu)
            throw ValidationError("arc " + a.id + " has component " + std::to_string(a.component) +
                                  " outside 1.." + std::to_string(d.mu));
        comps_seen.insert(a.component);
    }
    for (int i = 1; i <= d.mu; ++i)
        if (!comps_seen.count(i)) throw ValidationError("component " + std::to_string(i) + " owns no arc");

    std::set<std::string> crossing_ids;
    for (const auto& c : d.crossings) {
        if (!crossing_ids.insert(c.id).second) throw ValidationError("duplicate crossing id " + c.id);
        for (const std::string* ref : {&c.over, &c.b1, &c.b2})
            if (!arc_ids.count(*ref))
                throw ValidationError("crossing " + c.id + " references unknown arc " + *ref);
        if (d.arc(c.b1).component != d.arc(c.b2).component)
            throw ValidationError("crossing " + c.id + ": b1,b2 on different components");
    }

    // every crossing appears exactly once across all under_order lines,
    // on the component its under-strand belongs to
    std::set<std::string> ordered;
    for (int i = 1; i <= d.mu; ++i) {
        for (const auto& cid : d.under_order[i - 1]) {
            if (!crossing_ids.count(cid))
                throw ValidationError("order for component " + std::to_string(i) + " references unknown crossing " + cid);
            if (!ordered.insert(cid).second)
                throw ValidationError("crossing " + cid + " listed more than once in under orders");
            const Crossing& c = d.crossing(cid);
            if (d.arc(c.b1).component != i)
                throw ValidationError("crossing " + cid + " listed under component " + std::to_string(i) +
                                      " but its under-strand is on component " +
                                      std::to_string(d.arc(c.b1).component));
        }
    }
    for (const auto& c : d.crossings)
        if (!ordered.count(c.id)) throw ValidationError("crossing " + c.id + " missing from under orders");

    // per component: the under-strand successor walk must visit every arc
    // exactly once and close up
    for (int i = 1; i <= d.mu; ++i) {
        auto arcs_i = d.arcs_of(i);
        const auto& ord = d.under_order[i - 1];
        if (ord.empty()) {
            if (arcs_i.size() != 1)
                throw ValidationError("component " + std::to_string(i) +
                                      " has no underpasses but " + std::to_string(arcs_i.size()) + " arcs");
        } else {
            if (arcs_i.size() != ord.size())
                throw ValidationError("component " + std::to_string(i) + " has " + std::to_string(ord.size()) +
                                      " underpasses but " + std::to_string(arcs_i.size()) + " arcs");
            std::set<std::string> visited;
            std::string start = d.under_in(d.crossing(ord[0]));
            std::string cur = start;
            for (const auto& cid : ord) {
                const Crossing& c = d.crossing(cid);
                if (d.under_in(c) != cur)
                    throw ValidationError("arc cycle broken for component " + std::to_string(i) +
                                          ": crossing " + cid + " expects under-arc " + d.under_in(c) +
                                          " but traversal is on " + cur);
                if (!visited.insert(cur).second)
                    throw ValidationError("arc cycle broken for component " + std::to_string(i) +
                                          ": arc " + cur + " visited twice");
                cur = d.under_out(c);
            }
            if (cur != start)
                throw ValidationError("arc cycle broken for component " + std::to_string(i) +
                                      ": walk ends on " + cur + " instead of " + start);
            if (visited.size() != arcs_i.size())
                throw ValidationError("arc cycle broken for component " + std::to_string(i) +
                                      ": walk misses some arcs");
        }
        const std::string& base = d.base_arc[i - 1];
        if (base.empty()) throw ValidationError("component " + std::to_string(i) + " has no base arc");
        if (!d.has_arc(base) || d.arc(base).component != i)
            throw ValidationError("base arc " + base + " is not on component " + std::to_string(i));
    }
}

std::string print_diagram(const Diagram& d) {
    std::ostringstream out;
    out << "link " << (d.name.empty() ? "unnamed" : d.name) << "\n";
    out << "components " << d.mu << "\n";
    if (!d.classical) out << "virtual\n";
    for (const auto& a : d.arcs) out << "arc " << a.id << " " << a.component << "\n";
    for (const auto& c : d.crossings)
        out << "crossing " << c.id << " over=" << c.over << " b1=" << c.b1 << " b2=" << c.b2
            << " sign=" << (c.sign > 0 ? "+" : "-") << "\n";
    for (int i = 1; i <= d.mu; ++i) {
        if (d.under_order[i - 1].empty()) continue;
        out << "order " << i;
        for (const auto& cid : d.under_order[i - 1]) out << " " << cid;
        out << "\n";
    }
    for (int i = 1; i <= d.mu; ++i) out << "base " << i << " " << d.base_arc[i - 1] << "\n";
    return out.str();
}

std::vector<Underpass> underpass_signs(const Diagram& d, int component) {
    if (component < 1 || component > d.mu)
        throw DomainError("component index out of range: " + std::to_string(component));
    const auto& ord = d.under_order[component - 1];
    std::vector<Underpass> out;
    if (ord.empty()) return out;
    // rotate so the walk starts on the base arc
    size_t start = 0;
    const std::string& base = d.base_arc[component - 1];
    bool found = false;
    for (size_t k = 0; k < ord.size(); ++k) {
        if (d.under_in(d.crossing(ord[k])) == base) {
            start = k;
            found = true;
            break;
        }
    }
    if (!found) throw ValidationError("base arc " + base + " is not an under-arc of its component");
    for (size_t k = 0; k < ord.size(); ++k) {
        const Crossing& c = d.crossing(ord[(start + k) % ord.size()]);
        out.push_back({c.id, c.sign, c.over});
    }
    return out;
}

Diagram load_diagram(const std::string& name_or_path, const std::vector<std::string>& extra_dirs) {
    if (catalog_has(name_or_path)) return catalog(name_or_path);
    std::vector<std::string> candidates = {name_or_path};
    for (const auto& dir : extra_dirs) {
        candidates.push_back(dir + "/" + name_or_path);
        candidates.push_back(dir + "/" + name_or_path + ".link");
    }
    for (const auto& path : candidates) {
        std::ifstream in(path);
        if (!in) continue;
        std::ostringstream buf;
        buf << in.rdbuf();
        return parse_diagram(buf.str());
    }
    throw DomainError("no catalog entry or readable file for '" + name_or_path + "'");
}

}  // namespace qk
