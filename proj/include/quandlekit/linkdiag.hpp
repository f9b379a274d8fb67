#pragma once

#include <string>
#include <vector>

#include "quandlekit/errors.hpp"

namespace qk {

// Oriented link diagram in arc/crossing form.  Virtual crossings are never
// stored: they cut no arcs and contribute no relations, so a diagram is
// represented entirely by its classical crossing data plus traversal order.

struct Arc {
    std::string id;
    int component = 1;
    bool operator==(const Arc& o) const { return id == o.id && component == o.component; }
};

// b1 is the arc on the right of the overpassing arc `over`, b2 the arc on
// its left.  With the orientations this means: at a positive crossing the
// under-strand runs b1 -> b2, at a negative crossing b2 -> b1.
struct Crossing {
    std::string id;
    std::string over;
    std::string b1;
    std::string b2;
    int sign = 1;  // +1 or -1
    bool operator==(const Crossing& o) const {
        return id == o.id && over == o.over && b1 == o.b1 && b2 == o.b2 && sign == o.sign;
    }
};

struct Diagram {
    std::string name;
    int mu = 1;
    bool classical = true;
    std::vector<Arc> arcs;
    std::vector<Crossing> crossings;
    // per component: crossing ids where the component passes under, in
    // traversal order (cyclic; underpass_signs rotates to the base arc)
    std::vector<std::vector<std::string>> under_order;
    std::vector<std::string> base_arc;  // per component

    const Arc& arc(const std::string& id) const;
    const Crossing& crossing(const std::string& id) const;
    bool has_arc(const std::string& id) const;
    int arc_component(const std::string& id) const { return arc(id).component; }
    std::vector<std::string> arcs_of(int component) const;

    // under-strand endpoints of a crossing in traversal order
    const std::string& under_in(const Crossing& c) const { return c.sign > 0 ? c.b1 : c.b2; }
    const std::string& under_out(const Crossing& c) const { return c.sign > 0 ? c.b2 : c.b1; }

    bool operator==(const Diagram& o) const;
};

struct Underpass {
    std::string crossing;
    int sign;
    std::string over;
    bool operator==(const Underpass& o) const {
        return crossing == o.crossing && sign == o.sign && over == o.over;
    }
};

// Parses the line format (see README: link/components/arc/crossing/order/
// base lines, '#' comments, optional `virtual` marker) and validates every
// diagram invariant.  Throws ParseError or ValidationError.
Diagram parse_diagram(const std::string& text);

// Canonical text form; parse(print(d)) == d.
std::string print_diagram(const Diagram& d);

void validate_diagram(const Diagram& d);

// The underpasses of component i (1-based), rotated so that the traversal
// starts on the component's base arc, decorated with sign and over arc.
std::vector<Underpass> underpass_signs(const Diagram& d, int component);

// Built-in catalog.
std::vector<std::string> catalog_names();
bool catalog_has(const std::string& name);
const Diagram& catalog(const std::string& name);
std::string catalog_source(const std::string& name);

// Resolves a link argument: catalog name, then file path, then a file
// named <arg>.link in any of extra_dirs (the CLI passes QUANDLEKIT_CATALOG).
Diagram load_diagram(const std::string& name_or_path, const std::vector<std::string>& extra_dirs = {});

}  // namespace qk
