#pragma once

#include "ntri/ntriangle.hpp"

#include <iomanip>
#include <sstream>

namespace ntri {

// Balmer staircase as plain text: rows i, columns j, the repeated right-hand
// column holding the shifted base, wavy arrows marked ~[1].
inline std::string render_balmer_text(int n, const NTriangle* t = nullptr) {
    std::ostringstream os;
    auto label = [&](const VertexKey& v, bool repeated) {
        std::ostringstream cell;
        cell << "a" << v.i << v.j;
        if (repeated) cell << "[1]";
        if (t) {
            cell << "(";
            int total = 0;
            for (auto& [deg, d] : t->obj(v).dims()) {
                (void)deg;
                total += d;
            }
            cell << total << ")";
        }
        return cell.str();
    };
    size_t width = 6;
    auto layout = balmer_layout(n);
    auto repeats = balmer_repeats(n);
    for (auto& [v, cell] : layout) {
        (void)cell;
        width = std::max(width, label(v, false).size() + 2);
    }
    int rows = n, cols = n + (n >= 2 ? 2 : 1);
    for (int r = 0; r < rows; ++r) {
        std::ostringstream linetop, linearr;
        for (int c = 0; c <= cols; ++c) {
            std::string cell;
            for (auto& [v, g] : layout)
                if (g.row == r && g.col == c) cell = label(v, false);
            for (auto& [v, g] : repeats)
                if (g.row == r && g.col == c) cell = label(v, true);
            linetop << std::setw(static_cast<int>(width)) << std::left << cell;
        }
        os << linetop.str() << "\n";
    }
    os << "(wavy edges run up-left with shift [1]; row i column j holds a_ij)\n";
    return os.str();
}

// DOT output; wavy edges dashed and labelled [1]. Loads in graphviz.
inline std::string render_balmer_dot(int n, const NTriangle* t = nullptr) {
    std::ostringstream os;
    os << "digraph rectified {\n  rankdir=LR;\n  node [shape=box, fontsize=11];\n";
    RectifiedShape s{n};
    auto layout = balmer_layout(n);
    for (auto& v : s.vertices()) {
        os << "  a" << v.i << "_" << v.j << " [label=\"a_{" << v.i << "," << v.j << "}";
        if (t) {
            os << "\\n";
            bool first = true;
            for (auto& [deg, d] : t->obj(v).dims()) {
                if (!first) os << " ";
                os << deg << ":" << d;
                first = false;
            }
        }
        os << "\", pos=\"" << layout.at(v).col << "," << -layout.at(v).row << "!\"];\n";
    }
    if (n >= 2)
        for (auto& e : s.edges()) {
            VertexKey p = e.source(), q = e.target();
            os << "  a" << p.i << "_" << p.j << " -> a" << q.i << "_" << q.j;
            if (e.wavy()) os << " [style=dashed, label=\"[1]\"]";
            os << ";\n";
        }
    os << "}\n";
    return os.str();
}

} // namespace ntri
