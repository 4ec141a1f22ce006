#include "berkpatch/cover.hpp"

#include "berkpatch/format.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace berk {

namespace {

// Disc containment in the ultrametric world: D(ci, ri) sits inside D(cj, rj) exactly
// when the center distance and the inner radius both fit under rj.
bool disc_inside(const PrimeContext& ctx, const GaussPoint& inner, const GaussPoint& outer) {
    return norm_le(norm_max(scalar_norm(ctx, inner.center - outer.center), inner.radius), outer.radius);
}

} // namespace

NiceCover build_nice_cover(const PrimeContext& ctx, const std::vector<GaussPoint>& points) {
    std::vector<GaussPoint> pts = points;
    for (const auto& pt : pts) {
        int t = classify_point(pt);
        if (t != 2 && t != 3) throw std::invalid_argument("cover nodes must be circle points");
    }
    for (size_t i = 0; i < pts.size(); ++i)
        for (size_t j = i + 1; j < pts.size(); ++j)
            if (point_equal(ctx, pts[i], pts[j])) throw std::invalid_argument("cover nodes must be distinct");
    std::sort(pts.begin(), pts.end(), [](const GaussPoint& x, const GaussPoint& y) {
        if (x.center != y.center) return x.center < y.center;
        return norm_less(x.radius, y.radius);
    });

    size_t n = pts.size();
    // parent[i] = index of the smallest disc properly containing disc i, or n for none.
    std::vector<size_t> parent(n, n);
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j || !disc_inside(ctx, pts[i], pts[j])) continue;
            if (parent[i] == n || disc_inside(ctx, pts[j], pts[parent[i]])) parent[i] = j;
        }
    }

    NiceCover cover;
    cover.nodes = pts;
    for (size_t i = 0; i < n; ++i) {
        AffinoidDomain piece;
        piece.constraints.push_back(Constraint{{-pts[i].center, Rat(1)}, Rel::LE, pts[i].radius});
        for (size_t j = 0; j < n; ++j)
            if (parent[j] == i)
                piece.constraints.push_back(Constraint{{-pts[j].center, Rat(1)}, Rel::GE, pts[j].radius});
        piece.connected = Certainty::Yes;
        cover.pieces.push_back(std::move(piece));
    }
    AffinoidDomain outer;
    for (size_t j = 0; j < n; ++j)
        if (parent[j] == n)
            outer.constraints.push_back(Constraint{{-pts[j].center, Rat(1)}, Rel::GE, pts[j].radius});
    outer.connected = Certainty::Yes;
    cover.pieces.push_back(std::move(outer));

    for (size_t i = 0; i < n; ++i)
        cover.edges.emplace_back((int)i, parent[i] == n ? (int)n : (int)parent[i]);
    return cover;
}

CheckReport nice_cover_check(const PrimeContext& ctx, const NiceCover& cover) {
    CheckReport rep;
    auto fail = [&](const std::string& msg) {
        rep.valid = false;
        rep.violations.push_back(msg);
    };
    if (cover.pieces.empty()) {
        fail("cover has no pieces");
        return rep;
    }
    if (cover.edges.size() != cover.nodes.size()) {
        fail("each node needs exactly one adjacency pair");
        return rep;
    }
    for (size_t i = 0; i < cover.pieces.size(); ++i) {
        const auto& piece = cover.pieces[i];
        if (!all_linear(piece)) {
            fail("piece " + std::to_string(i) + " has a nonlinear constraint");
            return rep;
        }
        if (piece.connected != Certainty::Yes) fail("piece " + std::to_string(i) + " lacks a connectedness certificate");
        if (domain_empty(ctx, piece)) fail("piece " + std::to_string(i) + " is empty");
    }
    for (size_t k = 0; k < cover.nodes.size(); ++k) {
        if (classify_point(cover.nodes[k]) != 3)
            fail("node " + std::to_string(k) + " is not a type 3 point");
        auto [a, b] = cover.edges[k];
        if (a < 0 || b < 0 || a >= (int)cover.pieces.size() || b >= (int)cover.pieces.size() || a == b) {
            fail("edge " + std::to_string(k) + " does not join two distinct pieces");
            continue;
        }
    }
    if (!rep.valid) return rep;

    for (size_t i = 0; i < cover.pieces.size(); ++i) {
        for (size_t j = i + 1; j < cover.pieces.size(); ++j) {
            // Find the node that claims this pair, if any.
            int node = -1;
            for (size_t k = 0; k < cover.edges.size(); ++k) {
                auto [a, b] = cover.edges[k];
                if ((a == (int)i && b == (int)j) || (a == (int)j && b == (int)i)) {
                    if (node >= 0) fail("pieces " + std::to_string(i) + "," + std::to_string(j) + " share two nodes");
                    node = (int)k;
                }
            }
            if (node >= 0) {
                if (!intersection_is_single_point(ctx, cover.pieces[i], cover.pieces[j], cover.nodes[node]))
                    fail("pieces " + std::to_string(i) + "," + std::to_string(j) +
                         " do not meet exactly at their node");
            } else {
                AffinoidDomain both = domain_intersect(ctx, cover.pieces[i], cover.pieces[j]);
                if (!domain_empty(ctx, both))
                    fail("pieces " + std::to_string(i) + "," + std::to_string(j) + " overlap without a node");
            }
        }
    }

    for (const auto& pt : candidate_points(ctx, cover.pieces)) {
        bool covered = false;
        for (const auto& piece : cover.pieces)
            if (domain_member(ctx, piece, pt)) { covered = true; break; }
        if (!covered) {
            fail("point " + point_text(ctx, pt) + " is not covered");
            break;
        }
    }
    return rep;
}

ColoringResult parity_coloring(const NiceCover& cover) {
    ColoringResult res;
    size_t n = cover.pieces.size();
    res.colors.assign(n, -1);
    std::vector<std::vector<int>> adj(n);
    for (const auto& [a, b] : cover.edges) {
        adj[a].push_back(b);
        adj[b].push_back(a);
    }
    for (size_t start = 0; start < n; ++start) {
        if (res.colors[start] != -1) continue;
        res.colors[start] = 0;
        std::deque<int> queue{(int)start};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : adj[v]) {
                if (res.colors[w] == -1) {
                    res.colors[w] = 1 - res.colors[v];
                    queue.push_back(w);
                } else if (res.colors[w] == res.colors[v]) {
                    res.ok = false;
                    res.reason = "pieces " + std::to_string(v) + " and " + std::to_string(w) +
                                 " are adjacent with equal parity";
                    return res;
                }
            }
        }
    }
    return res;
}

std::string cover_dot(const PrimeContext& ctx, const NiceCover& cover) {
    std::ostringstream out;
    out << "graph cover {\n";
    out << "  node [shape=box];\n";
    for (size_t i = 0; i < cover.pieces.size(); ++i) {
        out << "  p" << i << " [label=\"piece " << i;
        for (const auto& c : cover.pieces[i].constraints) out << "\\n" << constraint_text(ctx, c);
        if (cover.pieces[i].constraints.empty()) out << "\\nwhole line";
        out << "\"];\n";
    }
    // Intersection points are nodes of their own, so each gluing circle shows up
    // once even when many pieces meet it in a larger cover.
    for (size_t k = 0; k < cover.nodes.size(); ++k)
        out << "  n" << k << " [shape=ellipse,label=\"" << point_text(ctx, cover.nodes[k]) << "\"];\n";
    for (size_t k = 0; k < cover.edges.size(); ++k) {
        out << "  p" << cover.edges[k].first << " -- n" << k << ";\n";
        out << "  n" << k << " -- p" << cover.edges[k].second << ";\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace berk
