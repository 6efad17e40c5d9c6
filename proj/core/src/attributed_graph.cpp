#include "orbilearn/attributed_graph.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>

namespace orbilearn {

namespace {

std::string cell_name(std::size_t i, std::size_t j) {
    return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
}

void check_same_shape(const AttributedGraph& g, const AttributedGraph& h, const char* op) {
    if (g.order() != h.order())
        throw std::invalid_argument(std::string(op) + ": order mismatch (" +
                                    std::to_string(g.order()) + " vs " +
                                    std::to_string(h.order()) + ")");
    if (g.attr_dim() != h.attr_dim())
        throw std::invalid_argument(std::string(op) + ": attr_dim mismatch (" +
                                    std::to_string(g.attr_dim()) + " vs " +
                                    std::to_string(h.attr_dim()) + ")");
}

}  // namespace

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    std::vector<bool> seen(map_.size(), false);
    for (std::size_t v : map_) {
        if (v >= map_.size() || seen[v])
            throw std::invalid_argument("Permutation: map is not a bijection on {0..n-1}");
        seen[v] = true;
    }
}

Permutation Permutation::identity(std::size_t n) {
    std::vector<std::size_t> m(n);
    for (std::size_t i = 0; i < n; ++i) m[i] = i;
    return Permutation(std::move(m));
}

Permutation Permutation::inverse() const {
    std::vector<std::size_t> inv(map_.size());
    for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = i;
    return Permutation(std::move(inv));
}

Permutation compose(const Permutation& q, const Permutation& p) {
    if (q.size() != p.size())
        throw std::invalid_argument("compose: size mismatch (" + std::to_string(q.size()) +
                                    " vs " + std::to_string(p.size()) + ")");
    std::vector<std::size_t> m(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m[i] = q(p(i));
    return Permutation(std::move(m));
}

AttributedGraph::AttributedGraph(std::size_t order, std::size_t attr_dim,
                                 std::vector<double> cells, bool undirected)
    : order_(order), attr_dim_(attr_dim), undirected_(undirected), cells_(std::move(cells)) {
    if (order_ == 0) throw std::invalid_argument("AttributedGraph: order must be positive");
    if (attr_dim_ == 0) throw std::invalid_argument("AttributedGraph: attr_dim must be positive");
    if (cells_.size() != order_ * order_ * attr_dim_)
        throw std::invalid_argument("AttributedGraph: cells size " + std::to_string(cells_.size()) +
                                    " does not match order²·attr_dim");
    if (undirected_) {
        for (std::size_t i = 0; i < order_; ++i)
            for (std::size_t j = i + 1; j < order_; ++j)
                for (std::size_t c = 0; c < attr_dim_; ++c)
                    if (cells_[(i * order_ + j) * attr_dim_ + c] !=
                        cells_[(j * order_ + i) * attr_dim_ + c])
                        throw std::invalid_argument(
                            "AttributedGraph: undirected flag set but cell " + cell_name(i, j) +
                            " differs from cell " + cell_name(j, i));
    }
}

AttributedGraph AttributedGraph::zeros(std::size_t order, std::size_t attr_dim, bool undirected) {
    return AttributedGraph(order, attr_dim, std::vector<double>(order * order * attr_dim, 0.0),
                           undirected);
}

bool AttributedGraph::cell_nonzero(std::size_t i, std::size_t j) const {
    for (double v : cell(i, j))
        if (v != 0.0) return true;
    return false;
}

AttributedGraph from_edge_list(const std::vector<AttributeVector>& vertices,
                               const std::vector<EdgeEntry>& edges, bool undirected) {
    if (vertices.empty())
        throw std::invalid_argument("from_edge_list: vertices must be nonempty");
    const std::size_t n = vertices.size();
    const std::size_t d = vertices.front().size();
    if (d == 0) throw std::invalid_argument("from_edge_list: attr_dim must be positive");
    for (std::size_t i = 0; i < n; ++i)
        if (vertices[i].size() != d)
            throw std::invalid_argument("from_edge_list: vertex " + std::to_string(i) +
                                        " has attribute dimension " +
                                        std::to_string(vertices[i].size()) + ", expected " +
                                        std::to_string(d));

    std::vector<double> cells(n * n * d, 0.0);
    for (std::size_t i = 0; i < n; ++i)
        std::copy(vertices[i].begin(), vertices[i].end(), cells.begin() + (i * n + i) * d);

    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (const EdgeEntry& e : edges) {
        if (e.i >= n || e.j >= n)
            throw std::invalid_argument("from_edge_list: edge " + cell_name(e.i, e.j) +
                                        " index out of range for order " + std::to_string(n));
        if (e.i == e.j)
            throw std::invalid_argument("from_edge_list: self-loop " + cell_name(e.i, e.j) +
                                        " (diagonal is reserved for vertex attributes)");
        if (e.attr.size() != d)
            throw std::invalid_argument("from_edge_list: edge " + cell_name(e.i, e.j) +
                                        " attribute dimension mismatch");
        const std::pair<std::size_t, std::size_t> key =
            undirected ? std::pair{std::min(e.i, e.j), std::max(e.i, e.j)}
                       : std::pair{e.i, e.j};
        if (!seen.insert(key).second)
            throw std::invalid_argument("from_edge_list: duplicate edge " + cell_name(e.i, e.j));
        std::copy(e.attr.begin(), e.attr.end(), cells.begin() + (e.i * n + e.j) * d);
        if (undirected)
            std::copy(e.attr.begin(), e.attr.end(), cells.begin() + (e.j * n + e.i) * d);
    }
    return AttributedGraph(n, d, std::move(cells), undirected);
}

AttributedGraph pad_to_order(const AttributedGraph& g, std::size_t n) {
    if (n < g.order())
        throw std::invalid_argument("pad_to_order: target order " + std::to_string(n) +
                                    " is smaller than graph order " + std::to_string(g.order()));
    if (n == g.order()) return g;
    const std::size_t d = g.attr_dim();
    std::vector<double> cells(n * n * d, 0.0);
    for (std::size_t i = 0; i < g.order(); ++i)
        for (std::size_t j = 0; j < g.order(); ++j) {
            auto src = g.cell(i, j);
            std::copy(src.begin(), src.end(), cells.begin() + (i * n + j) * d);
        }
    return AttributedGraph(n, d, std::move(cells), g.undirected());
}

AttributedGraph apply_permutation(const AttributedGraph& g, const Permutation& p) {
    if (p.size() != g.order())
        throw std::invalid_argument("apply_permutation: permutation size " +
                                    std::to_string(p.size()) + " does not match order " +
                                    std::to_string(g.order()));
    const std::size_t n = g.order(), d = g.attr_dim();
    std::vector<double> cells(n * n * d);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            auto src = g.cell(p(i), p(j));
            std::copy(src.begin(), src.end(), cells.begin() + (i * n + j) * d);
        }
    return AttributedGraph(n, d, std::move(cells), g.undirected());
}

double frobenius_inner(const AttributedGraph& g, const AttributedGraph& h) {
    check_same_shape(g, h, "frobenius_inner");
    const std::vector<double>& a = g.cells();
    const std::vector<double>& b = h.cells();
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
    return sum;
}

double length(const AttributedGraph& g) { return std::sqrt(frobenius_inner(g, g)); }

AttributedGraph add_scaled(const AttributedGraph& g, double a, const AttributedGraph& h) {
    check_same_shape(g, h, "add_scaled");
    std::vector<double> cells(g.cells());
    const std::vector<double>& other = h.cells();
    for (std::size_t k = 0; k < cells.size(); ++k) cells[k] += a * other[k];
    return AttributedGraph(g.order(), g.attr_dim(), std::move(cells),
                           g.undirected() && h.undirected());
}

AttributedGraph scaled(const AttributedGraph& g, double a) {
    std::vector<double> cells(g.cells());
    for (double& v : cells) v *= a;
    return AttributedGraph(g.order(), g.attr_dim(), std::move(cells), g.undirected());
}

AttributedGraph operator+(const AttributedGraph& g, const AttributedGraph& h) {
    return add_scaled(g, 1.0, h);
}

AttributedGraph operator-(const AttributedGraph& g, const AttributedGraph& h) {
    return add_scaled(g, -1.0, h);
}

AttributedGraph operator*(double a, const AttributedGraph& g) { return scaled(g, a); }

GraphDataset GraphDataset::ingest(std::vector<AttributedGraph> graphs,
                                  std::vector<double> labels) {
    if (graphs.empty()) throw std::invalid_argument("GraphDataset: graphs must be nonempty");
    if (!labels.empty() && labels.size() != graphs.size())
        throw std::invalid_argument("GraphDataset: labels size " + std::to_string(labels.size()) +
                                    " does not match graphs size " + std::to_string(graphs.size()));
    GraphDataset ds;
    ds.attr_dim = graphs.front().attr_dim();
    ds.common_order = 0;
    for (const AttributedGraph& g : graphs) {
        if (g.attr_dim() != ds.attr_dim)
            throw std::invalid_argument("GraphDataset: attr_dim mismatch across graphs");
        ds.common_order = std::max(ds.common_order, g.order());
    }
    ds.graphs.reserve(graphs.size());
    for (AttributedGraph& g : graphs) ds.graphs.push_back(pad_to_order(g, ds.common_order));
    ds.labels = std::move(labels);
    return ds;
}

}  // namespace orbilearn
