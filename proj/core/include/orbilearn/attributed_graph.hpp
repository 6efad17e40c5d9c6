#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace orbilearn {

/// Attribute of a vertex or edge, embedded in R^d. The null attribute
/// (absent edge, padded vertex) is the zero vector.
using AttributeVector = std::vector<double>;

/// Bijection on {0..n-1}; operator()(i) is the image of i.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> map);

    static Permutation identity(std::size_t n);

    std::size_t size() const { return map_.size(); }
    std::size_t operator()(std::size_t i) const { return map_[i]; }
    const std::vector<std::size_t>& map() const { return map_; }

    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;
    /// Lexicographic order on the underlying map; used for deterministic
    /// tie-breaking among equal-value alignments.
    bool operator<(const Permutation& other) const { return map_ < other.map_; }

private:
    std::vector<std::size_t> map_;
};

/// Composition convention: (q ∘ p)(i) = q(p(i)).
/// Under this convention the graph action below composes on the right:
///   apply_permutation(apply_permutation(g, p), q) == apply_permutation(g, compose(p, q)).
Permutation compose(const Permutation& q, const Permutation& p);

struct EdgeEntry {
    std::size_t i = 0;
    std::size_t j = 0;
    AttributeVector attr;
};

/// Dense n×n matrix of attribute vectors representing one attributed graph:
/// cell (i,i) holds the vertex attribute, cell (i,j), i≠j, the edge
/// attribute, and the zero vector marks an absent edge or a padded vertex.
/// The matrix is one representative of the graph's orbit under simultaneous
/// row/column permutation; all operations below are pure, so instances are
/// immutable and safe to share across threads.
class AttributedGraph {
public:
    AttributedGraph() = default;

    /// Takes ownership of `cells`, laid out as cells[(i*order + j)*attr_dim + c].
    /// If `undirected` is set, cell (i,j) must equal cell (j,i) exactly.
    AttributedGraph(std::size_t order, std::size_t attr_dim,
                    std::vector<double> cells, bool undirected);

    static AttributedGraph zeros(std::size_t order, std::size_t attr_dim,
                                 bool undirected = false);

    std::size_t order() const { return order_; }
    std::size_t attr_dim() const { return attr_dim_; }
    bool undirected() const { return undirected_; }

    std::span<const double> cell(std::size_t i, std::size_t j) const {
        return {cells_.data() + (i * order_ + j) * attr_dim_, attr_dim_};
    }
    /// True when cell (i,j) is not the zero vector.
    bool cell_nonzero(std::size_t i, std::size_t j) const;

    const std::vector<double>& cells() const { return cells_; }

    bool operator==(const AttributedGraph&) const = default;

private:
    std::size_t order_ = 0;
    std::size_t attr_dim_ = 0;
    bool undirected_ = false;
    std::vector<double> cells_;
};

/// Builds the dense matrix form from vertex attributes and an edge list.
/// The diagonal is reserved for vertex attributes, so self-loop entries and
/// duplicate edges are rejected; with `undirected` both (i,j) and (j,i) are set.
AttributedGraph from_edge_list(const std::vector<AttributeVector>& vertices,
                               const std::vector<EdgeEntry>& edges,
                               bool undirected);

/// Extends g with isolated null-attribute vertices up to order n.
/// Padding never changes the length, and after padding both arguments it
/// does not change the alignment kernel either.
AttributedGraph pad_to_order(const AttributedGraph& g, std::size_t n);

/// The group action: result(i,j) = g(p(i), p(j)). Permuting a representative
/// yields another representative of the same graph.
AttributedGraph apply_permutation(const AttributedGraph& g, const Permutation& p);

/// Sum over all n² cell pairs of the attribute dot products.
double frobenius_inner(const AttributedGraph& g, const AttributedGraph& h);

/// √frobenius_inner(g,g); invariant under apply_permutation, hence a
/// well-defined quantity of the orbit.
double length(const AttributedGraph& g);

// Representation-space arithmetic. Results carry the undirected flag only
// when both operands do. Shapes must match.
AttributedGraph add_scaled(const AttributedGraph& g, double a, const AttributedGraph& h);
AttributedGraph scaled(const AttributedGraph& g, double a);
AttributedGraph operator+(const AttributedGraph& g, const AttributedGraph& h);
AttributedGraph operator-(const AttributedGraph& g, const AttributedGraph& h);
AttributedGraph operator*(double a, const AttributedGraph& g);

/// Graphs of one common order with optional per-graph labels.
struct GraphDataset {
    std::vector<AttributedGraph> graphs;
    std::size_t common_order = 0;
    std::size_t attr_dim = 0;
    std::vector<double> labels;  // empty, or one entry per graph

    bool has_labels() const { return !labels.empty(); }

    /// Pads every graph to the maximum order present and checks attribute
    /// dimensions agree.
    static GraphDataset ingest(std::vector<AttributedGraph> graphs,
                               std::vector<double> labels = {});
};

}  // namespace orbilearn
