#ifndef NETVEIL_MODEL_HPP
#define NETVEIL_MODEL_HPP

#include <cstdint>
#include <vector>

#include "netveil/errors.hpp"

namespace netveil {

// Whether the sensitive elements sit on nodes (generators at buses) or on
// edges (traffic counters on road segments). Site ids are node ids in the
// first case and edge indices in the second.
enum class ElementKind { node_sited, edge_sited };

struct EdgeSpec {
    int u = 0;
    int v = 0;
    double distance = 0.0;  // public physical length, >= 0

    friend bool operator==(const EdgeSpec&, const EdgeSpec&) = default;
};

struct Element {
    int site = 0;        // node id or edge index, by kind
    double value = 0.0;  // MW capacity / traffic volume

    friend bool operator==(const Element&, const Element&) = default;
};

// Immutable network dataset: public topology plus the sensitive
// (location, value) pairs. All invariants are checked at construction;
// instances are safe to share across threads.
class CinDescription {
  public:
    CinDescription(int node_count,
                   std::vector<EdgeSpec> edges,
                   std::vector<Element> elements,
                   ElementKind kind);

    int node_count() const noexcept { return node_count_; }
    const std::vector<EdgeSpec>& edges() const noexcept { return edges_; }
    const std::vector<Element>& elements() const noexcept { return elements_; }
    ElementKind kind() const noexcept { return kind_; }

    int site_count() const noexcept;
    std::size_t element_count() const noexcept { return elements_.size(); }

    // Cached hop distance between two sites; -1 if unreachable (possible
    // only on damaged copies).
    int site_hop(int site_a, int site_b) const;

    std::vector<double> values() const;

    // Element index occupying the given site, or -1.
    int element_at_site(int site) const;

    // Copy with per-element values replaced (locations untouched).
    CinDescription with_values(const std::vector<double>& values) const;

    // Copy with per-element locations replaced (values travel with their
    // elements).
    CinDescription with_locations(const std::vector<int>& sites) const;

    // Copy with the listed elements deleted. For edge-sited elements the
    // underlying edges are removed from the topology as well, which may
    // disconnect the graph; the damaged copy skips the connectivity check.
    CinDescription without_elements(const std::vector<std::size_t>& element_ids) const;

    bool connected() const noexcept { return connected_; }

    friend bool operator==(const CinDescription&, const CinDescription&) = default;

  private:
    struct damaged_tag {};
    CinDescription(damaged_tag,
                   int node_count,
                   std::vector<EdgeSpec> edges,
                   std::vector<Element> elements,
                   ElementKind kind);

    void build_site_graph();
    void validate() const;

    int node_count_ = 0;
    std::vector<EdgeSpec> edges_;
    std::vector<Element> elements_;
    ElementKind kind_ = ElementKind::node_sited;
    bool connected_ = false;
    // All-pairs hop distances between sites (node graph or line graph).
    // -1 marks unreachable pairs on damaged copies.
    std::vector<std::vector<int>> site_distance_;
};

struct PrivacyParams {
    double epsilon = 1.0;    // privacy loss, > 0
    double alpha_loc = 1.0;  // location radius in hops, > 0
    double alpha_val = 0.1;  // value radius in value units, > 0
    double beta = 0.1;       // relative faithfulness tolerance, > 0
    std::uint64_t seed = 0;

    void validate() const;
};

// Minimum number of intermediate hops between two sites of the same kind.
// Node-sited: shortest path in the topology graph. Edge-sited: shortest path
// in the line graph (edges adjacent iff they share an endpoint).
int hop_distance(const CinDescription& network, int site_a, int site_b);

// Largest hop distance over all site pairs.
int diameter(const CinDescription& network);

// Neighborhood predicate used by the privacy tests: true iff exactly one
// element moved by at most alpha_loc hops (values identical), or exactly one
// value changed by at most alpha_val (locations identical). Identical
// datasets are not adjacent.
bool check_adjacency(const CinDescription& a,
                     const CinDescription& b,
                     double alpha_loc,
                     double alpha_val);

}  // namespace netveil

#endif
