#include "netveil/model.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <set>

namespace netveil {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::schema: return "E_SCHEMA";
        case ErrorCode::missing_field: return "E_MISSING_FIELD";
        case ErrorCode::duplicate_site: return "E_DUP_SITE";
        case ErrorCode::disconnected: return "E_DISCONNECTED";
        case ErrorCode::negative_distance: return "E_NEG_DISTANCE";
        case ErrorCode::unknown_id: return "E_UNKNOWN_ID";
        case ErrorCode::shape_mismatch: return "E_SHAPE_MISMATCH";
        case ErrorCode::bad_parameter: return "E_BAD_PARAM";
        case ErrorCode::topology: return "E_TOPOLOGY";
        case ErrorCode::io: return "E_IO";
    }
    return "E_UNKNOWN";
}

void PrivacyParams::validate() const {
    if (!(epsilon > 0.0)) throw Error(ErrorCode::bad_parameter, "epsilon must be > 0");
    if (!(alpha_loc > 0.0)) throw Error(ErrorCode::bad_parameter, "alpha_loc must be > 0");
    if (!(alpha_val > 0.0)) throw Error(ErrorCode::bad_parameter, "alpha_val must be > 0");
    if (!(beta > 0.0)) throw Error(ErrorCode::bad_parameter, "beta must be > 0");
}

CinDescription::CinDescription(int node_count,
                               std::vector<EdgeSpec> edges,
                               std::vector<Element> elements,
                               ElementKind kind)
    : node_count_(node_count),
      edges_(std::move(edges)),
      elements_(std::move(elements)),
      kind_(kind) {
    validate();
    build_site_graph();
    if (!connected_)
        throw Error(ErrorCode::disconnected, "topology graph must be connected");
}

CinDescription::CinDescription(damaged_tag,
                               int node_count,
                               std::vector<EdgeSpec> edges,
                               std::vector<Element> elements,
                               ElementKind kind)
    : node_count_(node_count),
      edges_(std::move(edges)),
      elements_(std::move(elements)),
      kind_(kind) {
    validate();
    build_site_graph();
}

void CinDescription::validate() const {
    if (node_count_ <= 0) throw Error(ErrorCode::bad_parameter, "node count must be > 0");
    for (const auto& e : edges_) {
        if (e.u < 0 || e.u >= node_count_ || e.v < 0 || e.v >= node_count_)
            throw Error(ErrorCode::unknown_id,
                        "edge endpoint out of range: (" + std::to_string(e.u) + "," +
                            std::to_string(e.v) + ")");
        if (e.u == e.v) throw Error(ErrorCode::bad_parameter, "self-loop edges are not allowed");
        if (e.distance < 0.0 || !std::isfinite(e.distance))
            throw Error(ErrorCode::negative_distance,
                        "edge distance must be finite and >= 0");
    }
    const int sites = kind_ == ElementKind::node_sited ? node_count_
                                                       : static_cast<int>(edges_.size());
    std::set<int> seen;
    for (const auto& el : elements_) {
        if (el.site < 0 || el.site >= sites)
            throw Error(ErrorCode::unknown_id, "element site out of range: " + std::to_string(el.site));
        if (!seen.insert(el.site).second)
            throw Error(ErrorCode::duplicate_site,
                        "two elements occupy site " + std::to_string(el.site));
        if (!std::isfinite(el.value))
            throw Error(ErrorCode::bad_parameter, "element value must be finite");
    }
}

void CinDescription::build_site_graph() {
    const int sites = site_count();
    std::vector<std::vector<int>> adjacency(sites);
    if (kind_ == ElementKind::node_sited) {
        for (const auto& e : edges_) {
            adjacency[e.u].push_back(e.v);
            adjacency[e.v].push_back(e.u);
        }
    } else {
        // Line graph: edges are adjacent when they share an endpoint.
        std::vector<std::vector<int>> incident(node_count_);
        for (int i = 0; i < sites; ++i) {
            incident[edges_[i].u].push_back(i);
            incident[edges_[i].v].push_back(i);
        }
        for (const auto& node_edges : incident)
            for (std::size_t a = 0; a < node_edges.size(); ++a)
                for (std::size_t b = a + 1; b < node_edges.size(); ++b) {
                    adjacency[node_edges[a]].push_back(node_edges[b]);
                    adjacency[node_edges[b]].push_back(node_edges[a]);
                }
    }

    site_distance_.assign(sites, std::vector<int>(sites, -1));
    for (int source = 0; source < sites; ++source) {
        auto& dist = site_distance_[source];
        dist[source] = 0;
        std::deque<int> queue{source};
        while (!queue.empty()) {
            const int u = queue.front();
            queue.pop_front();
            for (int v : adjacency[u])
                if (dist[v] < 0) {
                    dist[v] = dist[u] + 1;
                    queue.push_back(v);
                }
        }
    }

    // Node connectivity (the invariant is about the topology graph; for the
    // edge-sited case the line graph of a connected graph is connected too).
    std::vector<int> node_dist(node_count_, -1);
    node_dist[0] = 0;
    std::vector<std::vector<int>> node_adj(node_count_);
    for (const auto& e : edges_) {
        node_adj[e.u].push_back(e.v);
        node_adj[e.v].push_back(e.u);
    }
    std::deque<int> queue{0};
    while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        for (int v : node_adj[u])
            if (node_dist[v] < 0) {
                node_dist[v] = node_dist[u] + 1;
                queue.push_back(v);
            }
    }
    connected_ = std::all_of(node_dist.begin(), node_dist.end(),
                             [](int d) { return d >= 0; });
}

int CinDescription::site_count() const noexcept {
    return kind_ == ElementKind::node_sited ? node_count_
                                            : static_cast<int>(edges_.size());
}

std::vector<double> CinDescription::values() const {
    std::vector<double> out;
    out.reserve(elements_.size());
    for (const auto& el : elements_) out.push_back(el.value);
    return out;
}

int CinDescription::element_at_site(int site) const {
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (elements_[i].site == site) return static_cast<int>(i);
    return -1;
}

CinDescription CinDescription::with_values(const std::vector<double>& values) const {
    if (values.size() != elements_.size())
        throw Error(ErrorCode::shape_mismatch, "value vector length != element count");
    std::vector<Element> updated = elements_;
    for (std::size_t i = 0; i < updated.size(); ++i) updated[i].value = values[i];
    CinDescription copy = *this;
    copy.elements_ = std::move(updated);
    return copy;
}

CinDescription CinDescription::with_locations(const std::vector<int>& sites) const {
    if (sites.size() != elements_.size())
        throw Error(ErrorCode::shape_mismatch, "site vector length != element count");
    std::vector<Element> updated = elements_;
    for (std::size_t i = 0; i < updated.size(); ++i) updated[i].site = sites[i];
    CinDescription copy = *this;
    copy.elements_ = std::move(updated);
    copy.validate();  // distinctness and range of the new sites
    return copy;
}

CinDescription CinDescription::without_elements(const std::vector<std::size_t>& element_ids) const {
    std::vector<bool> drop(elements_.size(), false);
    for (std::size_t id : element_ids) {
        if (id >= elements_.size())
            throw Error(ErrorCode::unknown_id, "element id out of range: " + std::to_string(id));
        drop[id] = true;
    }
    std::vector<Element> kept;
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (!drop[i]) kept.push_back(elements_[i]);

    if (kind_ == ElementKind::node_sited)
        return CinDescription(damaged_tag{}, node_count_, edges_, std::move(kept), kind_);

    // Edge-sited: delete the attacked edges and remap surviving sites.
    std::vector<bool> edge_removed(edges_.size(), false);
    for (std::size_t i = 0; i < elements_.size(); ++i)
        if (drop[i]) edge_removed[static_cast<std::size_t>(elements_[i].site)] = true;
    std::vector<EdgeSpec> surviving;
    std::vector<int> new_index(edges_.size(), -1);
    for (std::size_t e = 0; e < edges_.size(); ++e)
        if (!edge_removed[e]) {
            new_index[e] = static_cast<int>(surviving.size());
            surviving.push_back(edges_[e]);
        }
    for (auto& el : kept) el.site = new_index[static_cast<std::size_t>(el.site)];
    return CinDescription(damaged_tag{}, node_count_, std::move(surviving), std::move(kept), kind_);
}

int CinDescription::site_hop(int site_a, int site_b) const {
    const int sites = site_count();
    if (site_a < 0 || site_a >= sites || site_b < 0 || site_b >= sites)
        throw Error(ErrorCode::unknown_id, "site id out of range");
    return site_distance_[static_cast<std::size_t>(site_a)][static_cast<std::size_t>(site_b)];
}

int hop_distance(const CinDescription& network, int site_a, int site_b) {
    const int d = network.site_hop(site_a, site_b);
    if (d < 0) throw Error(ErrorCode::topology, "sites are not connected");
    return d;
}

int diameter(const CinDescription& network) {
    if (!network.connected()) throw Error(ErrorCode::disconnected, "diameter of a disconnected graph");
    const int sites = network.site_count();
    int best = 0;
    for (int i = 0; i < sites; ++i)
        for (int j = i + 1; j < sites; ++j) {
            const int d = network.site_hop(i, j);
            if (d < 0) throw Error(ErrorCode::topology, "sites are not connected");
            best = std::max(best, d);
        }
    return best;
}

bool check_adjacency(const CinDescription& a,
                     const CinDescription& b,
                     double alpha_loc,
                     double alpha_val) {
    if (a.node_count() != b.node_count() || a.kind() != b.kind() ||
        a.element_count() != b.element_count() || a.edges().size() != b.edges().size())
        throw Error(ErrorCode::shape_mismatch, "adjacency requires matching shapes");
    for (std::size_t e = 0; e < a.edges().size(); ++e) {
        const auto& ea = a.edges()[e];
        const auto& eb = b.edges()[e];
        if (ea.u != eb.u || ea.v != eb.v || ea.distance != eb.distance)
            throw Error(ErrorCode::shape_mismatch, "adjacency requires a shared topology");
    }

    std::size_t locations_differ = 0, values_differ = 0;
    std::size_t moved_index = 0, changed_index = 0;
    for (std::size_t i = 0; i < a.element_count(); ++i) {
        if (a.elements()[i].site != b.elements()[i].site) {
            ++locations_differ;
            moved_index = i;
        }
        if (a.elements()[i].value != b.elements()[i].value) {
            ++values_differ;
            changed_index = i;
        }
    }

    if (locations_differ == 1 && values_differ == 0) {
        const int d = a.site_hop(a.elements()[moved_index].site, b.elements()[moved_index].site);
        return d >= 0 && static_cast<double>(d) <= alpha_loc;
    }
    if (values_differ == 1 && locations_differ == 0) {
        const double delta = std::abs(a.elements()[changed_index].value -
                                      b.elements()[changed_index].value);
        return delta <= alpha_val;
    }
    return false;
}

}  // namespace netveil
