#include "seanet/mgmt.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

#include "seanet/errors.hpp"
#include "seanet/ontology.hpp"
#include "seanet/query.hpp"

namespace seanet::mgmt {

namespace {

using query::BindingSet;
using query::Query;

const Query& neighbor_query_from() {
    static const Query q = query::parse_query(
        "SELECT ?num ?peer WHERE { ?node net:hasPort ?p . ?p net:portNumber ?num . "
        "?l net:from ?p . ?l net:to ?q . ?peer net:hasPort ?q }");
    return q;
}

const Query& neighbor_query_to() {
    static const Query q = query::parse_query(
        "SELECT ?num ?peer WHERE { ?node net:hasPort ?p . ?p net:portNumber ?num . "
        "?l net:to ?p . ?l net:from ?q . ?peer net:hasPort ?q }");
    return q;
}

const Query& type_query() {
    static const Query q = query::parse_query("SELECT ?t WHERE { ?node rdf:type ?t }");
    return q;
}

const Query& mac_query() {
    static const Query q = query::parse_query("SELECT ?m WHERE { ?node net:hasMAC ?m }");
    return q;
}

uint32_t parse_number(const rdf::Term& literal) {
    return static_cast<uint32_t>(std::stoul(literal.text()));
}

/// Read side of the API: every topology fact comes from SPARQL evaluation
/// over one snapshot graph.
class KgView {
public:
    explicit KgView(const rdf::Graph& g) : g_(g) {}

    BindingSet run(const Query& q) const { return query::evaluate(q, g_); }

    BindingSet run_for(const Query& tmpl, const std::string& node_id) const {
        return query::evaluate(query::substitute(tmpl, "node", kg::element_iri(node_id)), g_);
    }

    bool is_host(const std::string& id) const {
        return has_type(id, ontology::vocab().host_class) ||
               has_type(id, ontology::vocab().station_class);
    }

    bool is_switch(const std::string& id) const {
        return has_type(id, ontology::vocab().switch_class) ||
               has_type(id, ontology::vocab().access_point_class);
    }

    std::string mac_of(const std::string& host_id) const {
        BindingSet rows = run_for(mac_query(), host_id);
        if (rows.rows.empty()) throw NoSuchHost(host_id + " has no MAC");
        return rows.rows.front().front().text();
    }

    std::vector<std::string> all_hosts() const {
        const auto& v = ontology::vocab();
        std::vector<std::string> out;
        for (const auto& cls : {v.host_class, v.station_class}) {
            Query q;
            q.projection = {"h"};
            q.patterns.push_back(
                query::TriplePattern{query::Variable{"h"}, v.rdf_type, cls});
            for (const auto& row : run(q).rows) out.push_back(kg::element_id(row.front()));
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    struct Hop {
        std::string peer;
        uint32_t egress;
    };

    /// Adjacent nodes with the local egress port, symmetrized over link
    /// direction, sorted by peer id, one entry per peer.
    std::vector<Hop> neighbors(const std::string& node_id) const {
        std::vector<Hop> hops;
        for (const Query* tmpl : {&neighbor_query_from(), &neighbor_query_to()})
            for (const auto& row : run_for(*tmpl, node_id).rows)
                hops.push_back(Hop{kg::element_id(row[1]), parse_number(row[0])});
        std::sort(hops.begin(), hops.end(), [](const Hop& a, const Hop& b) {
            return a.peer != b.peer ? a.peer < b.peer : a.egress < b.egress;
        });
        hops.erase(std::unique(hops.begin(), hops.end(),
                               [](const Hop& a, const Hop& b) { return a.peer == b.peer; }),
                   hops.end());
        return hops;
    }

private:
    bool has_type(const std::string& id, const rdf::Term& cls) const {
        for (const auto& row : run_for(type_query(), id).rows)
            if (row.front() == cls) return true;
        return false;
    }

    const rdf::Graph& g_;
};

struct BfsTree {
    std::map<std::string, std::string> parent;
    std::map<std::string, uint32_t> parent_egress; // egress port at the parent
    std::map<std::string, std::size_t> dist;
};

/// Breadth-first search over the knowledge-graph adjacency, expanding
/// neighbors in lexicographic order. Stops once every target is discovered,
/// so path queries between nearby hosts never walk the whole graph;
/// a null target set explores everything reachable.
BfsTree bfs(const KgView& view, const std::string& src,
            const std::set<std::string>* targets) {
    BfsTree tree;
    tree.dist[src] = 0;
    std::size_t remaining = 0;
    if (targets != nullptr) {
        remaining = targets->size();
        if (targets->count(src)) --remaining;
        if (remaining == 0) return tree;
    }
    std::deque<std::string> frontier{src};
    while (!frontier.empty()) {
        std::string at = frontier.front();
        frontier.pop_front();
        for (const auto& hop : view.neighbors(at)) {
            if (tree.dist.count(hop.peer)) continue;
            tree.dist[hop.peer] = tree.dist[at] + 1;
            tree.parent[hop.peer] = at;
            tree.parent_egress[hop.peer] = hop.egress;
            if (targets != nullptr && targets->count(hop.peer) && --remaining == 0) return tree;
            frontier.push_back(hop.peer);
        }
    }
    return tree;
}

PathResult reconstruct(const BfsTree& tree, const std::string& src, const std::string& dst) {
    PathResult path;
    std::string at = dst;
    while (at != src) {
        path.hops.push_back(at);
        path.ports.push_back(tree.parent_egress.at(at));
        at = tree.parent.at(at);
    }
    path.hops.push_back(src);
    std::reverse(path.hops.begin(), path.hops.end());
    std::reverse(path.ports.begin(), path.ports.end());
    return path;
}

bool has_arp_flood(const std::vector<netsim::FlowEntry>& table) {
    return std::any_of(table.begin(), table.end(), [](const netsim::FlowEntry& e) {
        return e.action.kind == netsim::ActionKind::Flood && e.match.ethertype &&
               *e.match.ethertype == netsim::EtherType::Arp;
    });
}

bool has_forwarding_entry(const std::vector<netsim::FlowEntry>& table, const std::string& mac) {
    return std::any_of(table.begin(), table.end(), [&](const netsim::FlowEntry& e) {
        return e.action.kind == netsim::ActionKind::Output && e.match.dst_mac &&
               *e.match.dst_mac == mac && !e.match.in_port && !e.match.ethertype;
    });
}

bool has_drop_entry(const std::vector<netsim::FlowEntry>& table, const std::string& mac) {
    return std::any_of(table.begin(), table.end(), [&](const netsim::FlowEntry& e) {
        return e.action.kind == netsim::ActionKind::Drop && e.match.dst_mac &&
               *e.match.dst_mac == mac;
    });
}

netsim::FlowEntry arp_flood_entry() {
    netsim::FlowEntry e;
    e.priority = 1;
    e.match.ethertype = netsim::EtherType::Arp;
    e.action = netsim::FlowAction{netsim::ActionKind::Flood, 0};
    return e;
}

std::size_t flow_position(const rdf::Term& flow) {
    std::string id = kg::element_id(flow);
    auto dash = id.rfind('-');
    return static_cast<std::size_t>(std::stoul(id.substr(dash + 1)));
}

std::string render(const std::string& cookie, const std::string& table,
                   const std::string& priority, const std::vector<std::string>& match_parts,
                   const std::string& action) {
    std::string match = "{";
    for (std::size_t i = 0; i < match_parts.size(); ++i) {
        if (i > 0) match += ", ";
        match += match_parts[i];
    }
    match += "}";
    return "cookie=" + cookie + ", table=" + table + ", priority=" + priority +
           ", match=" + match + ", action=" + action;
}

} // namespace

std::string render_flow_entry(const netsim::FlowEntry& e) {
    std::vector<std::string> match;
    if (e.match.in_port) match.push_back("in_port=" + std::to_string(*e.match.in_port));
    if (e.match.dst_mac) match.push_back("dst=" + *e.match.dst_mac);
    if (e.match.ethertype) match.push_back("eth=" + netsim::to_string(*e.match.ethertype));
    std::string action = netsim::to_string(e.action.kind);
    if (e.action.kind == netsim::ActionKind::Output)
        action += ":" + std::to_string(e.action.port);
    return render(std::to_string(e.cookie), std::to_string(e.table_id),
                  std::to_string(e.priority), match, action);
}

std::shared_ptr<const kg::Snapshot> ManagementApi::current_snapshot() const {
    if (pinned_) return pinned_;
    return std::make_shared<const kg::Snapshot>(kg::snapshot(net_));
}

void ManagementApi::add_flow(const AddFlowRequest& request) {
    auto snap = current_snapshot();
    KgView view(snap->graph);
    if (!view.is_switch(request.switch_id)) throw NoSuchSwitch(request.switch_id);
    if (request.action_type == netsim::ActionKind::Output && !request.to_port)
        throw MissingToPort();

    netsim::FlowEntry e;
    e.priority = 1;
    e.match.in_port = request.in_port;
    e.match.dst_mac = request.dst;
    e.action.kind = request.action_type;
    if (request.action_type == netsim::ActionKind::Output) e.action.port = *request.to_port;
    net_.install_flow(request.switch_id, std::move(e));
}

std::size_t ManagementApi::delete_flow(const std::vector<std::string>& in_hosts,
                                       const std::vector<std::string>& out_hosts) {
    auto snap = current_snapshot();
    KgView view(snap->graph);
    for (const auto& h : in_hosts)
        if (!view.is_host(h)) throw NoSuchHost(h);
    for (const auto& h : out_hosts)
        if (!view.is_host(h)) throw NoSuchHost(h);

    std::size_t removed = 0;
    for (const auto& dst : out_hosts) {
        std::string mac = view.mac_of(dst);
        std::set<std::string> on_path;
        for (const auto& src : in_hosts) {
            if (src == dst) continue;
            std::set<std::string> goal{dst};
            BfsTree tree = bfs(view, src, &goal);
            if (!tree.dist.count(dst)) continue; // no path, nothing installed along it
            PathResult path = reconstruct(tree, src, dst);
            for (std::size_t i = 1; i + 1 < path.hops.size(); ++i)
                on_path.insert(path.hops[i]);
        }
        for (const auto& sw : on_path)
            removed += net_.remove_flows(sw, [&](const netsim::FlowEntry& e) {
                return e.match.dst_mac && *e.match.dst_mac == mac;
            });
    }
    return removed;
}

bool ManagementApi::add_arp_flow(const std::string& switch_id) {
    auto snap = current_snapshot();
    KgView view(snap->graph);
    if (!view.is_switch(switch_id)) throw NoSuchSwitch(switch_id);
    if (has_arp_flood(net_.flow_table(switch_id))) return false;
    net_.install_flow(switch_id, arp_flood_entry());
    return true;
}

std::vector<std::string> ManagementApi::dump_all_flows(const std::string& switch_id) const {
    const auto& v = ontology::vocab();
    auto snap = current_snapshot();
    KgView view(snap->graph);
    if (!view.is_switch(switch_id)) throw NoSuchSwitch(switch_id);

    static const Query flows_query = query::parse_query(
        "SELECT ?f ?c ?t ?pr WHERE { ?node net:hasFlow ?f . ?f net:cookie ?c . "
        "?f net:tableId ?t . ?f net:priority ?pr }");
    BindingSet flows = view.run_for(flows_query, switch_id);

    auto value_of = [&](const rdf::Term& subject,
                        const rdf::Term& prop) -> std::optional<rdf::Term> {
        Query q;
        q.projection = {"v"};
        q.patterns.push_back(query::TriplePattern{subject, prop, query::Variable{"v"}});
        BindingSet rows = view.run(q);
        if (rows.rows.empty()) return std::nullopt;
        return rows.rows.front().front();
    };

    // rows keyed by table position, which the flow IRI carries
    std::map<std::size_t, std::string> lines;
    for (const auto& row : flows.rows) {
        const rdf::Term& flow = row[0];

        std::vector<std::string> match;
        if (auto in = value_of(flow, v.in_port)) match.push_back("in_port=" + in->text());
        if (auto dst = value_of(flow, v.match_dst)) match.push_back("dst=" + dst->text());
        if (auto eth = value_of(flow, v.match_ether_type)) match.push_back("eth=" + eth->text());

        std::string action = "drop";
        if (auto act = value_of(flow, v.has_flow_action)) {
            auto kind = value_of(*act, v.rdf_type);
            if (kind && *kind == v.flood_action_class) {
                action = "flood";
            } else if (kind && *kind == v.output_action_class) {
                action = "output";
                if (auto target = value_of(*act, v.to_port))
                    if (auto number = value_of(*target, v.port_number))
                        action += ":" + number->text();
            }
        }
        lines[flow_position(flow)] =
            render(row[1].text(), row[2].text(), row[3].text(), match, action);
    }

    std::vector<std::string> out;
    out.reserve(lines.size());
    for (auto& [pos, line] : lines) out.push_back(std::move(line));
    return out;
}

void ManagementApi::connect_all(const std::vector<std::string>& hosts) {
    if (hosts.empty()) throw std::invalid_argument("connect_all requires at least one host");
    auto snap = current_snapshot();
    KgView view(snap->graph);
    for (const auto& h : hosts)
        if (!view.is_host(h)) throw NoSuchHost(h);

    std::set<std::string> arp_done;
    auto ensure_arp = [&](const std::string& sw) {
        if (!arp_done.insert(sw).second) return;
        if (!has_arp_flood(net_.flow_table(sw))) net_.install_flow(sw, arp_flood_entry());
    };

    // every listed host's attachment switch floods ARP, peers or not
    for (const auto& h : hosts)
        for (const auto& hop : view.neighbors(h))
            if (view.is_switch(hop.peer)) ensure_arp(hop.peer);

    std::map<std::string, std::string> macs;
    for (const auto& h : hosts) macs[h] = view.mac_of(h);

    const std::set<std::string> listed_set(hosts.begin(), hosts.end());
    std::set<std::pair<std::string, std::string>> installed; // (switch, dst mac)
    for (const auto& src : hosts) {
        BfsTree tree = bfs(view, src, &listed_set);
        for (const auto& dst : hosts) {
            if (dst == src) continue;
            if (!tree.dist.count(dst))
                throw DisconnectedTopology(src + " cannot reach " + dst);
            PathResult path = reconstruct(tree, src, dst);
            const std::string& mac = macs[dst];
            for (std::size_t i = 1; i + 1 < path.hops.size(); ++i) {
                const std::string& sw = path.hops[i];
                ensure_arp(sw);
                if (!installed.insert({sw, mac}).second) continue;
                if (has_forwarding_entry(net_.flow_table(sw), mac)) continue;
                netsim::FlowEntry e;
                e.priority = 1;
                e.match.dst_mac = mac;
                e.action = netsim::FlowAction{netsim::ActionKind::Output, path.ports[i]};
                net_.install_flow(sw, std::move(e));
            }
        }
    }
}

void ManagementApi::build_firewall(const std::vector<std::string>& switches,
                                   const std::vector<std::string>& allowed_hosts) {
    if (switches.size() < 2)
        throw std::invalid_argument("build_firewall requires at least 2 switches");
    auto snap = current_snapshot();
    KgView view(snap->graph);
    for (const auto& s : switches)
        if (!view.is_switch(s)) throw NoSuchSwitch(s);
    for (const auto& h : allowed_hosts)
        if (!view.is_host(h)) throw NoSuchHost(h);

    // segment: nearest listed switch by hop count, ties to the smaller id
    std::vector<std::string> listed = switches;
    std::sort(listed.begin(), listed.end());
    listed.erase(std::unique(listed.begin(), listed.end()), listed.end());

    std::vector<std::string> hosts = view.all_hosts();
    std::map<std::string, std::string> segment;
    std::map<std::string, std::size_t> best_dist;
    for (const auto& sw : listed) {
        BfsTree tree = bfs(view, sw, nullptr);
        for (const auto& h : hosts) {
            auto it = tree.dist.find(h);
            if (it == tree.dist.end()) continue;
            if (!segment.count(h) || it->second < best_dist[h]) {
                segment[h] = sw;
                best_dist[h] = it->second;
            }
        }
    }

    std::set<std::string> allowed(allowed_hosts.begin(), allowed_hosts.end());
    for (const auto& sw : listed) {
        for (const auto& h : hosts) {
            auto seg = segment.find(h);
            if (seg == segment.end() || seg->second == sw) continue; // local or unplaced
            if (allowed.count(h)) continue;
            std::string mac = view.mac_of(h);
            if (has_drop_entry(net_.flow_table(sw), mac)) continue;
            netsim::FlowEntry e;
            e.priority = 10;
            e.match.dst_mac = mac;
            e.action = netsim::FlowAction{netsim::ActionKind::Drop, 0};
            net_.install_flow(sw, std::move(e));
        }
    }
}

PathResult ManagementApi::find_path(const std::vector<std::string>& hosts) const {
    if (hosts.size() != 2) throw std::invalid_argument("find_path requires exactly 2 hosts");
    auto snap = current_snapshot();
    KgView view(snap->graph);
    for (const auto& h : hosts)
        if (!view.is_host(h)) throw NoSuchHost(h);
    const std::string& src = hosts[0];
    const std::string& dst = hosts[1];
    if (src == dst) return PathResult{{src}, {}};
    std::set<std::string> goal{dst};
    BfsTree tree = bfs(view, src, &goal);
    if (!tree.dist.count(dst)) throw NoPath(src + " -> " + dst);
    return reconstruct(tree, src, dst);
}

} // namespace seanet::mgmt
