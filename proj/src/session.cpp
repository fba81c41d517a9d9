#include "seanet/session.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "seanet/errors.hpp"

namespace seanet::session {

using nlohmann::json;

json topo_spec_to_json(const netsim::TopoSpec& spec) {
    json j;
    switch (spec.shape) {
    case netsim::TopoSpec::Shape::Single:
        j["shape"] = "single";
        j["k"] = spec.k;
        break;
    case netsim::TopoSpec::Shape::Linear:
        j["shape"] = "linear";
        j["n"] = spec.n;
        break;
    case netsim::TopoSpec::Shape::Tree:
        j["shape"] = "tree";
        j["depth"] = spec.depth;
        j["fanout"] = spec.fanout;
        break;
    }
    j["wifi"] = spec.wifi;
    return j;
}

netsim::TopoSpec topo_spec_from_json(const json& j) {
    netsim::TopoSpec spec;
    std::string shape = j.at("shape").get<std::string>();
    if (shape == "single") {
        spec.shape = netsim::TopoSpec::Shape::Single;
        spec.k = j.at("k").get<uint32_t>();
    } else if (shape == "linear") {
        spec.shape = netsim::TopoSpec::Shape::Linear;
        spec.n = j.at("n").get<uint32_t>();
    } else if (shape == "tree") {
        spec.shape = netsim::TopoSpec::Shape::Tree;
        spec.depth = j.at("depth").get<uint32_t>();
        spec.fanout = j.at("fanout").get<uint32_t>();
    } else {
        throw InvalidSpec("unknown shape: " + shape);
    }
    spec.wifi = j.value("wifi", false);
    return spec;
}

json network_to_json(const netsim::Network& net) {
    json nodes = json::array();
    for (const auto& id : net.node_ids()) {
        const netsim::Node& n = net.node(id);
        json jn;
        jn["id"] = n.id;
        jn["kind"] = netsim::to_string(n.kind);
        if (netsim::is_host_like(n.kind)) jn["mac"] = n.mac;
        if (netsim::is_switch_like(n.kind)) jn["dpid"] = n.dpid;
        jn["long"] = n.longitude;
        jn["lat"] = n.latitude;
        json ports = json::array();
        for (const auto& pid : n.ports) {
            const netsim::Port& p = net.port(pid);
            ports.push_back(json{{"id", p.id}, {"number", p.number}});
        }
        jn["ports"] = ports;
        nodes.push_back(std::move(jn));
    }

    json links = json::array();
    for (const auto& lid : net.link_ids()) {
        const netsim::Link& l = net.link(lid);
        links.push_back(json{{"id", l.id}, {"a", l.port_a}, {"b", l.port_b}});
    }

    json flows = json::object();
    for (const auto& sw : net.switch_ids()) {
        const auto& table = net.flow_table(sw);
        if (table.empty()) continue;
        json jt = json::array();
        for (const netsim::FlowEntry& e : table) {
            json je;
            je["cookie"] = e.cookie;
            je["table"] = e.table_id;
            je["priority"] = e.priority;
            je["flags"] = e.flags;
            je["idle_timeout"] = e.idle_timeout;
            je["hard_timeout"] = e.hard_timeout;
            json match = json::object();
            if (e.match.in_port) match["in_port"] = *e.match.in_port;
            if (e.match.dst_mac) match["dst"] = *e.match.dst_mac;
            if (e.match.ethertype) match["eth"] = netsim::to_string(*e.match.ethertype);
            je["match"] = match;
            json action;
            action["type"] = netsim::to_string(e.action.kind);
            if (e.action.kind == netsim::ActionKind::Output) action["port"] = e.action.port;
            je["action"] = action;
            jt.push_back(std::move(je));
        }
        flows[sw] = std::move(jt);
    }

    return json{{"nodes", std::move(nodes)}, {"links", std::move(links)},
                {"flows", std::move(flows)}};
}

netsim::Network network_from_json(const json& j) {
    netsim::Network net;
    for (const auto& jn : j.at("nodes")) {
        netsim::NodeKind kind = netsim::node_kind_from_string(jn.at("kind").get<std::string>());
        net.add_node(kind, jn.at("id").get<std::string>(), jn.value("mac", ""),
                     jn.value("dpid", ""), jn.value("long", "0.000"), jn.value("lat", "0.000"));
        for (const auto& jp : jn.value("ports", json::array()))
            net.add_port_with_id(jn.at("id").get<std::string>(),
                                 jp.at("id").get<std::string>(), jp.at("number").get<uint32_t>());
    }
    for (const auto& jl : j.value("links", json::array()))
        net.add_link_with_id(jl.at("id").get<std::string>(), jl.at("a").get<std::string>(),
                             jl.at("b").get<std::string>());
    const json flows = j.value("flows", json::object());
    for (const auto& [sw, jt] : flows.items()) {
        for (const auto& je : jt) {
            netsim::FlowEntry e;
            e.cookie = je.value("cookie", uint64_t{0});
            e.table_id = je.value("table", uint32_t{0});
            e.priority = je.value("priority", int32_t{0});
            e.flags = je.value("flags", uint32_t{0});
            e.idle_timeout = je.value("idle_timeout", uint32_t{0});
            e.hard_timeout = je.value("hard_timeout", uint32_t{0});
            const json& match = je.value("match", json::object());
            if (match.contains("in_port")) e.match.in_port = match["in_port"].get<uint32_t>();
            if (match.contains("dst")) e.match.dst_mac = match["dst"].get<std::string>();
            if (match.contains("eth"))
                e.match.ethertype =
                    netsim::ether_type_from_string(match["eth"].get<std::string>());
            const json& action = je.at("action");
            std::string type = action.at("type").get<std::string>();
            if (type == "output") {
                e.action.kind = netsim::ActionKind::Output;
                e.action.port = action.at("port").get<uint32_t>();
            } else if (type == "drop") {
                e.action.kind = netsim::ActionKind::Drop;
            } else if (type == "flood") {
                e.action.kind = netsim::ActionKind::Flood;
            } else {
                throw std::invalid_argument("unknown flow action: " + type);
            }
            net.install_flow(sw, std::move(e));
        }
    }
    return net;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("cannot write file: " + path);
    out << content;
    if (!out.flush()) throw std::runtime_error("failed writing file: " + path);
}

netsim::Network load_network(const std::string& path) {
    json j = json::parse(read_file(path));
    if (j.contains("nodes")) return network_from_json(j);
    return netsim::build_topology(topo_spec_from_json(j));
}

void save_network(const netsim::Network& net, const std::string& path) {
    write_file(path, network_to_json(net).dump(2) + "\n");
}

} // namespace seanet::session
