#pragma once

#include <string>

#include "seanet/netsim.hpp"

#include "json.hpp"

namespace seanet::session {

nlohmann::json topo_spec_to_json(const netsim::TopoSpec& spec);
netsim::TopoSpec topo_spec_from_json(const nlohmann::json& j);

/// Full network dump: nodes with ports, links, flow tables, plus the
/// generating topology spec when known.
nlohmann::json network_to_json(const netsim::Network& net);
netsim::Network network_from_json(const nlohmann::json& j);

/// Accepts either a network dump (has "nodes") or a bare topology spec,
/// which is built on the fly. This lets `topo create` output seed a session.
netsim::Network load_network(const std::string& path);
void save_network(const netsim::Network& net, const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

} // namespace seanet::session
