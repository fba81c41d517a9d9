#include <atomic>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "seanet/bench.hpp"
#include "seanet/errors.hpp"
#include "seanet/kg.hpp"
#include "seanet/mgmt.hpp"
#include "seanet/netsim.hpp"
#include "seanet/query.hpp"
#include "seanet/rdf.hpp"
#include "seanet/session.hpp"

namespace {

using namespace seanet;

netsim::TopoSpec spec_from_flags(const std::string& shape, uint32_t k, uint32_t n,
                                 uint32_t depth, uint32_t fanout, bool wifi) {
    netsim::TopoSpec spec;
    if (shape == "single") {
        spec.shape = netsim::TopoSpec::Shape::Single;
        spec.k = k;
    } else if (shape == "linear") {
        spec.shape = netsim::TopoSpec::Shape::Linear;
        spec.n = n;
    } else {
        spec.shape = netsim::TopoSpec::Shape::Tree;
        spec.depth = depth;
        spec.fanout = fanout;
    }
    spec.wifi = wifi;
    return spec;
}

void write_snapshot_file(const kg::Snapshot& snap, const std::string& out) {
    // write-then-rename so watchers never observe a partial graph
    std::string bytes = rdf::serialize_ntriples(snap.graph);
    std::string tmp = out + ".tmp";
    session::write_file(tmp, bytes);
    if (std::rename(tmp.c_str(), out.c_str()) != 0)
        throw std::runtime_error("cannot move snapshot into place: " + out);
}

void print_bindings(std::ostream& os, const query::BindingSet& result) {
    for (std::size_t i = 0; i < result.variables.size(); ++i)
        os << (i > 0 ? "\t" : "") << "?" << result.variables[i];
    os << "\n";
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i)
            os << (i > 0 ? "\t" : "") << row[i].ntriples();
        os << "\n";
    }
}

struct CliState {
    // topo create
    std::string shape;
    uint32_t k = 1, n = 1, depth = 1, fanout = 2;
    bool wifi = false;
    std::string out;

    // kg snapshot
    std::string topo_file;
    bool watch = false;
    double interval_s = 5.0;
    uint64_t max_ticks = 0;

    // query
    std::string kg_file;
    std::string query_file;

    // api
    std::string session_file;
    std::string switch_id;
    std::string dst;
    int64_t in_port = -1;
    std::string action;
    int64_t to_port = -1;
    std::vector<std::string> hosts;
    std::vector<std::string> in_hosts;
    std::vector<std::string> out_hosts;
    std::vector<std::string> switches;
    std::vector<std::string> allow;

    // bench
    int reps = 5;
    int probes = 10000;
    std::vector<std::size_t> sizes = {1000, 10000, 100000};
};

int run(int argc, char** argv) {
    CLI::App app{"Knowledge-graph driven management of a simulated software-defined network"};
    app.require_subcommand(1);
    CliState st;

    // ---- topo
    auto* topo = app.add_subcommand("topo", "Topology files");
    topo->require_subcommand(1);
    auto* create = topo->add_subcommand("create", "Generate a topology file");
    create->add_option("--shape", st.shape, "single|linear|tree")
        ->required()
        ->check(CLI::IsMember({"single", "linear", "tree"}));
    create->add_option("--k", st.k, "hosts per switch (single)");
    create->add_option("--n", st.n, "switch count (linear)");
    create->add_option("--depth", st.depth, "tree depth");
    create->add_option("--fanout", st.fanout, "tree fanout");
    create->add_flag("--wifi", st.wifi, "access points and stations instead of switches/hosts");
    create->add_option("--out", st.out, "output file")->required();
    create->callback([&st] {
        netsim::TopoSpec spec =
            spec_from_flags(st.shape, st.k, st.n, st.depth, st.fanout, st.wifi);
        netsim::build_topology(spec); // validates parameters
        session::write_file(st.out, session::topo_spec_to_json(spec).dump(2) + "\n");
    });

    // ---- kg
    auto* kgc = app.add_subcommand("kg", "Knowledge graph generation");
    kgc->require_subcommand(1);
    auto* snap_cmd = kgc->add_subcommand("snapshot", "Write the network as N-Triples");
    snap_cmd->add_option("--topo", st.topo_file, "topology or session file")->required();
    snap_cmd->add_option("--out", st.out, "output .nt file")->required();
    snap_cmd->add_flag("--watch", st.watch, "refresh periodically");
    snap_cmd->add_option("--interval", st.interval_s, "refresh interval in seconds (default 5)");
    snap_cmd->add_option("--max-ticks", st.max_ticks,
                         "stop --watch after this many snapshots (0 = run until killed)");
    snap_cmd->callback([&st] {
        netsim::Network net = session::load_network(st.topo_file);
        if (!st.watch) {
            write_snapshot_file(kg::snapshot(net), st.out);
            return;
        }
        std::atomic<uint64_t> ticks{0};
        auto interval =
            std::chrono::milliseconds(static_cast<int64_t>(st.interval_s * 1000.0));
        kg::PeriodicSnapshotter snapper(
            net, interval, [&st, &ticks](std::shared_ptr<const kg::Snapshot> snap) {
                write_snapshot_file(*snap, st.out);
                ++ticks;
            });
        while (st.max_ticks == 0 || ticks.load() < st.max_ticks)
            std::this_thread::sleep_for(std::chrono::milliseconds(20));
        snapper.stop();
    });

    // ---- query
    auto* query_cmd = app.add_subcommand("query", "Evaluate a query over a .nt file");
    query_cmd->add_option("--kg", st.kg_file, "N-Triples file")->required();
    query_cmd->add_option("--file", st.query_file, ".rq query file")->required();
    query_cmd->callback([&st] {
        rdf::Graph g = rdf::parse_ntriples(session::read_file(st.kg_file));
        query::Query q = query::parse_query(session::read_file(st.query_file));
        print_bindings(std::cout, query::evaluate(q, g));
    });

    // ---- api
    auto* api = app.add_subcommand("api", "Management operations on a session file");
    api->require_subcommand(1);

    auto add_session = [&st](CLI::App* cmd) {
        cmd->add_option("--session", st.session_file, "session file (network state)")
            ->required();
    };

    auto* add_flow = api->add_subcommand("add-flow", "Add a flow entry to a switch");
    add_session(add_flow);
    add_flow->add_option("--switch", st.switch_id)->required();
    add_flow->add_option("--dst", st.dst, "destination MAC to match");
    add_flow->add_option("--in-port", st.in_port, "ingress port number to match");
    add_flow->add_option("--action", st.action, "output|drop|flood")
        ->required()
        ->check(CLI::IsMember({"output", "drop", "flood"}));
    add_flow->add_option("--to-port", st.to_port, "output port number");
    add_flow->callback([&st] {
        netsim::Network net = session::load_network(st.session_file);
        mgmt::ManagementApi mapi(net);
        mgmt::AddFlowRequest req;
        req.switch_id = st.switch_id;
        if (!st.dst.empty()) req.dst = st.dst;
        if (st.in_port >= 0) req.in_port = static_cast<uint32_t>(st.in_port);
        if (st.action == "output")
            req.action_type = netsim::ActionKind::Output;
        else if (st.action == "drop")
            req.action_type = netsim::ActionKind::Drop;
        else
            req.action_type = netsim::ActionKind::Flood;
        if (st.to_port >= 0) req.to_port = static_cast<uint32_t>(st.to_port);
        mapi.add_flow(req);
        session::save_network(net, st.session_file);
    });

    auto* delete_flow = api->add_subcommand("delete-flow", "Delete flows along host paths");
    add_session(delete_flow);
    delete_flow->add_option("--in-hosts", st.in_hosts)->delimiter(',');
    delete_flow->add_option("--out-hosts", st.out_hosts)->delimiter(',');
    delete_flow->callback([&st] {
        netsim::Network net = session::load_network(st.session_file);
        mgmt::ManagementApi mapi(net);
        std::size_t removed = mapi.delete_flow(st.in_hosts, st.out_hosts);
        session::save_network(net, st.session_file);
        std::cout << "removed: " << removed << "\n";
    });

    auto* arp = api->add_subcommand("add-arp-flow", "Install an ARP flood entry if needed");
    add_session(arp);
    arp->add_option("--switch", st.switch_id)->required();
    arp->callback([&st] {
        netsim::Network net = session::load_network(st.session_file);
        mgmt::ManagementApi mapi(net);
        bool installed = mapi.add_arp_flow(st.switch_id);
        session::save_network(net, st.session_file);
        std::cout << "installed: " << (installed ? "true" : "false") << "\n";
    });

    auto* dump = api->add_subcommand("dump-flows", "List a switch's flow entries");
    add_session(dump);
    dump->add_option("--switch", st.switch_id)->required();
    dump->callback([&st] {
        netsim::Network net = session::load_network(st.session_file);
        mgmt::ManagementApi mapi(net);
        for (const auto& line : mapi.dump_all_flows(st.switch_id)) std::cout << line << "\n";
    });

    auto* connect = api->add_subcommand("connect-all", "Install forwarding between hosts");
    add_session(connect);
    connect->add_option("--hosts", st.hosts, "hosts to connect (default: all)")
        ->delimiter(',');
    connect->callback([&st] {
        netsim::Network net = session::load_network(st.session_file);
        mgmt::ManagementApi mapi(net);
        mapi.connect_all(st.hosts.empty() ? net.host_ids() : st.hosts);
        session::save_network(net, st.session_file);
    });

    auto* firewall = api->add_subcommand("firewall", "Build a firewall between switches");
    add_session(firewall);
    firewall->add_option("--switches", st.switches)->required()->delimiter(',');
    firewall->add_option("--allow", st.allow, "hosts kept connected")->delimiter(',');
    firewall->callback([&st] {
        netsim::Network net = session::load_network(st.session_file);
        mgmt::ManagementApi mapi(net);
        mapi.build_firewall(st.switches, st.allow);
        session::save_network(net, st.session_file);
    });

    auto* find_path = api->add_subcommand("find-path", "Shortest path between two hosts");
    add_session(find_path);
    find_path->add_option("--hosts", st.hosts)->required()->delimiter(',');
    find_path->callback([&st] {
        netsim::Network net = session::load_network(st.session_file);
        mgmt::ManagementApi mapi(net);
        mgmt::PathResult path = mapi.find_path(st.hosts);
        std::cout << "path:";
        for (const auto& hop : path.hops) std::cout << " " << hop;
        std::cout << "\nports:";
        for (uint32_t p : path.ports) std::cout << " " << p;
        std::cout << "\n";
    });

    // ---- bench
    auto* bench_cmd = app.add_subcommand("bench", "Timing harness, writes CSV");
    bench_cmd->require_subcommand(1);

    auto* bench_kg = bench_cmd->add_subcommand("kg", "Snapshot generation vs network size");
    bench_kg->add_option("--out", st.out)->required();
    bench_kg->add_option("--reps", st.reps, "repetitions per point (>= 5)");
    bench_kg->callback([&st] {
        using netsim::TopoSpec;
        std::vector<TopoSpec> specs;
        for (uint32_t k : {10, 50, 100, 200, 400, 800})
            specs.push_back(TopoSpec{TopoSpec::Shape::Single, k, 1, 1, 2, false});
        for (uint32_t n : {5, 10, 25, 50})
            specs.push_back(TopoSpec{TopoSpec::Shape::Linear, 1, n, 1, 2, false});
        for (auto [d, f] : {std::pair<uint32_t, uint32_t>{2, 2}, {2, 5}, {3, 2}, {3, 5}})
            specs.push_back(TopoSpec{TopoSpec::Shape::Tree, 1, 1, d, f, false});
        std::ofstream out(st.out);
        bench::write_csv(out, bench::bench_kg_generation(specs, st.reps));
    });

    auto* bench_api_cmd = bench_cmd->add_subcommand("api", "API latency vs knowledge-graph size");
    bench_api_cmd->add_option("--out", st.out)->required();
    bench_api_cmd->add_option("--reps", st.reps, "repetitions per point (>= 5)");
    bench_api_cmd->callback([&st] {
        using netsim::TopoSpec;
        std::vector<TopoSpec> trees;
        for (auto [d, f] : {std::pair<uint32_t, uint32_t>{1, 2}, {2, 2}, {2, 3}, {3, 3},
                            {3, 4}, {3, 5}})
            trees.push_back(TopoSpec{TopoSpec::Shape::Tree, 1, 1, d, f, false});
        std::vector<TopoSpec> linears;
        for (uint32_t n : {2, 4, 8, 16, 32, 64})
            linears.push_back(TopoSpec{TopoSpec::Shape::Linear, 1, n, 1, 2, false});
        auto records = bench::bench_api(bench::ApiOp::ConnectAll, trees, st.reps);
        auto firewall_records =
            bench::bench_api(bench::ApiOp::BuildFirewall, linears, st.reps);
        records.insert(records.end(), firewall_records.begin(), firewall_records.end());
        std::ofstream out(st.out);
        bench::write_csv(out, std::move(records));
    });

    auto* bench_lookup_cmd =
        bench_cmd->add_subcommand("lookup", "Indexed store vs list-scan baseline");
    bench_lookup_cmd->add_option("--out", st.out)->required();
    bench_lookup_cmd->add_option("--sizes", st.sizes, "store sizes in triples")->delimiter(',');
    bench_lookup_cmd->add_option("--probes", st.probes, "probes per size (>= 1000)");
    bench_lookup_cmd->add_option("--reps", st.reps, "repetitions (>= 5)");
    bench_lookup_cmd->callback([&st] {
        bench::LookupRecords records = bench::bench_lookup(st.sizes, st.probes, st.reps);
        std::vector<bench::BenchRecord> all = records.indexed;
        all.insert(all.end(), records.scan.begin(), records.scan.end());
        std::ofstream out(st.out);
        bench::write_csv(out, std::move(all));
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2; // help prints and exits 0; usage errors exit 2
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const seanet::InvalidSpec& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const seanet::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "bad input file: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return 1;
    }
}
