#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seanet/netsim.hpp"
#include "seanet/rdf.hpp"

namespace seanet::bench {

/// One timing measurement; duration_ns is the median over `repetitions`.
struct BenchRecord {
    std::string experiment;
    std::string shape;
    std::size_t node_count = 0;
    std::size_t triple_count = 0;
    uint64_t duration_ns = 0;
    int repetitions = 0;
};

/// Flat-list store without indexes; every probe is a full scan. Exists only
/// to contrast indexed lookup against the list baseline. Callers must not
/// add duplicates.
class ScanBaselineStore {
public:
    void add(rdf::Triple t) { triples_.push_back(std::move(t)); }
    std::size_t size() const { return triples_.size(); }

    /// Same contract and result order as Graph::match.
    std::vector<rdf::Triple> match(const std::optional<rdf::Term>& s,
                                   const std::optional<rdf::Term>& p,
                                   const std::optional<rdf::Term>& o) const;

private:
    std::vector<rdf::Triple> triples_;
};

/// Times snapshot generation end-to-end, N-Triples serialization included.
std::vector<BenchRecord> bench_kg_generation(const std::vector<netsim::TopoSpec>& specs,
                                             int reps);

enum class ApiOp { ConnectAll, BuildFirewall };

/// Times the API call alone against a pre-built, pinned snapshot.
/// ConnectAll runs over the first two hosts; BuildFirewall lists every
/// switch and allows the first two hosts.
std::vector<BenchRecord> bench_api(ApiOp op, const std::vector<netsim::TopoSpec>& specs,
                                   int reps);

struct LookupRecords {
    std::vector<BenchRecord> indexed;
    std::vector<BenchRecord> scan;
};

/// Identical probe workloads against the indexed store and the scan
/// baseline; duration_ns is per-probe latency. Verifies result equality on
/// every probe before timing anything.
LookupRecords bench_lookup(const std::vector<std::size_t>& sizes, int probes, int reps);

/// Header `experiment,shape,node_count,triple_count,duration_ns,repetitions`,
/// rows sorted by (experiment, node_count, triple_count).
void write_csv(std::ostream& out, std::vector<BenchRecord> records);

} // namespace seanet::bench
