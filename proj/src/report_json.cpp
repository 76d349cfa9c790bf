#include "divmet/report_json.hpp"

#include <sstream>

namespace divmet {

ordered_json nat_json(const Nat& n) {
    if (mpz_fits_ulong_p(n.get_mpz_t())) return mpz_get_ui(n.get_mpz_t());
    return n.get_str();
}

ordered_json table_json(const DistanceTable& t) {
    ordered_json j;
    j["schema"] = "divmet.table/1";
    j["n"] = nat_json(t.n);
    j["description"] = t.description;
    ordered_json idx = ordered_json::array();
    for (const auto& d : t.index) idx.push_back(nat_json(d));
    j["index"] = idx;
    ordered_json rows = ordered_json::array();
    for (const auto& row : t.entries) {
        ordered_json r = ordered_json::array();
        for (const auto& q : row) r.push_back(rat_str(q));
        rows.push_back(r);
    }
    j["entries"] = rows;
    return j;
}

std::string table_csv(const DistanceTable& t) {
    std::ostringstream out;
    out << "d";
    for (const auto& d : t.index) out << "," << d.get_str();
    out << "\n";
    for (size_t i = 0; i < t.index.size(); ++i) {
        out << t.index[i].get_str();
        for (size_t jx = 0; jx < t.index.size(); ++jx) out << "," << rat_str(t.entries[i][jx]);
        out << "\n";
    }
    return out.str();
}

std::string table_text(const DistanceTable& t) {
    std::ostringstream out;
    out << "d^(" << t.n.get_str() << ") " << t.description << "\n";
    for (size_t i = 0; i < t.index.size(); ++i) {
        out << t.index[i].get_str() << ":";
        for (size_t jx = 0; jx < t.index.size(); ++jx) out << " " << rat_str(t.entries[i][jx]);
        out << "\n";
    }
    return out.str();
}

ordered_json axiom_report_json(const AxiomReport& r) {
    ordered_json j;
    j["schema"] = "divmet.axiom_report/1";
    j["identity_ok"] = r.identity_ok;
    j["symmetry_ok"] = r.symmetry_ok;
    j["triangle_ok"] = r.triangle_ok;
    j["triangle_violation_count"] = r.triangle_violation_count;
    ordered_json iw = ordered_json::array();
    for (const auto& x : r.identity_witnesses) iw.push_back(nat_json(x));
    j["identity_witnesses"] = iw;
    ordered_json sw = ordered_json::array();
    for (const auto& [x, y] : r.symmetry_witnesses) sw.push_back({nat_json(x), nat_json(y)});
    j["symmetry_witnesses"] = sw;
    ordered_json tw = ordered_json::array();
    for (const auto& [x, y, z] : r.triangle_witnesses)
        tw.push_back({nat_json(x), nat_json(y), nat_json(z)});
    j["triangle_witnesses"] = tw;
    if (r.indiscernibles_checked) {
        j["indiscernibles_ok"] = r.indiscernibles_ok;
        ordered_json dw = ordered_json::array();
        for (const auto& [x, y] : r.indiscernible_witnesses)
            dw.push_back({x.get_str(), y.get_str()});
        j["indiscernible_witnesses"] = dw;
    }
    return j;
}

ordered_json equiv_po_json(const EquivPOReport& r) {
    ordered_json j;
    j["metric"] = r.metric;
    j["center_injective"] = r.center_injective;
    j["generating_injective"] = r.generating_injective;
    j["partial_order"] = r.partial_order;
    return j;
}

ordered_json preorder_json(const Preorder& p) {
    ordered_json j;
    j["schema"] = "divmet.preorder/1";
    j["n"] = nat_json(p.n);
    j["source"] = p.source;
    ordered_json idx = ordered_json::array();
    for (const auto& d : p.index) idx.push_back(nat_json(d));
    j["index"] = idx;
    ordered_json keys = ordered_json::array();
    for (const auto& k : p.key) keys.push_back(rat_str(k));
    j["keys"] = keys;
    ordered_json rk = ordered_json::array();
    for (size_t r : p.ranks()) rk.push_back(r);
    j["ranks"] = rk;
    return j;
}

ordered_json partition_json(const DivisorPartition& p) {
    ordered_json j;
    j["schema"] = "divmet.partition/1";
    j["n"] = nat_json(p.n);
    ordered_json blocks = ordered_json::array();
    for (const auto& b : p.blocks) {
        ordered_json blk = ordered_json::array();
        for (const auto& d : b) blk.push_back(nat_json(d));
        blocks.push_back(blk);
    }
    j["blocks"] = blocks;
    return j;
}

ordered_json window_json(const WindowPartition& w) {
    ordered_json j;
    j["schema"] = "divmet.window_partition/1";
    j["a"] = w.a.get_str();
    j["b"] = w.b.get_str();
    j["block_id"] = w.block_id;
    j["block_count"] = w.block_count;
    return j;
}

namespace {

ordered_json membership_json(const ClassMembership& m) {
    ordered_json a = ordered_json::array();
    for (const auto& s : m.names()) a.push_back(s);
    return a;
}

}  // namespace

ordered_json class_report_json(const ClassReport& r) {
    ordered_json j;
    j["schema"] = "divmet.classification/1";
    j["global"] = membership_json(r.global);
    if (r.scope_n != 0) {
        j["n"] = nat_json(r.scope_n);
        if (r.on_dn) j["verified_on_dn"] = membership_json(*r.on_dn);
        j["in_gt0"] = r.in_gt0;  // I^(n)_{>0}
        j["in_eq0"] = r.in_eq0;  // I^(n)_{=0}
    }
    return j;
}

ordered_json triple_report_json(const TripleEquivalenceReport& r) {
    ordered_json j;
    j["in_gt0"] = r.in_gt0;
    j["four_way_equal"] = r.four_way_equal;
    j["addh_mulh_equal"] = r.addh_mulh_equal;
    j["ranks"] = r.ranks;
    return j;
}

ordered_json permutation_report_json(const PermutationReport& r) {
    ordered_json j;
    j["feasible"] = r.feasible;
    j["partitions_equal"] = r.partitions_equal;
    j["p1"] = partition_json(r.p1);
    j["p2"] = partition_json(r.p2);
    return j;
}

ordered_json class_count_json(const ClassCountReport& r) {
    ordered_json j;
    j["classification"] = class_report_json(r.cls);
    j["partition"] = partition_json(r.partition);
    auto lemma = [](bool app, bool holds) {
        ordered_json l;
        l["applicable"] = app;
        l["holds"] = holds;
        return l;
    };
    j["coprime_extra"] = lemma(r.coprime_extra_applicable, r.coprime_extra_holds);
    j["max_three"] = lemma(r.max_three_applicable, r.max_three_holds);
    j["not_all_equal"] = lemma(r.not_all_equal_applicable, r.not_all_equal_holds);
    j["finest_partition"] = lemma(r.finest_applicable, r.finest_holds);
    j["coarsest_partition"] = lemma(r.coarsest_applicable, r.coarsest_holds);
    j["all_applicable_hold"] = r.all_applicable_hold;
    return j;
}

ordered_json family_disjointness_json(const FamilyDisjointnessReport& r) {
    ordered_json j;
    j["n"] = nat_json(r.n);
    j["tables"] = r.table_names;
    j["pairwise_distinct"] = r.pairwise_distinct;
    ordered_json eq = ordered_json::array();
    for (const auto& [a, b] : r.equal_pairs) eq.push_back({a, b});
    j["equal_pairs"] = eq;
    return j;
}

ordered_json scan_report_json(const ScanReport& r) {
    ordered_json j;
    j["schema"] = "divmet.collision_scan/1";
    j["function"] = r.function;
    j["max"] = r.max;
    j["mode"] = scan_mode_str(r.mode);
    ordered_json chunking;
    chunking["chunk_size"] = r.chunk_size;
    chunking["num_chunks"] = r.num_chunks;
    j["chunking"] = chunking;
    if (r.mode == ScanMode::Coprime) {
        ordered_json pairs = ordered_json::array();
        for (const auto& p : r.pairs) {
            ordered_json e;
            e["x"] = p.x;
            e["y"] = p.y;
            e["value"] = rat_str(p.value);
            pairs.push_back(e);
        }
        j["collisions"] = pairs;
        j["collision_count"] = r.pairs.size();
        j["pairwise_truncated"] = r.pairwise_truncated;
    } else {
        ordered_json groups = ordered_json::array();
        for (const auto& g : r.groups) {
            ordered_json e;
            e["value"] = rat_str(g.value);
            e["members"] = g.members;
            e["member_count"] = g.member_count;
            groups.push_back(e);
        }
        j["collisions"] = groups;
        j["group_count"] = r.groups.size();
    }
    return j;
}

std::string scan_report_csv(const ScanReport& r) {
    std::ostringstream out;
    out << "value,x,y\n";
    if (r.mode == ScanMode::Coprime) {
        for (const auto& p : r.pairs) out << rat_str(p.value) << "," << p.x << "," << p.y << "\n";
    } else {
        // groups rendered as chains of adjacent members; every collision in a
        // group follows by transitivity
        for (const auto& g : r.groups)
            for (size_t i = 0; i + 1 < g.members.size(); ++i)
                out << rat_str(g.value) << "," << g.members[i] << "," << g.members[i + 1] << "\n";
    }
    return out.str();
}

ordered_json multiperfect_json(const MultiperfectReport& r) {
    ordered_json j;
    j["schema"] = "divmet.multiperfect_scan/1";
    j["max"] = r.max;
    ordered_json hits = ordered_json::array();
    for (const auto& h : r.hits) {
        ordered_json e;
        e["x"] = h.x;
        e["k"] = h.k;
        hits.push_back(e);
    }
    j["hits"] = hits;
    j["all_even"] = r.all_even;
    return j;
}

ordered_json census_json(const CensusReport& r) {
    ordered_json j;
    j["schema"] = "divmet.census/1";
    j["n"] = nat_json(r.n);
    j["functions"] = r.functions;
    ordered_json parts = ordered_json::array();
    for (const auto& p : r.distinct_partitions) parts.push_back(partition_json(p)["blocks"]);
    j["distinct_partitions"] = parts;
    j["distinct_partition_count"] = r.distinct_partitions.size();
    ordered_json pats = ordered_json::array();
    for (const auto& pat : r.distinct_patterns) pats.push_back(pat);
    j["distinct_patterns"] = pats;
    j["distinct_pattern_count"] = r.distinct_patterns.size();
    j["bound_nd"] = nat_json(r.bound_nd);
    j["bound_omega"] = nat_json(r.bound_omega);
    return j;
}

}  // namespace divmet
