#include <CLI11.hpp>

#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>

#include "divmet/report_json.hpp"

using namespace divmet;

namespace {

int default_jobs() {
    const char* env = std::getenv("DIVMET_JOBS");
    if (!env) return 0;
    return std::atoi(env);
}

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

PseudometricSpec spec_from(const std::string& func, const std::string& comb, const std::string& n) {
    auto c = parse_combinator(comb);
    if (!c) throw std::invalid_argument("unknown combinator: '" + comb + "'");
    return make_spec(resolve_function(func), *c, parse_nat(n));
}

uint64_t parse_scan_max(const std::string& s) {
    Nat n = parse_nat(s);
    if (!mpz_fits_ulong_p(n.get_mpz_t()))
        throw std::invalid_argument("scan range too large: " + s);
    return mpz_get_ui(n.get_mpz_t());
}

int run(int argc, char** argv) {
    CLI::App app{"divisor pseudometrics, preorders and partitions of Z; exact arithmetic throughout"};
    app.require_subcommand(1);

    std::string arg_n, arg_func, arg_x, arg_comb, arg_mode = "all", arg_format = "json";
    std::string arg_values, arg_perm, arg_funcs, arg_checkpoint, arg_h;
    std::string arg_max;
    int arg_jobs = default_jobs();
    bool flag_metric = false;
    std::vector<std::string> arg_window;

    auto* c_factor = app.add_subcommand("factor", "prime factorization of N");
    c_factor->add_option("N", arg_n)->required();

    auto* c_divisors = app.add_subcommand("divisors", "divisor set D_N and prime powers P*_N");
    c_divisors->add_option("N", arg_n)->required();

    const char* func_help =
        "built-in name (sigma, phi, nd, pillai, bigomega, omega, ld, deriv, recip, "
        "sigma_over_x, phi_over_x2, chi:K, exp_neg:bigomega, ...) or a JSON prime-power spec";
    auto* c_eval = app.add_subcommand("eval", "evaluate FUNC at X");
    c_eval->add_option("FUNC", arg_func, func_help)->required();
    c_eval->add_option("X", arg_x)->required();

    auto* c_classify = app.add_subcommand("classify", "admissible-class membership of FUNC");
    c_classify->add_option("FUNC", arg_func)->required();
    c_classify->add_option("--n", arg_n);

    auto* c_table = app.add_subcommand("table", "materialized distance table on D_n");
    c_table->add_option("--func", arg_func)->required();
    c_table->add_option("--comb", arg_comb)->required();
    c_table->add_option("--n", arg_n)->required();
    c_table->add_option("--format", arg_format)->check(CLI::IsMember({"json", "csv", "text"}));

    auto* c_verify = app.add_subcommand("verify", "exhaustive pseudometric axiom verification");
    c_verify->add_option("--func", arg_func)->required();
    c_verify->add_option("--comb", arg_comb)->required();
    c_verify->add_option("--n", arg_n)->required();
    c_verify->add_flag("--metric", flag_metric, "additionally check identity of indiscernibles");
    c_verify->add_option("--window", arg_window, "indiscernibles over an integer window A B")
        ->expected(2);

    auto* c_preorder = app.add_subcommand("preorder", "induced preorder keys and ranks on D_n");
    c_preorder->add_option("--func", arg_func)->required();
    c_preorder->add_option("--comb", arg_comb)->required();
    c_preorder->add_option("--n", arg_n)->required();

    auto* c_partition = app.add_subcommand("partition", "quotient partitions of D_n");
    c_partition->add_option("--func", arg_func)->required();
    c_partition->add_option("--comb", arg_comb)->required();
    c_partition->add_option("--n", arg_n)->required();
    c_partition->add_option("--window", arg_window, "extend to the integer window A B")->expected(2);

    auto* c_triple = app.add_subcommand("triple", "four-preorder equivalence for an I-family function");
    c_triple->set_help_flag("--help", "print help");  // frees --h
    c_triple->add_option("--h", arg_h)->required();
    c_triple->add_option("--n", arg_n)->required();

    auto* c_permute = app.add_subcommand("permute", "quotient invariance under P*_n value permutation");
    c_permute->add_option("--n", arg_n)->required();
    c_permute->add_option("--values", arg_values, "JSON map prime power -> rational")->required();
    c_permute->add_option("--perm", arg_perm, "JSON index permutation of sorted P*_n")->required();

    auto* c_scan = app.add_subcommand("scan", "high-throughput exact scanners");
    c_scan->require_subcommand(1);
    auto* c_coll = c_scan->add_subcommand("collisions", "equal-value pairs of FUNC on [1, N]");
    c_coll->add_option("--func", arg_func)->required();
    c_coll->add_option("--max", arg_max)->required();
    c_coll->add_option("--mode", arg_mode)->check(CLI::IsMember({"all", "coprime", "squarefree"}));
    c_coll->add_option("--jobs", arg_jobs);
    c_coll->add_option("--checkpoint", arg_checkpoint);
    c_coll->add_option("--format", arg_format)->check(CLI::IsMember({"json", "csv"}));
    auto* c_mp = c_scan->add_subcommand("multiperfect", "x <= N with sigma(x) = k x, k >= 2");
    c_mp->add_option("--max", arg_max)->required();
    c_mp->add_option("--jobs", arg_jobs);

    auto* c_bounds = app.add_subcommand("bounds", "partition-count bounds p(nd(N)-1), p(Omega(N)-1)");
    c_bounds->add_option("N", arg_n)->required();

    auto* c_census = app.add_subcommand("census", "distinct quotient partitions over a function list");
    c_census->add_option("--n", arg_n)->required();
    c_census->add_option("--funcs", arg_funcs, "comma-separated names, or 'all'")->required();

    CLI11_PARSE(app, argc, argv);

    if (c_factor->parsed()) {
        Factorization f = factorize(parse_nat(arg_n));
        ordered_json j;
        j["n"] = nat_json(f.n);
        ordered_json pairs = ordered_json::array();
        for (const auto& pp : f.pairs) pairs.push_back({nat_json(pp.prime), pp.exponent});
        j["factors"] = pairs;
        emit(j);
    } else if (c_divisors->parsed()) {
        DivisorSet ds = divisor_set(parse_nat(arg_n));
        ordered_json j;
        j["n"] = nat_json(ds.n);
        ordered_json divs = ordered_json::array(), pps = ordered_json::array();
        for (const auto& d : ds.divisors) divs.push_back(nat_json(d));
        for (const auto& q : ds.prime_powers) pps.push_back(nat_json(q));
        j["divisors"] = divs;
        j["prime_powers"] = pps;
        emit(j);
    } else if (c_eval->parsed()) {
        Value v = resolve_function(arg_func)(parse_nat(arg_x));
        if (v.kind == ValueKind::Exact)
            std::cout << rat_str(v.key) << "\n";
        else
            std::cout << "orderkey:" << v.label << ":" << rat_str(v.key) << "\n";
    } else if (c_classify->parsed()) {
        std::optional<Nat> n;
        if (!arg_n.empty()) n = parse_nat(arg_n);
        emit(class_report_json(classify(resolve_function(arg_func), n)));
    } else if (c_table->parsed()) {
        DistanceTable t = build_table(spec_from(arg_func, arg_comb, arg_n));
        if (arg_format == "json") emit(table_json(t));
        else if (arg_format == "csv") std::cout << table_csv(t);
        else std::cout << table_text(t);
    } else if (c_verify->parsed()) {
        DistanceTable t = build_table(spec_from(arg_func, arg_comb, arg_n));
        // only the scanners are threaded; every other command stays serial
        AxiomReport rep = verify_pseudometric_serial(t);
        bool ok = rep.all_axioms_ok();
        if (flag_metric || !arg_window.empty()) {
            AxiomReport ind = arg_window.empty()
                                  ? verify_indiscernibles(t)
                                  : verify_indiscernibles_window(t, Int(arg_window[0]),
                                                                 Int(arg_window[1]));
            rep.indiscernibles_checked = true;
            rep.indiscernibles_ok = ind.indiscernibles_ok;
            rep.indiscernible_witnesses = ind.indiscernible_witnesses;
            ok = ok && ind.indiscernibles_ok;
        }
        emit(axiom_report_json(rep));
        return ok ? 0 : 1;
    } else if (c_preorder->parsed()) {
        emit(preorder_json(induced_preorder(spec_from(arg_func, arg_comb, arg_n))));
    } else if (c_partition->parsed()) {
        PseudometricSpec spec = spec_from(arg_func, arg_comb, arg_n);
        DistanceTable t = build_table(spec);
        DivisorPartition by_metric = quotient_by_metric(t);
        DivisorPartition by_preorder = quotient_by_preorder(induced_preorder(t));
        ordered_json j;
        j["by_metric"] = partition_json(by_metric);
        j["by_preorder"] = partition_json(by_preorder);
        j["refinement_ok"] = refinement_check(by_metric, by_preorder);
        if (!arg_window.empty())
            j["window"] = window_json(
                extend_to_window(by_preorder, Int(arg_window[0]), Int(arg_window[1])));
        emit(j);
    } else if (c_triple->parsed()) {
        TripleEquivalenceReport rep = triple_equivalence(resolve_function(arg_h), parse_nat(arg_n));
        emit(triple_report_json(rep));
        bool ok = rep.in_gt0 ? rep.four_way_equal : rep.addh_mulh_equal;
        return ok ? 0 : 1;
    } else if (c_permute->parsed()) {
        nlohmann::json jv = nlohmann::json::parse(arg_values);
        std::map<Nat, Rat> values;
        for (auto& [k, v] : jv.items()) values[parse_nat(k)] = parse_rat(v.get<std::string>());
        nlohmann::json jp = nlohmann::json::parse(arg_perm);
        std::vector<size_t> perm = jp.get<std::vector<size_t>>();
        PermutationReport rep = permutation_invariance(values, perm, parse_nat(arg_n));
        emit(permutation_report_json(rep));
        return (!rep.feasible || rep.partitions_equal) ? 0 : 1;
    } else if (c_coll->parsed()) {
        ScanReport rep = scan_collisions(resolve_function(arg_func),
                                         parse_scan_max(arg_max),
                                         parse_scan_mode(arg_mode), arg_jobs, arg_checkpoint);
        std::cerr << "elapsed: " << rep.elapsed_seconds << " s\n";
        if (arg_format == "csv") std::cout << scan_report_csv(rep);
        else emit(scan_report_json(rep));
    } else if (c_mp->parsed()) {
        MultiperfectReport rep =
            scan_multiperfect(parse_scan_max(arg_max), arg_jobs);
        std::cerr << "elapsed: " << rep.elapsed_seconds << " s\n";
        emit(multiperfect_json(rep));
    } else if (c_bounds->parsed()) {
        auto [pnd, pomega] = partition_bounds(parse_nat(arg_n));
        ordered_json j;
        j["p_nd"] = nat_json(pnd);
        j["p_omega"] = nat_json(pomega);
        emit(j);
    } else if (c_census->parsed()) {
        std::vector<ArithmeticFunction> fns;
        if (arg_funcs == "all") {
            for (const auto& f : catalog()) fns.push_back(f);
        } else {
            std::string rest = arg_funcs;
            while (!rest.empty()) {
                auto comma = rest.find(',');
                fns.push_back(resolve_function(rest.substr(0, comma)));
                rest = comma == std::string::npos ? std::string() : rest.substr(comma + 1);
            }
        }
        emit(census_json(partition_census(parse_nat(arg_n), fns)));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
