// flmm: exact fractional linear matroid matching toolkit.
//
// Subcommands: solve, oracle, weights gen, lattice {decompose,lambda,near},
// hitset {gen,test}, gen {graph,random,intersection}, selfcheck.
// Exit codes: 0 success, 1 input error, 2 no matching / no witness,
// 3 guard or budget exceeded.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "flmm/hitting_set.hpp"
#include "flmm/io.hpp"
#include "flmm/lattice.hpp"
#include "flmm/oracle.hpp"
#include "flmm/selfcheck.hpp"
#include "flmm/solver.hpp"
#include "flmm/weights.hpp"

namespace {

using namespace flmm;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNoMatching = 2;
constexpr int kExitGuard = 3;

struct FamilyFlags {
    std::string mode = "auto";  // auto picks brute for m <= 4, gtv otherwise
    u64 brute_cap = 4;
    u64 gtv_t = 8;
    u64 gtv_q = 8;
    u64 weight_cap = 1 << 20;

    weights::FamilyParams resolve(std::size_t m) const {
        weights::FamilyParams p;
        p.brute_cap = brute_cap;
        p.gtv_t = gtv_t;
        p.gtv_q = gtv_q;
        p.weight_cap = weight_cap;
        if (mode == "brute" || (mode == "auto" && m <= 4)) {
            p.mode = weights::FamilyMode::kBrute;
        } else {
            p.mode = weights::FamilyMode::kGtv;
        }
        return p;
    }
};

void add_family_flags(CLI::App* cmd, FamilyFlags& ff) {
    cmd->add_option("--mode", ff.mode, "weight family mode")
        ->check(CLI::IsMember({"auto", "brute", "gtv"}))
        ->capture_default_str();
    cmd->add_option("--brute-cap", ff.brute_cap, "brute mode weight cap K")->capture_default_str();
    cmd->add_option("--gtv-t", ff.gtv_t, "gtv mode power base bound T")->capture_default_str();
    cmd->add_option("--gtv-q", ff.gtv_q, "gtv mode prime modulus bound Q")->capture_default_str();
    cmd->add_option("--weight-cap", ff.weight_cap, "largest allowed weight")->capture_default_str();
}

json halfint_to_json(const HalfIntegralVector& y) {
    json a = json::array();
    for (std::size_t i = 0; i < y.size(); ++i) a.push_back(y.twice(i));
    return a;
}

json tuple_to_json(const hitset::HittingTuple& t, u64 prime) {
    json blocks = json::array();
    for (const auto& m : t.t)
        blocks.push_back(json::array({json::array({m.at(0, 0), m.at(0, 1)}), json::array({m.at(1, 0), m.at(1, 1)})}));
    return json{{"w", t.w.w}, {"abcd", t.abcd}, {"T", blocks}, {"prime", prime}, {"index", t.index}};
}

int run_solve(const std::string& path, const FamilyFlags& ff, int trials, u64 seed, bool parallel,
              const std::optional<std::string>& weighted_csv) {
    Instance inst = io::load_instance_file(path);
    weights::WeightFamily fam(inst.m(), ff.resolve(inst.m()));
    solver::ProbeSettings settings;
    settings.trials = trials;
    settings.rng_seed = seed;
    settings.parallel = parallel;

    solver::SolveReport rep;
    json extra;
    if (weighted_csv) {
        std::vector<u64> v = io::parse_csv_u64(*weighted_csv);
        if (v.size() != inst.m()) throw InputError("input weight vector length mismatch");
        rep = solver::solve_weighted(inst, v, fam, settings);
        extra["input_weights"] = v;
    } else {
        rep = solver::solve(inst, fam, settings);
    }

    json out{{"result", rep.found ? "matching" : "none"},
             {"prime", rep.prime},
             {"rng_seed", rep.rng_seed},
             {"trials", rep.trials},
             {"family_size", fam.size()},
             {"family_max_weight", fam.max_weight_bound()},
             {"elements_tried", rep.elements_tried},
             {"zero_degree_elements", rep.zero_degree_elements},
             {"abandoned_candidates", rep.abandoned_candidates}};
    for (auto& [k, v] : extra.items()) out[k] = v;
    if (rep.found) {
        out["y"] = halfint_to_json(rep.y);
        out["family_index"] = rep.family_index;
        out["w"] = rep.witness.w;
        out["W"] = rep.big_w;
        out["We"] = rep.we;
    }
    std::cout << out.dump(2) << "\n";
    return rep.found ? kExitOk : kExitNoMatching;
}

int run_oracle(const std::string& path, const std::optional<std::string>& weights_csv) {
    Instance inst = io::load_instance_file(path);
    oracle::PolytopeOracle oc(inst);
    std::optional<std::vector<u64>> w;
    if (weights_csv) {
        w = io::parse_csv_u64(*weights_csv);
        if (w->size() != inst.m()) throw InputError("weight vector length mismatch");
    }
    auto r = oc.max_matching(w ? &*w : nullptr);
    json maxims = json::array();
    for (const auto& y : r.maximizers) maxims.push_back(halfint_to_json(y));
    json out{{"value", r.value_twice},
             {"maximizers", maxims},
             {"perfect", oc.has_perfect_matching()},
             {"prime", inst.field().modulus()},
             {"flats", oc.flats().size()}};
    if (w) out["weights"] = *w;
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_weights_gen(std::size_t m, const FamilyFlags& ff, u64 limit) {
    weights::WeightFamily fam(m, ff.resolve(m));
    const u64 n = limit == 0 ? fam.size() : std::min<u64>(limit, fam.size());
    for (u64 i = 0; i < n; ++i) {
        const auto w = fam.at(i);
        for (std::size_t j = 0; j < w.size(); ++j) std::cout << (j ? "," : "") << w.w[j];
        std::cout << "\n";
    }
    return kExitOk;
}

int run_lattice(const std::string& sub, const std::string& dpath, const std::string& xcsv, double c) {
    lattice::ConstraintMatrix d = io::constraint_from_json(io::parse_json_file(dpath));
    if (sub == "decompose") {
        std::vector<long long> x = io::parse_csv_integers(xcsv);
        if (x.size() != d.cols) throw InputError("vector length does not match the column count");
        auto dec = lattice::decompose(d, x);
        if (!dec) {
            std::cout << json{{"result", "not_in_lattice"}}.dump(2) << "\n";
            return kExitOk;
        }
        json circuits = json::array();
        for (const auto& cjt : dec->circuits)
            circuits.push_back(json{{"start_vertex", cjt.start_vertex},
                                    {"edges", cjt.edges},
                                    {"indicator", cjt.indicator},
                                    {"size", cjt.size()}});
        std::cout << json{{"result", "decomposed"}, {"circuits", circuits}}.dump(2) << "\n";
        return kExitOk;
    }
    if (sub == "lambda") {
        auto lam = lattice::lambda(d);
        json out;
        out["lambda"] = lam ? json(*lam) : json("infinity");
        std::cout << out.dump(2) << "\n";
        return kExitOk;
    }
    auto lam = lattice::lambda(d);
    json out;
    out["lambda"] = lam ? json(*lam) : json("infinity");
    out["c"] = c;
    out["vectors"] = lattice::near_shortest(d, c);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_hitset_gen(std::size_t m, std::size_t n, const FamilyFlags& ff, bool distinct, u64 limit, u64 prime) {
    PrimeField f(prime);
    weights::WeightFamily base(m, ff.resolve(m));
    auto emit = [&](const auto& stream) {
        const u64 k = limit == 0 ? stream.size() : std::min<u64>(limit, stream.size());
        for (u64 i = 0; i < k; ++i) std::cout << tuple_to_json(stream.at(i), f.modulus()).dump() << "\n";
    };
    if (distinct) {
        weights::DistinctFamily fam(base);
        emit(hitset::HittingSetStream(f, m, n, fam));
    } else {
        emit(hitset::HittingSetStream(f, m, n, base));
    }
    return kExitOk;
}

int run_hitset_test(const std::string& path, const FamilyFlags& ff, bool distinct, u64 budget) {
    Instance inst = io::load_instance_file(path);
    weights::WeightFamily base(inst.m(), ff.resolve(inst.m()));
    const PrimeField f = inst.field();

    hitset::WitnessResult r;
    u64 stream_size = 0;
    if (distinct) {
        weights::DistinctFamily fam(base);
        hitset::HittingSetStream stream(f, inst.m(), inst.n(), fam);
        stream_size = stream.size();
        r = hitset::find_witness(inst, stream, budget);
    } else {
        hitset::HittingSetStream stream(f, inst.m(), inst.n(), base);
        stream_size = stream.size();
        r = hitset::find_witness(inst, stream, budget);
    }

    json out{{"prime", f.modulus()}, {"tuples_tested", r.tuples_tested}, {"stream_size", stream_size}};
    switch (r.outcome) {
        case hitset::WitnessOutcome::kFound:
            out["result"] = "witness";
            out["tuple"] = tuple_to_json(*r.tuple, f.modulus());
            std::cout << out.dump(2) << "\n";
            return kExitOk;
        case hitset::WitnessOutcome::kNoWitness:
            out["result"] = "no_witness";
            std::cout << out.dump(2) << "\n";
            return kExitNoMatching;
        default:
            out["result"] = "indeterminate";
            std::cout << out.dump(2) << "\n";
            return kExitGuard;
    }
}

std::vector<std::pair<std::size_t, std::size_t>> parse_edge_list(const std::string& text) {
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        auto dash = tok.find('-');
        if (dash == std::string::npos) throw InputError("edges look like \"1-2,2-3\" (1-based vertices)");
        const long long u = std::stoll(tok.substr(0, dash));
        const long long v = std::stoll(tok.substr(dash + 1));
        if (u < 1 || v < 1) throw InputError("vertices are 1-based");
        edges.push_back({static_cast<std::size_t>(u - 1), static_cast<std::size_t>(v - 1)});
    }
    return edges;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact fractional linear matroid matching toolkit"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "find a perfect fractional matroid matching");
    std::string solve_path;
    solve->add_option("instance", solve_path, "instance JSON file")->required();
    FamilyFlags solve_ff;
    add_family_flags(solve, solve_ff);
    int solve_trials = 3;
    u64 solve_seed = kDefaultSeed;
    bool solve_parallel = false;
    std::optional<std::string> weighted_csv;
    solve->add_option("--trials", solve_trials, "Monte-Carlo repetitions per probe")->capture_default_str();
    solve->add_option("--rng-seed", solve_seed, "seed for all probe randomness")->capture_default_str();
    solve->add_flag("--parallel", solve_parallel, "probe family elements in parallel");
    solve->add_option("--weighted", weighted_csv, "maximize these input weights (comma-separated)");

    // oracle
    auto* orac = app.add_subcommand("oracle", "brute-force polytope oracle");
    std::string oracle_path;
    std::optional<std::string> oracle_weights;
    orac->add_option("instance", oracle_path, "instance JSON file")->required();
    orac->add_option("--weights", oracle_weights, "maximize these weights instead of cardinality");

    // weights gen
    auto* wts = app.add_subcommand("weights", "weight assignment families");
    auto* wts_gen = wts->add_subcommand("gen", "emit family members, one per line");
    std::size_t wts_m = 0;
    u64 wts_limit = 0;
    bool seedless = false;
    FamilyFlags wts_ff;
    wts_gen->add_option("--m", wts_m, "number of lines")->required();
    add_family_flags(wts_gen, wts_ff);
    wts_gen->add_option("--limit", wts_limit, "emit at most this many (0 = all)")->capture_default_str();
    wts_gen->add_flag("--seedless", seedless, "families are deterministic; flag kept for interface compatibility");

    // lattice
    auto* lat = app.add_subcommand("lattice", "constraint-matrix lattice tools");
    std::string lat_d, lat_x;
    double lat_c = 2.0;
    auto* lat_dec = lat->add_subcommand("decompose", "decompose a vector into alternating circuits");
    lat_dec->add_option("--d", lat_d, "constraint matrix JSON file")->required();
    lat_dec->add_option("--x", lat_x, "integer vector, comma-separated")->required();
    auto* lat_lam = lat->add_subcommand("lambda", "shortest nonzero lattice vector length");
    lat_lam->add_option("--d", lat_d, "constraint matrix JSON file")->required();
    auto* lat_near = lat->add_subcommand("near", "all vectors shorter than c * lambda");
    lat_near->add_option("--d", lat_d, "constraint matrix JSON file")->required();
    lat_near->add_option("--c", lat_c, "strict length factor (at most 2)")->capture_default_str();

    // hitset
    auto* hit = app.add_subcommand("hitset", "non-commutative hitting set");
    auto* hit_gen = hit->add_subcommand("gen", "emit tuples as JSON lines");
    std::size_t hit_m = 0, hit_n = 0;
    u64 hit_limit = 100, hit_prime = PrimeField::kDefaultPrime, hit_budget = 0;
    bool hit_distinct = true;
    FamilyFlags hit_ff;
    hit_ff.brute_cap = 2;
    hit_gen->add_option("--m", hit_m, "number of lines")->required();
    hit_gen->add_option("--n", hit_n, "ambient dimension")->required();
    add_family_flags(hit_gen, hit_ff);
    hit_gen->add_option("--limit", hit_limit, "emit at most this many (0 = all)")->capture_default_str();
    hit_gen->add_flag("--distinct,!--no-distinct", hit_distinct, "apply the distinct-weights transform");
    hit_gen->add_option("--prime", hit_prime, "field modulus")->capture_default_str();
    auto* hit_test = hit->add_subcommand("test", "search the stream for a nonsingularity witness");
    std::string hit_path;
    hit_test->add_option("instance", hit_path, "instance JSON file")->required();
    add_family_flags(hit_test, hit_ff);
    hit_test->add_option("--budget", hit_budget, "tuples to try (0 = exhaustive)")->capture_default_str();
    hit_test->add_flag("--distinct,!--no-distinct", hit_distinct, "apply the distinct-weights transform");

    // gen
    auto* gen = app.add_subcommand("gen", "instance generators (JSON on stdout)");
    u64 gen_prime = PrimeField::kDefaultPrime, gen_seed = kDefaultSeed;
    std::size_t gen_m = 3, gen_n = 4, gen_n1 = 2, gen_n2 = 2, gen_vertices = 3;
    std::string gen_edges = "1-2,2-3,3-1";
    auto* gen_graph = gen->add_subcommand("graph", "one line per edge of a loopless graph");
    gen_graph->add_option("--vertices", gen_vertices, "vertex count")->capture_default_str();
    gen_graph->add_option("--edges", gen_edges, "edge list, e.g. 1-2,2-3,3-1")->capture_default_str();
    gen_graph->add_option("--prime", gen_prime, "field modulus")->capture_default_str();
    auto* gen_rand = gen->add_subcommand("random", "uniformly random independent spanning pairs");
    gen_rand->add_option("--m", gen_m, "number of lines")->capture_default_str();
    gen_rand->add_option("--n", gen_n, "ambient dimension")->capture_default_str();
    gen_rand->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen_rand->add_option("--prime", gen_prime, "field modulus")->capture_default_str();
    auto* gen_inter = gen->add_subcommand("intersection", "two-matroid common-base encoding");
    gen_inter->add_option("--m", gen_m, "number of lines")->capture_default_str();
    gen_inter->add_option("--n1", gen_n1, "first matroid rank space")->capture_default_str();
    gen_inter->add_option("--n2", gen_n2, "second matroid rank space")->capture_default_str();
    gen_inter->add_option("--seed", gen_seed, "generator seed")->capture_default_str();
    gen_inter->add_option("--prime", gen_prime, "field modulus")->capture_default_str();

    // selfcheck
    auto* self = app.add_subcommand("selfcheck", "run the acceptance criteria");
    std::string self_scale = "small";
    u64 self_seed = kDefaultSeed;
    std::string mutate;
    self->add_option("--scale", self_scale, "small or full")
        ->check(CLI::IsMember({"small", "full"}))
        ->capture_default_str();
    self->add_option("--rng-seed", self_seed, "seed")->capture_default_str();
    self->add_option("--mutate", mutate, "fault-injection hook (pfaffian)")->check(CLI::IsMember({"pfaffian"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (*solve) return run_solve(solve_path, solve_ff, solve_trials, solve_seed, solve_parallel, weighted_csv);
        if (*orac) return run_oracle(oracle_path, oracle_weights);
        if (*wts) {
            if (!*wts_gen) throw CLI::CallForHelp();
            return run_weights_gen(wts_m, wts_ff, wts_limit);
        }
        if (*lat) {
            if (*lat_dec) return run_lattice("decompose", lat_d, lat_x, lat_c);
            if (*lat_lam) return run_lattice("lambda", lat_d, lat_x, lat_c);
            if (*lat_near) return run_lattice("near", lat_d, lat_x, lat_c);
            throw CLI::CallForHelp();
        }
        if (*hit) {
            if (*hit_gen) return run_hitset_gen(hit_m, hit_n, hit_ff, hit_distinct, hit_limit, hit_prime);
            if (*hit_test) return run_hitset_test(hit_path, hit_ff, hit_distinct, hit_budget);
            throw CLI::CallForHelp();
        }
        if (*gen) {
            PrimeField f(gen_prime);
            Instance inst = [&] {
                if (*gen_graph) return io::gen_graph(f, gen_vertices, parse_edge_list(gen_edges));
                if (*gen_rand) return io::gen_random(f, gen_m, gen_n, gen_seed);
                if (*gen_inter) return io::gen_intersection(f, gen_m, gen_n1, gen_n2, gen_seed);
                throw CLI::CallForHelp();
            }();
            std::cout << io::canonical_dump(io::instance_to_json(inst));
            return kExitOk;
        }
        if (*self) {
            selfcheck::Options opt;
            opt.full = (self_scale == "full");
            opt.rng_seed = self_seed;
            opt.mutate_pfaffian = (mutate == "pfaffian");
            return selfcheck::run_and_print(opt, std::cout) == 0 ? kExitOk : kExitInput;
        }
    } catch (const GuardExceeded& e) {
        std::cerr << "guard exceeded: " << e.what() << "\n";
        return kExitGuard;
    } catch (const FieldTooSmall& e) {
        std::cerr << "field too small: " << e.what() << "\n";
        return kExitInput;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInput;
    } catch (const CLI::CallForHelp&) {
        std::cerr << app.help() << "\n";
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
