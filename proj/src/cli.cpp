#include "llab/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "llab/adversary.hpp"
#include "llab/conversions.hpp"
#include "llab/dimensions.hpp"
#include "llab/fooling.hpp"
#include "llab/hypothesis.hpp"
#include "llab/kernels.hpp"
#include "llab/learners.hpp"
#include "llab/report.hpp"
#include "llab/rng.hpp"
#include "llab/selftest.hpp"

namespace llab {

namespace {

struct Inputs {
    std::string bytes;  // concatenated raw input files, digested into reports

    std::string slurp(const std::string& path) {
        std::string contents = read_file(path);
        bytes += contents;
        return contents;
    }

    FiniteClass load_class(const std::string& path) {
        try {
            return FiniteClass::from_json(nlohmann::json::parse(slurp(path)));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(path + ": " + e.what());
        }
    }

    Sample load_sample(const std::string& path) {
        try {
            return sample_from_json(nlohmann::json::parse(slurp(path)));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(path + ": " + e.what());
        }
    }

    LittlestoneTree load_tree(const std::string& path) {
        try {
            return LittlestoneTree::from_json(nlohmann::json::parse(slurp(path)));
        } catch (const nlohmann::json::exception& e) {
            throw parse_error(path + ": " + e.what());
        }
    }

    RestrictionStream load_stream(const std::string& path) {
        std::istringstream in(slurp(path));
        return RestrictionStream::from_jsonl(in);
    }
};

void emit_report(nlohmann::json report, const Inputs& inputs, const std::string& out_path) {
    stamp_report(report, inputs.bytes);
    const std::string text = report.dump(2) + "\n";
    if (out_path.empty())
        std::cout << text;
    else
        write_file_atomic(out_path, text);
}

BudgetedLearner make_learner(const std::string& name, const FiniteClass* cls) {
    if (name == "constant0") return constant_learner(0);
    if (name == "constant1") return constant_learner(1);
    if (name == "majority") return majority_history_learner();
    if (name == "diverging") return diverging_learner();
    if (name == "soa" || name == "eldim1") {
        if (!cls) throw parse_error("learner '" + name + "' needs --class");
        return name == "soa" ? soa(*cls) : eldim1_learner(*cls);
    }
    throw parse_error("unknown learner '" + name +
                      "' (soa, eldim1, constant0, constant1, majority, diverging)");
}

LittlestoneTree random_tree(uint32_t depth, const std::vector<Point>& labels, Rng& rng) {
    LittlestoneTree t{depth, {}};
    t.labels.resize(t.num_internal());
    for (Point& l : t.labels) l = labels[rng.below(labels.size())];
    return t;
}

ThresholdSequence random_sequence(uint32_t length, const std::vector<Point>& pts, Rng& rng) {
    ThresholdSequence seq;
    seq.points.resize(length);
    for (Point& p : seq.points) p = pts[rng.below(pts.size())];
    return seq;
}

std::vector<Point> domain_points(const FiniteClass& h) {
    std::vector<Point> pts(h.domain_size());
    for (Point x = 0; x < h.domain_size(); ++x) pts[x] = x;
    return pts;
}

nlohmann::json points_json(const std::vector<Point>& pts) {
    nlohmann::json j = nlohmann::json::array();
    for (Point p : pts) j.push_back(p);
    return j;
}

// ---------------------------------------------------------------------------

int cmd_dims(const std::string& class_path, const std::string& method, int max_d, int max_t,
             const std::string& out) {
    Inputs in;
    const FiniteClass h = in.load_class(class_path);
    const uint32_t md = max_d < 0 ? h.domain_size() : static_cast<uint32_t>(max_d);
    const uint32_t mt = max_t < 0 ? h.domain_size() : static_cast<uint32_t>(max_t);

    nlohmann::json report{{"method", method}, {"domain_size", h.domain_size()},
                          {"class_size", h.size()}};
    int recursive = 0, by_trees = 0;
    if (method == "recursive" || method == "both") {
        recursive = ldim(h);
        report["ldim"] = recursive;
    }
    if (method == "trees" || method == "both") {
        const Budgeted r = ldim_by_trees(h, md);
        by_trees = r.value;
        report["ldim_by_trees"] = r.value;
        report["ldim_out_of_budget"] = r.out_of_budget;
        if (method == "trees") report["ldim"] = r.value;
    }
    const TdimResult t = tdim(h, mt);
    report["tdim"] = t.value;
    report["tdim_out_of_budget"] = t.out_of_budget;
    report["witness_sequence"] = points_json(t.witness);

    if (method == "both" && recursive != by_trees) {
        report["fault"] = "ldim routes disagree";
        emit_report(report, in, out);
        return 2;
    }
    emit_report(report, in, out);
    return 0;
}

int cmd_learn(const std::string& class_path, const std::string& learner_name,
              const std::string& sample_path, int domain_size, uint64_t budget,
              const std::string& out) {
    Inputs in;
    std::optional<FiniteClass> h;
    if (!class_path.empty()) h = in.load_class(class_path);
    const Sample s = sample_path.empty() ? Sample{} : in.load_sample(sample_path);
    const BudgetedLearner l = make_learner(learner_name, h ? &*h : nullptr);
    const uint32_t n = domain_size < 0 ? (h ? h->domain_size() : 0)
                                       : static_cast<uint32_t>(domain_size);
    const InducedResult r = induced_hypothesis(l, s, n, budget);
    nlohmann::json report{{"learner", l.name}, {"sample", sample_to_json(s)},
                          {"domain_size", n}};
    if (r.hypothesis) report["hypothesis"] = r.hypothesis->to_string();
    if (r.diverged_at) report["diverged_at"] = *r.diverged_at;
    emit_report(report, in, out);
    return 0;
}

int cmd_game(const std::string& class_path, const std::string& learner_name,
             const std::string& sample_path, uint64_t budget, const std::string& out) {
    Inputs in;
    std::optional<FiniteClass> h;
    if (!class_path.empty()) h = in.load_class(class_path);
    const Sample s = sample_path.empty() ? Sample{} : in.load_sample(sample_path);
    const BudgetedLearner l = make_learner(learner_name, h ? &*h : nullptr);
    const GameTranscript t = run_game(l, s, budget);
    nlohmann::json report = t.to_json();
    if (h) report["sample_realizable"] = realizable(*h, s);
    emit_report(report, in, out);
    return 0;
}

int cmd_force(const std::string& class_path, const std::string& learner_name,
              const std::string& mode, const std::string& target, uint64_t rounds,
              uint64_t budget, const std::string& out) {
    Inputs in;
    const FiniteClass h = in.load_class(class_path);
    const BudgetedLearner l = make_learner(learner_name, &h);

    ForcingResult r;
    if (mode == "shattered") {
        r = shattered_tree_adversary(h, l, budget);
    } else if (mode == "function") {
        if (target.empty()) throw parse_error("force --mode function needs --target");
        const Hypothesis f = Hypothesis::from_string(target);
        if (f.length != h.domain_size())
            throw parse_error("target length must equal the class domain size");
        r = force_against_function(l, f, rounds, budget);
    } else {
        throw parse_error("force --mode must be function or shattered");
    }

    nlohmann::json report = r.to_json();
    report["learner"] = l.name;
    report["mode"] = mode;
    const Bit realiz = realizable(h, r.sample);
    report["sample_realizable"] = realiz;
    if (realiz)
        for (size_t i = 0; i < h.size(); ++i)
            if (consistent(h.hypothesis(i), r.sample)) {
                report["realizability_witness"] = h.hypothesis(i).to_string();
                break;
            }
    emit_report(report, in, out);
    return 0;
}

int cmd_extract(const std::string& class_path, const std::string& learner_name,
                const std::string& tree_path, int random_depth, uint64_t seed,
                uint64_t budget, const std::string& out) {
    Inputs in;
    std::optional<FiniteClass> h;
    if (!class_path.empty()) h = in.load_class(class_path);
    const BudgetedLearner l = make_learner(learner_name, h ? &*h : nullptr);

    LittlestoneTree t;
    if (!tree_path.empty()) {
        t = in.load_tree(tree_path);
    } else {
        if (!h) throw parse_error("extract --random-depth needs --class for the label set");
        const uint32_t depth =
            random_depth > 0 ? static_cast<uint32_t>(random_depth)
                             : static_cast<uint32_t>(ldim_nonneg(*h)) + 1;
        Rng rng(seed);
        t = random_tree(depth, domain_points(*h), rng);
    }

    const ExtractionResult r = extract_nonrealizable_leaf(l, t, budget);
    nlohmann::json report = r.to_json();
    report["learner"] = l.name;
    report["tree"] = t.to_json();
    if (h && r.leaf) {
        const Bit realiz = realizable(*h, leaf_sample(t, *r.leaf));
        report["leaf_realizable"] = realiz;
        if (realiz) {
            report["fault"] = "extracted leaf is realizable";
            emit_report(report, in, out);
            return 2;
        }
    }
    emit_report(report, in, out);
    return 0;
}

nlohmann::json stats_json(const ConversionStats& s) {
    return {{"calls", s.calls},
            {"trees_enumerated", s.trees_enumerated},
            {"sequences_enumerated", s.sequences_enumerated},
            {"samples_collected", s.samples_collected},
            {"induced_members", s.induced_members},
            {"verified_outputs", s.verified_outputs}};
}

int cmd_convert(const std::string& class_path, const std::string& direction,
                const std::string& sequence_path, const std::string& tree_path,
                const std::string& bound_mode, uint64_t seed, const std::string& out) {
    Inputs in;
    const FiniteClass h = in.load_class(class_path);
    const bool exact = bound_mode == "exact";
    Rng rng(seed);
    nlohmann::json report{{"direction", direction}, {"bound_mode", bound_mode}};

    const int d = ldim(h);
    if (d < 0) throw config_error("convert needs a nonempty class");
    report["ldim"] = d;

    if (direction == "leaf-to-threshold" || direction == "roundtrip") {
        const DimensionBound tb =
            dim_bound(DimensionBound::Kind::t_of_d, static_cast<uint32_t>(d), exact);
        if (tb.out_of_budget) {
            report["bound_fault"] = "exact t_of_d not certified at this argument";
            emit_report(report, in, out);
            return 3;
        }
        report["t_bound"] = tb.value;
        report["t_bound_exact"] = tb.exact;
        auto conv = leaf_to_threshold_oracle(brute_leaf_oracle(h, static_cast<uint32_t>(d) + 1),
                                             domain_points(h), tb.value, h);
        if (direction == "leaf-to-threshold") {
            ThresholdSequence seq =
                sequence_path.empty()
                    ? random_sequence(tb.value + 1, domain_points(h), rng)
                    : ThresholdSequence{[&] {
                          Sample s = in.load_sample(sequence_path);
                          std::vector<Point> pts;
                          for (const auto& [x, y] : s) pts.push_back(x);
                          return pts;
                      }()};
            const uint32_t i = conv.oracle.answer(seq);
            report["sequence"] = points_json(seq.points);
            report["answer_index"] = i;
            report["answer_threshold"] = sample_to_json(threshold_sample(seq, i));
            report["answer_nonrealizable"] = !realizable(h, threshold_sample(seq, i));
            report["stats"] = stats_json(*conv.stats);
            emit_report(report, in, out);
            return 0;
        }
        // roundtrip: convert back into a leaf oracle and run it on a tree.
        const DimensionBound db = dim_bound(DimensionBound::Kind::d_of_t, tb.value, false);
        if (db.value >= 25)
            throw resource_guard("roundtrip depth " + std::to_string(db.value + 1) +
                                 " is past desk scale");
        report["d_bound"] = db.value;
        auto back = threshold_to_leaf_oracle(conv.oracle, db.value, h);
        LittlestoneTree t = tree_path.empty()
                                ? random_tree(db.value + 1, domain_points(h), rng)
                                : in.load_tree(tree_path);
        const LeafAddress leaf = back.oracle.answer(t);
        report["leaf"] = leaf.to_string();
        report["leaf_nonrealizable"] = !realizable(h, leaf_sample(t, leaf));
        report["stats_inner"] = stats_json(*conv.stats);
        report["stats"] = stats_json(*back.stats);
        emit_report(report, in, out);
        return 0;
    }

    if (direction == "threshold-to-leaf") {
        const TdimResult t = tdim(h, h.domain_size());
        report["tdim"] = t.value;
        const DimensionBound db =
            dim_bound(DimensionBound::Kind::d_of_t, static_cast<uint32_t>(t.value), exact);
        if (db.out_of_budget) {
            report["bound_fault"] = "exact d_of_t not certified at this argument";
            emit_report(report, in, out);
            return 3;
        }
        if (db.value >= 25)
            throw resource_guard("tree depth " + std::to_string(db.value + 1) +
                                 " is past desk scale");
        report["d_bound"] = db.value;
        auto conv = threshold_to_leaf_oracle(
            brute_threshold_oracle(h, static_cast<uint32_t>(t.value) + 1), db.value, h);
        LittlestoneTree tree = tree_path.empty()
                                   ? random_tree(db.value + 1, domain_points(h), rng)
                                   : in.load_tree(tree_path);
        const LeafAddress leaf = conv.oracle.answer(tree);
        report["leaf"] = leaf.to_string();
        report["leaf_nonrealizable"] = !realizable(h, leaf_sample(tree, leaf));
        report["stats"] = stats_json(*conv.stats);
        emit_report(report, in, out);
        return 0;
    }

    throw parse_error("convert --direction must be leaf-to-threshold, threshold-to-leaf, or "
                      "roundtrip");
}

int cmd_split(const std::string& class_path, int64_t point, const std::string& out) {
    Inputs in;
    const FiniteClass h = in.load_class(class_path);
    const int d = ldim(h);
    if (d < 1) throw config_error("split needs a class with ldim >= 1");
    if (point < 0 || point >= static_cast<int64_t>(h.domain_size()))
        throw parse_error("--point must lie in the class domain");
    const Point x = static_cast<Point>(point);

    const SplitResult r = split_oracle(brute_leaf_oracle(h, static_cast<uint32_t>(d) + 1), x,
                                       domain_points(h), h);
    nlohmann::json report{{"point", x},
                          {"bit", r.bit},
                          {"ldim", d},
                          {"ldim_restricted", ldim(restrict_class(h, x, r.bit))},
                          {"compositions_tried", r.compositions_tried}};

    // Exercise the reduced oracle on every depth-d tree over the universe.
    TreeStream stream(static_cast<uint32_t>(d), domain_points(h));
    LittlestoneTree t;
    uint64_t calls = 0;
    bool all_ok = true;
    const FiniteClass restricted = restrict_class(h, x, r.bit);
    while (stream.next(t)) {
        const LeafAddress leaf = r.reduced.answer(t);
        ++calls;
        all_ok = all_ok && !realizable(restricted, leaf_sample(t, leaf));
    }
    report["reduced_calls"] = calls;
    report["reduced_all_nonrealizable"] = all_ok;
    emit_report(report, in, out);
    return all_ok ? 0 : 2;
}

int cmd_bounded(const std::string& class_path, int bound, int mistake_cap, int max_len,
                uint64_t budget, const std::string& out) {
    Inputs in;
    const FiniteClass h = in.load_class(class_path);
    const int d = ldim(h);
    if (d < 0) throw config_error("bounded needs a nonempty class");
    const uint32_t n = static_cast<uint32_t>(bound);
    if (n + 1 > h.domain_size())
        throw config_error("class domain must cover points 0..N");
    const int cap = mistake_cap < 0 ? d : mistake_cap;

    const LeafOracle a = brute_leaf_oracle(h, static_cast<uint32_t>(d) + 1);
    const FiniteClass h_n = bounded_regime_class(a, n);
    BudgetedLearner l = bounded_regime_learner(a).build(n);

    // Exhaustive game check over h-realizable samples with points <= N.
    uint64_t games = 0, worst = 0;
    std::function<void(Sample&, uint64_t)> dfs = [&](Sample& s, uint64_t mistakes) {
        worst = std::max(worst, mistakes);
        ++games;
        if (s.size() >= static_cast<size_t>(max_len)) return;
        for (Point x = 0; x <= n; ++x) {
            const Prediction p = l.predict(s, x, budget);
            for (Bit y : {Bit{0}, Bit{1}}) {
                s.push_back({x, y});
                if (realizable(h, s))
                    dfs(s, mistakes + (p.diverged() || p.value != y ? 1 : 0));
                s.pop_back();
            }
        }
    };
    Sample s;
    dfs(s, 0);

    nlohmann::json report{{"bound", n},
                          {"mistake_cap", cap},
                          {"h_n_size", h_n.size()},
                          {"h_n_ldim", ldim(h_n)},
                          {"games", games},
                          {"worst_mistakes", worst},
                          {"pass", worst <= static_cast<uint64_t>(cap)}};
    emit_report(report, in, out);
    return worst <= static_cast<uint64_t>(cap) ? 0 : 2;
}

int cmd_fool(const std::vector<std::string>& learner_names, int blocks, uint64_t fuel,
             uint32_t iterations, int prefix_size, const std::string& stream_out,
             const std::string& out) {
    Inputs in;
    std::vector<BudgetedLearner> roster;
    for (const std::string& name : learner_names) roster.push_back(make_learner(name, nullptr));
    if (roster.empty()) throw parse_error("fool needs at least one learner");
    if (blocks > 0 && static_cast<size_t>(blocks) != roster.size())
        throw parse_error("--blocks must match the number of learners");
    const uint32_t nblocks = static_cast<uint32_t>(roster.size());
    uint32_t per_block;
    if (prefix_size > 0) {
        if (static_cast<uint32_t>(prefix_size) % nblocks != 0)
            throw parse_error("--prefix-size must be a multiple of the block count");
        per_block = static_cast<uint32_t>(prefix_size) / nblocks;
    } else {
        per_block = static_cast<uint32_t>(fuel) * iterations + 2;
    }

    const FoolManyOutcome r = fool_many(roster, per_block, fuel, iterations);
    nlohmann::json verdicts = nlohmann::json::array();
    for (const FoolingVerdict& v : r.verdicts) verdicts.push_back(v.to_json());
    nlohmann::json report{{"blocks", r.blocks},
                          {"prefix_size", r.prefix_size},
                          {"fuel", fuel},
                          {"iterations", iterations},
                          {"restrictions_emitted", r.stream.emitted().size()},
                          {"verdicts", verdicts}};
    if (!stream_out.empty()) write_file_atomic(stream_out, r.stream.to_jsonl());
    emit_report(report, in, out);
    return 0;
}

int cmd_certify(const std::string& stream_path, int prefix_size, const std::string& out) {
    Inputs in;
    const RestrictionStream stream = in.load_stream(stream_path);
    const Certificate cert = certify_ldim_le_2(stream, static_cast<uint32_t>(prefix_size));
    emit_report(cert.to_json(), in, out);
    return cert.ok ? 0 : 2;
}

}  // namespace

int cli_run(const std::vector<std::string>& args) {
    CLI::App app{"llab: a finite-scale laboratory for online learning dimensions"};
    app.require_subcommand(1);

    std::string class_path, sample_path, tree_path, sequence_path, stream_path;
    std::string learner = "soa", method = "recursive", mode = "function", target;
    std::string direction = "leaf-to-threshold", bound_mode = "bound", stream_out, out;
    std::vector<std::string> learner_names{"constant0", "constant1", "majority"};
    uint64_t budget = 1'000'000, seed = 0, rounds = 8, fuel = 6;
    uint32_t iterations = 3;
    int max_d = -1, max_t = -1, domain_size = -1, random_depth = -1;
    int bound = 1, mistake_cap = -1, max_len = 6, blocks = -1, prefix_size = -1;
    int64_t point = 0;

    auto* dims = app.add_subcommand("dims", "Littlestone and threshold dimensions");
    dims->add_option("--class", class_path)->required();
    dims->add_option("--method", method)->check(CLI::IsMember({"recursive", "trees", "both"}));
    dims->add_option("--max-d", max_d);
    dims->add_option("--max-t", max_t);

    auto* learn = app.add_subcommand("learn", "induced hypothesis after a sample");
    learn->add_option("--class", class_path);
    learn->add_option("--learner", learner);
    learn->add_option("--sample", sample_path);
    learn->add_option("--domain-size", domain_size);

    auto* game = app.add_subcommand("game", "run an online game over a sample");
    game->add_option("--class", class_path);
    game->add_option("--learner", learner);
    game->add_option("--sample", sample_path);

    auto* force = app.add_subcommand("force", "adversarial forcing constructions");
    force->add_option("--class", class_path)->required();
    force->add_option("--learner", learner);
    force->add_option("--mode", mode)->check(CLI::IsMember({"function", "shattered"}));
    force->add_option("--target", target);
    force->add_option("--rounds", rounds);

    auto* extract = app.add_subcommand("extract", "non-realizable leaf from a total learner");
    extract->add_option("--class", class_path);
    extract->add_option("--learner", learner);
    extract->add_option("--tree", tree_path);
    extract->add_option("--random-depth", random_depth);

    auto* convert = app.add_subcommand("convert", "oracle conversions with verification");
    convert->add_option("--class", class_path)->required();
    convert->add_option("--direction", direction)
        ->check(CLI::IsMember({"leaf-to-threshold", "threshold-to-leaf", "roundtrip"}));
    convert->add_option("--sequence", sequence_path);
    convert->add_option("--tree", tree_path);
    convert->add_option("--bound-mode", bound_mode)->check(CLI::IsMember({"bound", "exact"}));

    auto* split = app.add_subcommand("split", "oracle splitting at a point");
    split->add_option("--class", class_path)->required();
    split->add_option("--point", point)->required();

    auto* bounded = app.add_subcommand("bounded", "bounded-regime learner + exhaustive check");
    bounded->add_option("--class", class_path)->required();
    bounded->add_option("--bound", bound)->required();
    bounded->add_option("--mistake-cap", mistake_cap);
    bounded->add_option("--max-len", max_len);

    auto* fool = app.add_subcommand("fool", "diagonalization against a learner roster");
    fool->add_option("--learners", learner_names)->delimiter(',');
    fool->add_option("--blocks", blocks);
    fool->add_option("--fuel", fuel);
    fool->add_option("--iterations", iterations);
    fool->add_option("--prefix-size", prefix_size);
    fool->add_option("--stream-out", stream_out);

    auto* certify = app.add_subcommand("certify", "ldim <= 2 certificate for a stream");
    certify->add_option("--stream", stream_path)->required();
    certify->add_option("--prefix-size", prefix_size)->required();

    auto* selftest_cmd = app.add_subcommand("selftest", "reduced-scale acceptance run");

    for (auto* sc : {dims, learn, game, force, extract, convert, split, bounded, fool, certify}) {
        sc->add_option("-o,--output", out);
        sc->add_option("--budget", budget);
        sc->add_option("--seed", seed);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            std::cout << app.help();
            return 0;
        }
        std::cerr << e.what() << "\n";
        return 1;
    }

    try {
        if (dims->parsed()) return cmd_dims(class_path, method, max_d, max_t, out);
        if (learn->parsed())
            return cmd_learn(class_path, learner, sample_path, domain_size, budget, out);
        if (game->parsed()) return cmd_game(class_path, learner, sample_path, budget, out);
        if (force->parsed())
            return cmd_force(class_path, learner, mode, target, rounds, budget, out);
        if (extract->parsed())
            return cmd_extract(class_path, learner, tree_path, random_depth, seed, budget, out);
        if (convert->parsed())
            return cmd_convert(class_path, direction, sequence_path, tree_path, bound_mode,
                               seed, out);
        if (split->parsed()) return cmd_split(class_path, point, out);
        if (bounded->parsed())
            return cmd_bounded(class_path, bound, mistake_cap, max_len, budget, out);
        if (fool->parsed())
            return cmd_fool(learner_names, blocks, fuel, iterations, prefix_size, stream_out,
                            out);
        if (certify->parsed()) return cmd_certify(stream_path, prefix_size, out);
        if (selftest_cmd->parsed()) return selftest::run_and_print(true, std::cout) ? 4 : 0;
    } catch (const parse_error& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 1;
    } catch (const config_error& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 1;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 1;
    } catch (const structural_error& e) {
        std::cerr << "structural error: " << e.what() << "\n";
        return 1;
    } catch (const oracle_fault& e) {
        nlohmann::json fault{{"fault", e.what()}, {"witness", e.witness}};
        if (out.empty())
            std::cerr << fault.dump(2) << "\n";
        else
            write_file_atomic(out, fault.dump(2) + "\n");
        return 2;
    } catch (const bound_fault& e) {
        nlohmann::json fault{{"fault", e.what()}, {"witness", e.witness}};
        if (out.empty())
            std::cerr << fault.dump(2) << "\n";
        else
            write_file_atomic(out, fault.dump(2) + "\n");
        return 2;
    } catch (const resource_guard& e) {
        std::cerr << "resource guard: " << e.what() << "\n";
        return 3;
    }
    return 1;
}

}  // namespace llab
