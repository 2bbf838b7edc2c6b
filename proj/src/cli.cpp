#include "goodsemi/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "goodsemi/blowup.hpp"
#include "goodsemi/errors.hpp"
#include "goodsemi/json_io.hpp"

namespace goodsemi {

namespace {

Nat default_precision() {
    if (const char* env = std::getenv("GOODSEMI_PRECISION")) {
        try {
            Nat p = std::stoll(env);
            if (p > 0) return p;
        } catch (...) {
        }
    }
    return 64;
}

json load_json(const std::string& arg, std::istream& in) {
    std::string text;
    if (arg == "-") {
        std::ostringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    } else if (!arg.empty() && (arg.front() == '{' || arg.front() == '[')) {
        text = arg;
    } else {
        std::ifstream f(arg);
        if (!f) fail("BadInput", "cannot open '" + arg + "'");
        std::ostringstream ss;
        ss << f.rdbuf();
        text = ss.str();
    }
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail("BadInput", std::string("JSON parse error: ") + e.what());
    }
}

Point parse_point_arg(const std::string& s, const char* what) {
    std::vector<Nat> v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(std::stoll(item));
        } catch (...) {
            fail("BadInput", std::string("cannot parse ") + what + " '" + s + "'");
        }
    }
    if (v.empty()) fail("BadInput", std::string("empty ") + what);
    return Point(std::move(v));
}

char level_char(int lvl) {
    if (lvl < 10) return static_cast<char>('0' + lvl);
    if (lvl < 36) return static_cast<char>('a' + lvl - 10);
    return '#';
}

std::string render_grid_text(const LevelPartition& P) {
    if (P.omega.dim() != 2) fail("BadInput", "render grid draws d=2 partitions only");
    std::ostringstream os;
    for (Nat y = P.cap[1]; y >= 0; --y) {
        os << (y == P.cap[1] ? std::string("inf") : std::to_string(y)) << '\t';
        for (Nat x = 0; x <= P.cap[0]; ++x) {
            char c = '.';
            Point p(std::vector<Nat>{x, y});
            for (int lvl = 0; lvl < P.count(); ++lvl)
                if (set_contains(P.levels[lvl], p)) {
                    c = level_char(lvl);
                    break;
                }
            os << c;
        }
        os << '\n';
        if (y == 0) break;
    }
    os << "\t(x right 0.." << P.cap[0] << ", last column/row capped; cell = level index)\n";
    return os.str();
}

struct Options {
    bool pretty = false;
    std::string input, input2;
    std::string omega, cap, at, bound;
    Nat precision = 0;
    Nat seed = 1;
    int retries = 4;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"exact computations with value semigroups of plane algebroid curves"};
    app.require_subcommand(1);
    Options opt;
    app.add_flag("--pretty", opt.pretty, "indent JSON output");

    std::function<void()> action;
    auto emit = [&](const json& j) { out << (opt.pretty ? j.dump(2) : j.dump()) << '\n'; };
    auto set = [&](CLI::App* cmd, std::function<void()> fn) {
        cmd->callback([&action, fn]() { action = fn; });
    };

    auto* good = app.add_subcommand("good", "good-semigroup axioms");
    auto* good_check = good->add_subcommand("check", "verify (G1), (G2), closure, conductor");
    good_check->add_option("input", opt.input, "semigroup JSON (file, inline or -)")->required();
    set(good_check, [&]() {
        auto [c, smalls] = semigroup_parts_from_json(load_json(opt.input, in));
        VerifyReport rep = verify_good(smalls, c);
        emit(verify_report_to_json(rep));
        if (!rep.ok) fail("NotGood", "the set fails the good-semigroup axioms");
    });

    auto* apery = app.add_subcommand("apery", "Apery-set level partition");
    apery->add_option("input", opt.input, "semigroup JSON")->required();
    apery->add_option("--omega", opt.omega, "omega as comma-separated naturals")->required();
    apery->add_option("--cap", opt.cap, "override the truncation cap (cap-stability testing)");
    set(apery, [&]() {
        GoodSemigroup S = semigroup_from_json(load_json(opt.input, in));
        Point omega = parse_point_arg(opt.omega, "omega");
        std::optional<Point> cap;
        if (!opt.cap.empty()) cap = parse_point_arg(opt.cap, "cap");
        emit(levels_to_json(partition_levels(apery_set(S, omega, cap))));
    });

    auto* levels = app.add_subcommand("levels", "level function of an element");
    levels->add_option("input", opt.input, "semigroup JSON")->required();
    levels->add_option("--omega", opt.omega, "omega as comma-separated naturals")->required();
    levels->add_option("--at", opt.at, "element whose level is requested")->required();
    set(levels, [&]() {
        GoodSemigroup S = semigroup_from_json(load_json(opt.input, in));
        LevelPartition P = partition_levels(apery_set(S, parse_point_arg(opt.omega, "omega")));
        Point at = parse_point_arg(opt.at, "element");
        json j;
        j["alpha"] = json::array();
        for (int i = 0; i < at.dim(); ++i) j["alpha"].push_back(std::to_string(at[i]));
        j["lambda"] = std::to_string(level_function(P, at));
        emit(j);
    });

    auto* blowup = app.add_subcommand("blowup", "blow-up of a local semigroup");
    blowup->add_option("input", opt.input, "semigroup JSON")->required();
    set(blowup, [&]() {
        emit(semigroup_to_json(
            blow_up_semigroup(semigroup_from_json(load_json(opt.input, in))).semigroup));
    });

    auto* blowdown = app.add_subcommand("blowdown", "blow-down along omega");
    blowdown->add_option("input", opt.input, "semigroup JSON")->required();
    blowdown->add_option("--omega", opt.omega, "multiplicity of the blown-down curve")->required();
    set(blowdown, [&]() {
        emit(semigroup_to_json(blow_down_semigroup(semigroup_from_json(load_json(opt.input, in)),
                                                   parse_point_arg(opt.omega, "omega"))));
    });

    auto* branch = app.add_subcommand("branch", "plane multiplicity sequences");
    auto* seq2sg = branch->add_subcommand("seq2sg", "sequence -> numerical semigroup");
    seq2sg->add_option("input", opt.input, "sequence JSON, e.g. [2,2,2,1]")->required();
    set(seq2sg, [&]() {
        emit(semigroup_to_json(
            semigroup_from_sequence(sequence_from_json(load_json(opt.input, in)))));
    });
    auto* sg2seq = branch->add_subcommand("sg2seq", "numerical semigroup -> sequence");
    sg2seq->add_option("input", opt.input, "semigroup JSON")->required();
    set(sg2seq, [&]() {
        emit(sequence_to_json(
            sequence_from_semigroup(semigroup_from_json(load_json(opt.input, in)))));
    });
    auto* hmap = branch->add_subcommand("h", "sequence <-> HN type (direction by input keys)");
    hmap->add_option("input", opt.input, "sequence or htype JSON")->required();
    set(hmap, [&]() {
        json j = load_json(opt.input, in);
        if (j.is_object() && j.contains("htype"))
            emit(sequence_to_json(sequence_from_h(htype_from_json(j))));
        else
            emit(htype_to_json(h_from_sequence(sequence_from_json(j))));
    });

    auto* hn = app.add_subcommand("hn", "Hamburger-Noether expansions");
    auto* hn_expand_cmd = hn->add_subcommand("expand", "expansion of a branch parametrization");
    hn_expand_cmd->add_option("input", opt.input, "branch JSON {x, y}")->required();
    set(hn_expand_cmd,
        [&]() { emit(hn_to_json(hn_expand(branch_from_json(load_json(opt.input, in))))); });

    auto* hn_synth = hn->add_subcommand("synth", "expansion of type H(e), generic coefficients");
    hn_synth->add_option("input", opt.input, "sequence JSON")->required();
    hn_synth->add_option("--precision", opt.precision, "series precision");
    hn_synth->add_option("--seed", opt.seed, "first generic coefficient");
    set(hn_synth, [&]() {
        Nat prec = opt.precision > 0 ? opt.precision : default_precision();
        HNExpansion h = synth_branch(sequence_from_json(load_json(opt.input, in)), opt.seed, prec);
        json j;
        j["hn"] = hn_to_json(h);
        j["branch"] = branch_to_json(hn_to_param(h, prec));
        emit(j);
    });

    auto* hn_split = hn->add_subcommand("split", "splitting number + intersection multiplicity");
    hn_split->add_option("first", opt.input, "hn or branch JSON")->required();
    hn_split->add_option("second", opt.input2, "hn or branch JSON")->required();
    set(hn_split, [&]() {
        auto load_exp = [&](const std::string& s) {
            json j = load_json(s, in);
            if (j.is_object() && j.contains("rows")) return hn_from_json(j);
            return hn_expand(branch_from_json(j));
        };
        SplitResult r = splitting_data(load_exp(opt.input), load_exp(opt.input2));
        json j;
        j["s"] = std::to_string(r.s);
        j["t"] = std::to_string(r.t);
        j["k"] = std::to_string(r.k);
        j["intersection"] = std::to_string(r.intersection);
        emit(j);
    });

    auto* tree = app.add_subcommand("tree", "multiplicity trees");
    auto* tree_build = tree->add_subcommand("build", "tree from sequences + splitting numbers");
    tree_build->add_option("input", opt.input, "splitting data JSON {sequences, k}")->required();
    set(tree_build,
        [&]() { emit(tree_to_json(build_tree(splitting_from_json(load_json(opt.input, in))))); });
    auto* tree_read = tree->add_subcommand("read", "sequences + splitting numbers from a tree");
    tree_read->add_option("input", opt.input, "tree JSON")->required();
    set(tree_read,
        [&]() { emit(splitting_to_json(read_tree(tree_from_json(load_json(opt.input, in))))); });
    auto* tree_validate = tree->add_subcommand("validate", "numerical multiplicity-tree check");
    tree_validate->add_option("input", opt.input, "tree JSON")->required();
    set(tree_validate, [&]() {
        TreeValidation v = validate_tree(tree_from_json(load_json(opt.input, in)));
        json j;
        j["ok"] = v.ok;
        j["failures"] = v.failures;
        emit(j);
        if (!v.ok) fail("InvalidTree", "the tree fails the numerical characterization");
    });
    auto* tree_dot = tree->add_subcommand("dot", "Graphviz DOT export");
    tree_dot->add_option("input", opt.input, "tree JSON")->required();
    set(tree_dot, [&]() { out << tree_to_dot(tree_from_json(load_json(opt.input, in))); });

    auto* curve = app.add_subcommand("curve", "parametrized curves");
    auto* curve_sg = curve->add_subcommand("semigroup", "value semigroup of a parametrization");
    curve_sg->add_option("input", opt.input, "curve JSON")->required();
    curve_sg->add_option("--bound", opt.bound, "search bound, comma-separated")->required();
    curve_sg->add_option("--retries", opt.retries, "bound doublings on BoundTooSmall");
    set(curve_sg, [&]() {
        CurveParam c = curve_from_json(load_json(opt.input, in));
        Point bound = parse_point_arg(opt.bound, "bound");
        for (int attempt = 0;; ++attempt) {
            try {
                emit(semigroup_to_json(value_semigroup(c, bound)));
                return;
            } catch (const DomainError& e) {
                if (e.code() != std::string("BoundTooSmall") || attempt >= opt.retries) throw;
                bound = bound * 2;
            }
        }
    });
    auto* curve_blowup = curve->add_subcommand("blowup", "branch-wise (x, y/x)");
    curve_blowup->add_option("input", opt.input, "curve JSON")->required();
    set(curve_blowup,
        [&]() { emit(curve_to_json(blow_up_param(curve_from_json(load_json(opt.input, in))))); });
    auto* curve_synth = curve->add_subcommand("synth", "curve with prescribed data");
    curve_synth->add_option("input", opt.input, "splitting data JSON {sequences, k}")->required();
    curve_synth->add_option("--precision", opt.precision, "series precision");
    set(curve_synth, [&]() {
        SplittingData D = splitting_from_json(load_json(opt.input, in));
        Nat prec = opt.precision > 0 ? opt.precision : default_precision();
        CurveParam c;
        c.branches = synth_curve(D.sequences, D.k, prec);
        emit(curve_to_json(c));
    });

    auto* render = app.add_subcommand("render", "text renderings");
    auto* grid = render->add_subcommand("grid", "d=2 level partition as an ASCII grid");
    grid->add_option("input", opt.input, "levels JSON")->required();
    set(grid, [&]() { out << render_grid_text(levels_from_json(load_json(opt.input, in))); });

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return 2;
    }

    try {
        if (action) action();
        return 0;
    } catch (const DomainError& e) {
        json j;
        j["error"] = e.code();
        j["message"] = e.what();
        err << j.dump() << '\n';
        return 1;
    } catch (const std::exception& e) {
        json j;
        j["error"] = "InternalError";
        j["message"] = e.what();
        err << j.dump() << '\n';
        return 1;
    }
}

}  // namespace goodsemi
