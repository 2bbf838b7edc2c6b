#include "goodsemi/json_io.hpp"

#include <map>

#include "goodsemi/errors.hpp"

namespace goodsemi {

namespace {

std::string nat_str(Nat v) { return std::to_string(v); }

Nat nat_from(const json& j, const char* what) {
    if (j.is_number_integer()) return j.get<Nat>();
    if (j.is_string()) {
        try {
            return std::stoll(j.get<std::string>());
        } catch (...) {
        }
    }
    fail("BadInput", std::string("expected a natural number for ") + what);
}

json point_to_json(const Point& p) {
    json a = json::array();
    for (int i = 0; i < p.dim(); ++i) a.push_back(nat_str(p[i]));
    return a;
}

// capped coordinates print as "inf"
json point_to_json_capped(const Point& p, const Point& cap) {
    json a = json::array();
    for (int i = 0; i < p.dim(); ++i)
        a.push_back(p[i] == cap[i] ? std::string("inf") : nat_str(p[i]));
    return a;
}

Point point_from_json(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail("BadInput", std::string("expected a coordinate array for ") + what);
    std::vector<Nat> v;
    for (const auto& c : j) v.push_back(nat_from(c, what));
    return Point(std::move(v));
}

Point point_from_json_capped(const json& j, const Point& cap) {
    if (!j.is_array() || static_cast<int>(j.size()) != cap.dim())
        fail("BadInput", "level element has the wrong dimension");
    std::vector<Nat> v;
    for (int i = 0; i < cap.dim(); ++i) {
        const auto& c = j[i];
        if (c.is_string() && c.get<std::string>() == "inf")
            v.push_back(cap[i]);
        else
            v.push_back(nat_from(c, "level element"));
    }
    return Point(std::move(v));
}

}  // namespace

json semigroup_to_json(const GoodSemigroup& S) {
    json j;
    j["dim"] = nat_str(S.dim());
    j["conductor"] = point_to_json(S.conductor());
    json sm = json::array();
    for (const auto& p : S.smalls()) sm.push_back(point_to_json(p));
    j["smalls"] = sm;
    return j;
}

std::pair<Point, PointSet> semigroup_parts_from_json(const json& j) {
    if (!j.contains("conductor") || !j.contains("smalls"))
        fail("BadInput", "semigroup JSON needs 'conductor' and 'smalls'");
    Point c = point_from_json(j.at("conductor"), "conductor");
    PointSet smalls;
    for (const auto& p : j.at("smalls")) smalls.push_back(point_from_json(p, "small element"));
    if (j.contains("dim") && nat_from(j.at("dim"), "dim") != c.dim())
        fail("BadInput", "semigroup JSON: 'dim' disagrees with the conductor");
    sort_unique(smalls);
    return {std::move(c), std::move(smalls)};
}

GoodSemigroup semigroup_from_json(const json& j) {
    auto [c, smalls] = semigroup_parts_from_json(j);
    return GoodSemigroup(std::move(c), std::move(smalls), true);
}

json levels_to_json(const LevelPartition& P) {
    json j;
    j["omega"] = point_to_json(P.omega);
    j["cap"] = point_to_json(P.cap);
    j["N"] = nat_str(P.count());
    json lv = json::array();
    for (const auto& level : P.levels) {
        json one = json::array();
        for (const auto& p : level) one.push_back(point_to_json_capped(p, P.cap));
        lv.push_back(one);
    }
    j["levels"] = lv;
    return j;
}

LevelPartition levels_from_json(const json& j) {
    if (!j.contains("omega") || !j.contains("cap") || !j.contains("levels"))
        fail("BadInput", "levels JSON needs 'omega', 'cap' and 'levels'");
    LevelPartition P;
    P.omega = point_from_json(j.at("omega"), "omega");
    P.cap = point_from_json(j.at("cap"), "cap");
    for (const auto& lvl : j.at("levels")) {
        PointSet level;
        for (const auto& p : lvl) level.push_back(point_from_json_capped(p, P.cap));
        sort_unique(level);
        P.levels.push_back(std::move(level));
    }
    if (j.contains("N") && nat_from(j.at("N"), "N") != P.count())
        fail("BadInput", "levels JSON: 'N' disagrees with the level list");
    return P;
}

json sequence_to_json(const PlaneSequence& e) {
    json j;
    json a = json::array();
    for (int v : e.prefix()) a.push_back(nat_str(v));
    j["sequence"] = a;
    return j;
}

PlaneSequence sequence_from_json(const json& j) {
    const json& arr = j.is_array() ? j : j.at("sequence");
    std::vector<int> entries;
    for (const auto& v : arr) entries.push_back(static_cast<int>(nat_from(v, "sequence entry")));
    return PlaneSequence(std::move(entries));
}

json htype_to_json(const HType& H) {
    json rows = json::array();
    for (const auto& row : H.rows()) {
        json r = json::array();
        if (row.k) r.push_back(nat_str(*row.k));
        r.push_back(row.h ? json(nat_str(*row.h)) : json("inf"));
        rows.push_back(r);
    }
    json j;
    j["htype"] = rows;
    return j;
}

HType htype_from_json(const json& j) {
    const json& arr = j.is_array() ? j : j.at("htype");
    std::vector<HRow> rows;
    for (const auto& r : arr) {
        if (!r.is_array() || r.empty() || r.size() > 2) fail("BadInput", "htype row must be [h] or [k, h]");
        HRow row;
        const json& last = r.back();
        bool inf = last.is_string() && last.get<std::string>() == "inf";
        if (!inf) row.h = static_cast<int>(nat_from(last, "h"));
        if (r.size() == 2) row.k = static_cast<int>(nat_from(r.front(), "k"));
        rows.push_back(row);
    }
    return HType(std::move(rows));
}

json series_to_json(const TruncatedSeries& s) {
    json j;
    j["precision"] = nat_str(s.precision());
    json terms = json::array();
    for (const auto& [e, c] : s.terms()) terms.push_back(json::array({nat_str(e), rational_str(c)}));
    j["terms"] = terms;
    return j;
}

TruncatedSeries series_from_json(const json& j) {
    if (!j.contains("precision")) fail("BadInput", "series JSON needs 'precision'");
    TruncatedSeries s(nat_from(j.at("precision"), "precision"));
    if (j.contains("terms"))
        for (const auto& t : j.at("terms")) {
            if (!t.is_array() || t.size() != 2) fail("BadInput", "series term must be [exp, coeff]");
            Nat e = nat_from(t[0], "exponent");
            Rational c = t[1].is_string() ? parse_rational(t[1].get<std::string>())
                                          : Rational(t[1].get<long long>());
            s.add_term(e, c);
        }
    return s;
}

json branch_to_json(const BranchParam& b) {
    json j;
    j["x"] = series_to_json(b.x);
    j["y"] = series_to_json(b.y);
    return j;
}

BranchParam branch_from_json(const json& j) {
    if (!j.contains("x") || !j.contains("y")) fail("BadInput", "branch JSON needs 'x' and 'y'");
    return BranchParam{series_from_json(j.at("x")), series_from_json(j.at("y"))};
}

json curve_to_json(const CurveParam& c) {
    json arr = json::array();
    for (const auto& b : c.branches) arr.push_back(branch_to_json(b));
    json j;
    j["branches"] = arr;
    return j;
}

CurveParam curve_from_json(const json& j) {
    CurveParam c;
    const json& arr = j.is_array() ? j : j.at("branches");
    for (const auto& b : arr) c.branches.push_back(branch_from_json(b));
    if (c.branches.empty()) fail("BadInput", "curve JSON has no branches");
    return c;
}

json hn_to_json(const HNExpansion& h) {
    json rows = json::array();
    for (const auto& row : h.finite_rows) {
        json r;
        r["h"] = nat_str(row.h);
        json a = json::array();
        for (const auto& c : row.a) a.push_back(rational_str(c));
        r["a"] = a;
        rows.push_back(r);
    }
    json fin;
    fin["inf"] = true;
    fin["series"] = series_to_json(h.final_series);
    rows.push_back(fin);
    json j;
    j["rows"] = rows;
    json n = json::array();
    for (Nat v : h.n) n.push_back(nat_str(v));
    j["orders"] = n;
    return j;
}

HNExpansion hn_from_json(const json& j) {
    HNExpansion h;
    const json& rows = j.at("rows");
    if (rows.empty()) fail("BadInput", "hn JSON has no rows");
    for (size_t i = 0; i + 1 < rows.size(); ++i) {
        const json& r = rows[i];
        HNRow row;
        row.h = nat_from(r.at("h"), "h");
        for (const auto& c : r.at("a"))
            row.a.push_back(c.is_string() ? parse_rational(c.get<std::string>())
                                          : Rational(c.get<long long>()));
        if (static_cast<Nat>(row.a.size()) != row.h)
            fail("BadInput", "hn row coefficient count differs from h");
        h.finite_rows.push_back(std::move(row));
    }
    const json& fin = rows.back();
    if (!fin.contains("inf") || !fin.at("inf").get<bool>())
        fail("BadInput", "the last hn row must be the infinite one");
    h.final_series = series_from_json(fin.at("series"));
    if (j.contains("orders")) {
        for (const auto& v : j.at("orders")) h.n.push_back(nat_from(v, "order"));
    } else {
        fail("BadInput", "hn JSON needs 'orders'");
    }
    if (h.n.size() != h.finite_rows.size() + 1) fail("BadInput", "hn orders length mismatch");
    return h;
}

json tree_to_json(const MultiplicityTree& T) {
    json j;
    j["d"] = nat_str(T.branch_count());
    j["tail_from"] = nat_str(T.tail_from());
    json nodes = json::array();
    for (size_t i = 0; i < T.nodes().size(); ++i) {
        const TreeNode& n = T.nodes()[i];
        json nd;
        nd["id"] = T.node_id(static_cast<int>(i));
        nd["parent"] = n.parent < 0 ? json(nullptr) : json(T.node_id(n.parent));
        nd["weight"] = point_to_json(n.weight);
        nodes.push_back(nd);
    }
    j["nodes"] = nodes;
    return j;
}

MultiplicityTree tree_from_json(const json& j) {
    int d = static_cast<int>(nat_from(j.at("d"), "d"));
    int tail_from = static_cast<int>(nat_from(j.at("tail_from"), "tail_from"));
    auto parse_id = [&](const std::string& id) {
        auto colon = id.find(':');
        if (colon == std::string::npos) fail("BadInput", "node id must look like 'depth:branches'");
        int depth = std::stoi(id.substr(0, colon));
        std::vector<int> branches;
        std::string rest = id.substr(colon + 1);
        if (rest.find(',') != std::string::npos || d > 9) {
            size_t pos = 0;
            while (pos < rest.size()) {
                size_t comma = rest.find(',', pos);
                if (comma == std::string::npos) comma = rest.size();
                branches.push_back(std::stoi(rest.substr(pos, comma - pos)) - 1);
                pos = comma + 1;
            }
        } else {
            for (char ch : rest) branches.push_back(ch - '0' - 1);
        }
        return std::make_pair(depth, branches);
    };
    std::vector<TreeNode> nodes;
    std::vector<std::string> parent_ids;
    std::map<std::string, int> by_id;
    for (const auto& nd : j.at("nodes")) {
        auto [depth, branches] = parse_id(nd.at("id").get<std::string>());
        TreeNode n;
        n.depth = depth;
        n.branches = branches;
        n.weight = point_from_json(nd.at("weight"), "weight");
        n.parent = -1;
        by_id[nd.at("id").get<std::string>()] = static_cast<int>(nodes.size());
        parent_ids.push_back(nd.at("parent").is_null() ? std::string()
                                                       : nd.at("parent").get<std::string>());
        nodes.push_back(std::move(n));
    }
    for (size_t i = 0; i < nodes.size(); ++i) {
        if (parent_ids[i].empty()) continue;
        auto it = by_id.find(parent_ids[i]);
        if (it == by_id.end()) fail("MalformedTree", "unknown parent id " + parent_ids[i]);
        nodes[i].parent = it->second;
    }
    return MultiplicityTree(d, tail_from, std::move(nodes));
}

json splitting_to_json(const SplittingData& D) {
    json j;
    json seqs = json::array();
    for (const auto& e : D.sequences) seqs.push_back(sequence_to_json(e).at("sequence"));
    j["sequences"] = seqs;
    json k = json::array();
    for (const auto& row : D.k) {
        json r = json::array();
        for (int v : row) r.push_back(std::to_string(v));
        k.push_back(r);
    }
    j["k"] = k;
    return j;
}

SplittingData splitting_from_json(const json& j) {
    SplittingData D;
    for (const auto& s : j.at("sequences")) D.sequences.push_back(sequence_from_json(s));
    const int d = static_cast<int>(D.sequences.size());
    D.k.assign(d, std::vector<int>(d, 0));
    if (j.contains("k")) {
        const json& k = j.at("k");
        if (static_cast<int>(k.size()) != d) fail("BadInput", "k matrix size mismatch");
        for (int a = 0; a < d; ++a) {
            if (static_cast<int>(k[a].size()) != d) fail("BadInput", "k matrix row size mismatch");
            for (int b = 0; b < d; ++b) {
                const auto& cell = k[a][b];
                D.k[a][b] = cell.is_string() ? std::stoi(cell.get<std::string>())
                                             : cell.get<int>();
            }
        }
    } else if (d > 1) {
        fail("BadInput", "splitting data for several branches needs 'k'");
    }
    return D;
}

json verify_report_to_json(const VerifyReport& r) {
    json j;
    j["ok"] = r.ok;
    json v = json::array();
    for (const auto& viol : r.violations) {
        json one;
        one["axiom"] = viol.axiom;
        one["a"] = point_to_json(viol.a);
        one["b"] = point_to_json(viol.b);
        one["detail"] = viol.detail;
        v.push_back(one);
    }
    j["violations"] = v;
    return j;
}

}  // namespace goodsemi
