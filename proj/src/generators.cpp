#include "hyperb/generators.hpp"

#include <fstream>
#include <map>
#include <functional>
#include <sstream>

#include <json.hpp>

namespace hyperb {

DistanceGraph make_tree(int q, int depth) {
    if (q < 1 || depth < 0) throw std::invalid_argument("tree needs q >= 1, depth >= 0");
    std::vector<std::pair<int, int>> edges;
    std::vector<int> frontier{0};
    int next = 1;
    for (int level = 0; level < depth; ++level) {
        std::vector<int> nf;
        int children = (level == 0) ? q + 1 : q;
        for (int v : frontier)
            for (int c = 0; c < children; ++c) {
                edges.emplace_back(v, next);
                nf.push_back(next++);
            }
        frontier = std::move(nf);
    }
    auto g = DistanceGraph::from_edges(next, edges);
    g.set_known_delta(0);
    return g;
}

DistanceGraph make_cycle(int n) {
    if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i) edges.emplace_back(i, (i + 1) % n);
    return DistanceGraph::from_edges(n, edges);
}

namespace {

// Reduced words in the free group: letters 1..rank and -1..-rank.
struct FgWord {
    std::vector<int> letters;
    bool operator<(const FgWord& o) const { return letters < o.letters; }
};

// Reduced alternating words in Z/3 * Z. Syllables: (0, v) with v in {1,2}
// (powers of e1, both of word length 1) and (1, k) with k != 0 (e2^k, length |k|).
struct FpWord {
    std::vector<std::pair<int, int>> syl;
    bool operator<(const FpWord& o) const { return syl < o.syl; }
    int length() const {
        int l = 0;
        for (auto& [t, v] : syl) l += (t == 0) ? 1 : std::abs(v);
        return l;
    }
};

FpWord fp_mul(const FpWord& w, int gen) {  // gen: +1/-1 = e1^{+-1}, +2/-2 = e2^{+-1}
    FpWord r = w;
    int type = (std::abs(gen) == 1) ? 0 : 1;
    int val = (type == 0) ? ((gen > 0) ? 1 : 2) : ((gen > 0) ? 1 : -1);
    if (!r.syl.empty() && r.syl.back().first == type) {
        auto& [t, v] = r.syl.back();
        if (type == 0) {
            v = (v + val) % 3;
            if (v == 0) r.syl.pop_back();
        } else {
            v += val;
            if (v == 0) r.syl.pop_back();
        }
    } else {
        r.syl.emplace_back(type, val);
    }
    return r;
}

template <class Word, class Mul, class Gens>
DistanceGraph cayley_ball(const Word& id, const Mul& mul, const Gens& gens, int radius,
                          const std::function<int(const Word&)>& length) {
    std::map<Word, int> index;
    std::vector<Word> words;
    index[id] = 0;
    words.push_back(id);
    for (size_t i = 0; i < words.size(); ++i) {
        Word w = words[i];
        for (int g : gens) {
            Word w2 = mul(w, g);
            if (length(w2) > radius) continue;
            if (!index.count(w2)) {
                index[w2] = static_cast<int>(words.size());
                words.push_back(w2);
            }
        }
    }
    std::vector<std::pair<int, int>> edges;
    for (size_t i = 0; i < words.size(); ++i)
        for (int g : gens) {
            Word w2 = mul(words[i], g);
            auto it = index.find(w2);
            if (it != index.end() && it->second > static_cast<int>(i))
                edges.emplace_back(static_cast<int>(i), it->second);
        }
    return DistanceGraph::from_edges(static_cast<int>(words.size()), edges);
}

}  // namespace

DistanceGraph make_free_group_ball(int rank, int radius) {
    if (rank < 1 || radius < 0) throw std::invalid_argument("free group ball needs rank >= 1");
    std::vector<int> gens;
    for (int i = 1; i <= rank; ++i) {
        gens.push_back(i);
        gens.push_back(-i);
    }
    auto mul = [](const FgWord& w, int g) {
        FgWord r = w;
        if (!r.letters.empty() && r.letters.back() == -g)
            r.letters.pop_back();
        else
            r.letters.push_back(g);
        return r;
    };
    std::function<int(const FgWord&)> len = [](const FgWord& w) {
        return static_cast<int>(w.letters.size());
    };
    auto g = cayley_ball(FgWord{}, mul, gens, radius, len);
    g.set_known_delta(0);  // balls in trees are trees
    return g;
}

DistanceGraph make_free_product_ball(int radius) {
    if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
    std::vector<int> gens{1, -1, 2, -2};
    std::function<int(const FpWord&)> len = [](const FpWord& w) { return w.length(); };
    auto g = cayley_ball(FpWord{}, [](const FpWord& w, int gg) { return fp_mul(w, gg); }, gens,
                         radius, len);
    // the Cayley graph is triangles and bridges glued tree-like; 0-hyperbolic
    if (g.vertex_count() <= 230) {
        if (hyperbolicity_delta_scan(g) != 0) throw std::runtime_error("free product ball: unexpected delta");
    }
    g.set_known_delta(0);
    return g;
}

DistanceGraph load_graph_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file " + path);
    nlohmann::json j;
    in >> j;
    int n = j.at("vertices").get<int>();
    std::vector<std::pair<int, int>> edges;
    for (auto& e : j.at("edges")) edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    return DistanceGraph::from_edges(n, edges);
}

void save_graph_json(const DistanceGraph& g, const std::string& path) {
    nlohmann::json j;
    j["vertices"] = g.vertex_count();
    auto edges = nlohmann::json::array();
    for (int a = 0; a < g.vertex_count(); ++a)
        for (int b : g.neighbors(a))
            if (b > a) edges.push_back({a, b});
    j["edges"] = edges;
    std::ofstream out(path);
    out << j.dump(2) << "\n";
}

DistanceGraph make_graph(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::string args = (colon == std::string::npos) ? "" : spec.substr(colon + 1);
    std::vector<int> nums;
    {
        std::stringstream ss(args);
        std::string tok;
        while (std::getline(ss, tok, ','))
            if (!tok.empty() && kind != "file") nums.push_back(std::stoi(tok));
    }
    auto need = [&](size_t k) {
        if (nums.size() != k) throw std::invalid_argument("graph spec '" + spec + "': wrong arity");
    };
    if (kind == "tree") { need(2); return make_tree(nums[0], nums[1]); }
    if (kind == "cycle") { need(1); return make_cycle(nums[0]); }
    if (kind == "free_group_ball") { need(2); return make_free_group_ball(nums[0], nums[1]); }
    if (kind == "free_product_ball") { need(1); return make_free_product_ball(nums[0]); }
    if (kind == "file") return load_graph_json(args);
    throw std::invalid_argument("unknown graph kind '" + kind + "'");
}

}  // namespace hyperb
