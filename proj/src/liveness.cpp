#include "abrv/liveness.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace abrv {

bool NonEmptyTable::contains(std::size_t location, std::span<const double> valuation) const {
    return zones[location].contains(valuation);
}

bool NonEmptyTable::intersects(std::size_t location, const Zone& zone) const {
    return zones[location].intersects(zone);
}

NonEmptyTable NonEmptyTable::scaled(std::int64_t factor) const {
    NonEmptyTable t{clocks, {}};
    for (const auto& fed : zones) {
        Federation f;
        for (const auto& z : fed.zones()) f.add(z.scaled(factor));
        t.zones.push_back(std::move(f));
    }
    return t;
}

std::string NonEmptyTable::dump(const Tba& tba) const {
    std::ostringstream out;
    for (std::size_t q = 0; q < zones.size(); ++q)
        for (const auto& z : zones[q].zones()) out << tba.locations[q].id << ": " << z.to_string() << "\n";
    return out.str();
}

namespace {

/// Tarjan's algorithm over an adjacency list; returns the component of each node.
std::vector<std::size_t> strongly_connected(const std::vector<std::vector<std::size_t>>& succ) {
    std::size_t n = succ.size();
    constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
    std::vector<std::size_t> index(n, unvisited), low(n), comp(n, unvisited);
    std::vector<bool> on_stack(n);
    std::vector<std::size_t> stack;
    std::size_t next_index = 0, next_comp = 0;

    // Iterative DFS to stay safe on large graphs.
    struct Frame {
        std::size_t node;
        std::size_t child;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != unvisited) continue;
        std::vector<Frame> frames{{root, 0}};
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.child < succ[f.node].size()) {
                std::size_t w = succ[f.node][f.child++];
                if (index[w] == unvisited) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.node] = std::min(low[f.node], index[w]);
                }
                continue;
            }
            std::size_t v = f.node;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().node] = std::min(low[frames.back().node], low[v]);
            if (low[v] == index[v]) {
                std::size_t w;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = false;
                    comp[w] = next_comp;
                } while (w != v);
                ++next_comp;
            }
        }
    }
    return comp;
}

/// Nodes that reach a nontrivial component containing an accepting node.
std::vector<bool> reach_accepting_cycle(const std::vector<std::vector<std::size_t>>& succ,
                                        const std::vector<bool>& accepting) {
    std::size_t n = succ.size();
    auto comp = strongly_connected(succ);
    std::size_t ncomp = 0;
    for (auto c : comp) ncomp = std::max(ncomp, c + 1);
    std::vector<std::size_t> size(ncomp);
    std::vector<bool> has_acc(ncomp), has_edge(ncomp);
    for (std::size_t v = 0; v < n; ++v) {
        ++size[comp[v]];
        if (accepting[v]) has_acc[comp[v]] = true;
        for (auto w : succ[v])
            if (comp[w] == comp[v]) has_edge[comp[v]] = true;
    }
    std::vector<bool> good(n);
    std::vector<std::vector<std::size_t>> pred(n);
    std::deque<std::size_t> work;
    for (std::size_t v = 0; v < n; ++v) {
        for (auto w : succ[v]) pred[w].push_back(v);
        if (has_acc[comp[v]] && has_edge[comp[v]]) {
            good[v] = true;
            work.push_back(v);
        }
    }
    while (!work.empty()) {
        std::size_t v = work.front();
        work.pop_front();
        for (auto u : pred[v])
            if (!good[u]) {
                good[u] = true;
                work.push_back(u);
            }
    }
    return good;
}

std::vector<std::size_t> shifted_clock_map(std::size_t count) {
    std::vector<std::size_t> map(count);
    for (std::size_t i = 0; i < count; ++i) map[i] = i + 1;
    return map;
}

/// States that can take edge e and land in `target`.
Zone pre_edge(const Edge& e, const Zone& target, const std::vector<std::size_t>& clock_map) {
    Zone z = target;
    for (auto c : e.resets) z = z.constrain(clock_map[c], Relation::Eq, 0);
    if (z.is_empty()) return z;
    for (auto c : e.resets) z = z.free(clock_map[c]);
    z = apply_guard(z, e.guard, clock_map);
    if (z.is_empty()) return z;
    return z.down();
}

}  // namespace

std::vector<bool> discrete_live_locations(const Tba& tba) {
    std::vector<std::vector<std::size_t>> succ(tba.locations.size());
    std::vector<bool> accepting(tba.locations.size());
    for (std::size_t q = 0; q < tba.locations.size(); ++q) {
        accepting[q] = tba.locations[q].accepting;
        for (auto ei : tba.outgoing(q)) succ[q].push_back(tba.edges[ei].to);
    }
    return reach_accepting_cycle(succ, accepting);
}

NonEmptyTable compute_nonempty(const Tba& tba) {
    if (!tba.has_integer_constants()) throw std::invalid_argument("compute_nonempty needs integer constants");
    NonZenoTba snz = strongly_non_zeno(tba);
    const Tba& s = snz.tba;
    auto clocks = ClockSet::make(s.clocks, false);
    auto map = shifted_clock_map(s.clocks.size());
    auto live = discrete_live_locations(s);
    std::size_t n = s.locations.size();

    // Greatest fixpoint over X of the states that reach X at an accepting
    // location in one or more steps.
    std::vector<Federation> x(n);
    for (std::size_t q = 0; q < n; ++q)
        if (live[q]) x[q].add(Zone::universal(clocks));

    while (true) {
        std::vector<Federation> y(n);
        std::deque<std::pair<std::size_t, Zone>> work;
        for (std::size_t q = 0; q < n; ++q)
            if (live[q] && s.locations[q].accepting)
                for (const auto& z : x[q].zones()) work.emplace_back(q, z);
        while (!work.empty()) {
            auto [target, zone] = std::move(work.front());
            work.pop_front();
            for (auto ei : s.incoming(target)) {
                const Edge& e = s.edges[ei];
                if (!live[e.from]) continue;
                Zone pre = pre_edge(e, zone, map);
                if (pre.is_empty()) continue;
                if (y[e.from].add(pre)) work.emplace_back(e.from, std::move(pre));
            }
        }
        bool stable = true;
        for (std::size_t q = 0; q < n && stable; ++q) stable = y[q].includes(x[q]);
        x = std::move(y);
        if (stable) break;
    }

    NonEmptyTable table;
    table.clocks = ClockSet::make(tba.clocks, false);
    table.zones.resize(tba.locations.size());
    for (std::size_t q = 0; q < tba.locations.size(); ++q)
        for (const auto& z : x[q].zones()) table.zones[q].add(z.project_out(snz.guard_clock + 1, table.clocks));
    return table;
}

bool has_accepting_lasso(const Tba& tba, std::size_t location, const std::vector<std::int64_t>& valuation) {
    if (!tba.has_integer_constants()) throw std::invalid_argument("has_accepting_lasso needs integer constants");
    if (valuation.size() != tba.clocks.size()) throw std::invalid_argument("valuation size does not match clock count");
    NonZenoTba snz = strongly_non_zeno(tba);
    const Tba& s = snz.tba;
    auto clocks = ClockSet::make(s.clocks, false);
    auto map = shifted_clock_map(s.clocks.size());
    std::vector<std::int64_t> k{0};
    for (auto c : s.max_constants()) k.push_back(std::max<std::int64_t>(c, 0));

    Zone start = Zone::universal(clocks);
    for (std::size_t i = 0; i < valuation.size(); ++i) start = start.constrain(i + 1, Relation::Eq, valuation[i]);
    start = start.up().extrapolate(k);

    std::vector<std::pair<std::size_t, Zone>> nodes;
    std::map<std::size_t, std::vector<std::size_t>> by_location;
    std::vector<std::vector<std::size_t>> succ;
    auto intern = [&](std::size_t q, Zone z) -> std::pair<std::size_t, bool> {
        auto& bucket = by_location[q];
        for (auto id : bucket)
            if (nodes[id].second == z) return {id, false};
        nodes.emplace_back(q, std::move(z));
        succ.emplace_back();
        bucket.push_back(nodes.size() - 1);
        return {nodes.size() - 1, true};
    };
    std::deque<std::size_t> work{intern(location, start).first};
    while (!work.empty()) {
        std::size_t id = work.front();
        work.pop_front();
        auto [q, zone] = nodes[id];
        for (auto ei : s.outgoing(q)) {
            const Edge& e = s.edges[ei];
            Zone next = apply_guard(zone, e.guard, map);
            if (next.is_empty()) continue;
            std::vector<std::size_t> resets;
            for (auto c : e.resets) resets.push_back(map[c]);
            next = next.reset(resets).up().extrapolate(k);
            auto [target, fresh] = intern(e.to, std::move(next));
            succ[id].push_back(target);
            if (fresh) work.push_back(target);
        }
    }
    std::vector<bool> accepting(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) accepting[i] = s.locations[nodes[i].first].accepting;
    return reach_accepting_cycle(succ, accepting)[0];
}

}  // namespace abrv
