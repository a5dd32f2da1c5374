#include "abrv/tba.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "abrv/errors.hpp"

namespace abrv {

using nlohmann::json;

bool Edge::has_symbol(std::size_t s) const { return std::binary_search(symbols.begin(), symbols.end(), s); }

void Tba::finalize() {
    auto unique_names = [&](const std::vector<std::string>& names, const char* what) {
        std::set<std::string_view> seen;
        for (const auto& n : names) {
            if (n.empty()) throw ModelError(name + ": empty " + what + " name");
            if (!seen.insert(n).second) throw ModelError(name + ": duplicate " + what + " '" + n + "'");
        }
    };
    unique_names(alphabet, "letter");
    unique_names(clocks, "clock");
    std::vector<std::string> ids;
    for (const auto& l : locations) ids.push_back(l.id);
    unique_names(ids, "location");
    if (scale <= 0) throw ModelError(name + ": scale must be positive");

    out_.assign(locations.size(), {});
    in_.assign(locations.size(), {});
    for (std::size_t k = 0; k < edges.size(); ++k) {
        Edge& e = edges[k];
        if (e.from >= locations.size() || e.to >= locations.size())
            throw ModelError(name + ": edge refers to an unknown location");
        std::sort(e.symbols.begin(), e.symbols.end());
        e.symbols.erase(std::unique(e.symbols.begin(), e.symbols.end()), e.symbols.end());
        std::sort(e.resets.begin(), e.resets.end());
        e.resets.erase(std::unique(e.resets.begin(), e.resets.end()), e.resets.end());
        if (e.symbols.empty()) throw ModelError(name + ": edge without a letter");
        for (auto s : e.symbols)
            if (s >= alphabet.size()) throw ModelError(name + ": edge refers to an unknown letter");
        for (auto c : e.resets)
            if (c >= clocks.size()) throw ModelError(name + ": edge resets an unknown clock");
        for (const auto& a : e.guard) {
            if (a.clock >= clocks.size()) throw ModelError(name + ": guard refers to an unknown clock");
            if (a.constant < 0) throw ModelError(name + ": negative constant in a guard");
        }
        out_[e.from].push_back(k);
        in_[e.to].push_back(k);
    }
}

namespace {

template <typename T>
std::optional<std::size_t> find_index(const std::vector<T>& items, std::string_view key, auto project) {
    for (std::size_t i = 0; i < items.size(); ++i)
        if (project(items[i]) == key) return i;
    return std::nullopt;
}

}  // namespace

std::optional<std::size_t> Tba::location_index(std::string_view id) const {
    return find_index(locations, id, [](const Location& l) -> const std::string& { return l.id; });
}

std::optional<std::size_t> Tba::symbol_index(std::string_view letter) const {
    return find_index(alphabet, letter, [](const std::string& s) -> const std::string& { return s; });
}

std::optional<std::size_t> Tba::clock_index(std::string_view clock) const {
    return find_index(clocks, clock, [](const std::string& s) -> const std::string& { return s; });
}

std::vector<std::size_t> Tba::initial_locations() const {
    std::vector<std::size_t> result;
    for (std::size_t i = 0; i < locations.size(); ++i)
        if (locations[i].initial) result.push_back(i);
    return result;
}

std::vector<std::int64_t> Tba::max_constants() const {
    std::vector<std::int64_t> k(clocks.size(), -1);
    for (const auto& e : edges)
        for (const auto& a : e.guard) {
            Rational c = a.constant;
            // Round up so the bound stays valid for non-integral constants.
            std::int64_t ceil = c.numerator() / c.denominator() + (c.numerator() % c.denominator() ? 1 : 0);
            k[a.clock] = std::max(k[a.clock], ceil);
        }
    return k;
}

bool Tba::has_integer_constants() const {
    return std::all_of(edges.begin(), edges.end(), [](const Edge& e) {
        return std::all_of(e.guard.begin(), e.guard.end(), [](const ClockAtom& a) { return a.constant.denominator() == 1; });
    });
}

bool operator==(const Tba& a, const Tba& b) {
    return std::tie(a.name, a.alphabet, a.clocks, a.locations, a.edges, a.scale) ==
           std::tie(b.name, b.alphabet, b.clocks, b.locations, b.edges, b.scale);
}

namespace {

Relation parse_relation(const std::string& rel) {
    if (rel == "<") return Relation::Lt;
    if (rel == "<=") return Relation::Le;
    if (rel == "==") return Relation::Eq;
    if (rel == ">=") return Relation::Ge;
    if (rel == ">") return Relation::Gt;
    throw ParseError("unknown relation '" + rel + "'");
}

std::size_t line_of(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

const json& field(const json& obj, const char* key) {
    if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return obj.at(key);
}

std::string string_field(const json& obj, const char* key) {
    const json& v = field(obj, key);
    if (!v.is_string()) throw ParseError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

std::vector<std::string> string_list(const json& v, const char* what) {
    if (!v.is_array()) throw ParseError(std::string("'") + what + "' must be an array of strings");
    std::vector<std::string> out;
    for (const auto& item : v) {
        if (!item.is_string()) throw ParseError(std::string("'") + what + "' must be an array of strings");
        out.push_back(item.get<std::string>());
    }
    return out;
}

Rational parse_constant(const json& v) {
    if (v.is_number_unsigned()) return Rational(v.get<std::int64_t>());
    if (v.is_number_integer()) {
        auto c = v.get<std::int64_t>();
        if (c < 0) throw ModelError("negative constant " + std::to_string(c));
        return Rational(c);
    }
    if (!v.is_string()) throw ParseError("constant must be a rational string");
    Rational c;
    try {
        c = parse_rational(v.get<std::string>());
    } catch (const std::invalid_argument&) {
        throw ParseError("malformed constant '" + v.get<std::string>() + "'");
    }
    if (c < 0) throw ModelError("negative constant " + v.get<std::string>());
    return c;
}

}  // namespace

Tba parse_tba(std::string_view json_text) {
    json doc;
    try {
        doc = json::parse(json_text.begin(), json_text.end());
    } catch (const json::parse_error& e) {
        throw ParseError(e.what(), line_of(json_text, e.byte == 0 ? 0 : e.byte - 1));
    }

    Tba t;
    t.name = string_field(doc, "name");
    t.alphabet = string_list(field(doc, "alphabet"), "alphabet");
    t.clocks = string_list(field(doc, "clocks"), "clocks");

    const json& locs = field(doc, "locations");
    if (!locs.is_array()) throw ParseError("'locations' must be an array");
    for (const auto& l : locs) {
        Location loc;
        loc.id = string_field(l, "id");
        auto flag = [&](const char* key) {
            if (!l.contains(key)) return false;
            if (!l.at(key).is_boolean()) throw ParseError(std::string("'") + key + "' must be a boolean");
            return l.at(key).get<bool>();
        };
        loc.initial = flag("initial");
        loc.accepting = flag("accepting");
        t.locations.push_back(std::move(loc));
    }

    auto location = [&](const std::string& id) {
        auto i = t.location_index(id);
        if (!i) throw ModelError(t.name + ": undeclared location '" + id + "'");
        return *i;
    };
    auto clock = [&](const std::string& c) {
        auto i = t.clock_index(c);
        if (!i) throw ModelError(t.name + ": undeclared clock '" + c + "'");
        return *i;
    };
    auto symbol = [&](const std::string& s) {
        auto i = t.symbol_index(s);
        if (!i) throw ModelError(t.name + ": undeclared symbol '" + s + "'");
        return *i;
    };

    const json& edges = field(doc, "edges");
    if (!edges.is_array()) throw ParseError("'edges' must be an array");
    for (const auto& je : edges) {
        Edge e;
        e.from = location(string_field(je, "from"));
        e.to = location(string_field(je, "to"));
        const json& sym = field(je, "symbol");
        if (sym.is_string())
            e.symbols.push_back(symbol(sym.get<std::string>()));
        else
            for (const auto& s : string_list(sym, "symbol")) e.symbols.push_back(symbol(s));
        if (je.contains("resets"))
            for (const auto& c : string_list(je.at("resets"), "resets")) e.resets.push_back(clock(c));
        if (je.contains("guard")) {
            const json& g = je.at("guard");
            if (!g.is_array()) throw ParseError("'guard' must be an array");
            for (const auto& ja : g) {
                ClockAtom a;
                a.clock = clock(string_field(ja, "clock"));
                a.rel = parse_relation(string_field(ja, "rel"));
                a.constant = parse_constant(field(ja, "const"));
                e.guard.push_back(a);
            }
        }
        t.edges.push_back(std::move(e));
    }
    t.finalize();
    return t;
}

Tba load_tba(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_tba(buffer.str());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    } catch (const ModelError& e) {
        throw ModelError(path + ": " + e.what());
    }
}

std::string serialize_tba(const Tba& t) {
    json doc;
    doc["name"] = t.name;
    doc["alphabet"] = t.alphabet;
    doc["clocks"] = t.clocks;
    doc["locations"] = json::array();
    for (const auto& l : t.locations)
        doc["locations"].push_back({{"id", l.id}, {"initial", l.initial}, {"accepting", l.accepting}});
    doc["edges"] = json::array();
    for (const auto& e : t.edges) {
        json je;
        je["from"] = t.locations[e.from].id;
        je["to"] = t.locations[e.to].id;
        if (e.symbols.size() == 1) {
            je["symbol"] = t.alphabet[e.symbols.front()];
        } else {
            je["symbol"] = json::array();
            for (auto s : e.symbols) je["symbol"].push_back(t.alphabet[s]);
        }
        je["guard"] = json::array();
        for (const auto& a : e.guard)
            je["guard"].push_back(
                {{"clock", t.clocks[a.clock]}, {"rel", std::string(to_string(a.rel))}, {"const", to_string(a.constant)}});
        je["resets"] = json::array();
        for (auto c : e.resets) je["resets"].push_back(t.clocks[c]);
        doc["edges"].push_back(std::move(je));
    }
    return doc.dump(2) + "\n";
}

std::int64_t common_scale(const std::vector<const Tba*>& automata, const std::vector<Rational>& extra) {
    std::int64_t s = 1;
    for (const Tba* t : automata)
        for (const auto& e : t->edges)
            for (const auto& a : e.guard) s = lcm(s, a.constant.denominator());
    for (const auto& r : extra) s = lcm(s, r.denominator());
    return s;
}

Tba scaled(const Tba& tba, std::int64_t factor) {
    if (factor <= 0) throw std::invalid_argument("scale factor must be positive");
    Tba t = tba;
    for (auto& e : t.edges)
        for (auto& a : e.guard) a.constant *= factor;
    t.scale *= factor;
    t.finalize();
    return t;
}

std::pair<std::vector<Tba>, std::int64_t> scale_constants(const std::vector<Tba>& automata,
                                                          const std::vector<Rational>& extra) {
    std::vector<const Tba*> ptrs;
    for (const auto& t : automata) ptrs.push_back(&t);
    std::int64_t s = common_scale(ptrs, extra);
    std::vector<Tba> out;
    for (const auto& t : automata) out.push_back(scaled(t, s));
    return {std::move(out), s};
}

Zone apply_guard(const Zone& zone, const Guard& guard, const std::vector<std::size_t>& clock_map) {
    Zone z = zone;
    for (const auto& a : guard) {
        if (z.is_empty()) break;
        z = z.constrain(clock_map[a.clock], a.rel, as_integer(a.constant));
    }
    return z;
}

Tba universal_tba(const std::vector<std::string>& alphabet, const std::string& name) {
    Tba t;
    t.name = name;
    t.alphabet = alphabet;
    t.locations.push_back({"u", true, true});
    Edge e;
    e.symbols.resize(alphabet.size());
    std::iota(e.symbols.begin(), e.symbols.end(), std::size_t{0});
    t.edges.push_back(std::move(e));
    t.finalize();
    return t;
}

Product product(const Tba& left, const Tba& right) {
    if (std::set(left.alphabet.begin(), left.alphabet.end()) != std::set(right.alphabet.begin(), right.alphabet.end()))
        throw ModelError("alphabet mismatch between '" + left.name + "' and '" + right.name + "'");
    if (left.scale != right.scale) throw ModelError("automata '" + left.name + "' and '" + right.name + "' use different scales");

    Product p;
    Tba& t = p.tba;
    t.name = left.name + "*" + right.name;
    t.alphabet = right.alphabet;
    t.scale = left.scale;
    std::vector<std::size_t> left_symbol(left.alphabet.size());
    for (std::size_t s = 0; s < left.alphabet.size(); ++s) left_symbol[s] = *right.symbol_index(left.alphabet[s]);

    std::set<std::string> right_names(right.clocks.begin(), right.clocks.end());
    for (const auto& c : left.clocks) {
        p.left_clock.push_back(t.clocks.size());
        t.clocks.push_back(right_names.count(c) ? left.name + "." + c : c);
    }
    for (const auto& c : right.clocks) {
        p.right_clock.push_back(t.clocks.size());
        t.clocks.push_back(c);
    }

    std::map<std::tuple<std::size_t, std::size_t, int>, std::size_t> index;
    std::queue<std::size_t> work;
    auto intern = [&](std::size_t q, std::size_t r, int f) {
        auto [it, fresh] = index.try_emplace({q, r, f}, t.locations.size());
        if (fresh) {
            Location loc;
            loc.id = "(" + left.locations[q].id + "," + right.locations[r].id + "," + std::to_string(f) + ")";
            loc.accepting = f == 1 && right.locations[r].accepting;
            t.locations.push_back(std::move(loc));
            p.left.push_back(q);
            p.right.push_back(r);
            p.flag.push_back(f);
            work.push(it->second);
        }
        return it->second;
    };
    for (auto q : left.initial_locations())
        for (auto r : right.initial_locations()) t.locations[intern(q, r, 0)].initial = true;

    while (!work.empty()) {
        std::size_t cur = work.front();
        work.pop();
        std::size_t q = p.left[cur], r = p.right[cur];
        int f = p.flag[cur];
        int next_flag = f;
        if (f == 0 && left.locations[q].accepting) next_flag = 1;
        else if (f == 1 && right.locations[r].accepting) next_flag = 0;
        for (auto ei : left.outgoing(q))
            for (auto ej : right.outgoing(r)) {
                const Edge& e1 = left.edges[ei];
                const Edge& e2 = right.edges[ej];
                Edge e;
                for (auto s : e1.symbols)
                    if (e2.has_symbol(left_symbol[s])) e.symbols.push_back(left_symbol[s]);
                if (e.symbols.empty()) continue;
                e.from = cur;
                for (const auto& a : e1.guard) e.guard.push_back({p.left_clock[a.clock], a.rel, a.constant});
                for (const auto& a : e2.guard) e.guard.push_back({p.right_clock[a.clock], a.rel, a.constant});
                for (auto c : e1.resets) e.resets.push_back(p.left_clock[c]);
                for (auto c : e2.resets) e.resets.push_back(p.right_clock[c]);
                e.to = intern(e1.to, e2.to, next_flag);
                t.edges.push_back(std::move(e));
            }
    }
    t.finalize();
    return p;
}

NonZenoTba strongly_non_zeno(const Tba& tba) {
    NonZenoTba out;
    Tba& t = out.tba;
    t.name = tba.name;
    t.alphabet = tba.alphabet;
    t.clocks = tba.clocks;
    t.scale = tba.scale;
    std::string z = "z";
    while (tba.clock_index(z)) z += "'";
    out.guard_clock = t.clocks.size();
    t.clocks.push_back(z);

    std::vector<std::optional<std::size_t>> copy(tba.locations.size());
    for (std::size_t q = 0; q < tba.locations.size(); ++q) {
        t.locations.push_back({tba.locations[q].id, tba.locations[q].initial, false});
        out.origin.push_back(q);
    }
    for (std::size_t q = 0; q < tba.locations.size(); ++q) {
        if (!tba.locations[q].accepting) continue;
        copy[q] = t.locations.size();
        std::string id = tba.locations[q].id + "#acc";
        while (tba.location_index(id)) id += "'";
        t.locations.push_back({id, false, true});
        out.origin.push_back(q);
    }

    for (const auto& e : tba.edges) {
        std::vector<std::size_t> sources{e.from};
        if (copy[e.from]) sources.push_back(*copy[e.from]);
        for (auto src : sources) {
            Edge plain = e;
            plain.from = src;
            t.edges.push_back(plain);
            if (copy[e.to]) {
                Edge enter = plain;
                enter.to = *copy[e.to];
                enter.guard.push_back({out.guard_clock, Relation::Ge, Rational(1)});
                enter.resets.push_back(out.guard_clock);
                t.edges.push_back(std::move(enter));
            }
        }
    }
    t.finalize();
    return out;
}

}  // namespace abrv
