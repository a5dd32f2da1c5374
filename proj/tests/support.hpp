#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "abrv/observation.hpp"
#include "abrv/rational.hpp"
#include "abrv/tba.hpp"

namespace abrv::test {

inline std::string data_path(const std::string& relative) { return std::string(ABRV_DATA_DIR) + "/" + relative; }

inline Tba example(const std::string& file) { return load_tba(data_path("ab_example/" + file)); }

using TimedWord = std::vector<std::pair<std::size_t, Rational>>;

inline bool compare(const Rational& v, Relation rel, const Rational& c) {
    switch (rel) {
        case Relation::Lt: return v < c;
        case Relation::Le: return v <= c;
        case Relation::Eq: return v == c;
        case Relation::Ge: return v >= c;
        case Relation::Gt: return v > c;
    }
    return false;
}

/// Concrete states reached by reading `word` (letters index the automaton's
/// own alphabet) from the initial states.
inline std::vector<std::pair<std::size_t, std::vector<Rational>>> read_word(const Tba& b, const TimedWord& word) {
    std::vector<std::pair<std::size_t, std::vector<Rational>>> states;
    for (std::size_t q : b.initial_locations()) states.push_back({q, std::vector<Rational>(b.clocks.size(), Rational(0))});
    Rational now(0);
    for (const auto& [symbol, time] : word) {
        std::vector<std::pair<std::size_t, std::vector<Rational>>> next;
        for (const auto& [q, v] : states) {
            std::vector<Rational> delayed = v;
            for (Rational& x : delayed) x += time - now;
            for (std::size_t ei : b.outgoing(q)) {
                const Edge& e = b.edges[ei];
                if (!e.has_symbol(symbol)) continue;
                bool ok = true;
                for (const ClockAtom& a : e.guard) ok = ok && compare(delayed[a.clock], a.rel, a.constant);
                if (!ok) continue;
                std::vector<Rational> w = delayed;
                for (std::size_t c : e.resets) w[c] = 0;
                if (std::find(next.begin(), next.end(), std::make_pair(e.to, w)) == next.end()) next.push_back({e.to, w});
            }
        }
        states = std::move(next);
        now = time;
    }
    return states;
}

inline TimedWord random_word(std::mt19937_64& rng, std::size_t letters, std::size_t max_length, int max_time,
                             int denominator = 1) {
    std::uniform_int_distribution<std::size_t> len(0, max_length), letter(0, letters - 1);
    std::uniform_int_distribution<int> stamp(0, max_time * denominator);
    std::vector<int> stamps(len(rng));
    for (int& s : stamps) s = stamp(rng);
    std::sort(stamps.begin(), stamps.end());
    TimedWord w;
    for (int s : stamps) w.push_back({letter(rng), Rational(s, denominator)});
    return w;
}

inline std::vector<ObservationElement> elements(const std::string& text, const Tba& assumption) {
    std::vector<ObservationElement> out;
    for (const StreamItem& item : parse_stream(text, assumption))
        if (const auto* e = std::get_if<ObservationElement>(&item)) out.push_back(*e);
    return out;
}

}  // namespace abrv::test
