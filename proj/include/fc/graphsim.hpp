#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fc {

struct TooLarge : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// SplitMix64 finalizer over a Weyl sequence; stream (seed, counter) is addressable directly.
struct SplitMix64 {
    static constexpr std::uint64_t golden = 0x9E3779B97F4A7C15ULL;
    static constexpr std::uint64_t mul1 = 0xBF58476D1CE4E5B9ULL;
    static constexpr std::uint64_t mul2 = 0x94D049BB133111EBULL;

    std::uint64_t state;

    explicit SplitMix64(std::uint64_t seed) : state(seed) {}
    static std::uint64_t mix(std::uint64_t z) {
        z = (z ^ (z >> 30)) * mul1;
        z = (z ^ (z >> 27)) * mul2;
        return z ^ (z >> 31);
    }
    std::uint64_t next() { return mix(state += golden); }
    // counter-th output of the generator seeded with seed
    static std::uint64_t at(std::uint64_t seed, std::uint64_t counter) { return mix(seed + (counter + 1) * golden); }
    // independent child seed
    static std::uint64_t derive(std::uint64_t seed, std::uint64_t index) { return at(seed ^ 0x5851F42D4C957F2DULL, index); }
    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }
};

class Graph {
public:
    explicit Graph(int n2 = 0);

    int n() const { return n_; }
    bool edge(int u, int v) const { return (row(u)[v >> 6] >> (v & 63)) & 1ULL; }
    void set_edge(int u, int v, bool on = true);
    int degree(int v) const;
    std::size_t edge_count() const;
    const std::uint64_t* row(int v) const { return bits_.data() + std::size_t(v) * words_; }
    int words() const { return words_; }
    std::uint64_t hash() const;
    bool operator==(const Graph& o) const { return n_ == o.n_ && bits_ == o.bits_; }

private:
    int n_ = 0;
    int words_ = 0;
    std::vector<std::uint64_t> bits_;
};

// Lower-triangular pair order: (1,0), (2,0), (2,1), (3,0), ...
std::size_t pair_count(int n2);
Graph graph_from_mask(int n2, std::uint64_t mask);
Graph sample_gnp_half(int n2, std::uint64_t seed);
Graph complement(const Graph& g);
Graph relabel(const Graph& g, const std::vector<int>& perm);  // vertex v becomes perm[v]
Graph empty_graph(int n2);
Graph complete_graph(int n2);

// "<n2>:<hex>" with the lower-triangular bitstring packed most significant bit first.
std::string to_hex(const Graph& g);
Graph from_hex(const std::string& line);

// part_of[v] in {0, 1}; margin = (neighbors in own part) - (neighbors in the other part)
class BisectionState {
public:
    BisectionState(const Graph& g, std::vector<std::uint8_t> part_of);

    const Graph& graph() const { return *g_; }
    const std::vector<std::uint8_t>& part_of() const { return part_; }
    const std::vector<int>& margins() const { return margin_; }
    int min_margin() const;
    // swaps u (part 0) with w (part 1) and updates margins incrementally
    void swap(int u, int w);
    // margins after swapping u and w, without applying it
    int margin_after_swap(int x, int u, int w) const;
    bool consistent() const;  // incremental margins equal a recomputation
    std::vector<int> recompute() const;

private:
    const Graph* g_;
    std::vector<std::uint8_t> part_;
    std::vector<int> margin_;
};

enum class MarginSide { own, across };

// Ordered bisections (A1, A2) with ||A1| - |A2|| <= 1 where every vertex has margin >= H.
// MarginSide::across measures (across - own) instead.
std::uint64_t count_friendly_exhaustive(const Graph& g, int H, MarginSide side = MarginSide::own);
// max over bisections of the minimum margin
int max_min_margin_exhaustive(const Graph& g);
std::uint64_t ordered_bisections(int n2);

struct MomentEstimate {
    double mean;
    double stderr_;
    std::uint64_t numerator = 0;    // exact mode: mean = numerator / 2^pairs
    std::uint64_t samples = 0;
};

inline constexpr std::size_t exhaustive_pairs_max = 16;

MomentEstimate first_moment_exhaustive(int n2, int H);
MomentEstimate first_moment_exhaustive_serial(int n2, int H);
MomentEstimate first_moment_monte_carlo(int n2, int H, std::uint64_t samples, std::uint64_t seed, int threads = 1);
MomentEstimate first_moment_monte_carlo_serial(int n2, int H, std::uint64_t samples, std::uint64_t seed);

struct SearchResult {
    int best_H;
    std::vector<std::uint8_t> partition;
    int swaps = 0;
};

// Greedy best-pair swaps from random balanced starts; best over restarts.
SearchResult local_search_max_margin(const Graph& g, int restarts, std::uint64_t seed, int threads = 1);
SearchResult local_search_max_margin_serial(const Graph& g, int restarts, std::uint64_t seed);

struct CsvRow {
    std::uint64_t seed;
    int n2;
    int H;
    std::string value;
};
std::string graph_csv(const std::vector<CsvRow>& rows);

// best_H / sqrt(n2/2), reported next to .17566 for context
double normalized_margin(int best_H, int n2);

}  // namespace fc
