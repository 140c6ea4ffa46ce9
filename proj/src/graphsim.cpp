#include "fc/graphsim.hpp"

#include <omp.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace fc {

Graph::Graph(int n2) : n_(n2), words_((n2 + 63) / 64), bits_(std::size_t(n2) * ((n2 + 63) / 64), 0) {
    if (n2 < 0) throw std::invalid_argument("negative vertex count");
}

void Graph::set_edge(int u, int v, bool on) {
    if (u == v) throw std::invalid_argument("self loops are not allowed");
    auto put = [&](int a, int b) {
        std::uint64_t& w = bits_[std::size_t(a) * words_ + (b >> 6)];
        std::uint64_t m = 1ULL << (b & 63);
        w = on ? (w | m) : (w & ~m);
    };
    put(u, v);
    put(v, u);
}

int Graph::degree(int v) const {
    int d = 0;
    for (int i = 0; i < words_; ++i) d += std::popcount(row(v)[i]);
    return d;
}

std::size_t Graph::edge_count() const {
    std::size_t s = 0;
    for (int v = 0; v < n_; ++v) s += degree(v);
    return s / 2;
}

std::uint64_t Graph::hash() const {
    std::uint64_t h = SplitMix64::mix(std::uint64_t(n_));
    for (auto w : bits_) h = SplitMix64::mix(h ^ w);
    return h;
}

std::size_t pair_count(int n2) { return n2 < 2 ? 0 : std::size_t(n2) * (n2 - 1) / 2; }

Graph graph_from_mask(int n2, std::uint64_t mask) {
    if (pair_count(n2) > 64) throw TooLarge("mask graphs need at most 64 pairs");
    Graph g(n2);
    std::size_t b = 0;
    for (int i = 1; i < n2; ++i)
        for (int j = 0; j < i; ++j, ++b)
            if ((mask >> b) & 1ULL) g.set_edge(i, j);
    return g;
}

Graph sample_gnp_half(int n2, std::uint64_t seed) {
    if (n2 < 2) throw std::invalid_argument("need at least 2 vertices");
    Graph g(n2);
    std::size_t b = 0;
    std::uint64_t word = 0;
    for (int i = 1; i < n2; ++i)
        for (int j = 0; j < i; ++j, ++b) {
            if (b % 64 == 0) word = SplitMix64::at(seed, b / 64);
            if ((word >> (b % 64)) & 1ULL) g.set_edge(i, j);
        }
    return g;
}

Graph complement(const Graph& g) {
    Graph c(g.n());
    for (int i = 1; i < g.n(); ++i)
        for (int j = 0; j < i; ++j)
            if (!g.edge(i, j)) c.set_edge(i, j);
    return c;
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
    if (int(perm.size()) != g.n()) throw std::invalid_argument("permutation size mismatch");
    Graph h(g.n());
    for (int i = 1; i < g.n(); ++i)
        for (int j = 0; j < i; ++j)
            if (g.edge(i, j)) h.set_edge(perm[i], perm[j]);
    return h;
}

Graph empty_graph(int n2) { return Graph(n2); }

Graph complete_graph(int n2) { return complement(Graph(n2)); }

std::string to_hex(const Graph& g) {
    std::size_t bits = pair_count(g.n());
    std::string hex((bits + 3) / 4, '0');
    std::size_t b = 0;
    for (int i = 1; i < g.n(); ++i)
        for (int j = 0; j < i; ++j, ++b)
            if (g.edge(i, j)) {
                int d = std::stoi(std::string(1, hex[b / 4]), nullptr, 16) | (8 >> (b % 4));
                hex[b / 4] = "0123456789abcdef"[d];
            }
    return std::to_string(g.n()) + ":" + hex;
}

Graph from_hex(const std::string& line) {
    auto colon = line.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("graph line needs <n2>:<hex>");
    int n2 = std::stoi(line.substr(0, colon));
    std::string hex = line.substr(colon + 1);
    while (!hex.empty() && std::isspace(static_cast<unsigned char>(hex.back()))) hex.pop_back();
    std::size_t bits = pair_count(n2);
    if (hex.size() != (bits + 3) / 4) throw std::invalid_argument("hex length does not match n2");
    Graph g(n2);
    std::size_t b = 0;
    for (int i = 1; i < n2; ++i)
        for (int j = 0; j < i; ++j, ++b) {
            char c = hex[b / 4];
            if (!std::isxdigit(static_cast<unsigned char>(c))) throw std::invalid_argument("bad hex digit");
            int d = std::stoi(std::string(1, c), nullptr, 16);
            if (d & (8 >> (b % 4))) g.set_edge(i, j);
        }
    // padding bits must be zero
    for (; b < hex.size() * 4; ++b) {
        int d = std::stoi(std::string(1, hex[b / 4]), nullptr, 16);
        if (d & (8 >> (b % 4))) throw std::invalid_argument("nonzero padding bit");
    }
    return g;
}

BisectionState::BisectionState(const Graph& g, std::vector<std::uint8_t> part_of) : g_(&g), part_(std::move(part_of)) {
    if (int(part_.size()) != g.n()) throw std::invalid_argument("partition size mismatch");
    long ones = std::count(part_.begin(), part_.end(), 1);
    long zeros = g.n() - ones;
    if (std::labs(ones - zeros) > 1) throw std::invalid_argument("partition is not balanced");
    margin_ = recompute();
}

std::vector<int> BisectionState::recompute() const {
    const int n = g_->n(), W = g_->words();
    std::vector<std::uint64_t> in1(W, 0);
    for (int v = 0; v < n; ++v)
        if (part_[v]) in1[v >> 6] |= 1ULL << (v & 63);
    std::vector<int> m(n);
    for (int v = 0; v < n; ++v) {
        int d1 = 0, d = 0;
        for (int i = 0; i < W; ++i) {
            d += std::popcount(g_->row(v)[i]);
            d1 += std::popcount(g_->row(v)[i] & in1[i]);
        }
        int own = part_[v] ? d1 : d - d1;
        m[v] = own - (d - own);
    }
    return m;
}

int BisectionState::min_margin() const { return margin_.empty() ? 0 : *std::min_element(margin_.begin(), margin_.end()); }

int BisectionState::margin_after_swap(int x, int u, int w) const {
    const Graph& g = *g_;
    if (x == u || x == w) return -margin_[x] - 2 * g.edge(u, w);
    int d = 2 * g.edge(x, w) - 2 * g.edge(x, u);
    return margin_[x] + (part_[x] == 0 ? d : -d);
}

void BisectionState::swap(int u, int w) {
    if (part_[u] != 0 || part_[w] != 1) throw std::invalid_argument("swap needs u in part 0 and w in part 1");
    std::vector<int> next(margin_.size());
    for (int x = 0; x < g_->n(); ++x) next[x] = margin_after_swap(x, u, w);
    margin_ = std::move(next);
    part_[u] = 1;
    part_[w] = 0;
}

bool BisectionState::consistent() const { return recompute() == margin_; }

namespace {

// single-word fast path, n2 <= 12
std::uint64_t count_small(const std::uint64_t* rows, int n, int H, MarginSide side) {
    const std::uint64_t full = (n == 64) ? ~0ULL : ((1ULL << n) - 1);
    int lo = n / 2, hi = (n + 1) / 2;
    std::uint64_t count = 0;
    for (std::uint64_t P = 0; P <= full; ++P) {
        int k = std::popcount(P);
        if (k != lo && k != hi) continue;
        bool ok = true;
        for (int v = 0; v < n && ok; ++v) {
            std::uint64_t mine = ((P >> v) & 1) ? P : (full & ~P);
            int own = std::popcount(rows[v] & mine), d = std::popcount(rows[v]);
            int m = own - (d - own);
            if (side == MarginSide::across) m = -m;
            ok = m >= H;
        }
        count += ok;
    }
    return count;
}

int max_min_small(const std::uint64_t* rows, int n) {
    const std::uint64_t full = (1ULL << n) - 1;
    int lo = n / 2, hi = (n + 1) / 2;
    int best = -n;
    for (std::uint64_t P = 0; P <= full; ++P) {
        int k = std::popcount(P);
        if (k != lo && k != hi) continue;
        int mn = n;
        for (int v = 0; v < n; ++v) {
            std::uint64_t mine = ((P >> v) & 1) ? P : (full & ~P);
            int own = std::popcount(rows[v] & mine), d = std::popcount(rows[v]);
            mn = std::min(mn, 2 * own - d);
        }
        best = std::max(best, mn);
    }
    return best;
}

std::vector<std::uint64_t> small_rows(const Graph& g) {
    if (g.n() > 12) throw TooLarge("exhaustive enumeration needs n2 <= 12");
    std::vector<std::uint64_t> r(g.n());
    for (int v = 0; v < g.n(); ++v) r[v] = g.row(v)[0];
    return r;
}

std::uint64_t count_mask(int n2, std::uint64_t mask, int H) {
    std::uint64_t rows[12] = {0};
    std::size_t b = 0;
    for (int i = 1; i < n2; ++i)
        for (int j = 0; j < i; ++j, ++b)
            if ((mask >> b) & 1ULL) {
                rows[i] |= 1ULL << j;
                rows[j] |= 1ULL << i;
            }
    return count_small(rows, n2, H, MarginSide::own);
}

}  // namespace

std::uint64_t count_friendly_exhaustive(const Graph& g, int H, MarginSide side) {
    if (g.n() == 0) return 1;
    auto rows = small_rows(g);
    return count_small(rows.data(), g.n(), H, side);
}

int max_min_margin_exhaustive(const Graph& g) {
    if (g.n() == 0) return 0;
    auto rows = small_rows(g);
    return max_min_small(rows.data(), g.n());
}

std::uint64_t ordered_bisections(int n2) {
    auto choose = [](int n, int k) {
        std::uint64_t c = 1;
        for (int i = 1; i <= k; ++i) c = c * (n - k + i) / i;
        return c;
    };
    return n2 % 2 == 0 ? choose(n2, n2 / 2) : 2 * choose(n2, n2 / 2);
}

namespace {

void check_exhaustive(int n2) {
    if (n2 < 2) throw std::invalid_argument("need at least 2 vertices");
    if (pair_count(n2) > exhaustive_pairs_max) throw TooLarge("exhaustive mode needs C(n2,2) <= 16");
}

MomentEstimate exact_from(std::uint64_t total, int n2) {
    MomentEstimate e;
    e.numerator = total;
    e.samples = 1ULL << pair_count(n2);
    e.mean = double(total) / double(e.samples);
    e.stderr_ = 0;
    return e;
}

MomentEstimate sample_from(std::uint64_t sum, std::uint64_t sq, std::uint64_t samples) {
    MomentEstimate e;
    e.samples = samples;
    double n = double(samples);
    e.mean = double(sum) / n;
    double var = samples > 1 ? (double(sq) - n * e.mean * e.mean) / (n - 1) : 0;
    e.stderr_ = std::sqrt(std::max(0.0, var) / n);
    return e;
}

}  // namespace

MomentEstimate first_moment_exhaustive_serial(int n2, int H) {
    check_exhaustive(n2);
    std::uint64_t total = 0, graphs = 1ULL << pair_count(n2);
    for (std::uint64_t m = 0; m < graphs; ++m) total += count_mask(n2, m, H);
    return exact_from(total, n2);
}

MomentEstimate first_moment_exhaustive(int n2, int H) {
    check_exhaustive(n2);
    std::uint64_t total = 0;
    const long long graphs = 1LL << pair_count(n2);
#pragma omp parallel for schedule(static) reduction(+ : total)
    for (long long m = 0; m < graphs; ++m) total += count_mask(n2, std::uint64_t(m), H);
    return exact_from(total, n2);
}

MomentEstimate first_moment_monte_carlo_serial(int n2, int H, std::uint64_t samples, std::uint64_t seed) {
    if (n2 > 12) throw TooLarge("Monte Carlo counting needs n2 <= 12");
    std::uint64_t sum = 0, sq = 0;
    for (std::uint64_t i = 0; i < samples; ++i) {
        std::uint64_t c = count_friendly_exhaustive(sample_gnp_half(n2, SplitMix64::derive(seed, i)), H);
        sum += c;
        sq += c * c;
    }
    return sample_from(sum, sq, samples);
}

MomentEstimate first_moment_monte_carlo(int n2, int H, std::uint64_t samples, std::uint64_t seed, int threads) {
    if (n2 > 12) throw TooLarge("Monte Carlo counting needs n2 <= 12");
    std::uint64_t sum = 0, sq = 0;
    const long long N = static_cast<long long>(samples);
#pragma omp parallel for schedule(static) reduction(+ : sum, sq) num_threads(std::max(1, threads))
    for (long long i = 0; i < N; ++i) {
        std::uint64_t c = count_friendly_exhaustive(sample_gnp_half(n2, SplitMix64::derive(seed, i)), H);
        sum += c;
        sq += c * c;
    }
    return sample_from(sum, sq, samples);
}

namespace {

struct Objective {
    int min;
    int count;  // vertices attaining min (among those tracked)
    bool better_than(const Objective& o) const { return min > o.min || (min == o.min && count < o.count); }
};

Objective objective(const std::vector<int>& m) {
    Objective o{m.empty() ? 0 : *std::min_element(m.begin(), m.end()), 0};
    for (int v : m) o.count += v == o.min;
    return o;
}

SearchResult climb(const Graph& g, std::uint64_t seed) {
    const int n = g.n();
    SplitMix64 rng(seed);
    std::vector<int> order(n);
    for (int i = 0; i < n; ++i) order[i] = i;
    for (int i = n - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
    std::vector<std::uint8_t> part(n, 0);
    for (int i = n / 2; i < n; ++i) part[order[i]] = 1;
    BisectionState st(g, part);

    SearchResult res{st.min_margin(), st.part_of(), 0};
    const bool all_pairs = n <= 400;
    for (int step = 0; step < 10 * n + 10; ++step) {
        const auto& m = st.margins();
        Objective cur = objective(m);
        // only vertices near the minimum can set the new minimum; others move by at most 2
        std::vector<int> low, crit;
        for (int x = 0; x < n; ++x) {
            if (m[x] <= cur.min + 3) low.push_back(x);
            if (m[x] == cur.min) crit.push_back(x);
        }
        auto score = [&](int u, int w) {
            bool others = int(low.size()) < n;
            Objective o{others ? cur.min + 2 : n + 1, 0};
            auto see = [&](int v) {
                if (v < o.min) {
                    o.min = v;
                    o.count = 1;
                } else if (v == o.min) {
                    ++o.count;
                }
            };
            for (int x : low) see(st.margin_after_swap(x, u, w));
            if (m[u] > cur.min + 3) see(st.margin_after_swap(u, u, w));
            if (m[w] > cur.min + 3) see(st.margin_after_swap(w, u, w));
            if (others && o.count == 0) o.count = 1;
            return o;
        };
        Objective best = cur;
        int bu = -1, bw = -1;
        auto consider = [&](int u, int w) {
            if (st.part_of()[u] != 0 || st.part_of()[w] != 1) return;
            Objective o = score(u, w);
            if (o.better_than(best)) {
                best = o;
                bu = u;
                bw = w;
            }
        };
        if (all_pairs) {
            for (int u = 0; u < n; ++u)
                for (int w = 0; w < n; ++w) consider(u, w);
        } else {
            for (int c : crit)
                for (int x = 0; x < n; ++x) {
                    consider(c, x);
                    consider(x, c);
                }
        }
        if (bu < 0) break;
        st.swap(bu, bw);
        ++res.swaps;
        if (st.min_margin() > res.best_H) {
            res.best_H = st.min_margin();
            res.partition = st.part_of();
        }
    }
    return res;
}

SearchResult pick(const std::vector<SearchResult>& runs) {
    // first best in restart order, independent of scheduling
    std::size_t k = 0;
    for (std::size_t i = 1; i < runs.size(); ++i)
        if (runs[i].best_H > runs[k].best_H) k = i;
    return runs[k];
}

}  // namespace

SearchResult local_search_max_margin_serial(const Graph& g, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("need at least one restart");
    std::vector<SearchResult> runs;
    for (int r = 0; r < restarts; ++r) runs.push_back(climb(g, SplitMix64::derive(seed, r)));
    return pick(runs);
}

SearchResult local_search_max_margin(const Graph& g, int restarts, std::uint64_t seed, int threads) {
    if (restarts < 1) throw std::invalid_argument("need at least one restart");
    std::vector<SearchResult> runs(restarts);
#pragma omp parallel for schedule(dynamic) num_threads(std::max(1, threads))
    for (int r = 0; r < restarts; ++r) runs[r] = climb(g, SplitMix64::derive(seed, r));
    return pick(runs);
}

std::string graph_csv(const std::vector<CsvRow>& rows) {
    std::ostringstream os;
    os << "seed,n2,H,value\n";
    for (const auto& r : rows) os << r.seed << ',' << r.n2 << ',' << r.H << ',' << r.value << '\n';
    return os.str();
}

double normalized_margin(int best_H, int n2) { return best_H / std::sqrt(n2 / 2.0); }

}  // namespace fc
