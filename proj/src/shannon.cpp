#include "fekete/shannon.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "fekete/errors.hpp"

namespace fekete {

namespace {

constexpr Index kWordBits = 64;

std::size_t word_of(Index v) { return static_cast<std::size_t>(v / kWordBits); }

unsigned long long bit_of(Index v) {
  return 1ULL << static_cast<unsigned>(v % kWordBits);
}

}  // namespace

Graph::Graph(Index vertex_count) {
  if (vertex_count < 0)
    throw PreconditionViolation("vertex count must be >= 0, got " +
                                std::to_string(vertex_count));
  if (vertex_count > kGraphSizeCap)
    throw TooLarge("graph with " + std::to_string(vertex_count) +
                   " vertices exceeds the size cap " +
                   std::to_string(kGraphSizeCap));
  n_ = vertex_count;
  words_ = (n_ + kWordBits - 1) / kWordBits;
  bits_.assign(static_cast<std::size_t>(n_ * words_), 0);
}

void Graph::check_vertex(Index v) const {
  if (v < 0 || v >= n_)
    throw PreconditionViolation("vertex " + std::to_string(v) +
                                " outside 0.." + std::to_string(n_ - 1));
}

void Graph::add_edge(Index u, Index v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v)
    throw PreconditionViolation("self-loop at vertex " + std::to_string(u));
  bits_[static_cast<std::size_t>(u * words_) + word_of(v)] |= bit_of(v);
  bits_[static_cast<std::size_t>(v * words_) + word_of(u)] |= bit_of(u);
}

bool Graph::adjacent(Index u, Index v) const {
  check_vertex(u);
  check_vertex(v);
  return (bits_[static_cast<std::size_t>(u * words_) + word_of(v)] &
          bit_of(v)) != 0;
}

Index Graph::degree(Index v) const {
  check_vertex(v);
  Index total = 0;
  for (Index w = 0; w < words_; ++w)
    total += std::popcount(bits_[static_cast<std::size_t>(v * words_ + w)]);
  return total;
}

Index Graph::edge_count() const {
  Index total = 0;
  for (const unsigned long long w : bits_) total += std::popcount(w);
  return total / 2;
}

Graph make_edgeless(Index n) { return Graph(n); }

Graph make_complete(Index n) {
  Graph g(n);
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v) g.add_edge(u, v);
  return g;
}

Graph make_cycle(Index n) {
  if (n < 3)
    throw PreconditionViolation("cycle needs at least 3 vertices, got " +
                                std::to_string(n));
  Graph g(n);
  for (Index v = 0; v < n; ++v) g.add_edge(v, (v + 1) % n);
  return g;
}

namespace {

struct GraphWord {
  std::size_t offset;
  std::string text;
};

Index parse_graph_number(const GraphWord& w, Index max_digits) {
  if (w.text.empty() || static_cast<Index>(w.text.size()) > max_digits)
    throw ParseError("number out of range", w.offset);
  for (const char ch : w.text)
    if (ch < '0' || ch > '9')
      throw ParseError("expected a non-negative integer, got '" + w.text + "'",
                       w.offset);
  return static_cast<Index>(std::stoll(w.text));
}

}  // namespace

Graph parse_graph(const std::string& text) {
  std::vector<std::vector<GraphWord>> lines;
  std::size_t pos = 0;
  const std::size_t size = text.size();
  while (pos <= size) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string::npos) eol = size;
    std::vector<GraphWord> words;
    std::size_t i = pos;
    while (i < eol) {
      while (i < eol && (text[i] == ' ' || text[i] == '\t' || text[i] == '\r'))
        ++i;
      const std::size_t start = i;
      while (i < eol && text[i] != ' ' && text[i] != '\t' && text[i] != '\r')
        ++i;
      if (i > start) words.push_back({start, text.substr(start, i - start)});
    }
    if (!words.empty()) lines.push_back(std::move(words));
    if (eol == size) break;
    pos = eol + 1;
  }

  if (lines.empty()) throw ParseError("graph text holds no vertex count", 0);
  if (lines[0].size() != 1)
    throw ParseError("first line must hold exactly the vertex count",
                     lines[0][1].offset);
  const Index n = parse_graph_number(lines[0][0], 9);
  if (n > kGraphSizeCap)
    throw TooLarge("graph with " + std::to_string(n) +
                   " vertices exceeds the size cap " +
                   std::to_string(kGraphSizeCap));

  Graph g(n);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const std::vector<GraphWord>& words = lines[li];
    if (words.size() != 2)
      throw ParseError("edge line must hold exactly two vertex numbers",
                       words[words.size() > 2 ? 2 : 0].offset);
    const Index u = parse_graph_number(words[0], 9);
    const Index v = parse_graph_number(words[1], 9);
    if (u >= n || v >= n)
      throw ParseError("edge endpoint outside 0.." + std::to_string(n - 1),
                       words[u >= n ? 0 : 1].offset);
    if (u == v) throw ParseError("self-loop is not allowed", words[0].offset);
    g.add_edge(u, v);
  }
  return g;
}

void validate_channel(const ChannelMatrix& w) {
  if (w.rows.empty())
    throw PreconditionViolation("channel matrix has no rows");
  const std::size_t cols = w.rows[0].size();
  if (cols == 0)
    throw PreconditionViolation("channel matrix has no columns");
  for (std::size_t r = 0; r < w.rows.size(); ++r) {
    const std::vector<Rational>& row = w.rows[r];
    if (row.size() != cols)
      throw PreconditionViolation("channel row " + std::to_string(r) +
                                  " has " + std::to_string(row.size()) +
                                  " entries, expected " + std::to_string(cols));
    Rational sum;
    for (const Rational& p : row) {
      if (p.sign() < 0)
        throw PreconditionViolation("channel row " + std::to_string(r) +
                                    " holds a negative probability");
      sum += p;
    }
    if (sum != Rational(1))
      throw PreconditionViolation("channel row " + std::to_string(r) +
                                  " sums to " + sum.to_string() +
                                  ", expected 1");
  }
}

Graph confusability_graph(const ChannelMatrix& w) {
  validate_channel(w);
  const Index n = static_cast<Index>(w.rows.size());
  const std::size_t cols = w.rows[0].size();
  Graph g(n);
  for (Index u = 0; u < n; ++u)
    for (Index v = u + 1; v < n; ++v)
      for (std::size_t c = 0; c < cols; ++c)
        if (w.rows[static_cast<std::size_t>(u)][c].sign() > 0 &&
            w.rows[static_cast<std::size_t>(v)][c].sign() > 0) {
          g.add_edge(u, v);
          break;
        }
  return g;
}

Graph strong_product(const Graph& g, const Graph& h) {
  const Index gn = g.size();
  const Index hn = h.size();
  const unsigned __int128 total =
      static_cast<unsigned __int128>(gn) * static_cast<unsigned __int128>(hn);
  if (total > static_cast<unsigned __int128>(kGraphSizeCap))
    throw TooLarge("strong product with " + std::to_string(gn) + " * " +
                   std::to_string(hn) + " vertices exceeds the size cap " +
                   std::to_string(kGraphSizeCap));
  Graph out(static_cast<Index>(total));
  for (Index g1 = 0; g1 < gn; ++g1)
    for (Index h1 = 0; h1 < hn; ++h1) {
      const Index u = g1 * hn + h1;
      for (Index g2 = g1; g2 < gn; ++g2) {
        if (g2 != g1 && !g.adjacent(g1, g2)) continue;
        const Index h_start = g2 == g1 ? h1 + 1 : 0;
        for (Index h2 = h_start; h2 < hn; ++h2) {
          if (h2 != h1 && !h.adjacent(h1, h2)) continue;
          out.add_edge(u, g2 * hn + h2);
        }
      }
    }
  return out;
}

namespace {

// Branch and bound state: vertices are relabeled so index order equals
// descending-degree order, making "first set bit" the branching rule.
struct IndependenceSearch {
  Index n = 0;
  Index words = 0;
  std::vector<unsigned long long> nb;     // neighbor mask per vertex
  std::vector<unsigned long long> arena;  // one candidate set per depth
  Index best = 0;

  unsigned long long* level(Index depth) {
    return arena.data() + static_cast<std::size_t>(depth * words);
  }

  Index count(const unsigned long long* p) const {
    Index total = 0;
    for (Index w = 0; w < words; ++w) total += std::popcount(p[w]);
    return total;
  }

  Index first_bit(const unsigned long long* p) const {
    for (Index w = 0; w < words; ++w)
      if (p[w] != 0) return w * kWordBits + std::countr_zero(p[w]);
    return -1;
  }

  void search(Index chosen, Index depth) {
    unsigned long long* p = level(depth);
    for (;;) {
      const Index cnt = count(p);
      if (chosen + cnt <= best) return;
      if (cnt == 0) {
        best = chosen;
        return;
      }
      const Index v = first_bit(p);
      unsigned long long* q = level(depth + 1);
      const unsigned long long* mask =
          nb.data() + static_cast<std::size_t>(v * words);
      for (Index w = 0; w < words; ++w) q[w] = p[w] & ~mask[w];
      q[word_of(v)] &= ~bit_of(v);
      search(chosen + 1, depth + 1);
      p[word_of(v)] &= ~bit_of(v);
    }
  }
};

}  // namespace

Index independence_number(const Graph& g, Index vertex_cap) {
  const Index n = g.size();
  if (n > vertex_cap)
    throw TooLarge("independence solver limited to " +
                   std::to_string(vertex_cap) + " vertices, got " +
                   std::to_string(n));
  if (n == 0) return 0;

  std::vector<Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&g](Index a, Index b) {
    return g.degree(a) > g.degree(b);
  });
  std::vector<Index> rank(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i)
    rank[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  IndependenceSearch s;
  s.n = n;
  s.words = (n + kWordBits - 1) / kWordBits;
  s.nb.assign(static_cast<std::size_t>(n * s.words), 0);
  for (Index u = 0; u < n; ++u)
    for (Index v = 0; v < n; ++v)
      if (u != v && g.adjacent(u, v)) {
        const Index ru = rank[static_cast<std::size_t>(u)];
        const Index rv = rank[static_cast<std::size_t>(v)];
        s.nb[static_cast<std::size_t>(ru * s.words) + word_of(rv)] |= bit_of(rv);
      }
  s.arena.assign(static_cast<std::size_t>((n + 2) * s.words), 0);

  unsigned long long* root = s.level(0);
  for (Index v = 0; v < n; ++v) root[word_of(v)] |= bit_of(v);
  s.search(0, 0);
  return s.best;
}

namespace {

// floor(alpha^(1/power) * 10^6) rendered as "i.ffffff"; exact integer root,
// display only.
std::string root_decimal_digits(Index alpha, Index power) {
  constexpr unsigned long kDigits = 6;
  mpz_class scaled;
  mpz_ui_pow_ui(scaled.get_mpz_t(), 10,
                kDigits * static_cast<unsigned long>(power));
  scaled *= static_cast<unsigned long>(alpha);
  mpz_class root;
  mpz_root(root.get_mpz_t(), scaled.get_mpz_t(),
           static_cast<unsigned long>(power));
  mpz_class shift;
  mpz_ui_pow_ui(shift.get_mpz_t(), 10, kDigits);
  const mpz_class whole = root / shift;
  mpz_class frac = root % shift;
  std::string f = frac.get_str();
  return whole.get_str() + "." + std::string(kDigits - f.size(), '0') + f;
}

}  // namespace

CapacityReport capacity_lower_bounds(const Graph& g, Index max_power,
                                     Index vertex_cap) {
  if (g.size() < 1)
    throw PreconditionViolation("capacity bounds need at least one vertex");
  if (max_power < 1 || max_power > 64)
    throw PreconditionViolation("max_power must be in 1..64, got " +
                                std::to_string(max_power));

  CapacityReport report;
  Graph power = g;
  for (Index n = 1; n <= max_power; ++n) {
    if (n > 1) {
      const unsigned __int128 next =
          static_cast<unsigned __int128>(power.size()) *
          static_cast<unsigned __int128>(g.size());
      if (next > static_cast<unsigned __int128>(vertex_cap))
        throw TooLarge("strong power " + std::to_string(n) + " has " +
                       std::to_string(power.size()) + " * " +
                       std::to_string(g.size()) +
                       " vertices, above the cap " +
                       std::to_string(vertex_cap));
      power = strong_product(power, g);
    } else if (g.size() > vertex_cap) {
      throw TooLarge("graph has " + std::to_string(g.size()) +
                     " vertices, above the cap " + std::to_string(vertex_cap));
    }
    const Index alpha = independence_number(power, vertex_cap);
    report.bounds.push_back({n, alpha, root_decimal_digits(alpha, n)});
  }

  report.supermultiplicative = true;
  for (std::size_t i = 0; i < report.bounds.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j) {
      const std::size_t sum = i + j + 2;
      if (sum > report.bounds.size()) continue;
      const Index lhs = report.bounds[sum - 1].alpha;
      if (lhs < report.bounds[i].alpha * report.bounds[j].alpha)
        report.supermultiplicative = false;
    }
  return report;
}

}  // namespace fekete
