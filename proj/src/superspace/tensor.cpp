#include "queerkit/tensor.hpp"

#include <numeric>
#include <sstream>

#include "queerkit/linalg.hpp"

namespace queerkit {

SuperIndex SuperIndex::make(int value, int n) {
  if (value == 0 || value < -n || value > n) {
    throw InvalidIndex("index " + std::to_string(value) + " is not valid for rank " + std::to_string(n));
  }
  return SuperIndex(value);
}

std::vector<int> index_range(int n) {
  std::vector<int> out;
  out.reserve(2 * n);
  for (int i = -n; i <= n; ++i) {
    if (i != 0) out.push_back(i);
  }
  return out;
}

namespace key {

std::uint64_t make(const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.size() > static_cast<std::size_t>(kMaxSlots)) throw ShapeError("too many slots");
  std::uint64_t k = 0;
  for (std::size_t s = 0; s < pairs.size(); ++s) {
    k = set_row(k, static_cast<int>(s), pairs[s].first);
    k = set_col(k, static_cast<int>(s), pairs[s].second);
  }
  return k;
}

std::vector<std::pair<int, int>> unpack(std::uint64_t k, int slots) {
  std::vector<std::pair<int, int>> out;
  for (int s = 0; s < slots; ++s) out.emplace_back(row(k, s), col(k, s));
  return out;
}

int parity(std::uint64_t k, int slots) {
  int p = 0;
  for (int s = 0; s < slots; ++s) p ^= matrix_parity(row(k, s), col(k, s));
  return p;
}

std::string to_string(std::uint64_t k, int slots) {
  std::string r = "(";
  std::string c = "(";
  for (int s = 0; s < slots; ++s) {
    if (s > 0) {
      r += ',';
      c += ',';
    }
    r += std::to_string(row(k, s));
    c += std::to_string(col(k, s));
  }
  return r + ") " + c + ")";
}

}  // namespace key

int action_sign(std::uint64_t k, int slots) {
  int e = 0;
  int prefix = 0;
  for (int s = 0; s < slots; ++s) {
    e ^= prefix & matrix_parity(key::row(k, s), key::col(k, s));
    prefix ^= parity(key::col(k, s));
  }
  return e ? -1 : 1;
}

std::vector<std::pair<std::vector<int>, RatFunc>> apply_to_vector(const Tensor& x, const std::vector<int>& basis) {
  if (static_cast<int>(basis.size()) != x.slots()) throw ShapeError("basis tuple has the wrong length");
  std::uint64_t probe = 0;
  for (int s = 0; s < x.slots(); ++s) {
    SuperIndex::make(basis[s], x.n());
    probe = key::set_col(probe, s, basis[s]);
  }
  std::map<std::vector<int>, RatFunc> acc;
  for (const auto& [k, c] : x.terms()) {
    if (key::cols(k) != key::cols(probe)) continue;
    std::vector<int> out(x.slots());
    for (int s = 0; s < x.slots(); ++s) out[s] = key::row(k, s);
    RatFunc& slot = acc[out];
    slot += action_sign(k, x.slots()) < 0 ? -c : c;
  }
  std::vector<std::pair<std::vector<int>, RatFunc>> result;
  for (auto& [v, c] : acc) {
    if (!c.is_zero()) result.emplace_back(v, std::move(c));
  }
  return result;
}

namespace {

int basis_pos(int v, int n) { return v < 0 ? v + n : v + n - 1; }
int basis_value(int p, int n) { return p < n ? p - n : p - n + 1; }

std::size_t tuple_pos(std::uint64_t k, int slots, int n, bool row) {
  std::size_t p = 0;
  for (int s = 0; s < slots; ++s) {
    p = p * static_cast<std::size_t>(2 * n) +
        static_cast<std::size_t>(basis_pos(row ? key::row(k, s) : key::col(k, s), n));
  }
  return p;
}

std::uint64_t key_from_pos(std::size_t r, std::size_t c, int slots, int n) {
  std::uint64_t k = 0;
  for (int s = slots - 1; s >= 0; --s) {
    k = key::set_row(k, s, basis_value(static_cast<int>(r % (2 * n)), n));
    k = key::set_col(k, s, basis_value(static_cast<int>(c % (2 * n)), n));
    r /= 2 * n;
    c /= 2 * n;
  }
  return k;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t a) {
  while (parent[a] != a) {
    parent[a] = parent[parent[a]];
    a = parent[a];
  }
  return a;
}

}  // namespace

Tensor inverse(const Tensor& x) {
  const int n = x.n();
  const int N = x.slots();
  std::size_t dim = 1;
  for (int s = 0; s < N; ++s) dim *= static_cast<std::size_t>(2 * n);
  std::vector<std::size_t> parent(dim);
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  struct Entry {
    std::size_t r, c;
    RatFunc v;
  };
  std::vector<Entry> entries;
  entries.reserve(x.size());
  for (const auto& [k, c] : x.terms()) {
    std::size_t r = tuple_pos(k, N, n, true);
    std::size_t cc = tuple_pos(k, N, n, false);
    entries.push_back({r, cc, action_sign(k, N) < 0 ? -c : c});
    std::size_t a = find_root(parent, r);
    std::size_t b = find_root(parent, cc);
    if (a != b) parent[a] = b;
  }
  std::map<std::size_t, std::vector<std::size_t>> blocks;
  for (std::size_t i = 0; i < dim; ++i) blocks[find_root(parent, i)].push_back(i);
  std::vector<std::size_t> local(dim);
  std::vector<std::size_t> block_of(dim);
  std::vector<DenseMatrix> mats;
  std::vector<const std::vector<std::size_t>*> members;
  for (const auto& [root, m] : blocks) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      local[m[i]] = i;
      block_of[m[i]] = mats.size();
    }
    mats.emplace_back(m.size(), std::vector<RatFunc>(m.size()));
    members.push_back(&m);
  }
  for (auto& e : entries) mats[block_of[e.r]][local[e.r]][local[e.c]] = std::move(e.v);
  Tensor out(n, N);
  for (std::size_t b = 0; b < mats.size(); ++b) {
    DenseMatrix inv = invert_dense(mats[b]);
    const auto& m = *members[b];
    for (std::size_t i = 0; i < m.size(); ++i) {
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (inv[i][j].is_zero()) continue;
        std::uint64_t k = key_from_pos(m[i], m[j], N, n);
        out.add_term(k, action_sign(k, N) < 0 ? -inv[i][j] : inv[i][j]);
      }
    }
  }
  return out;
}

std::string to_exchange(const Tensor& x) {
  std::string out = "n=" + std::to_string(x.n()) + " slots=" + std::to_string(x.slots()) + " ring=Q(q,u,v,z)\n";
  for (const auto& [k, c] : x.terms()) {
    out += key::to_string(k, x.slots());
    out += ' ';
    out += c.to_string();
    out += '\n';
  }
  return out;
}

namespace {

std::vector<int> parse_tuple(const std::string& s, std::size_t& pos, int line) {
  auto fail = [&](const std::string& what) {
    throw ParseError("exchange line " + std::to_string(line) + ": " + what);
  };
  if (pos >= s.size() || s[pos] != '(') fail("expected '('");
  ++pos;
  std::vector<int> out;
  while (true) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s.substr(pos), &used);
    } catch (const std::exception&) {
      fail("expected integer index");
    }
    out.push_back(v);
    pos += used;
    if (pos < s.size() && s[pos] == ',') {
      ++pos;
      continue;
    }
    if (pos < s.size() && s[pos] == ')') {
      ++pos;
      return out;
    }
    fail("expected ',' or ')'");
  }
}

}  // namespace

Tensor parse_exchange(const std::string& text) {
  std::istringstream in(text);
  std::string header;
  if (!std::getline(in, header)) throw ParseError("exchange header missing");
  int n = 0;
  int slots = 0;
  char ring[32] = {0};
  if (std::sscanf(header.c_str(), "n=%d slots=%d ring=%31s", &n, &slots, ring) != 3 ||
      std::string(ring) != "Q(q,u,v,z)") {
    throw ParseError("malformed exchange header '" + header + "'");
  }
  if (n < 1) throw ParseError("exchange header has invalid rank");
  if (slots < 0 || slots > kMaxSlots) throw ParseError("exchange header has invalid slot count");
  Tensor out(n, slots);
  std::string line;
  int lineno = 1;
  std::uint64_t last = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::size_t pos = 0;
    auto rows = parse_tuple(line, pos, lineno);
    if (pos >= line.size() || line[pos] != ' ') throw ParseError("exchange line " + std::to_string(lineno) + ": expected space");
    ++pos;
    auto cols = parse_tuple(line, pos, lineno);
    if (pos >= line.size() || line[pos] != ' ') throw ParseError("exchange line " + std::to_string(lineno) + ": expected space");
    ++pos;
    if (static_cast<int>(rows.size()) != slots || static_cast<int>(cols.size()) != slots) {
      throw ParseError("exchange line " + std::to_string(lineno) + ": wrong number of slots");
    }
    std::vector<std::pair<int, int>> pairs;
    for (int s = 0; s < slots; ++s) {
      SuperIndex::make(rows[s], n);
      SuperIndex::make(cols[s], n);
      pairs.emplace_back(rows[s], cols[s]);
    }
    RatFunc c = RatFunc::parse(line.substr(pos));
    if (c.is_zero()) throw ParseError("exchange line " + std::to_string(lineno) + ": zero coefficient");
    std::uint64_t k = key::make(pairs);
    if (!first && k <= last) throw ParseError("exchange line " + std::to_string(lineno) + ": terms out of order");
    first = false;
    last = k;
    out.add_term(k, c);
  }
  return out;
}

}  // namespace queerkit
