#include <memory>
#include <mutex>
#include <tuple>

#include "queerkit/queer.hpp"

namespace queerkit {

namespace {

// Entry images of a two-slot operator read along the auxiliary slot 1.
std::map<std::pair<int, int>, Tensor> read_entries(const Tensor& t) {
  std::map<std::pair<int, int>, Tensor> out;
  for (const auto& [k, c] : t.terms()) {
    int i = key::row(k, 1);
    int j = key::col(k, 1);
    auto it = out.try_emplace({i, j}, Tensor(t.n(), 1)).first;
    it->second.add_term(key::make({{key::row(k, 0), key::col(k, 0)}}), entry_sign(i, j) < 0 ? -c : c);
  }
  return out;
}

class Evaluator {
 public:
  explicit Evaluator(const RepAssignment& rep) : rep_(rep) {}

  Tensor eval(const NCPoly& x) {
    Tensor acc(rep_.n, 1);
    for (const auto& [w, c] : x.terms()) acc += word(w).scaled(c);
    return acc;
  }

 private:
  const Tensor& word(const Word& w) {
    auto it = memo_.find(w);
    if (it != memo_.end()) return it->second;
    Tensor value;
    if (w.empty()) {
      value = Tensor::identity(rep_.n, 1);
    } else {
      Word prefix(w.begin(), w.end() - 1);
      auto img = rep_.images.find(w.back());
      if (img == rep_.images.end()) throw InvalidInput("no image for generator " + gen::to_string(w.back()));
      value = word(prefix) * img->second;
    }
    return memo_.emplace(w, std::move(value)).first->second;
  }

  const RepAssignment& rep_;
  std::map<Word, Tensor, WordLess> memo_;
};

// First relation not annihilated, as text; empty when all vanish.
std::string first_failing(const std::vector<NCPoly>& rels, const RepAssignment& rep) {
  Evaluator ev(rep);
  for (const auto& r : rels) {
    if (!ev.eval(r).is_zero()) return r.to_string();
  }
  return {};
}

bool diagonal_ok(const RepAssignment& rep, bool loop) {
  Tensor id = Tensor::identity(rep.n, 1);
  for (int i = 1; i <= rep.n; ++i) {
    Letter a = loop ? gen::loop(i, i, 0) : gen::finite(i, i);
    Letter b = loop ? gen::loop(-i, -i, 0) : gen::finite(-i, -i);
    const Tensor& x = rep.images.at(a);
    const Tensor& y = rep.images.at(b);
    if (x * y != id || y * x != id) return false;
  }
  return true;
}

RepAssignment try_finite(int n, const std::string& name, const Tensor& t) {
  RepAssignment rep;
  rep.n = n;
  rep.mode = AlgebraMode::finite;
  rep.provenance = name;
  rep.generating = t;
  for (const auto& [k, c] : t.terms()) {
    if (key::row(k, 1) > key::col(k, 1)) {
      rep.provenance += ": rejected, entries below the diagonal";
      return rep;
    }
  }
  auto entries = read_entries(t);
  for (int i : index_range(n)) {
    for (int j : index_range(n)) {
      if (i > j) continue;
      auto it = entries.find({i, j});
      rep.images[gen::finite(i, j)] = it == entries.end() ? Tensor(n, 1) : it->second;
    }
  }
  if (!diagonal_ok(rep, false)) {
    rep.provenance += ": rejected, diagonal conditions";
    return rep;
  }
  std::string bad = first_failing(presentation_finite(n).relations, rep);
  if (!bad.empty()) {
    rep.provenance += ": rejected, relation " + bad;
    return rep;
  }
  rep.verified = true;
  return rep;
}

RepAssignment try_loop(int n, unsigned R, const std::string& name, const Tensor& t) {
  RepAssignment rep;
  rep.n = n;
  rep.mode = AlgebraMode::loop;
  rep.R = R;
  rep.provenance = name;
  rep.generating = t;
  for (unsigned r = 0; r <= R; ++r) {
    Tensor coeff = series_coefficient_at_infinity(t, Var::u, r);
    auto entries = read_entries(coeff);
    for (int i : index_range(n)) {
      for (int j : index_range(n)) {
        auto it = entries.find({i, j});
        rep.images[gen::loop(i, j, r)] = it == entries.end() ? Tensor(n, 1) : it->second;
      }
    }
  }
  for (int i : index_range(n)) {
    for (int j : index_range(n)) {
      if (i > j && !rep.images.at(gen::loop(i, j, 0)).is_zero()) {
        rep.provenance += ": rejected, zero mode not upper triangular";
        return rep;
      }
    }
  }
  if (!diagonal_ok(rep, true)) {
    rep.provenance += ": rejected, zero-mode diagonal conditions";
    return rep;
  }
  std::string bad = first_failing(presentation_loop(n, R).relations, rep);
  if (!bad.empty()) {
    rep.provenance += ": rejected, relation " + bad;
    return rep;
  }
  // Exact spectral RTT for the generating operator.
  const RatFunc u = RatFunc::var(Var::u);
  const RatFunc v = RatFunc::var(Var::v);
  Tensor t1 = embed_slots(t, {0, 1}, 3);
  Tensor t2 = embed_slots(substitute(t, {{Var::u, v}}), {0, 2}, 3);
  Tensor s = embed_slots(build_S_uv_cleared(n, u, v), {1, 2}, 3);
  if (t1 * t2 * s != s * t2 * t1) {
    rep.provenance += ": rejected, spectral RTT";
    return rep;
  }
  rep.verified = true;
  return rep;
}

RepAssignment search(int n, AlgebraMode mode, unsigned R) {
  std::vector<std::pair<std::string, Tensor>> candidates;
  if (mode == AlgebraMode::finite) {
    Tensor s = build_S(n);
    candidates.emplace_back("S, quantum slot 0", s);
    candidates.emplace_back("S, quantum slot 1", slots_21(s));
  } else {
    const RatFunc z = RatFunc::var(Var::z);
    const RatFunc u = RatFunc::var(Var::u);
    Tensor a = build_S_uv(n, z, u);
    Tensor b = build_S_uv(n, u, z);
    candidates.emplace_back("S(z,u), quantum slot 0", a);
    candidates.emplace_back("S(u,z), quantum slot 0", b);
    candidates.emplace_back("S(z,u), quantum slot 1", slots_21(a));
    candidates.emplace_back("S(u,z), quantum slot 1", slots_21(b));
  }
  std::vector<std::string> tried;
  for (const auto& [name, t] : candidates) {
    RepAssignment rep = mode == AlgebraMode::finite ? try_finite(n, name, t) : try_loop(n, R, name, t);
    tried.push_back(rep.provenance);
    if (rep.verified) {
      rep.candidates_tried = tried;
      return rep;
    }
  }
  RepAssignment none;
  none.n = n;
  none.mode = mode;
  none.R = R;
  none.provenance = "not found";
  none.candidates_tried = tried;
  return none;
}

}  // namespace

const RepAssignment& vector_rep(int n, AlgebraMode mode, unsigned R) {
  if (n < 1) throw InvalidInput("rank must be at least 1");
  static std::mutex mu;
  static std::map<std::tuple<int, int, unsigned>, std::unique_ptr<RepAssignment>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto k = std::make_tuple(n, static_cast<int>(mode), mode == AlgebraMode::finite ? 0u : R);
  auto it = cache.find(k);
  if (it == cache.end()) it = cache.emplace(k, std::make_unique<RepAssignment>(search(n, mode, R))).first;
  return *it->second;
}

Tensor rep_eval(const NCPoly& x, const RepAssignment& rep) { return Evaluator(rep).eval(x); }

Tensor represent(const TensorElement<NCPoly>& x, const RepAssignment& rep) {
  if (x.slots() + 1 > kMaxSlots) throw ShapeError("too many slots to represent");
  Evaluator ev(rep);
  Tensor out(x.n(), x.slots() + 1);
  for (const auto& [k, c] : x.terms()) {
    Tensor img = ev.eval(c);
    std::uint64_t base = 0;
    for (int s = 0; s < x.slots(); ++s) {
      base = key::set_row(base, s + 1, key::row(k, s));
      base = key::set_col(base, s + 1, key::col(k, s));
    }
    for (const auto& [kq, a] : img.terms()) {
      std::uint64_t kk = key::set_col(key::set_row(base, 0, key::row(kq, 0)), 0, key::col(kq, 0));
      out.add_term(kk, a);
    }
  }
  return out;
}

}  // namespace queerkit
