#include "hyperqual/automata.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace hyperqual {

std::uint32_t Alphabet::size() const {
  std::uint64_t s = 1;
  for (std::size_t i = 0; i < props.size(); ++i) {
    s *= weights.size();
    if (s > (1u << 24)) throw std::length_error("alphabet too large");
  }
  return static_cast<std::uint32_t>(s);
}

std::uint32_t Alphabet::encode(const Letter& l) const {
  if (l.size() != props.size()) throw std::invalid_argument("letter width does not match the alphabet");
  std::uint32_t code = 0, mul = 1;
  for (std::size_t j = 0; j < l.size(); ++j) {
    auto it = std::lower_bound(weights.begin(), weights.end(), l[j]);
    if (it == weights.end() || *it != l[j]) throw std::invalid_argument("weight " + l[j].str() + " not in alphabet");
    code += static_cast<std::uint32_t>(it - weights.begin()) * mul;
    mul *= static_cast<std::uint32_t>(weights.size());
  }
  return code;
}

Letter Alphabet::decode(std::uint32_t code) const {
  Letter l(props.size());
  auto w = static_cast<std::uint32_t>(weights.size());
  for (std::size_t j = 0; j < props.size(); ++j) {
    l[j] = weights[code % w];
    code /= w;
  }
  return l;
}

int Alphabet::prop_index(const std::string& p) const {
  auto it = std::find(props.begin(), props.end(), p);
  return it == props.end() ? -1 : static_cast<int>(it - props.begin());
}

State Nba::add_state(bool acc) {
  trans.emplace_back();
  accepting.push_back(acc);
  return static_cast<State>(trans.size() - 1);
}

void Nba::normalize() {
  for (auto& es : trans) {
    std::sort(es.begin(), es.end());
    es.erase(std::unique(es.begin(), es.end()), es.end());
  }
  std::sort(initial.begin(), initial.end());
  initial.erase(std::unique(initial.begin(), initial.end()), initial.end());
}

std::vector<State> Nba::successors(State s, std::uint32_t letter) const {
  const auto& es = trans[static_cast<std::size_t>(s)];
  auto lo = std::lower_bound(es.begin(), es.end(), Edge{letter, std::numeric_limits<State>::min()});
  std::vector<State> out;
  for (; lo != es.end() && lo->letter == letter; ++lo) out.push_back(lo->target);
  return out;
}

std::size_t Nba::num_edges() const {
  std::size_t n = 0;
  for (const auto& es : trans) n += es.size();
  return n;
}

namespace {

using Adj = std::vector<std::vector<Edge>>;

// Iterative Tarjan; returns the component id of every node (reverse
// topological order of components).
std::vector<int> scc(const Adj& adj, int& count) {
  int n = static_cast<int>(adj.size());
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      comp(static_cast<std::size_t>(n), -1);
  std::vector<bool> on(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::pair<int, std::size_t>> call;
  int next = 0;
  count = 0;
  for (int root = 0; root < n; ++root) {
    if (index[static_cast<std::size_t>(root)] >= 0) continue;
    call.push_back({root, 0});
    while (!call.empty()) {
      auto& [v, ei] = call.back();
      auto uv = static_cast<std::size_t>(v);
      if (ei == 0 && index[uv] < 0) {
        index[uv] = low[uv] = next++;
        stack.push_back(v);
        on[uv] = true;
      }
      if (ei < adj[uv].size()) {
        int w = adj[uv][ei++].target;
        auto uw = static_cast<std::size_t>(w);
        if (index[uw] < 0) call.push_back({w, 0});
        else if (on[uw]) low[uv] = std::min(low[uv], index[uw]);
        continue;
      }
      if (low[uv] == index[uv]) {
        for (;;) {
          int w = stack.back();
          stack.pop_back();
          on[static_cast<std::size_t>(w)] = false;
          comp[static_cast<std::size_t>(w)] = count;
          if (w == v) break;
        }
        ++count;
      }
      int done = v;
      call.pop_back();
      if (!call.empty()) {
        auto up = static_cast<std::size_t>(call.back().first);
        low[up] = std::min(low[up], low[static_cast<std::size_t>(done)]);
      }
    }
  }
  return comp;
}

std::vector<bool> reachable(const Adj& adj, const std::vector<State>& init) {
  std::vector<bool> seen(adj.size(), false);
  std::vector<State> work;
  for (State s : init)
    if (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      work.push_back(s);
    }
  while (!work.empty()) {
    State s = work.back();
    work.pop_back();
    for (const auto& e : adj[static_cast<std::size_t>(s)])
      if (!seen[static_cast<std::size_t>(e.target)]) {
        seen[static_cast<std::size_t>(e.target)] = true;
        work.push_back(e.target);
      }
  }
  return seen;
}

// Components that contain a cycle through an accepting state.
std::vector<bool> good_components(const Adj& adj, const std::vector<bool>& acc, const std::vector<int>& comp,
                                  int count) {
  std::vector<bool> cyclic(static_cast<std::size_t>(count), false), hasacc(static_cast<std::size_t>(count), false);
  for (std::size_t v = 0; v < adj.size(); ++v) {
    auto c = static_cast<std::size_t>(comp[v]);
    if (acc[v]) hasacc[c] = true;
    for (const auto& e : adj[v])
      if (comp[static_cast<std::size_t>(e.target)] == comp[v]) cyclic[c] = true;
  }
  std::vector<bool> good(static_cast<std::size_t>(count));
  for (std::size_t c = 0; c < good.size(); ++c) good[c] = cyclic[c] && hasacc[c];
  return good;
}

struct Step {
  State node;
  std::uint32_t letter;
};

struct LassoPath {
  std::vector<Step> stem;
  std::vector<Step> loop;
};

std::optional<LassoPath> find_lasso(const Adj& adj, const std::vector<State>& init, const std::vector<bool>& acc) {
  std::size_t n = adj.size();
  std::vector<int> parent(n, -1);
  std::vector<std::uint32_t> via(n, 0);
  std::vector<bool> seen(n, false);
  std::deque<State> q;
  for (State s : init)
    if (!seen[static_cast<std::size_t>(s)]) {
      seen[static_cast<std::size_t>(s)] = true;
      q.push_back(s);
    }
  std::vector<State> order;
  while (!q.empty()) {
    State s = q.front();
    q.pop_front();
    order.push_back(s);
    for (const auto& e : adj[static_cast<std::size_t>(s)]) {
      auto t = static_cast<std::size_t>(e.target);
      if (!seen[t]) {
        seen[t] = true;
        parent[t] = s;
        via[t] = e.letter;
        q.push_back(e.target);
      }
    }
  }
  int count = 0;
  auto comp = scc(adj, count);
  auto good = good_components(adj, acc, comp, count);
  State target = -1;
  for (State s : order)
    if (acc[static_cast<std::size_t>(s)] && good[static_cast<std::size_t>(comp[static_cast<std::size_t>(s)])]) {
      target = s;
      break;
    }
  if (target < 0) return std::nullopt;
  LassoPath out;
  for (State s = target; parent[static_cast<std::size_t>(s)] >= 0; s = parent[static_cast<std::size_t>(s)])
    out.stem.push_back({parent[static_cast<std::size_t>(s)], via[static_cast<std::size_t>(s)]});
  std::reverse(out.stem.begin(), out.stem.end());
  // Shortest cycle back to target inside its component.
  int c = comp[static_cast<std::size_t>(target)];
  std::vector<int> lp(n, -2);
  std::vector<std::uint32_t> lv(n, 0);
  std::deque<State> bq;
  bq.push_back(target);
  lp[static_cast<std::size_t>(target)] = -1;
  bool closed = false;
  State last = -1;
  std::uint32_t last_letter = 0;
  while (!bq.empty() && !closed) {
    State s = bq.front();
    bq.pop_front();
    for (const auto& e : adj[static_cast<std::size_t>(s)]) {
      auto t = static_cast<std::size_t>(e.target);
      if (comp[t] != c) continue;
      if (e.target == target) {
        closed = true;
        last = s;
        last_letter = e.letter;
        break;
      }
      if (lp[t] == -2) {
        lp[t] = s;
        lv[t] = e.letter;
        bq.push_back(e.target);
      }
    }
  }
  out.loop.push_back({last, last_letter});
  for (State s = last; s != target; s = lp[static_cast<std::size_t>(s)])
    out.loop.push_back({lp[static_cast<std::size_t>(s)], lv[static_cast<std::size_t>(s)]});
  std::reverse(out.loop.begin(), out.loop.end());
  return out;
}

Nba restrict_to(const Nba& a, const std::vector<bool>& keep) {
  std::vector<State> id(a.num_states(), -1);
  Nba out;
  out.alphabet = a.alphabet;
  for (std::size_t s = 0; s < a.num_states(); ++s)
    if (keep[s]) id[s] = out.add_state(a.accepting[s]);
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    if (!keep[s]) continue;
    for (const auto& e : a.trans[s])
      if (keep[static_cast<std::size_t>(e.target)]) out.add_edge(id[s], e.letter, id[static_cast<std::size_t>(e.target)]);
  }
  for (State s : a.initial)
    if (keep[static_cast<std::size_t>(s)]) out.initial.push_back(id[static_cast<std::size_t>(s)]);
  out.normalize();
  return out;
}

using Subset = std::vector<State>;

Subset post(const Nba& a, const Subset& s, std::uint32_t letter) {
  Subset out;
  for (State q : s)
    for (State t : a.successors(q, letter)) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

template <class Key>
class StateTable {
public:
  StateTable(std::size_t cap, std::string stage) : cap_(cap), stage_(std::move(stage)) {}
  // Returns the id and whether the key is new.
  std::pair<State, bool> intern(const Key& k) {
    auto [it, fresh] = ids_.emplace(k, static_cast<State>(keys_.size()));
    if (fresh) {
      if (keys_.size() >= cap_) throw StateCapExceeded(stage_, cap_);
      keys_.push_back(k);
    }
    return {it->second, fresh};
  }
  const Key& key(State s) const { return keys_[static_cast<std::size_t>(s)]; }
  std::size_t size() const { return keys_.size(); }

private:
  std::size_t cap_;
  std::string stage_;
  std::map<Key, State> ids_;
  std::vector<Key> keys_;
};

// Generic explicit construction: explores keys from the initial ones and
// asks `expand` for the successors of each key.
template <class Key, class Expand, class Accepting>
Nba explore(const Alphabet& alpha, const std::vector<Key>& init, std::size_t cap, const std::string& stage,
            Expand expand, Accepting accepting) {
  StateTable<Key> table(cap, stage);
  Nba out;
  out.alphabet = alpha;
  std::deque<State> work;
  auto get = [&](const Key& k) {
    auto [id, fresh] = table.intern(k);
    if (fresh) {
      out.add_state(accepting(k));
      work.push_back(id);
    }
    return id;
  };
  for (const auto& k : init) out.initial.push_back(get(k));
  while (!work.empty()) {
    State s = work.front();
    work.pop_front();
    Key k = table.key(s);
    expand(k, [&](std::uint32_t letter, const Key& t) { out.add_edge(s, letter, get(t)); });
  }
  out.normalize();
  return out;
}

Nba complement_single_letter(const Nba& a) {
  return is_empty(a) ? universal_nba(a.alphabet) : empty_nba(a.alphabet);
}

// Complement of a weak automaton: a word is rejected iff every run visits
// rejecting states infinitely often, checked with a breakpoint construction.
Nba complement_weak(const Nba& a, std::size_t cap) {
  using Key = std::pair<Subset, Subset>;
  auto in_f = [&](const Subset& s) {
    Subset out;
    for (State q : s)
      if (a.accepting[static_cast<std::size_t>(q)]) out.push_back(q);
    return out;
  };
  Subset init = a.initial;
  std::uint32_t sigma = a.alphabet.size();
  return explore<Key>(
      a.alphabet, {Key{init, in_f(init)}}, cap, "complement (breakpoint)",
      [&](const Key& k, auto emit) {
        for (std::uint32_t l = 0; l < sigma; ++l) {
          Subset s2 = post(a, k.first, l);
          Subset o2 = k.second.empty() ? in_f(s2) : in_f(post(a, k.second, l));
          emit(l, Key{s2, o2});
        }
      },
      [](const Key& k) { return k.second.empty(); });
}

// Complement of a deterministic automaton through its co-Buchi dual.
Nba complement_deterministic(const Nba& a, std::size_t cap) {
  // Key: (state or -1 for the sink, phase).
  using Key = std::pair<State, int>;
  std::uint32_t sigma = a.alphabet.size();
  auto acc = [&](State s) { return s >= 0 && a.accepting[static_cast<std::size_t>(s)]; };
  std::vector<Key> init;
  State q0 = a.initial.empty() ? -1 : a.initial.front();
  init.push_back({q0, 0});
  if (!acc(q0)) init.push_back({q0, 1});
  return explore<Key>(
      a.alphabet, init, cap, "complement (deterministic)",
      [&](const Key& k, auto emit) {
        for (std::uint32_t l = 0; l < sigma; ++l) {
          State t = -1;
          if (k.first >= 0) {
            auto succ = a.successors(k.first, l);
            if (!succ.empty()) t = succ.front();
          }
          if (k.second == 0) emit(l, Key{t, 0});
          if (!acc(t)) emit(l, Key{t, 1});
        }
      },
      [](const Key& k) { return k.second == 1; });
}

// Kupferman-Vardi rank-based complementation.
Nba complement_rank(const Nba& a, std::size_t cap) {
  // Key: (states, ranks, obligation set).
  using Key = std::tuple<Subset, std::vector<int>, Subset>;
  int n = static_cast<int>(a.num_states());
  int top = 2 * n;
  std::uint32_t sigma = a.alphabet.size();
  Subset init = a.initial;
  std::vector<int> init_rank(init.size(), top);
  return explore<Key>(
      a.alphabet, {Key{init, init_rank, {}}}, cap, "complement (rank)",
      [&](const Key& k, auto emit) {
        const auto& [s, f, o] = k;
        for (std::uint32_t l = 0; l < sigma; ++l) {
          std::map<State, int> bound;
          for (std::size_t i = 0; i < s.size(); ++i)
            for (State t : a.successors(s[i], l)) {
              auto it = bound.find(t);
              if (it == bound.end()) bound[t] = f[i];
              else it->second = std::min(it->second, f[i]);
            }
          Subset s2;
          std::vector<int> hi;
          for (auto [t, b] : bound) {
            s2.push_back(t);
            hi.push_back(b);
          }
          Subset opost = o.empty() ? Subset{} : post(a, o, l);
          std::vector<int> f2(s2.size());
          std::function<void(std::size_t)> rec = [&](std::size_t i) {
            if (i == s2.size()) {
              Subset o2;
              for (std::size_t j = 0; j < s2.size(); ++j) {
                if (f2[j] % 2 != 0) continue;
                if (o.empty() || std::binary_search(opost.begin(), opost.end(), s2[j])) o2.push_back(s2[j]);
              }
              emit(l, Key{s2, f2, o2});
              return;
            }
            bool acc = a.accepting[static_cast<std::size_t>(s2[i])];
            for (int r = 0; r <= hi[i]; ++r) {
              if (acc && r % 2 != 0) continue;
              f2[i] = r;
              rec(i + 1);
            }
          };
          rec(0);
        }
      },
      [](const Key& k) { return std::get<2>(k).empty(); });
}

// Safra trees with age-ordered names (Piterman's compact trees). A tree is
// serialized in preorder as: name, |label|, label..., #children.
class SafraDeterminizer {
public:
  explicit SafraDeterminizer(const Nba& a) : a_(a), n_(static_cast<int>(a.num_states())) {}

  using Code = std::vector<int>;

  Code initial() const {
    if (a_.initial.empty()) return {};
    Code c{1, static_cast<int>(a_.initial.size())};
    c.insert(c.end(), a_.initial.begin(), a_.initial.end());
    c.push_back(0);
    return c;
  }

  int max_priority() const { return 2 * n_ + 1; }

  // Successor tree and the priority of the transition.
  std::pair<Code, int> step(const Code& code, std::uint32_t letter) const {
    Tree t = decode(code);
    if (t.root < 0) return {{}, max_priority()};
    std::size_t old_count = t.nodes.size();
    int next_name = static_cast<int>(old_count) + 1;
    for (auto& nd : t.nodes) nd.label = post(a_, nd.label, letter);
    for (std::size_t v = 0; v < old_count; ++v) {
      Subset f;
      for (State q : t.nodes[v].label)
        if (a_.accepting[static_cast<std::size_t>(q)]) f.push_back(q);
      if (f.empty()) continue;
      t.nodes.push_back(Node{next_name++, f, {}, true});
      t.nodes[v].kids.push_back(static_cast<int>(t.nodes.size() - 1));
    }
    Subset all;
    for (int q = 0; q < n_; ++q) all.push_back(q);
    horizontal(t, t.root, all);
    int erased = std::numeric_limits<int>::max();
    int flashed = std::numeric_limits<int>::max();
    auto erase_subtree = [&](auto&& self, int v) -> void {
      const Node& nd = t.nodes[static_cast<std::size_t>(v)];
      if (!nd.fresh) erased = std::min(erased, nd.name);
      for (int k : nd.kids) self(self, k);
    };
    std::function<bool(int)> prune = [&](int v) {
      Node& nd = t.nodes[static_cast<std::size_t>(v)];
      if (nd.label.empty()) {
        erase_subtree(erase_subtree, v);
        return false;
      }
      std::vector<int> kept;
      for (int k : nd.kids)
        if (prune(k)) kept.push_back(k);
      t.nodes[static_cast<std::size_t>(v)].kids = kept;
      return true;
    };
    if (!prune(t.root)) t.root = -1;
    std::function<void(int)> vertical = [&](int v) {
      Node& nd = t.nodes[static_cast<std::size_t>(v)];
      if (nd.kids.empty()) return;
      std::size_t covered = 0;
      for (int k : nd.kids) covered += t.nodes[static_cast<std::size_t>(k)].label.size();
      if (covered == nd.label.size()) {
        for (int k : nd.kids) erase_subtree(erase_subtree, k);
        t.nodes[static_cast<std::size_t>(v)].kids.clear();
        flashed = std::min(flashed, nd.name);
        return;
      }
      for (int k : std::vector<int>(nd.kids)) vertical(k);
    };
    if (t.root >= 0) vertical(t.root);
    int priority = max_priority();
    if (flashed < erased) priority = 2 * flashed;
    else if (erased != std::numeric_limits<int>::max()) priority = 2 * erased - 1;
    return {encode(t), priority};
  }

private:
  struct Node {
    int name;
    Subset label;
    std::vector<int> kids;
    bool fresh = false;
  };
  struct Tree {
    std::vector<Node> nodes;
    int root = -1;
  };

  static Tree decode(const Code& c) {
    Tree t;
    if (c.empty()) return t;
    std::size_t pos = 0;
    std::function<int()> rec = [&]() {
      Node nd;
      nd.name = c[pos++];
      int sz = c[pos++];
      for (int i = 0; i < sz; ++i) nd.label.push_back(c[pos++]);
      int nk = c[pos++];
      int id = static_cast<int>(t.nodes.size());
      t.nodes.push_back(nd);
      std::vector<int> kids;
      for (int i = 0; i < nk; ++i) kids.push_back(rec());
      t.nodes[static_cast<std::size_t>(id)].kids = kids;
      return id;
    };
    t.root = rec();
    return t;
  }

  // Preorder serialization with names compacted to 1..m in age order.
  static Code encode(const Tree& t) {
    if (t.root < 0) return {};
    std::vector<int> names;
    std::function<void(int)> collect = [&](int v) {
      names.push_back(t.nodes[static_cast<std::size_t>(v)].name);
      for (int k : t.nodes[static_cast<std::size_t>(v)].kids) collect(k);
    };
    collect(t.root);
    std::sort(names.begin(), names.end());
    Code c;
    std::function<void(int)> rec = [&](int v) {
      const Node& nd = t.nodes[static_cast<std::size_t>(v)];
      c.push_back(static_cast<int>(std::lower_bound(names.begin(), names.end(), nd.name) - names.begin()) + 1);
      c.push_back(static_cast<int>(nd.label.size()));
      c.insert(c.end(), nd.label.begin(), nd.label.end());
      c.push_back(static_cast<int>(nd.kids.size()));
      for (int k : nd.kids) rec(k);
    };
    rec(t.root);
    return c;
  }

  // A state stays only in the oldest branch that contains it.
  static void horizontal(Tree& t, int v, const Subset& avail) {
    Node& nd = t.nodes[static_cast<std::size_t>(v)];
    Subset keep;
    std::set_intersection(nd.label.begin(), nd.label.end(), avail.begin(), avail.end(), std::back_inserter(keep));
    nd.label = keep;
    Subset left = keep;
    for (int k : std::vector<int>(nd.kids)) {
      horizontal(t, k, left);
      const Subset& kl = t.nodes[static_cast<std::size_t>(k)].label;
      Subset rest;
      std::set_difference(left.begin(), left.end(), kl.begin(), kl.end(), std::back_inserter(rest));
      left = rest;
    }
  }

  const Nba& a_;
  int n_;
};

// Determinize to a parity automaton (min-even acceptance), then guess the
// odd priority that is minimal among those seen infinitely often.
Nba complement_determinize(const Nba& a, std::size_t cap) {
  SafraDeterminizer det(a);
  std::uint32_t sigma = a.alphabet.size();
  StateTable<SafraDeterminizer::Code> trees(cap, "complement (determinization)");
  std::vector<std::vector<std::pair<State, int>>> dpa; // [tree][letter] -> (tree, priority)
  std::deque<State> work;
  auto get = [&](const SafraDeterminizer::Code& c) {
    auto [id, fresh] = trees.intern(c);
    if (fresh) {
      dpa.emplace_back();
      work.push_back(id);
    }
    return id;
  };
  State d0 = get(det.initial());
  while (!work.empty()) {
    State d = work.front();
    work.pop_front();
    SafraDeterminizer::Code code = trees.key(d);
    std::vector<std::pair<State, int>> row(sigma);
    for (std::uint32_t l = 0; l < sigma; ++l) {
      auto [next, pr] = det.step(code, l);
      row[l] = {get(next), pr};
    }
    dpa[static_cast<std::size_t>(d)] = std::move(row);
  }
  std::set<int> odd;
  for (const auto& row : dpa)
    for (const auto& [t, pr] : row)
      if (pr % 2 != 0) odd.insert(pr);
  // Key: (tree, guessed odd priority or 0 while waiting, flag).
  using Key = std::tuple<State, int, bool>;
  return explore<Key>(
      a.alphabet, {Key{d0, 0, false}}, cap, "complement (parity guess)",
      [&](const Key& k, auto emit) {
        auto [d, p, flag] = k;
        (void)flag;
        for (std::uint32_t l = 0; l < sigma; ++l) {
          auto [t, pr] = dpa[static_cast<std::size_t>(d)][l];
          if (p == 0) {
            emit(l, Key{t, 0, false});
            for (int q : odd)
              if (pr >= q) emit(l, Key{t, q, pr == q});
          } else if (pr >= p) {
            emit(l, Key{t, p, pr == p});
          }
        }
      },
      [](const Key& k) { return std::get<2>(k); });
}

} // namespace

Nba universal_nba(const Alphabet& a) {
  Nba out;
  out.alphabet = a;
  State s = out.add_state(true);
  out.initial.push_back(s);
  for (std::uint32_t l = 0; l < a.size(); ++l) out.add_edge(s, l, s);
  return out;
}

Nba empty_nba(const Alphabet& a) {
  Nba out;
  out.alphabet = a;
  return out;
}

Alphabet kripke_alphabet(const WeightedKripke& k, int n) {
  Alphabet a;
  for (int i = 1; i <= n; ++i)
    for (const auto& p : k.aps) a.props.push_back(indexed_prop(p, i));
  a.weights = k.weights;
  return a;
}

Nba kripke_to_nba(const WeightedKripke& k, int n) {
  WeightedKripke p = self_product(k, n);
  Nba out;
  out.alphabet = kripke_alphabet(k, n);
  for (std::size_t s = 0; s < p.num_states(); ++s) out.add_state(true);
  for (std::size_t s = 0; s < p.num_states(); ++s) {
    std::uint32_t l = out.alphabet.encode(p.labels[s]);
    for (int t : p.succ[s]) out.add_edge(static_cast<State>(s), l, t);
  }
  out.initial.assign(p.initial.begin(), p.initial.end());
  out.normalize();
  return out;
}

Nba intersect(const Nba& a, const Nba& b) {
  if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("intersect: alphabet mismatch");
  bool a_all = std::all_of(a.accepting.begin(), a.accepting.end(), [](bool x) { return x; });
  bool b_all = std::all_of(b.accepting.begin(), b.accepting.end(), [](bool x) { return x; });
  // Key: (state of a, state of b, phase). Phase 0 waits for a, phase 1 for b.
  using Key = std::tuple<State, State, int>;
  bool simple = a_all || b_all;
  auto phase_after = [&](const Key& k) {
    auto [p, q, ph] = k;
    if (simple) return 0;
    if (ph == 0 && a.accepting[static_cast<std::size_t>(p)]) return 1;
    if (ph == 1 && b.accepting[static_cast<std::size_t>(q)]) return 0;
    return ph;
  };
  std::vector<Key> init;
  for (State p : a.initial)
    for (State q : b.initial) init.push_back({p, q, 0});
  return explore<Key>(
      a.alphabet, init, std::numeric_limits<std::size_t>::max(), "intersect",
      [&](const Key& k, auto emit) {
        auto [p, q, ph] = k;
        int nph = phase_after(k);
        const auto& ea = a.trans[static_cast<std::size_t>(p)];
        const auto& eb = b.trans[static_cast<std::size_t>(q)];
        std::size_t i = 0, j = 0;
        while (i < ea.size() && j < eb.size()) {
          if (ea[i].letter < eb[j].letter) ++i;
          else if (eb[j].letter < ea[i].letter) ++j;
          else {
            std::uint32_t l = ea[i].letter;
            std::size_t j0 = j;
            for (; i < ea.size() && ea[i].letter == l; ++i)
              for (j = j0; j < eb.size() && eb[j].letter == l; ++j) emit(l, Key{ea[i].target, eb[j].target, nph});
          }
        }
      },
      [&](const Key& k) {
        auto [p, q, ph] = k;
        if (a_all) return static_cast<bool>(b.accepting[static_cast<std::size_t>(q)]);
        if (b_all) return static_cast<bool>(a.accepting[static_cast<std::size_t>(p)]);
        return ph == 0 && a.accepting[static_cast<std::size_t>(p)];
      });
}

Nba nba_union(const Nba& a, const Nba& b) {
  if (!(a.alphabet == b.alphabet)) throw std::invalid_argument("union: alphabet mismatch");
  Nba out = a;
  auto off = static_cast<State>(a.num_states());
  for (std::size_t s = 0; s < b.num_states(); ++s) out.add_state(b.accepting[s]);
  for (std::size_t s = 0; s < b.num_states(); ++s)
    for (const auto& e : b.trans[s]) out.add_edge(static_cast<State>(s) + off, e.letter, e.target + off);
  for (State s : b.initial) out.initial.push_back(s + off);
  out.normalize();
  return out;
}

Nba trim(const Nba& a) {
  auto reach = reachable(a.trans, a.initial);
  int count = 0;
  auto comp = scc(a.trans, count);
  auto good = good_components(a.trans, a.accepting, comp, count);
  // Backward closure from good components.
  std::vector<std::vector<State>> rev(a.num_states());
  for (std::size_t s = 0; s < a.num_states(); ++s)
    for (const auto& e : a.trans[s]) rev[static_cast<std::size_t>(e.target)].push_back(static_cast<State>(s));
  std::vector<bool> live(a.num_states(), false);
  std::vector<State> work;
  for (std::size_t s = 0; s < a.num_states(); ++s)
    if (good[static_cast<std::size_t>(comp[s])]) {
      live[s] = true;
      work.push_back(static_cast<State>(s));
    }
  while (!work.empty()) {
    State s = work.back();
    work.pop_back();
    for (State p : rev[static_cast<std::size_t>(s)])
      if (!live[static_cast<std::size_t>(p)]) {
        live[static_cast<std::size_t>(p)] = true;
        work.push_back(p);
      }
  }
  std::vector<bool> keep(a.num_states());
  for (std::size_t s = 0; s < keep.size(); ++s) keep[s] = reach[s] && live[s];
  return restrict_to(a, keep);
}

bool is_deterministic(const Nba& a) {
  if (a.initial.size() > 1) return false;
  for (const auto& es : a.trans)
    for (std::size_t i = 1; i < es.size(); ++i)
      if (es[i].letter == es[i - 1].letter) return false;
  return true;
}

bool is_weak(const Nba& a) {
  int count = 0;
  auto comp = scc(a.trans, count);
  std::vector<int> kind(static_cast<std::size_t>(count), -1);
  for (std::size_t s = 0; s < a.num_states(); ++s) {
    auto c = static_cast<std::size_t>(comp[s]);
    int k = a.accepting[s] ? 1 : 0;
    if (kind[c] == -1) kind[c] = k;
    else if (kind[c] != k) return false;
  }
  return true;
}

Nba complement(const Nba& a, const ComplementOptions& opts) {
  switch (opts.method) {
  case ComplementMethod::Rank:
    return trim(complement_rank(a, opts.state_cap));
  case ComplementMethod::Determinize:
    return trim(complement_determinize(a, opts.state_cap));
  case ComplementMethod::Auto:
    break;
  }
  Nba t = trim(a);
  if (t.num_states() == 0) return universal_nba(a.alphabet);
  if (a.alphabet.size() == 1) return complement_single_letter(t);
  if (is_weak(t)) return trim(complement_weak(t, opts.state_cap));
  if (is_deterministic(t)) return trim(complement_deterministic(t, opts.state_cap));
  return trim(complement_determinize(t, opts.state_cap));
}

Nba project(const Nba& a, const std::vector<std::string>& keep) {
  Alphabet na;
  na.weights = a.alphabet.weights;
  std::vector<std::size_t> idx;
  for (const auto& p : a.alphabet.props)
    if (std::find(keep.begin(), keep.end(), p) != keep.end()) {
      idx.push_back(na.props.size());
      na.props.push_back(p);
    } else {
      idx.push_back(std::numeric_limits<std::size_t>::max());
    }
  for (const auto& p : keep)
    if (a.alphabet.prop_index(p) < 0) throw std::invalid_argument("project: unknown proposition " + p);
  std::uint32_t sigma = a.alphabet.size();
  std::vector<std::uint32_t> map(sigma);
  for (std::uint32_t l = 0; l < sigma; ++l) {
    Letter full = a.alphabet.decode(l);
    Letter small;
    for (std::size_t j = 0; j < full.size(); ++j)
      if (idx[j] != std::numeric_limits<std::size_t>::max()) small.push_back(full[j]);
    map[l] = na.encode(small);
  }
  Nba out;
  out.alphabet = na;
  out.initial = a.initial;
  out.accepting = a.accepting;
  out.trans.resize(a.num_states());
  for (std::size_t s = 0; s < a.num_states(); ++s)
    for (const auto& e : a.trans[s]) out.trans[s].push_back({map[e.letter], e.target});
  out.normalize();
  return out;
}

Nba project_prefix(const Nba& a, std::size_t m) {
  if (m > a.alphabet.props.size()) throw std::invalid_argument("project: prefix longer than the alphabet");
  std::vector<std::string> keep(a.alphabet.props.begin(), a.alphabet.props.begin() + static_cast<std::ptrdiff_t>(m));
  return project(a, keep);
}

std::optional<AcceptedLasso> witness(const Nba& a) {
  auto path = find_lasso(a.trans, a.initial, a.accepting);
  if (!path) return std::nullopt;
  AcceptedLasso out;
  for (const auto& s : path->stem) {
    out.lasso.stem.push_back(a.alphabet.decode(s.letter));
    out.run_stem.push_back(s.node);
  }
  for (const auto& s : path->loop) {
    out.lasso.loop.push_back(a.alphabet.decode(s.letter));
    out.run_loop.push_back(s.node);
  }
  return out;
}

bool is_empty(const Nba& a) { return !find_lasso(a.trans, a.initial, a.accepting).has_value(); }

bool accepts(const Nba& a, const Lasso& w) {
  if (w.loop.empty()) throw std::invalid_argument("lasso with empty loop");
  std::size_t n = w.size(), ns = a.num_states();
  std::vector<std::uint32_t> codes(n);
  for (std::size_t i = 0; i < n; ++i) codes[i] = a.alphabet.encode(w.at(i));
  Adj adj(n * ns);
  std::vector<bool> acc(n * ns);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t next = i + 1 < n ? i + 1 : w.stem.size();
    for (std::size_t s = 0; s < ns; ++s) {
      acc[i * ns + s] = a.accepting[s];
      for (State t : a.successors(static_cast<State>(s), codes[i]))
        adj[i * ns + s].push_back({0, static_cast<State>(next * ns + static_cast<std::size_t>(t))});
    }
  }
  return find_lasso(adj, a.initial, acc).has_value();
}

bool validate_run(const Nba& a, const AcceptedLasso& r) {
  const auto& l = r.lasso;
  if (l.loop.empty() || r.run_stem.size() != l.stem.size() || r.run_loop.size() != l.loop.size()) return false;
  std::vector<State> states = r.run_stem;
  states.insert(states.end(), r.run_loop.begin(), r.run_loop.end());
  for (State s : states)
    if (s < 0 || static_cast<std::size_t>(s) >= a.num_states()) return false;
  if (std::find(a.initial.begin(), a.initial.end(), states.front()) == a.initial.end()) return false;
  for (std::size_t i = 0; i < states.size(); ++i) {
    State next = i + 1 < states.size() ? states[i + 1] : r.run_loop.front();
    auto succ = a.successors(states[i], a.alphabet.encode(l.at(i)));
    if (std::find(succ.begin(), succ.end(), next) == succ.end()) return false;
  }
  return std::any_of(r.run_loop.begin(), r.run_loop.end(),
                     [&](State s) { return static_cast<bool>(a.accepting[static_cast<std::size_t>(s)]); });
}

std::string print_nba(const Nba& a) {
  std::ostringstream os;
  os << "props:";
  for (const auto& p : a.alphabet.props) os << ' ' << p;
  os << "\nweights:";
  for (const auto& w : a.alphabet.weights) os << ' ' << w.str();
  os << "\nstates: " << a.num_states() << "\ninitial:";
  for (State s : a.initial) os << ' ' << s;
  os << "\naccepting:";
  for (std::size_t s = 0; s < a.num_states(); ++s)
    if (a.accepting[s]) os << ' ' << s;
  os << "\ntrans:\n";
  for (std::size_t s = 0; s < a.num_states(); ++s)
    for (const auto& e : a.trans[s]) {
      Letter l = a.alphabet.decode(e.letter);
      os << "  " << s << " -> " << e.target << " [";
      for (std::size_t j = 0; j < l.size(); ++j) os << (j ? "," : "") << a.alphabet.props[j] << '=' << l[j].str();
      os << "]\n";
    }
  return os.str();
}

} // namespace hyperqual
