#include "hyperqual/kripke.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace hyperqual {

// ---------------------------------------------------------------------------
// Lassos

Lasso Lasso::normalized() const {
  if (loop.empty()) throw std::invalid_argument("lasso with empty loop");
  Lasso r = *this;
  std::size_t n = r.loop.size();
  for (std::size_t d = 1; d <= n; ++d) {
    if (n % d) continue;
    bool periodic = true;
    for (std::size_t i = d; i < n && periodic; ++i) periodic = r.loop[i] == r.loop[i - d];
    if (periodic) {
      r.loop.resize(d);
      break;
    }
  }
  while (!r.stem.empty() && r.stem.back() == r.loop.back()) {
    std::rotate(r.loop.rbegin(), r.loop.rbegin() + 1, r.loop.rend());
    r.stem.pop_back();
  }
  return r;
}

bool Lasso::same_word(const Lasso& o) const { return normalized() == o.normalized(); }

// ---------------------------------------------------------------------------
// Structures

int WeightedKripke::weight_index(const Rational& w) const {
  auto it = std::lower_bound(weights.begin(), weights.end(), w);
  if (it == weights.end() || *it != w) return -1;
  return static_cast<int>(it - weights.begin());
}

int WeightedKripke::ap_index(std::string_view p) const {
  for (std::size_t i = 0; i < aps.size(); ++i)
    if (aps[i] == p) return static_cast<int>(i);
  return -1;
}

void WeightedKripke::validate() const {
  if (states.empty()) throw std::invalid_argument("structure has no states");
  if (initial.empty()) throw std::invalid_argument("empty initial set");
  if (weights.empty()) throw std::invalid_argument("empty weight set");
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!weights[i].in_unit_interval()) throw std::invalid_argument("weight " + weights[i].str() + " outside [0,1]");
    if (i && !(weights[i - 1] < weights[i])) throw std::invalid_argument("weights must be sorted and distinct");
  }
  if (succ.size() != states.size() || labels.size() != states.size())
    throw std::invalid_argument("transition or label table size mismatch");
  for (int s : initial)
    if (s < 0 || s >= static_cast<int>(states.size())) throw std::invalid_argument("unknown initial state");
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (succ[s].empty()) throw std::invalid_argument("state " + states[s] + " has no successor");
    for (int t : succ[s])
      if (t < 0 || t >= static_cast<int>(states.size())) throw std::invalid_argument("unknown state in transition");
    if (labels[s].size() != aps.size()) throw std::invalid_argument("label of " + states[s] + " has wrong width");
    for (std::size_t p = 0; p < aps.size(); ++p)
      if (weight_index(labels[s][p]) < 0)
        throw std::invalid_argument("weight " + labels[s][p].str() + " of " + aps[p] + " in state " + states[s] +
                                    " is not declared in weights");
  }
}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<std::string> split_items(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',' || std::isspace(static_cast<unsigned char>(c))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

[[noreturn]] void kfail(int line, const std::string& msg) {
  throw std::invalid_argument("line " + std::to_string(line) + ": " + msg);
}

} // namespace

WeightedKripke parse_kripke(std::string_view text) {
  std::map<std::string, std::vector<std::pair<int, std::string>>> sections;
  std::string current;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  const std::set<std::string> known = {"weights", "states", "init", "trans", "labels", "props"};
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = trim(raw);
    if (line.empty()) continue;
    if (auto c = line.find(':'); c != std::string::npos) {
      std::string head = trim(line.substr(0, c));
      if (known.count(head)) {
        current = head;
        if (sections.count(head)) kfail(lineno, "duplicate section '" + head + "'");
        sections[head];
        std::string rest = trim(line.substr(c + 1));
        if (!rest.empty()) sections[head].emplace_back(lineno, rest);
        continue;
      }
    }
    if (current.empty()) kfail(lineno, "content outside of a section");
    sections[current].emplace_back(lineno, line);
  }
  for (const char* req : {"weights", "states", "init", "trans"})
    if (!sections.count(req)) throw std::invalid_argument(std::string("missing section '") + req + ":'");

  WeightedKripke k;
  std::set<Rational> ws;
  for (const auto& [ln, line] : sections["weights"])
    for (const auto& item : split_items(line)) {
      try {
        Rational w = Rational::parse(item);
        if (!w.in_unit_interval()) kfail(ln, "weight " + w.str() + " outside [0,1]");
        ws.insert(w);
      } catch (const std::invalid_argument& e) {
        kfail(ln, e.what());
      }
    }
  k.weights.assign(ws.begin(), ws.end());

  std::map<std::string, int> index;
  for (const auto& [ln, line] : sections["states"])
    for (const auto& name : split_items(line)) {
      if (index.count(name)) kfail(ln, "duplicate state '" + name + "'");
      index[name] = static_cast<int>(k.states.size());
      k.states.push_back(name);
    }
  auto state_of = [&](int ln, const std::string& name) {
    auto it = index.find(name);
    if (it == index.end()) kfail(ln, "unknown state '" + name + "'");
    return it->second;
  };

  for (const auto& [ln, line] : sections["init"])
    for (const auto& name : split_items(line)) k.initial.push_back(state_of(ln, name));
  if (k.initial.empty()) throw std::invalid_argument("empty initial set");

  k.succ.assign(k.states.size(), {});
  for (const auto& [ln, line] : sections["trans"]) {
    auto arrow = line.find("->");
    if (arrow == std::string::npos) kfail(ln, "expected 'a -> b'");
    auto srcs = split_items(line.substr(0, arrow));
    auto dsts = split_items(line.substr(arrow + 2));
    if (srcs.empty() || dsts.empty()) kfail(ln, "expected 'a -> b'");
    for (const auto& a : srcs)
      for (const auto& b : dsts) k.succ[state_of(ln, a)].push_back(state_of(ln, b));
  }
  for (auto& v : k.succ) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }

  std::vector<std::map<std::string, Rational>> raw_labels(k.states.size());
  std::vector<std::string> aps;
  auto note_ap = [&](const std::string& p) {
    if (std::find(aps.begin(), aps.end(), p) == aps.end()) aps.push_back(p);
  };
  if (sections.count("props"))
    for (const auto& [ln, line] : sections["props"])
      for (const auto& p : split_items(line)) note_ap(p);
  if (sections.count("labels"))
    for (const auto& [ln, line] : sections["labels"]) {
      auto items = split_items(line);
      int s = state_of(ln, items[0]);
      for (std::size_t i = 1; i < items.size(); ++i) {
        auto eq = items[i].find('=');
        if (eq == std::string::npos) kfail(ln, "expected 'prop=weight', got '" + items[i] + "'");
        std::string p = items[i].substr(0, eq);
        Rational w;
        try {
          w = Rational::parse(items[i].substr(eq + 1));
        } catch (const std::invalid_argument& e) {
          kfail(ln, e.what());
        }
        if (k.weight_index(w) < 0) kfail(ln, "weight " + w.str() + " is not declared in weights");
        note_ap(p);
        raw_labels[s][p] = w;
      }
    }
  std::sort(aps.begin(), aps.end());
  k.aps = aps;
  bool need_zero = false;
  k.labels.assign(k.states.size(), Letter(aps.size(), Rational(0)));
  for (std::size_t s = 0; s < k.states.size(); ++s)
    for (std::size_t p = 0; p < aps.size(); ++p) {
      auto it = raw_labels[s].find(aps[p]);
      if (it == raw_labels[s].end())
        need_zero = true;
      else
        k.labels[s][p] = it->second;
    }
  if (need_zero && k.weight_index(Rational(0)) < 0)
    throw std::invalid_argument("omitted propositions default to 0, but 0 is not a declared weight");
  k.validate();
  return k;
}

std::string print_kripke(const WeightedKripke& k) {
  std::ostringstream os;
  os << "weights:";
  for (const auto& w : k.weights) os << ' ' << w;
  os << "\nstates:";
  for (const auto& s : k.states) os << ' ' << s;
  os << "\ninit:";
  for (int s : k.initial) os << ' ' << k.states[s];
  if (!k.aps.empty()) {
    os << "\nprops:";
    for (const auto& p : k.aps) os << ' ' << p;
  }
  os << "\ntrans:\n";
  for (std::size_t s = 0; s < k.states.size(); ++s)
    for (int t : k.succ[s]) os << "  " << k.states[s] << " -> " << k.states[t] << '\n';
  os << "labels:\n";
  for (std::size_t s = 0; s < k.states.size(); ++s) {
    os << "  " << k.states[s];
    for (std::size_t p = 0; p < k.aps.size(); ++p) os << ' ' << k.aps[p] << '=' << k.labels[s][p];
    os << '\n';
  }
  return os.str();
}

std::string indexed_prop(const std::string& p, int i) { return p + "@" + std::to_string(i); }

WeightedKripke self_product(const WeightedKripke& k, int n) {
  if (n < 0) throw std::invalid_argument("negative product arity");
  WeightedKripke r;
  r.weights = k.weights;
  for (int i = 1; i <= n; ++i)
    for (const auto& p : k.aps) r.aps.push_back(indexed_prop(p, i));
  if (n == 0) {
    r.states = {"()"};
    r.initial = {0};
    r.succ = {{0}};
    r.labels = {Letter{}};
    return r;
  }
  const int m = static_cast<int>(k.num_states());
  std::size_t total = 1;
  for (int i = 0; i < n; ++i) total *= static_cast<std::size_t>(m);
  auto decode = [&](std::size_t code) {
    std::vector<int> t(n);
    for (int i = 0; i < n; ++i) {
      t[i] = static_cast<int>(code % m);
      code /= m;
    }
    return t;
  };
  auto encode = [&](const std::vector<int>& t) {
    std::size_t code = 0;
    for (int i = n - 1; i >= 0; --i) code = code * m + t[i];
    return code;
  };
  r.states.resize(total);
  r.succ.resize(total);
  r.labels.resize(total);
  for (std::size_t c = 0; c < total; ++c) {
    auto t = decode(c);
    std::string name = "(";
    for (int i = 0; i < n; ++i) {
      if (i) name += ",";
      name += k.states[t[i]];
      r.labels[c].insert(r.labels[c].end(), k.labels[t[i]].begin(), k.labels[t[i]].end());
    }
    r.states[c] = name + ")";
    std::vector<int> cur(n);
    std::function<void(int)> rec = [&](int i) {
      if (i == n) {
        r.succ[c].push_back(static_cast<int>(encode(cur)));
        return;
      }
      for (int s : k.succ[t[i]]) {
        cur[i] = s;
        rec(i + 1);
      }
    };
    rec(0);
    std::sort(r.succ[c].begin(), r.succ[c].end());
    bool init = true;
    for (int i = 0; i < n; ++i)
      init = init && std::find(k.initial.begin(), k.initial.end(), t[i]) != k.initial.end();
    if (init) r.initial.push_back(static_cast<int>(c));
  }
  return r;
}

Lasso encode_assignment(const std::vector<Lasso>& lassos) {
  if (lassos.empty()) return Lasso{{}, {Letter{}}};
  std::size_t stem = 0, loop = 1;
  for (const auto& l : lassos) {
    if (l.loop.empty()) throw std::invalid_argument("lasso with empty loop");
    stem = std::max(stem, l.stem.size());
    loop = std::lcm(loop, l.loop.size());
  }
  Lasso r;
  auto letter_at = [&](std::size_t i) {
    Letter out;
    for (const auto& l : lassos) {
      const Letter& x = l.at(i);
      out.insert(out.end(), x.begin(), x.end());
    }
    return out;
  };
  for (std::size_t i = 0; i < stem; ++i) r.stem.push_back(letter_at(i));
  for (std::size_t i = 0; i < loop; ++i) r.loop.push_back(letter_at(stem + i));
  return r;
}

Lasso project_component(const Lasso& encoded, int i, int width) {
  auto cut = [&](const Letter& l) { return Letter(l.begin() + i * width, l.begin() + (i + 1) * width); };
  Lasso r;
  for (const auto& l : encoded.stem) r.stem.push_back(cut(l));
  for (const auto& l : encoded.loop) r.loop.push_back(cut(l));
  return r;
}

std::vector<Lasso> lasso_enumerate(const WeightedKripke& k, int max_stem, int max_loop) {
  if (max_stem < 0) throw std::invalid_argument("max_stem must be >= 0");
  if (max_loop < 1) throw std::invalid_argument("max_loop must be >= 1");
  std::set<Lasso> found;
  std::vector<int> path;
  const int max_len = max_stem + max_loop;
  std::function<void()> dfs = [&] {
    const int len = static_cast<int>(path.size());
    // close a loop back to position m
    for (int m = std::max(0, len - max_loop); m <= std::min(max_stem, len - 1); ++m) {
      const auto& out = k.succ[path.back()];
      if (!std::binary_search(out.begin(), out.end(), path[m])) continue;
      Lasso l;
      for (int i = 0; i < m; ++i) l.stem.push_back(k.labels[path[i]]);
      for (int i = m; i < len; ++i) l.loop.push_back(k.labels[path[i]]);
      found.insert(l.normalized());
    }
    if (len == max_len) return;
    for (int t : k.succ[path.back()]) {
      path.push_back(t);
      dfs();
      path.pop_back();
    }
  };
  for (int s : k.initial) {
    path = {s};
    dfs();
  }
  return {found.begin(), found.end()};
}

bool is_lasso_of(const WeightedKripke& k, const Lasso& l) {
  const std::size_t n = l.size();
  const std::size_t m = k.num_states();
  auto next = [&](std::size_t i) { return i + 1 < n ? i + 1 : l.stem.size(); };
  // alive[i][s]: an infinite matching path starts at (i, s); greatest fixpoint
  std::vector<std::vector<char>> alive(n, std::vector<char>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t s = 0; s < m; ++s) alive[i][s] = k.labels[s] == l.at(i);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t s = 0; s < m; ++s) {
        if (!alive[i][s]) continue;
        bool ok = false;
        for (int t : k.succ[s]) ok = ok || alive[next(i)][t];
        if (!ok) {
          alive[i][s] = 0;
          changed = true;
        }
      }
  }
  for (int s : k.initial)
    if (alive[0][s]) return true;
  return false;
}

LassoAssignment parse_assignment(std::string_view text, std::vector<std::string>& aps) {
  struct Raw {
    int line;
    std::string var;
    std::vector<std::map<std::string, Rational>> stem, loop;
  };
  std::vector<Raw> raws;
  std::set<std::string> seen;
  std::istringstream in{std::string(text)};
  std::string raw;
  int lineno = 0;
  auto parse_letters = [&](const std::string& part) {
    std::vector<std::map<std::string, Rational>> out;
    std::istringstream words(part);
    std::string word;
    while (words >> word) {
      std::map<std::string, Rational> letter;
      if (word != "-") {
        std::string item;
        std::istringstream items(word);
        while (std::getline(items, item, ',')) {
          auto eq = item.find('=');
          if (eq == std::string::npos) kfail(lineno, "expected 'prop=weight', got '" + item + "'");
          try {
            letter[item.substr(0, eq)] = Rational::parse(item.substr(eq + 1));
          } catch (const std::invalid_argument& e) {
            kfail(lineno, e.what());
          }
          seen.insert(item.substr(0, eq));
        }
      }
      out.push_back(letter);
    }
    return out;
  };
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto colon = line.find(':');
    auto bar = line.find('|');
    if (colon == std::string::npos || bar == std::string::npos || bar < colon)
      kfail(lineno, "expected 'var: stem | loop'");
    Raw r{lineno, trim(line.substr(0, colon)), {}, {}};
    r.stem = parse_letters(line.substr(colon + 1, bar - colon - 1));
    r.loop = parse_letters(line.substr(bar + 1));
    if (r.loop.empty()) kfail(lineno, "empty loop");
    raws.push_back(std::move(r));
  }
  if (aps.empty()) aps.assign(seen.begin(), seen.end());
  LassoAssignment out;
  auto letter_of = [&](int line, const std::map<std::string, Rational>& m) {
    Letter l(aps.size(), Rational(0));
    for (const auto& [p, w] : m) {
      auto it = std::find(aps.begin(), aps.end(), p);
      if (it == aps.end()) kfail(line, "unknown proposition '" + p + "'");
      if (!w.in_unit_interval()) kfail(line, "weight " + w.str() + " outside [0,1]");
      l[static_cast<std::size_t>(it - aps.begin())] = w;
    }
    return l;
  };
  for (const auto& r : raws) {
    if (out.find(r.var) >= 0) kfail(r.line, "variable '" + r.var + "' bound twice");
    Lasso l;
    for (const auto& m : r.stem) l.stem.push_back(letter_of(r.line, m));
    for (const auto& m : r.loop) l.loop.push_back(letter_of(r.line, m));
    out.bind(r.var, l);
  }
  return out;
}

std::string format_letter(const std::vector<std::string>& aps, const Letter& l) {
  std::string out;
  for (std::size_t i = 0; i < aps.size(); ++i) {
    if (i) out += ",";
    out += aps[i] + "=" + l[i].str();
  }
  return out.empty() ? "-" : out;
}

std::string format_lasso(const std::vector<std::string>& aps, const Lasso& l) {
  std::string out;
  for (const auto& x : l.stem) out += "{" + format_letter(aps, x) + "} ";
  out += "(";
  for (std::size_t i = 0; i < l.loop.size(); ++i) {
    if (i) out += " ";
    out += "{" + format_letter(aps, l.loop[i]) + "}";
  }
  return out + ")^w";
}

} // namespace hyperqual
