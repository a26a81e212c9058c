#pragma once

#include "hyperqual/kripke.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hyperqual {

/// The alphabet W^AP. A letter is coded as sum_j idx_j * |W|^j where idx_j is
/// the weight index of proposition j, so dropping trailing propositions is a
/// modulo operation.
struct Alphabet {
  std::vector<std::string> props;
  std::vector<Rational> weights; // sorted

  std::uint32_t size() const;
  std::uint32_t encode(const Letter& l) const;
  Letter decode(std::uint32_t code) const;
  int prop_index(const std::string& p) const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

using State = int;

struct Edge {
  std::uint32_t letter;
  State target;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

struct Nba {
  Alphabet alphabet;
  std::vector<State> initial;
  std::vector<std::vector<Edge>> trans; // sorted by (letter, target)
  std::vector<bool> accepting;

  std::size_t num_states() const { return trans.size(); }
  State add_state(bool acc);
  void add_edge(State from, std::uint32_t letter, State to) { trans[static_cast<std::size_t>(from)].push_back({letter, to}); }
  /// Sorts and deduplicates edges and initial states.
  void normalize();
  /// Successors of s on a letter; requires normalize().
  std::vector<State> successors(State s, std::uint32_t letter) const;
  std::size_t num_edges() const;
};

/// A lasso with an accepting run: run_stem[i] reads stem[i], run_loop[i]
/// reads loop[i], and the run returns to run_loop[0] after the loop.
struct AcceptedLasso {
  Lasso lasso;
  std::vector<State> run_stem;
  std::vector<State> run_loop;
};

/// Raised when a construction would exceed the configured state cap.
class StateCapExceeded : public std::runtime_error {
public:
  StateCapExceeded(const std::string& stage, std::size_t cap)
      : std::runtime_error(stage + ": state cap " + std::to_string(cap) + " exceeded"), stage(stage), cap(cap) {}
  std::string stage;
  std::size_t cap;
};

Nba universal_nba(const Alphabet& a);
Nba empty_nba(const Alphabet& a);

/// Alphabet of the n-fold self product of k.
Alphabet kripke_alphabet(const WeightedKripke& k, int n);
/// Accepts exactly the traces of the n-fold self product.
Nba kripke_to_nba(const WeightedKripke& k, int n);

Nba intersect(const Nba& a, const Nba& b);
Nba nba_union(const Nba& a, const Nba& b);

enum class ComplementMethod { Auto, Rank, Determinize };

struct ComplementOptions {
  ComplementMethod method = ComplementMethod::Auto;
  std::size_t state_cap = 200000;
};

Nba complement(const Nba& a, const ComplementOptions& opts = {});

/// Restricts letters to the propositions in `keep`, in alphabet order.
Nba project(const Nba& a, const std::vector<std::string>& keep);
/// Keeps the first m propositions.
Nba project_prefix(const Nba& a, std::size_t m);

/// Removes states that are unreachable or cannot reach an accepting cycle.
Nba trim(const Nba& a);

bool is_empty(const Nba& a);
std::optional<AcceptedLasso> witness(const Nba& a);
bool accepts(const Nba& a, const Lasso& w);
/// Checks that the run is a valid accepting run of the lasso.
bool validate_run(const Nba& a, const AcceptedLasso& r);

bool is_deterministic(const Nba& a);
/// Every strongly connected component is entirely accepting or entirely
/// rejecting.
bool is_weak(const Nba& a);

std::string print_nba(const Nba& a);

} // namespace hyperqual
