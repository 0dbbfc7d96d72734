#include "movcat/detail/csp.hpp"

#include <deque>

namespace movcat::detail {

namespace {

class Solver {
public:
  Solver(const FinCategory& cat, const Csp& csp) : cat_(cat), csp_(csp) {
    watchers_.resize(csp.domains.size());
    for (std::size_t i = 0; i < csp.links.size(); ++i) {
      watchers_[csp.links[i].a].push_back(i);
      if (csp.links[i].b != csp.links[i].a) watchers_[csp.links[i].b].push_back(i);
    }
  }

  CspResult run() {
    CspResult result;
    Domains d;
    const std::size_t n = cat_.morphism_count();
    d.assign(csp_.domains.size(), std::vector<char>(n, 0));
    for (std::size_t v = 0; v < csp_.domains.size(); ++v) {
      if (csp_.domains[v].empty()) {
        result.failure = CspFailure::empty_domain;
        result.variable = v;
        return result;
      }
      for (MorId m : csp_.domains[v]) d[v][m.index] = 1;
    }
    std::size_t culprit = 0;
    std::deque<std::size_t> all;
    for (std::size_t i = 0; i < csp_.links.size(); ++i) all.push_back(i);
    if (!propagate(d, all, culprit)) {
      result.failure = CspFailure::contradiction;
      result.link = culprit;
      return result;
    }
    if (search(d, result.nodes)) {
      std::vector<MorId> values;
      for (std::size_t v = 0; v < d.size(); ++v)
        for (MorId m : csp_.domains[v])
          if (d[v][m.index]) {
            values.push_back(m);
            break;
          }
      result.solution = std::move(values);
      return result;
    }
    result.failure = CspFailure::exhausted;
    return result;
  }

private:
  using Domains = std::vector<std::vector<char>>;

  bool empty(const std::vector<char>& dom, std::size_t var) const {
    for (MorId m : csp_.domains[var])
      if (dom[m.index]) return false;
    return true;
  }

  // Returns the set of variables whose domain shrank, or false on wipe-out.
  bool revise(Domains& d, const Link& link, bool& changed_a, bool& changed_b) const {
    changed_a = changed_b = false;
    if (link.a == link.b) {
      for (MorId v : csp_.domains[link.a]) {
        if (d[link.a][v.index] && cat_.compose_unchecked(link.k, v) != v) {
          d[link.a][v.index] = 0;
          changed_a = true;
        }
      }
      return !empty(d[link.a], link.a);
    }
    std::vector<char> image(cat_.morphism_count(), 0);
    for (MorId v : csp_.domains[link.b]) {
      if (!d[link.b][v.index]) continue;
      const MorId w = cat_.compose_unchecked(link.k, v);
      if (d[link.a][w.index]) {
        image[w.index] = 1;
      } else {
        d[link.b][v.index] = 0;
        changed_b = true;
      }
    }
    for (MorId w : csp_.domains[link.a]) {
      if (d[link.a][w.index] && !image[w.index]) {
        d[link.a][w.index] = 0;
        changed_a = true;
      }
    }
    return !empty(d[link.a], link.a) && !empty(d[link.b], link.b);
  }

  bool propagate(Domains& d, std::deque<std::size_t> queue, std::size_t& culprit) const {
    std::vector<char> queued(csp_.links.size(), 0);
    for (auto i : queue) queued[i] = 1;
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      queued[i] = 0;
      bool ca = false, cb = false;
      if (!revise(d, csp_.links[i], ca, cb)) {
        culprit = i;
        return false;
      }
      auto wake = [&](std::size_t var) {
        for (std::size_t j : watchers_[var])
          if (j != i && !queued[j]) {
            queued[j] = 1;
            queue.push_back(j);
          }
      };
      if (ca) wake(csp_.links[i].a);
      if (cb) wake(csp_.links[i].b);
    }
    return true;
  }

  bool search(Domains& d, std::size_t& nodes) const {
    ++nodes;
    std::size_t open = d.size();
    for (std::size_t v = 0; v < d.size() && open == d.size(); ++v) {
      std::size_t count = 0;
      for (MorId m : csp_.domains[v]) count += d[v][m.index] ? 1 : 0;
      if (count > 1) open = v;
    }
    if (open == d.size()) return true;
    for (MorId value : csp_.domains[open]) {
      if (!d[open][value.index]) continue;
      Domains trial = d;
      std::fill(trial[open].begin(), trial[open].end(), 0);
      trial[open][value.index] = 1;
      std::deque<std::size_t> queue(watchers_[open].begin(), watchers_[open].end());
      std::size_t culprit = 0;
      if (propagate(trial, queue, culprit) && search(trial, nodes)) {
        d = std::move(trial);
        return true;
      }
    }
    return false;
  }

  const FinCategory& cat_;
  const Csp& csp_;
  std::vector<std::vector<std::size_t>> watchers_;
};

} // namespace

CspResult solve(const FinCategory& cat, const Csp& csp) {
  return Solver(cat, csp).run();
}

} // namespace movcat::detail
