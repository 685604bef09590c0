#include "crnosc/enumerate.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "crnosc/report_format.hpp"

namespace crnosc {

namespace {

using Vec = std::array<std::int64_t, 5>;

struct Reaction {
  Vec src{}, tgt{}, gamma{};
  std::uint32_t mask = 0;  // species appearing in source or target
};

void compositions(std::size_t n, std::int64_t max_total, std::vector<Vec>& out) {
  Vec v{};
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t i, std::int64_t left) {
    if (i == n) {
      out.push_back(v);
      return;
    }
    for (std::int64_t k = 0; k <= left; ++k) {
      v[i] = k;
      rec(i + 1, left - k);
    }
    v[i] = 0;
  };
  rec(0, max_total);
}

std::vector<Reaction> admissible_reactions(std::size_t n) {
  std::vector<Vec> sources, targets;
  compositions(n, 2, sources);
  compositions(n, 3, targets);
  std::vector<Reaction> out;
  for (const auto& a : sources)
    for (const auto& b : targets) {
      if (a == b) continue;
      Reaction r;
      r.src = a;
      r.tgt = b;
      for (std::size_t i = 0; i < n; ++i) {
        r.gamma[i] = b[i] - a[i];
        if (a[i] || b[i]) r.mask |= 1u << i;
      }
      out.push_back(r);
    }
  return out;
}

std::uint32_t encode(const Reaction& r, const std::vector<std::size_t>& perm, std::size_t n) {
  std::uint32_t code = 0;
  for (std::size_t i = 0; i < n; ++i) code = code * 4 + static_cast<std::uint32_t>(r.src[perm[i]]);
  for (std::size_t i = 0; i < n; ++i) code = code * 4 + static_cast<std::uint32_t>(r.tgt[perm[i]]);
  return code;
}

std::uint64_t pack(std::array<std::uint32_t, 3> c) {
  std::sort(c.begin(), c.end());
  return (std::uint64_t(c[0]) << 40) | (std::uint64_t(c[1]) << 20) | c[2];
}

std::vector<std::vector<std::size_t>> all_perms(std::size_t n) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> p(n);
  std::iota(p.begin(), p.end(), 0);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

ReactionNetwork decode(std::uint64_t key, std::size_t n) {
  IntMatrix src(n, 3), st(n, 3);
  for (std::size_t j = 0; j < 3; ++j) {
    std::uint32_t code = static_cast<std::uint32_t>((key >> (40 - 20 * j)) & 0xFFFFF);
    std::vector<std::int64_t> digits(2 * n);
    for (std::size_t k = 2 * n; k-- > 0;) {
      digits[k] = code % 4;
      code /= 4;
    }
    for (std::size_t i = 0; i < n; ++i) {
      src(i, j) = digits[i];
      st(i, j) = digits[n + i] - digits[i];
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(generic_species_name(i));
  return {names, src, st};
}

std::int64_t det2(const Vec& a, const Vec& b, std::size_t r, std::size_t s) {
  return a[r] * b[s] - a[s] * b[r];
}

std::int64_t det3(const Vec& a, const Vec& b, const Vec& c, std::size_t r, std::size_t s, std::size_t t) {
  return a[r] * (b[s] * c[t] - b[t] * c[s]) - a[s] * (b[r] * c[t] - b[t] * c[r]) +
         a[t] * (b[r] * c[s] - b[s] * c[r]);
}

bool parallel(const Vec& a, const Vec& b, std::size_t n) {
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = r + 1; s < n; ++s)
      if (det2(a, b, r, s) != 0) return false;
  return true;
}

struct WorkerResult {
  std::uint64_t candidates = 0, covering = 0, rank_two = 0, nontrivial = 0;
  std::set<std::uint64_t> keys;
};

void sweep(const std::vector<Reaction>& rx, std::size_t n, const std::vector<std::vector<std::uint32_t>>& codes,
           std::size_t first, std::size_t stride, WorkerResult& out) {
  const std::size_t R = rx.size();
  const std::uint32_t full = (1u << n) - 1;
  for (std::size_t i = first; i < R; i += stride) {
    const auto& gi = rx[i].gamma;
    for (std::size_t j = i + 1; j < R; ++j) {
      const auto& gj = rx[j].gamma;
      const std::uint64_t remaining = R - j - 1;
      out.candidates += remaining;
      const std::uint32_t mij = rx[i].mask | rx[j].mask;
      // pivot rows for the pair when independent
      std::size_t pr = 0, ps = 0;
      std::int64_t d = 0;
      for (std::size_t r = 0; r < n && d == 0; ++r)
        for (std::size_t s = r + 1; s < n && d == 0; ++s)
          if ((d = det2(gi, gj, r, s)) != 0) {
            pr = r;
            ps = s;
          }
      for (std::size_t k = j + 1; k < R; ++k) {
        if ((mij | rx[k].mask) != full) continue;
        ++out.covering;
        const auto& gk = rx[k].gamma;
        if (d == 0) {
          // pair dependent: rank two iff k leaves the line; kernel has a zero entry
          if (!parallel(gi, gk, n) || !parallel(gj, gk, n)) ++out.rank_two;
          continue;
        }
        bool in_span = true;
        for (std::size_t t = 0; t < n && in_span; ++t)
          if (t != pr && t != ps) in_span = det3(gi, gj, gk, pr, ps, t) == 0;
        if (!in_span) continue;
        ++out.rank_two;
        const std::int64_t u1 = det2(gj, gk, pr, ps), u2 = det2(gk, gi, pr, ps), u3 = d;
        const bool pos = (u1 > 0 && u2 > 0 && u3 > 0) || (u1 < 0 && u2 < 0 && u3 < 0);
        if (!pos) continue;
        ++out.nontrivial;
        std::uint64_t best = ~0ULL;
        for (const auto& c : codes) best = std::min(best, pack({c[i], c[j], c[k]}));
        out.keys.insert(best);
      }
    }
  }
}

}  // namespace

std::uint64_t canonical_key(const ReactionNetwork& net) {
  const std::size_t n = net.num_species();
  if (n > 5 || net.num_reactions() != 3) throw std::invalid_argument("canonical_key needs n <= 5, m = 3");
  std::array<Reaction, 3> rx;
  auto tgt = net.target();
  for (std::size_t j = 0; j < 3; ++j)
    for (std::size_t i = 0; i < n; ++i) {
      if (net.source()(i, j) > 3 || tgt(i, j) > 3)
        throw std::invalid_argument("canonical_key needs coefficients at most three");
      rx[j].src[i] = net.source()(i, j);
      rx[j].tgt[i] = tgt(i, j);
    }
  std::uint64_t best = ~0ULL;
  for (const auto& p : all_perms(n)) best = std::min(best, pack({encode(rx[0], p, n), encode(rx[1], p, n), encode(rx[2], p, n)}));
  return best;
}

EnumerationReport enumerate_trimolecular(std::size_t n_max, const EnumerationOptions& opt) {
  if (n_max < 2 || n_max > 5) throw PreconditionError("OutOfRange", "n_max must lie in [2, 5]");
  const auto t0 = std::chrono::steady_clock::now();
  unsigned workers = opt.workers ? opt.workers : std::max(1u, std::thread::hardware_concurrency());
  EnumerationReport rep;
  rep.n_max = n_max;
  rep.cross_checked = opt.cross_check;
  for (std::size_t n = 1; n <= n_max; ++n) {
    auto rx = admissible_reactions(n);
    const auto perms = all_perms(n);
    std::vector<std::vector<std::uint32_t>> codes(perms.size(), std::vector<std::uint32_t>(rx.size()));
    for (std::size_t p = 0; p < perms.size(); ++p)
      for (std::size_t r = 0; r < rx.size(); ++r) codes[p][r] = encode(rx[r], perms[p], n);

    std::vector<WorkerResult> results(workers);
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(sweep, std::cref(rx), n, std::cref(codes), w, workers, std::ref(results[w]));
    for (auto& t : pool) t.join();

    EnumerationLevel lvl;
    lvl.n = n;
    lvl.reactions = rx.size();
    std::set<std::uint64_t> keys;
    for (auto& r : results) {
      lvl.candidates += r.candidates;
      lvl.covering += r.covering;
      lvl.rank_two += r.rank_two;
      lvl.nontrivial += r.nontrivial;
      keys.merge(r.keys);
    }
    lvl.distinct = keys.size();
    for (auto key : keys) {
      auto net = decode(key, n);
      auto v = classify_trimolecular(net);
      if (opt.cross_check && classify_trimolecular_slow(net) != v.admits_periodic)
        rep.slow_path_disagreements.push_back(canonical_string(net));
      if (v.admits_periodic == PeriodicVerdict::Admits::ForSomeKappa) {
        ++lvl.for_some_kappa;
        rep.hits.push_back({n, net, canonical_string(net), v});
      } else {
        ++lvl.never_reasons[v.reason];
      }
    }
    rep.levels.push_back(lvl);
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

nlohmann::json to_json(const EnumerationReport& r) {
  nlohmann::json j;
  j["report_kind"] = "enumeration";
  j["n_max"] = r.n_max;
  j["total_for_some_kappa"] = r.hits.size();
  j["levels"] = nlohmann::json::array();
  for (const auto& l : r.levels) {
    j["levels"].push_back({{"n", l.n},
                           {"reactions", l.reactions},
                           {"candidates", l.candidates},
                           {"covering", l.covering},
                           {"rank_two", l.rank_two},
                           {"nontrivial", l.nontrivial},
                           {"distinct", l.distinct},
                           {"for_some_kappa", l.for_some_kappa},
                           {"never_reasons", l.never_reasons}});
  }
  j["networks"] = nlohmann::json::array();
  for (const auto& h : r.hits) {
    nlohmann::json e{{"n", h.n},
                     {"canonical", h.canonical},
                     {"verdict", to_string(h.verdict.admits_periodic)},
                     {"kappa_condition", h.verdict.kappa_condition}};
    e["family"] = h.verdict.matched_family ? nlohmann::json(h.verdict.matched_family->name()) : nlohmann::json();
    j["networks"].push_back(e);
  }
  j["cross_checked"] = r.cross_checked;
  j["slow_path_disagreements"] = r.slow_path_disagreements;
  j["seconds"] = round_sig(r.seconds, 4);
  return j;
}

}  // namespace crnosc
