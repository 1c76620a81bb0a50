#include "core/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <utility>

#include "core/error.hpp"
#include "core/jsonio.hpp"

namespace mis3d {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct EnergyTables {
  int n = 0;
  std::vector<double> J;  // n*n symmetric interaction matrix, zero diagonal
  std::vector<double> w;  // on-site weight -(delta + delta_j)

  double at(int i, int j) const {
    return J[size_t(i) * size_t(n) + size_t(j)];
  }
};

EnergyTables build_tables(const AtomRegister& reg) {
  EnergyTables t;
  t.n = reg.total_atoms();
  t.J.assign(size_t(t.n) * size_t(t.n), 0.0);
  t.w.resize(size_t(t.n));
  for (int i = 0; i < t.n; ++i) {
    t.w[size_t(i)] = -(reg.params.delta_global + reg.detuning[size_t(i)]);
    for (int j = i + 1; j < t.n; ++j) {
      double r = dist(reg.pos[size_t(i)], reg.pos[size_t(j)]);
      if (r < 1e-12) fail(errc::inconsistent, "coincident atoms in register");
      double v = interaction(r, reg.params);
      t.J[size_t(i) * size_t(t.n) + size_t(j)] = v;
      t.J[size_t(j) * size_t(t.n) + size_t(i)] = v;
    }
  }
  return t;
}

// Restricting the search to blockade-independent occupations is exact when
// switching off the weaker endpoint of any occupied blockade pair always
// lowers the energy: its interaction must beat that endpoint's full detuning.
bool restriction_provable(const AtomRegister& reg, const Graph& blockade,
                          const EnergyTables& t) {
  for (const Edge& e : blockade.edges()) {
    double gain =
        reg.params.delta_global + std::min(reg.detuning[size_t(e.first)],
                                           reg.detuning[size_t(e.second)]);
    if (!(t.at(e.first, e.second) > gain + 1e-9)) return false;
  }
  return true;
}

// Suffix table over one chain interior. d(j, last) lower-bounds the cost of
// completing positions j..k-1 when the most recent occupied interior position
// is `last` (-1 for none) and the endpoints hold a, b. The caller preloads w
// with every per-atom term it already accounts for; only consecutive occupied
// intra-chain pairs are added on top. Every omitted pair term is positive, so
// the table is a valid lower bound for the search.
struct ChainDp {
  int k = 0;
  std::vector<double> d;  // (k+1) x (k+2) row-major, column index last+1

  double at(int j, int last) const {
    return d[size_t(j) * size_t(k + 2) + size_t(last + 1)];
  }
};

void build_chain_dp(ChainDp* out, const std::vector<int>& interior,
                    const std::vector<double>& w, const EnergyTables& t,
                    int a, int b) {
  int k = int(interior.size());
  out->k = k;
  out->d.assign(size_t(k + 1) * size_t(k + 2), 0.0);
  for (int j = k - 1; j >= 0; --j) {
    int q = interior[size_t(j)];
    for (int last = -1; last < j; ++last) {
      double best = out->at(j + 1, last);  // leave position j empty
      bool ok = (last >= 0 ? j != last + 1 : !(j == 0 && a == 1)) &&
                !(j == k - 1 && b == 1);
      if (ok) {
        double take = w[size_t(j)] +
                      (last >= 0 ? t.at(interior[size_t(last)], q) : 0.0) +
                      out->at(j + 1, j);
        best = std::min(best, take);
      }
      out->d[size_t(j) * size_t(k + 2) + size_t(last + 1)] = best;
    }
  }
}

struct ChainInfo {
  int u_atom = -1, v_atom = -1;
  std::vector<int> interior;    // interior atom ids in path order
  std::array<ChainDp, 4> stat;  // per endpoint case, no field terms
  ChainDp live;                 // rebuilt against the running field
};

// Exact two-phase branch-and-bound over occupations whose blockade graph is
// exactly the chain adjacency: originals are decided first, then each chain
// interior in path order. A chain's bound table is rebuilt from the running
// interaction field when the search enters the chain, so its tails against
// everything already placed are priced into the bound up front instead of
// surfacing one atom at a time. Without that the dropped cross-chain tails
// act as free slack and the tree blows up on registers with long chains.
class ChainSearch {
 public:
  ChainSearch(const AtomRegister& reg, const EnergyTables& t,
              long long node_budget)
      : t_(t), n_(t.n), node_budget_(node_budget) {
    for (int i = 0; i < n_; ++i) {
      if (reg.kind[size_t(i)] == 0) originals_.push_back(i);
    }
    size_t covered = originals_.size();
    for (const AugChain& ac : reg.chains) {
      ChainInfo c;
      c.u_atom = ac.atoms.front();
      c.v_atom = ac.atoms.back();
      c.interior.assign(ac.atoms.begin() + 1, ac.atoms.end() - 1);
      covered += c.interior.size();
      chains_.push_back(std::move(c));
    }
    if (covered != size_t(n_)) {
      fail(errc::inconsistent, "chains do not partition the ancilla atoms");
    }

    // Visit strongly coupled chains back to back; their mutual tails then
    // enter the rebuilt tables as early as possible.
    order_chains();

    std::vector<double> w;
    for (ChainInfo& c : chains_) {
      w.resize(c.interior.size());
      for (int var = 0; var < 4; ++var) {
        int a = var >> 1, b = var & 1;
        for (size_t j = 0; j < c.interior.size(); ++j) {
          int q = c.interior[j];
          w[j] = t.w[size_t(q)] + (a ? t.at(q, c.u_atom) : 0.0) +
                 (b ? t.at(q, c.v_atom) : 0.0);
        }
        build_chain_dp(&c.stat[size_t(var)], c.interior, w, t, a, b);
      }
    }

    incident_.assign(size_t(n_), {});
    for (int c = 0; c < int(chains_.size()); ++c) {
      incident_[size_t(chains_[size_t(c)].u_atom)].push_back(c);
      incident_[size_t(chains_[size_t(c)].v_atom)].push_back(c);
    }

    int no = int(originals_.size());
    orig_neg_.assign(size_t(no) + 1, 0.0);
    for (int i = no - 1; i >= 0; --i) {
      orig_neg_[size_t(i)] = orig_neg_[size_t(i) + 1] +
                             std::min(0.0, t.w[size_t(originals_[size_t(i)])]);
    }

    z_.assign(size_t(n_), 0);
    f_.assign(size_t(n_), 0.0);
    sigma_.assign(size_t(n_), -1);
    cons_.assign(chains_.size(), 0.0);
    for (size_t c = 0; c < chains_.size(); ++c) {
      cons_[c] = cons_min(int(c));
      sum_cons_ += cons_[c];
    }
  }

  double find_min() {
    mode_ = 1;
    best_ = kInf;
    nodes_ = 0;
    stop_ = false;
    truncated_ = false;
    rec_orig(0);
    return best_;
  }

  // True when the preceding phase gave up on its node budget.
  bool out_of_budget() const { return truncated_; }

  // Re-walks the tree keeping everything within slack of emin.
  void collect(double emin, double slack, long long cap,
               std::vector<std::string>* out, bool* truncated) {
    mode_ = 2;
    best_ = emin;
    slack_ = slack;
    cap_ = cap;
    out_ = out;
    nodes_ = 0;
    stop_ = false;
    truncated_ = false;
    rec_orig(0);
    *truncated = truncated_;
  }

 private:
  // Greedy seriation by total interaction: start from the most coupled chain
  // and always append the chain most coupled to the ones already placed.
  void order_chains() {
    size_t m = chains_.size();
    if (m < 3) return;
    std::vector<double> cpl(m * m, 0.0);
    for (size_t c = 0; c < m; ++c) {
      for (size_t d = c + 1; d < m; ++d) {
        double s = 0.0;
        for (int x : chains_[c].interior) {
          for (int y : chains_[d].interior) s += t_.at(x, y);
        }
        cpl[c * m + d] = cpl[d * m + c] = s;
      }
    }
    std::vector<double> gain(m, 0.0);
    for (size_t c = 0; c < m; ++c) {
      for (size_t d = 0; d < m; ++d) gain[c] += cpl[c * m + d];
    }
    std::vector<char> used(m, 0);
    std::vector<size_t> perm;
    perm.reserve(m);
    size_t first =
        size_t(std::max_element(gain.begin(), gain.end()) - gain.begin());
    perm.push_back(first);
    used[first] = 1;
    for (size_t d = 0; d < m; ++d) gain[d] = cpl[first * m + d];
    while (perm.size() < m) {
      size_t pick = m;
      double bg = -kInf;
      for (size_t d = 0; d < m; ++d) {
        if (!used[d] && gain[d] > bg) {
          bg = gain[d];
          pick = d;
        }
      }
      perm.push_back(pick);
      used[pick] = 1;
      for (size_t d = 0; d < m; ++d) gain[d] += cpl[pick * m + d];
    }
    std::vector<ChainInfo> reordered;
    reordered.reserve(m);
    for (size_t i : perm) reordered.push_back(std::move(chains_[i]));
    chains_.swap(reordered);
  }

  double cons_min(int c) const {
    const ChainInfo& ci = chains_[size_t(c)];
    double best = kInf;
    for (int a = 0; a < 2; ++a) {
      int su = sigma_[size_t(ci.u_atom)];
      if (su >= 0 && su != a) continue;
      for (int b = 0; b < 2; ++b) {
        int sv = sigma_[size_t(ci.v_atom)];
        if (sv >= 0 && sv != b) continue;
        best = std::min(best, ci.stat[size_t(a * 2 + b)].at(0, -1));
      }
    }
    return best;
  }

  void add_atom(int x) {
    e_cur_ += t_.w[size_t(x)] + f_[size_t(x)];
    z_[size_t(x)] = 1;
    const double* row = &t_.J[size_t(x) * size_t(n_)];
    for (int k = 0; k < n_; ++k) f_[size_t(k)] += row[k];
  }

  void remove_atom(int x) {
    const double* row = &t_.J[size_t(x) * size_t(n_)];
    for (int k = 0; k < n_; ++k) f_[size_t(k)] -= row[k];
    z_[size_t(x)] = 0;
    e_cur_ -= t_.w[size_t(x)] + f_[size_t(x)];
  }

  bool prune(double bound) const {
    return mode_ == 1 ? bound >= best_ : bound > best_ + slack_;
  }

  bool spend_node() {
    if (++nodes_ > node_budget_) {
      truncated_ = true;
      stop_ = true;
      return false;
    }
    return true;
  }

  void set_sigma(int atom, int val,
                 std::vector<std::pair<int, double>>* saved) {
    sigma_[size_t(atom)] = int8_t(val);
    for (int c : incident_[size_t(atom)]) {
      saved->emplace_back(c, cons_[size_t(c)]);
      double nv = cons_min(c);
      sum_cons_ += nv - cons_[size_t(c)];
      cons_[size_t(c)] = nv;
    }
  }

  void unset_sigma(int atom,
                   const std::vector<std::pair<int, double>>& saved) {
    for (auto it = saved.rbegin(); it != saved.rend(); ++it) {
      sum_cons_ += it->second - cons_[size_t(it->first)];
      cons_[size_t(it->first)] = it->second;
    }
    sigma_[size_t(atom)] = -1;
  }

  void rec_orig(size_t i) {
    if (stop_ || !spend_node()) return;
    if (prune(e_cur_ + orig_neg_[i] + sum_cons_)) return;
    if (i == originals_.size()) {
      start_chains();
      return;
    }
    int atom = originals_[i];
    std::vector<std::pair<int, double>> saved;
    add_atom(atom);
    set_sigma(atom, 1, &saved);
    rec_orig(i + 1);
    unset_sigma(atom, saved);
    remove_atom(atom);

    saved.clear();
    set_sigma(atom, 0, &saved);
    rec_orig(i + 1);
    unset_sigma(atom, saved);
  }

  void build_live(size_t c) {
    ChainInfo& ci = chains_[c];
    wbuf_.resize(ci.interior.size());
    for (size_t j = 0; j < ci.interior.size(); ++j) {
      int q = ci.interior[j];
      wbuf_[j] = t_.w[size_t(q)] + f_[size_t(q)];
    }
    build_chain_dp(&ci.live, ci.interior, wbuf_, t_, chain_var_[c] >> 1,
                   chain_var_[c] & 1);
  }

  void start_chains() {
    size_t nc = chains_.size();
    chain_var_.assign(nc, 0);
    chain_suf_.assign(nc + 1, 0.0);
    for (size_t c = nc; c-- > 0;) {
      const ChainInfo& ci = chains_[c];
      chain_var_[c] = sigma_[size_t(ci.u_atom)] * 2 + sigma_[size_t(ci.v_atom)];
      build_live(c);
      chain_suf_[c] = chain_suf_[c + 1] + chains_[c].live.at(0, -1);
    }
    rec_chain(0, 0, -1);
  }

  void rec_chain(size_t c, int j, int last) {
    if (stop_ || !spend_node()) return;
    if (c == chains_.size()) {
      leaf();
      return;
    }
    const ChainInfo& ci = chains_[c];
    int k = int(ci.interior.size());
    if (prune(e_cur_ + ci.live.at(j, last) + chain_suf_[c + 1])) return;
    if (j == k) {
      size_t d = c + 1;
      if (d < chains_.size()) build_live(d);
      rec_chain(d, 0, -1);
      return;
    }
    int q = ci.interior[size_t(j)];
    int a = chain_var_[c] >> 1, b = chain_var_[c] & 1;
    bool can_take = (last >= 0 ? j != last + 1 : !(j == 0 && a == 1)) &&
                    !(j == k - 1 && b == 1);
    if (can_take) {
      add_atom(q);
      rec_chain(c, j + 1, j);
      remove_atom(q);
    }
    rec_chain(c, j + 1, last);
  }

  void leaf() {
    if (mode_ == 1) {
      if (e_cur_ < best_) best_ = e_cur_;
      return;
    }
    if (e_cur_ <= best_ + slack_) {
      if (static_cast<long long>(out_->size()) >= cap_) {
        truncated_ = true;
        stop_ = true;
        return;
      }
      std::string s(size_t(n_), '0');
      for (int i = 0; i < n_; ++i) {
        if (z_[size_t(i)]) s[size_t(i)] = '1';
      }
      out_->push_back(std::move(s));
    }
  }

  const EnergyTables& t_;
  int n_;
  long long node_budget_ = 0;
  std::vector<int> originals_;
  std::vector<ChainInfo> chains_;
  std::vector<std::vector<int>> incident_;
  std::vector<double> orig_neg_;

  std::vector<uint8_t> z_;
  std::vector<double> f_;  // field: sum of J to the current set, per atom
  std::vector<int8_t> sigma_;
  std::vector<double> cons_;
  double sum_cons_ = 0.0;
  std::vector<int> chain_var_;
  std::vector<double> chain_suf_;
  std::vector<double> wbuf_;

  double e_cur_ = 0.0;
  int mode_ = 1;
  double best_ = kInf;
  double slack_ = 0.0;
  long long cap_ = 0;
  long long nodes_ = 0;
  std::vector<std::string>* out_ = nullptr;
  bool stop_ = false;
  bool truncated_ = false;
};

// Recompute candidate energies with the canonical evaluator, keep the true
// minima, sort, and decode. Candidates may over-collect; this is the filter.
void finalize_report(const AtomRegister& reg,
                     std::vector<std::string>&& candidates,
                     GroundStateReport* rep) {
  double emin = kInf;
  std::vector<double> es;
  es.reserve(candidates.size());
  std::vector<uint8_t> z(size_t(reg.total_atoms()));
  for (const std::string& s : candidates) {
    for (size_t i = 0; i < z.size(); ++i) z[i] = s[i] == '1';
    double e = classical_energy(reg, z);
    es.push_back(e);
    emin = std::min(emin, e);
  }
  double tol = 1e-9 * (1.0 + std::abs(emin));
  std::vector<std::string> kept;
  for (size_t i = 0; i < candidates.size(); ++i) {
    if (es[i] <= emin + tol) kept.push_back(std::move(candidates[i]));
  }
  std::sort(kept.begin(), kept.end());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  rep->min_energy = emin;
  rep->restricted_sets.clear();
  for (const std::string& s : kept) {
    rep->restricted_sets.push_back(restrict_to_original(reg, s));
  }
  rep->ground_states = std::move(kept);
}

bool graphs_equal(const Graph& a, const Graph& b) {
  return a.vertex_count() == b.vertex_count() && a.edges() == b.edges();
}

} // namespace

GroundStateReport ground_states(const AtomRegister& reg, int size_limit,
                                long long state_cap, long long work_budget) {
  reg.params.validate();
  int n = reg.total_atoms();
  if (n > size_limit) {
    fail(errc::size_limit, "register has " + std::to_string(n) +
                               " atoms, oracle limit is " +
                               std::to_string(size_limit));
  }
  if (work_budget < 1) fail(errc::invalid_argument, "work budget must be >= 1");
  Graph blockade = blockade_graph(reg);
  EnergyTables t = build_tables(reg);
  bool provable = restriction_provable(reg, blockade, t);
  bool chain_form = graphs_equal(blockade, chain_adjacency(reg));

  GroundStateReport rep;
  if (provable && chain_form) {
    ChainSearch search(reg, t, work_budget);
    double best = search.find_min();
    std::vector<std::string> cand;
    bool truncated = search.out_of_budget();
    if (!truncated) {
      search.collect(best, 1e-7 * (1.0 + std::abs(best)), state_cap, &cand,
                     &truncated);
    }
    rep.truncated = truncated;
    finalize_report(reg, std::move(cand), &rep);
    return rep;
  }
  if (n > 24) {
    fail(errc::inconsistent,
         provable ? "register's blockade graph is not its chain adjacency and "
                    "it is too large for an exhaustive scan"
                  : "blockade pruning bound does not hold and the register is "
                    "too large for an exhaustive scan");
  }
  rep = ground_states_exhaustive(reg, state_cap);
  rep.used_fallback = true;
  return rep;
}

GroundStateReport ground_states_exhaustive(const AtomRegister& reg,
                                           long long state_cap) {
  reg.params.validate();
  int n = reg.total_atoms();
  if (n > 24) {
    fail(errc::size_limit,
         "exhaustive scan supports at most 24 atoms, got " +
             std::to_string(n));
  }
  EnergyTables t = build_tables(reg);

  // Gray-code walk; the incremental energy is only a coarse filter, final
  // energies are recomputed exactly in finalize_report.
  const double kSlack = 1e-6;
  std::vector<std::pair<uint32_t, double>> cand;
  cand.emplace_back(0, 0.0);
  double e = 0.0, run_min = 0.0;
  std::vector<double> f(size_t(n), 0.0);
  std::vector<uint8_t> on(size_t(n), 0);
  uint64_t total = uint64_t(1) << n;
  for (uint64_t i = 1; i < total; ++i) {
    uint64_t g = i ^ (i >> 1), pg = (i - 1) ^ ((i - 1) >> 1);
    int b = __builtin_ctzll(g ^ pg);
    const double* row = &t.J[size_t(b) * size_t(n)];
    if (!on[size_t(b)]) {
      e += t.w[size_t(b)] + f[size_t(b)];
      on[size_t(b)] = 1;
      for (int k = 0; k < n; ++k) f[size_t(k)] += row[k];
    } else {
      for (int k = 0; k < n; ++k) f[size_t(k)] -= row[k];
      on[size_t(b)] = 0;
      e -= t.w[size_t(b)] + f[size_t(b)];
    }
    if (e <= run_min + kSlack) {
      run_min = std::min(run_min, e);
      cand.emplace_back(uint32_t(g), e);
      if (cand.size() > (1u << 21)) {
        std::vector<std::pair<uint32_t, double>> keep;
        for (const auto& c : cand) {
          if (c.second <= run_min + kSlack) keep.push_back(c);
        }
        cand.swap(keep);
      }
    }
  }

  std::vector<std::string> states;
  states.reserve(cand.size());
  for (const auto& c : cand) {
    if (c.second > run_min + kSlack) continue;
    std::string s(size_t(n), '0');
    for (int j = 0; j < n; ++j) {
      if (c.first & (uint32_t(1) << j)) s[size_t(j)] = '1';
    }
    states.push_back(std::move(s));
  }

  GroundStateReport rep;
  if (static_cast<long long>(states.size()) > state_cap) {
    states.resize(size_t(state_cap));
    rep.truncated = true;
  }
  finalize_report(reg, std::move(states), &rep);
  return rep;
}

VertexSet restrict_to_original(const AtomRegister& reg, const std::string& z) {
  if (int(z.size()) != reg.total_atoms()) {
    fail(errc::invalid_argument, "bit-string length does not match register");
  }
  VertexSet out;
  for (int i = 0; i < reg.total_atoms(); ++i) {
    if (reg.kind[size_t(i)] == 0 && z[size_t(i)] == '1') {
      out.push_back(reg.source[size_t(i)]);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

GroundStateReport certify_embedding(const Graph& g, const AtomRegister& reg,
                                    int size_limit, long long state_cap,
                                    long long work_budget) {
  const auto& ge = g.edges();
  if (reg.n_original != g.vertex_count() || reg.chains.size() != ge.size()) {
    fail(errc::inconsistent, "register does not match the graph");
  }
  for (size_t i = 0; i < reg.chains.size(); ++i) {
    const AugChain& c = reg.chains[i];
    int su = reg.source[size_t(c.atoms.front())];
    int sv = reg.source[size_t(c.atoms.back())];
    if (std::minmax(su, sv) != std::minmax(ge[i].first, ge[i].second)) {
      fail(errc::inconsistent, "chain " + std::to_string(i) +
                                   " does not span the matching graph edge");
    }
  }

  GroundStateReport rep = ground_states(reg, size_limit, state_cap,
                                        work_budget);

  MisResult mis_g = exact_mis(g, size_limit);
  rep.mis_original = mis_g.size;
  rep.half_ancillas = (reg.total_atoms() - reg.n_original) / 2;
  rep.mis_augmented = exact_mis(blockade_graph(reg), size_limit).size;
  rep.identity_ok = rep.mis_augmented == rep.mis_original + rep.half_ancillas;

  rep.restriction_ok = true;
  for (const VertexSet& s : rep.restricted_sets) {
    if (!is_independent_set(g, s) || int(s.size()) != mis_g.size) {
      rep.restriction_ok = false;
      break;
    }
  }
  rep.certified = rep.restriction_ok && rep.identity_ok && !rep.truncated;
  return rep;
}

AtomRegister make_gadget_register(double spacing, double delta_global,
                                  double delta_i) {
  if (!(spacing > 0)) fail(errc::invalid_argument, "spacing must be positive");
  if (delta_i < 0) fail(errc::invalid_argument, "detuning must be >= 0");
  PhysicalParams p;
  p.delta_global = delta_global;
  p.validate();

  AtomRegister reg;
  reg.params = p;
  reg.n_original = 2;
  double s = spacing;
  reg.pos = {{0, 0, 0}, {s, 0, 0}, {2 * s, 0, 0}, {3 * s, 0, 0}};
  reg.kind = {0, 1, 1, 0};
  reg.source = {0, 0, 0, 1};
  reg.detuning = {0.0, delta_i, delta_i, 0.0};
  AugChain c;
  c.u = 0;
  c.v = 1;
  c.edge_id = 0;
  c.spacing = s;
  c.atoms = {0, 1, 2, 3};
  reg.chains.push_back(std::move(c));
  return reg;
}

namespace {

std::array<double, 16> gadget_energies(const AtomRegister& reg) {
  std::array<double, 16> es{};
  std::vector<uint8_t> z(4);
  for (int b = 0; b < 16; ++b) {
    for (int j = 0; j < 4; ++j) z[size_t(j)] = (b >> (3 - j)) & 1;
    es[size_t(b)] = classical_energy(reg, z);
  }
  return es;
}

} // namespace

std::string gadget_spectrum_csv(double spacing, double delta_global,
                                const std::vector<double>& sweep) {
  std::string csv = "delta_i";
  for (int b = 0; b < 16; ++b) {
    csv += ",E_";
    for (int j = 3; j >= 0; --j) csv += char('0' + ((b >> j) & 1));
  }
  csv += ",argmin_states\n";

  for (double di : sweep) {
    AtomRegister reg = make_gadget_register(spacing, delta_global, di);
    auto es = gadget_energies(reg);
    double emin = *std::min_element(es.begin(), es.end());
    double tol = 1e-9 * (1.0 + std::abs(emin));
    csv += format12(di);
    for (int b = 0; b < 16; ++b) {
      csv += ',';
      csv += format12(es[size_t(b)]);
    }
    csv += ',';
    bool first = true;
    for (int b = 0; b < 16; ++b) {
      if (es[size_t(b)] > emin + tol) continue;
      if (!first) csv += '|';
      first = false;
      for (int j = 3; j >= 0; --j) csv += char('0' + ((b >> j) & 1));
    }
    csv += '\n';
  }
  return csv;
}

GadgetCrossovers gadget_crossovers(double spacing, double delta_global,
                                   double step) {
  if (!(step > 0)) fail(errc::invalid_argument, "sweep step must be positive");
  PhysicalParams p;
  p.delta_global = delta_global;
  double us = interaction(spacing, p);

  // State indices in the msb-first line-order convention.
  constexpr int k1001 = 0b1001, k1010 = 0b1010, k0110 = 0b0110;

  GadgetCrossovers out;
  bool have_lo = false, have_hi = false;
  double prev_d1 = kInf, prev_d2 = kInf, prev_di = 0.0;
  for (double di = 0.0; di <= 1.05 * us + step; di += step) {
    auto es = gadget_energies(make_gadget_register(spacing, delta_global, di));
    double d1 = es[k1010] - es[k1001];
    double d2 = es[k0110] - es[k1010];
    if (!have_lo && d1 <= 0.0) {
      // The energies are linear in di; interpolate the bracketing pair.
      out.lower = di;
      if (prev_d1 != kInf && d1 != prev_d1) {
        out.lower = prev_di + (di - prev_di) * (prev_d1 / (prev_d1 - d1));
      }
      have_lo = true;
    }
    if (!have_hi && d2 <= 0.0) {
      out.upper = di;
      if (prev_d2 != kInf && d2 != prev_d2) {
        out.upper = prev_di + (di - prev_di) * (prev_d2 / (prev_d2 - d2));
      }
      have_hi = true;
    }
    if (have_lo && have_hi) break;
    prev_d1 = d1;
    prev_d2 = d2;
    prev_di = di;
  }
  if (!have_lo || !have_hi) {
    fail(errc::internal, "gadget crossovers not found within the sweep range");
  }
  return out;
}

} // namespace mis3d
