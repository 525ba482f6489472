#include "lll/santa.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "json.hpp"
#include "lll/errors.hpp"
#include "lll/maxflow.hpp"

namespace lll {
namespace santa {

int KLBSystem::total_children() const {
  int total = 0;
  for (const auto& g : groups) total += static_cast<int>(g.size());
  return total;
}

int KLBSystem::max_item_occurrence() const {
  std::vector<int> occ(universe, 0);
  int best = 0;
  for (const auto& g : groups)
    for (const auto& child : g)
      for (int item : child) best = std::max(best, ++occ[item]);
  return best;
}

double KLBSystem::beta() const {
  return l > 0 ? static_cast<double>(max_item_occurrence()) / l : 0.0;
}

void KLBSystem::validate() const {
  if (p != static_cast<int>(groups.size())) throw std::invalid_argument("p != group count");
  int max_children = 0;
  for (const auto& g : groups) {
    if (g.empty()) throw std::invalid_argument("group with no children");
    max_children = std::max(max_children, static_cast<int>(g.size()));
    for (const auto& child : g) {
      if (static_cast<int>(child.size()) != k)
        throw std::invalid_argument("child set size != k");
      if (!std::is_sorted(child.begin(), child.end()) ||
          std::adjacent_find(child.begin(), child.end()) != child.end())
        throw std::invalid_argument("child set not sorted/distinct");
      if (!child.empty() && (child.front() < 0 || child.back() >= universe))
        throw std::invalid_argument("item id out of range");
    }
  }
  if (max_children > l) throw std::invalid_argument("group larger than l");
  if (beta() > 6.0 + 1e-9) throw std::invalid_argument("beta exceeds 6");
}

KLBSystem gen_system(int p, int l, int k, double beta_target, Rng& rng) {
  if (p < 1 || l < 1 || k < 1 || beta_target <= 0.0)
    throw InfeasibleParams("gen_system parameters must be positive");
  int cap = static_cast<int>(std::ceil(beta_target * l));
  if (cap < 1) cap = 1;

  // enough capacity that every child still sees >= k open items
  std::int64_t slots = static_cast<std::int64_t>(p) * l * k;
  int universe = static_cast<int>((slots + cap - 1) / cap + (slots + 3) / 4 / cap + 2 * k);

  KLBSystem s;
  s.p = p;
  s.l = l;
  s.k = k;
  s.universe = universe;
  s.groups.assign(p, {});

  std::vector<int> occ(universe, 0);
  std::vector<int> open(universe);
  for (int i = 0; i < universe; ++i) open[i] = i;
  std::vector<int> position(universe);
  for (int i = 0; i < universe; ++i) position[i] = i;

  auto close_item = [&](int item) {
    int pos = position[item];
    int last = open.back();
    open[pos] = last;
    position[last] = pos;
    open.pop_back();
  };

  std::vector<char> chosen(universe, 0);
  for (int g = 0; g < p; ++g) {
    s.groups[g].resize(l);
    for (int c = 0; c < l; ++c) {
      if (static_cast<int>(open.size()) < k)
        throw InfeasibleParams("universe exhausted while generating sets");
      auto& child = s.groups[g][c];
      child.clear();
      while (static_cast<int>(child.size()) < k) {
        int item = open[rng() % open.size()];
        if (chosen[item]) continue;
        chosen[item] = 1;
        child.push_back(item);
      }
      for (int item : child) {
        chosen[item] = 0;
        if (++occ[item] >= cap) close_item(item);
      }
      std::sort(child.begin(), child.end());
    }
  }
  s.validate();
  return s;
}

KLBSystem system_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  KLBSystem s;
  s.p = j.at("p").get<int>();
  s.l = j.at("l").get<int>();
  s.k = j.at("k").get<int>();
  int max_item = -1;
  for (const auto& group : j.at("groups")) {
    std::vector<std::vector<int>> children;
    for (const auto& child : group) {
      std::vector<int> items = child.get<std::vector<int>>();
      std::sort(items.begin(), items.end());
      for (int it : items) max_item = std::max(max_item, it);
      children.push_back(std::move(items));
    }
    s.groups.push_back(std::move(children));
  }
  s.universe = j.contains("universe") ? j.at("universe").get<int>() : max_item + 1;
  s.validate();
  return s;
}

std::string system_to_json(const KLBSystem& s) {
  nlohmann::json j;
  j["p"] = s.p;
  j["l"] = s.l;
  j["k"] = s.k;
  j["universe"] = s.universe;
  j["groups"] = s.groups;
  return j.dump();
}

std::pair<KLBSystem, ReductionStep> reduce_l(const KLBSystem& s, Rng& rng, double cap_factor,
                                             int l_target_override) {
  ReductionStep step;
  step.kind = ReductionStep::Kind::ReduceL;
  step.k_before = step.k_after = s.k;
  step.l_before = s.l;
  step.beta_before = s.beta();

  double log_l = std::log2(static_cast<double>(std::max(s.l, 2)));
  int target = l_target_override > 0
                   ? l_target_override
                   : static_cast<int>(std::floor(std::pow(log_l, 5.0)));
  int new_l = std::min(s.l, std::max(target, 1));
  double beta_budget = step.beta_before * (1.0 + 1.0 / log_l);
  double copy_cap = beta_budget * new_l;  // events: item with more than beta' l' copies

  // which groups own each item (any child), for resampling granularity
  std::vector<std::vector<int>> owners(s.universe);
  for (int g = 0; g < s.p; ++g) {
    std::set<int> items;
    for (const auto& child : s.groups[g]) items.insert(child.begin(), child.end());
    for (int it : items) owners[it].push_back(g);
  }

  std::vector<std::vector<int>> selection(s.p);  // chosen child indices per group
  auto redraw_group = [&](int g) {
    int size = static_cast<int>(s.groups[g].size());
    int take = std::min(size, new_l);
    // partial Fisher-Yates over child indices
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (int i = 0; i < take; ++i) {
      int j = i + static_cast<int>(rng() % (size - i));
      std::swap(idx[i], idx[j]);
    }
    selection[g].assign(idx.begin(), idx.begin() + take);
    std::sort(selection[g].begin(), selection[g].end());
  };
  for (int g = 0; g < s.p; ++g) redraw_group(g);

  auto item_counts = [&]() {
    std::vector<int> counts(s.universe, 0);
    for (int g = 0; g < s.p; ++g)
      for (int c : selection[g])
        for (int item : s.groups[g][c]) counts[item]++;
    return counts;
  };

  std::uint64_t cap = static_cast<std::uint64_t>(std::max(16.0, std::ceil(cap_factor)));
  while (true) {
    auto counts = item_counts();
    int violated = -1;
    for (int item = 0; item < s.universe; ++item)
      if (counts[item] > copy_cap) { violated = item; break; }
    if (violated < 0) break;
    if (step.resamples >= cap)
      throw CapExceededError("reduce-l resampling exceeded its budget");
    step.resamples++;
    for (int g : owners[violated]) redraw_group(g);
  }

  KLBSystem out;
  out.p = s.p;
  out.k = s.k;
  out.universe = s.universe;
  out.groups.resize(s.p);
  int max_children = 0;
  for (int g = 0; g < s.p; ++g) {
    for (int c : selection[g]) out.groups[g].push_back(s.groups[g][c]);
    max_children = std::max(max_children, static_cast<int>(out.groups[g].size()));
  }
  out.l = max_children;
  step.l_after = out.l;
  step.beta_after = out.beta();
  out.validate();
  return {std::move(out), step};
}

int reduce_k_new_k(int k) {
  double b = std::log2(static_cast<double>(k)) / std::sqrt(static_cast<double>(k));
  return static_cast<int>(std::ceil(std::max(0.0, 1.0 - b) * k / 2.0));
}

double reduce_k_gamma_forward(double gamma, int k) {
  if (gamma <= 0.0) return 0.0;
  int kp = reduce_k_new_k(k);
  if (kp < 1) throw InfeasibleParams("reduce_k_new_k(k) < 1");
  double delta_prime =
      gamma * (1.0 + std::log2(static_cast<double>(k)) / std::sqrt(gamma * k));
  return delta_prime * (k / 2.0) / kp;
}

double reduce_k_gamma_backward(double gamma_after, int k) {
  if (gamma_after <= 0.0) return 0.0;
  double lo = 0.0, hi = std::max(1.0, gamma_after);
  while (reduce_k_gamma_forward(hi, k) < gamma_after) hi *= 2.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = 0.5 * (lo + hi);
    if (reduce_k_gamma_forward(mid, k) < gamma_after) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

struct SetRef {
  int group;
  int child;
  const std::vector<int>* items;
};

// Connected collections of 2..max_size sets from distinct groups whose union
// stays within union_cap items; enumerated per min-id root, extensions
// restricted to larger ids, deduplicated by member tuple.
std::vector<std::vector<int>> enumerate_collections(const std::vector<SetRef>& sets,
                                                    const std::vector<std::vector<int>>& nbrs,
                                                    int max_size, double union_cap,
                                                    std::size_t budget) {
  std::vector<std::vector<int>> found;
  std::size_t work = 0;

  for (int root = 0; root < static_cast<int>(sets.size()); ++root) {
    if (static_cast<double>(sets[root].items->size()) > union_cap) continue;
    std::set<std::vector<int>> seen;
    std::vector<std::pair<std::vector<int>, std::set<int>>> stack;
    stack.push_back({{root}, {sets[root].items->begin(), sets[root].items->end()}});
    seen.insert({root});
    while (!stack.empty()) {
      auto [members, union_items] = std::move(stack.back());
      stack.pop_back();
      if (members.size() >= 2) found.push_back(members);
      if (static_cast<int>(members.size()) >= max_size) continue;
      std::set<int> used_groups;
      for (int m : members) used_groups.insert(sets[m].group);
      std::set<int> candidates;
      for (int m : members)
        for (int nb : nbrs[m])
          if (nb > root) candidates.insert(nb);
      for (int cand : candidates) {
        if (++work > budget) throw CoreTooLarge("collection enumeration budget exhausted");
        if (used_groups.count(sets[cand].group)) continue;
        if (std::find(members.begin(), members.end(), cand) != members.end()) continue;
        std::vector<int> next_members = members;
        next_members.push_back(cand);
        std::sort(next_members.begin(), next_members.end());
        if (!seen.insert(next_members).second) continue;
        std::set<int> next_union = union_items;
        next_union.insert(sets[cand].items->begin(), sets[cand].items->end());
        if (static_cast<double>(next_union.size()) > union_cap) continue;
        stack.push_back({std::move(next_members), std::move(next_union)});
      }
    }
  }
  return found;
}

}  // namespace

std::pair<KLBSystem, ReductionStep> reduce_k(const KLBSystem& s, double gamma, Rng& rng,
                                             double cap_factor, std::size_t enum_budget) {
  ReductionStep step;
  step.kind = ReductionStep::Kind::ReduceK;
  step.k_before = s.k;
  step.l_before = step.l_after = s.l;
  step.beta_before = s.beta();
  step.gamma_before = gamma;

  int kp = reduce_k_new_k(s.k);
  if (kp < 1) throw InfeasibleParams("k too small for a reduce-k round");
  double delta_prime =
      gamma > 0.0
          ? gamma * (1.0 + std::log2(static_cast<double>(s.k)) / std::sqrt(gamma * s.k))
          : 0.0;

  // flatten sets and build the shared-item graph on them
  std::vector<SetRef> sets;
  for (int g = 0; g < s.p; ++g)
    for (int c = 0; c < static_cast<int>(s.groups[g].size()); ++c)
      sets.push_back(SetRef{g, c, &s.groups[g][c]});
  int m = static_cast<int>(sets.size());

  std::vector<std::vector<int>> by_item(s.universe);
  for (int i = 0; i < m; ++i)
    for (int item : *sets[i].items) by_item[item].push_back(i);
  std::vector<std::vector<int>> nbrs(m);
  for (int i = 0; i < m; ++i) {
    std::set<int> nb;
    for (int item : *sets[i].items)
      for (int other : by_item[item])
        if (other != i) nb.insert(other);
    nbrs[i].assign(nb.begin(), nb.end());
  }

  // core B_i events: connected collections from distinct groups with small
  // original union; L_core = 2 ceil(log2 m / log2 k)
  int l_core = 2 * std::max(1, static_cast<int>(std::ceil(
                       std::log2(static_cast<double>(std::max(m, 2))) /
                       std::log2(static_cast<double>(std::max(s.k, 2))))));
  std::vector<std::vector<int>> collections;
  if (gamma > 0.0 && l_core >= 2)
    collections = enumerate_collections(sets, nbrs, l_core,
                                        static_cast<double>(l_core) * gamma * s.k, enum_budget);
  step.collection_events = collections.size();

  std::vector<char> alive(s.universe, 0);
  auto flip_all = [&]() {
    for (int i = 0; i < s.universe; ++i) alive[i] = rng() & 1;
  };
  auto flip_items = [&](const std::set<int>& items) {
    for (int item : items) alive[item] = rng() & 1;
  };
  flip_all();

  auto survivors_of_set = [&](int i) {
    int count = 0;
    for (int item : *sets[i].items) count += alive[item];
    return count;
  };

  // precompute unions for collection events
  std::vector<std::set<int>> unions(collections.size());
  for (std::size_t ci = 0; ci < collections.size(); ++ci)
    for (int member : collections[ci])
      unions[ci].insert(sets[member].items->begin(), sets[member].items->end());

  std::uint64_t cap = static_cast<std::uint64_t>(std::max(64.0, std::ceil(cap_factor)));
  while (true) {
    int violated_set = -1;
    for (int i = 0; i < m; ++i)
      if (survivors_of_set(i) < kp) { violated_set = i; break; }
    int violated_collection = -1;
    if (violated_set < 0) {
      for (std::size_t ci = 0; ci < collections.size(); ++ci) {
        int live = 0;
        for (int item : unions[ci]) live += alive[item];
        double bound = static_cast<double>(collections[ci].size()) * delta_prime * s.k / 2.0;
        if (live > bound) { violated_collection = static_cast<int>(ci); break; }
      }
    }
    if (violated_set < 0 && violated_collection < 0) break;
    if (step.resamples >= cap)
      throw CapExceededError("reduce-k resampling exceeded its budget");
    step.resamples++;
    if (violated_set >= 0) {
      std::set<int> items(sets[violated_set].items->begin(), sets[violated_set].items->end());
      flip_items(items);
    } else {
      flip_items(unions[violated_collection]);
    }
  }

  KLBSystem out;
  out.p = s.p;
  out.l = s.l;
  out.k = kp;
  out.universe = s.universe;
  out.groups.assign(s.p, {});
  for (int g = 0; g < s.p; ++g)
    for (const auto& child : s.groups[g]) {
      std::vector<int> kept;
      for (int item : child)
        if (alive[item]) kept.push_back(item);  // already sorted: lowest ids first
      if (static_cast<int>(kept.size()) < kp)
        throw std::logic_error("set below k' survivors after the B_1 events were cleared");
      kept.resize(kp);
      out.groups[g].push_back(std::move(kept));
    }

  step.k_after = kp;
  step.beta_after = out.beta();
  step.gamma_after = gamma > 0.0 ? delta_prime * (s.k / 2.0) / kp : 0.0;
  out.validate();
  return {std::move(out), step};
}

BaseCaseResult base_case(const KLBSystem& s) {
  int occ = std::max(1, s.max_item_occurrence());  // = ceil(beta l) exactly
  int q = s.k / occ;

  BaseCaseResult result;
  result.f.child.assign(s.p, 0);
  result.gamma = static_cast<double>(q) / s.k;

  GoodCheck check = check_gamma_good(s, result.f, result.gamma);
  if (!check.assignment)
    throw FlowInfeasible("base case flow fell short of floor(gamma k) p");
  result.assignment = std::move(*check.assignment);
  return result;
}

GoodCheck check_gamma_good(const KLBSystem& s, const ChoiceFunction& f, double gamma) {
  if (static_cast<int>(f.child.size()) != s.p)
    throw std::invalid_argument("choice function must cover every group");
  std::int64_t quota = static_cast<std::int64_t>(std::floor(gamma * s.k + 1e-9));

  GoodCheck out;
  out.target = quota * s.p;
  if (quota == 0) {
    out.assignment = ItemAssignment{std::vector<std::vector<int>>(s.p)};
    return out;
  }

  // compact the items of the chosen children
  std::map<int, int> item_node;
  for (int g = 0; g < s.p; ++g)
    for (int item : s.groups[g].at(f.child[g]))
      item_node.emplace(item, 0);
  int next = 1 + s.p;
  for (auto& [item, node] : item_node) node = next++;

  int source = 0, sink = next;
  MaxFlow flow(sink + 1);
  std::vector<std::vector<std::pair<int, int>>> child_arcs(s.p);  // (arc, item)
  for (int g = 0; g < s.p; ++g) {
    flow.add_edge(source, 1 + g, quota);
    for (int item : s.groups[g].at(f.child[g]))
      child_arcs[g].push_back({flow.add_edge(1 + g, item_node[item], 1), item});
  }
  for (const auto& [item, node] : item_node) flow.add_edge(node, sink, 1);

  out.flow_value = flow.run(source, sink);
  if (out.flow_value != out.target) {
    out.cut_capacity = flow.cut_capacity();
    return out;
  }

  ItemAssignment assignment;
  assignment.items.resize(s.p);
  for (int g = 0; g < s.p; ++g)
    for (auto [arc, item] : child_arcs[g])
      if (flow.flow_on(arc) > 0) assignment.items[g].push_back(item);
  out.assignment = std::move(assignment);
  return out;
}

SolveResult solve(const KLBSystem& s, std::uint64_t root_seed, int c, int max_retries,
                  double cap_factor) {
  s.validate();
  if (c < 1) throw std::invalid_argument("c must be >= 1");

  // plan the schedule on (k, l); reduce-l keeps k, reduce-k maps k -> k'
  struct Planned {
    ReductionStep::Kind kind;
    int k_before;
  };
  std::vector<Planned> plan;
  {
    int k = s.k, l = s.l;
    while (l > c) {
      if (l > k) {
        double log_l = std::log2(static_cast<double>(std::max(l, 2)));
        int target = static_cast<int>(std::floor(std::pow(log_l, 5.0)));
        if (target >= l) break;  // subsampling cannot shrink the group further
        plan.push_back({ReductionStep::Kind::ReduceL, k});
        l = target;
      } else {
        if (reduce_k_new_k(k) < 1) break;
        plan.push_back({ReductionStep::Kind::ReduceK, k});
        k = reduce_k_new_k(k);
      }
    }
  }

  // planned base gamma from the occurrence bound, then the backward chain
  // through every reduce-k step gives the per-stage gammas
  int final_k = plan.empty() ? s.k : 0;
  {
    int k = s.k;
    for (const auto& st : plan)
      if (st.kind == ReductionStep::Kind::ReduceK) k = reduce_k_new_k(k);
    final_k = k;
  }
  int occ = std::max(1, s.max_item_occurrence());
  double gamma_base_planned = static_cast<double>(final_k / occ) / final_k;

  std::vector<double> stage_gamma(plan.size(), 0.0);  // gamma_before per step
  {
    double g = gamma_base_planned;
    for (std::size_t i = plan.size(); i-- > 0;) {
      if (plan[i].kind == ReductionStep::Kind::ReduceK)
        g = reduce_k_gamma_backward(g, plan[i].k_before);
      stage_gamma[i] = g;
    }
  }
  double gamma_original = plan.empty() ? gamma_base_planned : stage_gamma.front();

  for (int attempt = 0; attempt < max_retries; ++attempt) {
    Rng rng = make_rng(root_seed, static_cast<std::uint64_t>(attempt));

    SolveResult result;
    result.retries_used = attempt;
    KLBSystem current = s;
    bool failed = false;
    for (std::size_t i = 0; i < plan.size(); ++i) {
      try {
        if (plan[i].kind == ReductionStep::Kind::ReduceL) {
          auto [next, step] = reduce_l(current, rng, cap_factor);
          step.gamma_before = step.gamma_after = stage_gamma[i];
          result.trace.steps.push_back(step);
          current = std::move(next);
        } else {
          auto [next, step] = reduce_k(current, stage_gamma[i], rng, cap_factor);
          result.trace.steps.push_back(step);
          current = std::move(next);
        }
      } catch (const CapExceededError&) {
        failed = true;
        break;
      }
    }
    if (failed) continue;

    BaseCaseResult base = base_case(current);
    result.f = base.f;
    result.gamma_final = gamma_original;

    GoodCheck final_check = check_gamma_good(s, result.f, gamma_original);
    if (!final_check.assignment) continue;  // rerun on the unlikely failure
    result.assignment = std::move(*final_check.assignment);
    return result;
  }
  throw RetriesExhausted("santa pipeline failed on every retry");
}

}  // namespace santa
}  // namespace lll
