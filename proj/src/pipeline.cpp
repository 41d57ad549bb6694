#include "grips/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <deque>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "grips/actions.hpp"
#include "grips/complex.hpp"
#include "grips/dismantle.hpp"
#include "grips/errors.hpp"
#include "grips/geometry.hpp"
#include "grips/model_io.hpp"
#include "grips/rips.hpp"
#include "grips/rng.hpp"
#include "grips/universe.hpp"

namespace grips {

namespace {

constexpr const char* kTool = "grips 0.1.0";
constexpr const char* kMarker = " [truncated]";

std::string bstr(bool b) { return b ? "true" : "false"; }

// Accumulates one report file; every emitted line is final text, so a stage
// interrupted by an error still leaves its completed lines behind.
class Report {
 public:
  void raw(const std::string& s) {
    text_ += s;
    text_ += '\n';
  }
  void kv(const std::string& k, const std::string& v, bool truncated = false) {
    text_ += k;
    text_ += " = ";
    text_ += v;
    if (truncated) text_ += kMarker;
    text_ += '\n';
  }
  void kv(const std::string& k, long long v, bool truncated = false) {
    kv(k, std::to_string(v), truncated);
  }
  const std::string& text() const { return text_; }

 private:
  std::string text_;
};

std::string fixed1(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", v);
  return buf;
}

std::string join_labels(const Universe& u, const std::vector<int>& verts,
                        char sep) {
  std::string out;
  for (std::size_t i = 0; i < verts.size(); ++i) {
    if (i) out += sep;
    out += u.vertex_label(verts[i]);
  }
  return out;
}

class Pipeline {
 public:
  explicit Pipeline(const RunConfig& c) : c_(c) {}

  PipelineResult run();

 private:
  bool enabled(const std::string& stage) const {
    return c_.stages.count(stage) != 0;
  }
  void write_file(const std::string& name, const std::string& content);
  void run_stage(const std::string& name, const std::string& file,
                 void (Pipeline::*fn)(Report&));

  const RipsGraph& rips();
  const Graph& coned();
  const SimplicialComplex& cplx();

  void write_manifest();
  void stage_graph(Report& r);
  void stage_complex(Report& r);
  void stage_estimate(Report& r);
  void stage_dismantle(Report& r);
  void stage_fixed(Report& r);
  void stage_fineness(Report& r);
  void stage_hulls(Report& r);
  void stage_delta(Report& r);

  // True when the coned-graph neighborhood of every vertex within the given
  // depth of the seeds is provably complete, so circuits up to twice that
  // depth match the untruncated graph.
  bool neighborhood_complete(const std::vector<int>& seeds, int depth);

  const RunConfig& c_;
  PipelineResult result_;
  std::optional<ModelFile> mf_;
  std::optional<Universe> u_;
  std::optional<SDistCache> dist_;
  std::optional<RipsGraph> rips_;
  std::optional<Graph> coned_;
  std::optional<SimplicialComplex> cplx_;
  std::optional<std::string> cplx_error_;
  bool resource_hit_ = false;
  bool truncation_hit_ = false;
};

void Pipeline::write_file(const std::string& name,
                          const std::string& content) {
  std::filesystem::path p = std::filesystem::path(result_.dir) / name;
  std::ofstream out(p, std::ios::binary);
  if (!out) throw input_error("cannot write '" + p.string() + "'");
  out << content;
  result_.files.push_back(name);
}

void Pipeline::run_stage(const std::string& name, const std::string& file,
                         void (Pipeline::*fn)(Report&)) {
  if (!enabled(name)) {
    result_.summary["stage." + name] = "skipped";
    return;
  }
  Report r;
  try {
    (this->*fn)(r);
    result_.summary["stage." + name] = "ok";
  } catch (const resource_error& e) {
    r.kv("error", std::string("resource: ") + e.what());
    result_.summary["stage." + name] = std::string("resource-error: ") + e.what();
    resource_hit_ = true;
  } catch (const truncation_error& e) {
    r.kv("error", std::string("truncation: ") + e.what());
    result_.summary["stage." + name] =
        std::string("truncation-blocked: ") + e.what();
    truncation_hit_ = true;
  }
  write_file(file, r.text());
}

const RipsGraph& Pipeline::rips() {
  if (!rips_) rips_ = rips_graph(*u_, c_.n, *dist_);
  return *rips_;
}

const Graph& Pipeline::coned() {
  if (!coned_) coned_ = coned_off_graph(*u_);
  return *coned_;
}

const SimplicialComplex& Pipeline::cplx() {
  if (cplx_error_) throw resource_error(*cplx_error_);
  if (!cplx_) {
    try {
      cplx_ = clique_complex(rips().graph, c_.d_max, c_.complex_cap);
    } catch (const resource_error& e) {
      cplx_error_ = e.what();
      throw;
    }
  }
  return *cplx_;
}

void Pipeline::write_manifest() {
  Report r;
  r.kv("tool", kTool);
  r.kv("format", 1LL);
  r.kv("config.model", c_.model_path);
  r.kv("config.radius", static_cast<long long>(c_.radius));
  r.kv("config.n", static_cast<long long>(c_.n));
  r.kv("config.d_max", static_cast<long long>(c_.d_max));
  r.kv("config.complex_cap", static_cast<long long>(c_.complex_cap));
  r.kv("config.epsilon", static_cast<long long>(c_.epsilon));
  r.kv("config.R", c_.estimate_R ? "estimate" : std::to_string(c_.R));
  r.kv("config.D", c_.estimate_D ? "estimate" : std::to_string(c_.D));
  r.kv("config.K", static_cast<long long>(c_.K));
  r.kv("config.seed", c_.has_seed ? std::to_string(c_.seed) : "none");
  r.kv("config.samples", c_.samples);
  r.kv("config.budget", c_.budget);
  r.kv("config.max_subgroup_order",
       static_cast<long long>(c_.max_subgroup_order));
  r.kv("config.fineness_L", static_cast<long long>(c_.fineness_L));
  r.kv("config.hull_r", static_cast<long long>(c_.hull_r));
  r.kv("config.hull_core", static_cast<long long>(c_.hull_core));
  std::string stages;
  for (const std::string& s : c_.stages) {
    if (!stages.empty()) stages += ',';
    stages += s;
  }
  r.kv("config.stages", stages);
  for (std::size_t i = 0; i < c_.extra_peripherals.size(); ++i)
    r.kv("config.peripheral." + std::to_string(i), c_.extra_peripherals[i]);
  r.kv("model.name", mf_->name);
  std::istringstream desc(describe_model(*mf_->model));
  std::string line;
  while (std::getline(desc, line))
    if (!line.empty()) r.raw("model." + line);
  write_file("manifest.txt", r.text());
}

void Pipeline::stage_graph(Report& r) {
  const RipsGraph& rg = rips();

  Report cr;
  const Graph& cg = coned();
  cr.kv("vertices", static_cast<long long>(cg.size()));
  cr.kv("edges", cg.edge_count());
  for (auto [a, b] : cg.edges())
    cr.raw("e " + std::to_string(a) + " " + std::to_string(b));
  write_file("coned.txt", cr.text());

  Report orb;
  EdgeOrbitCensus census = count_edge_orbits(*u_, rg.graph);
  orb.kv("classes", census.class_count());
  orb.kv("canonical", bstr(census.canonical));
  for (const auto& [key, count] : census.classes)
    orb.kv("orbit." + key, count, !census.canonical);
  write_file("orbits.txt", orb.text());
  if (census.canonical)
    result_.summary["stable.orbit_classes"] = std::to_string(census.class_count());
  else
    result_.summary["scale.orbit_classes"] =
        std::to_string(census.class_count()) + kMarker;

  r.kv("n", static_cast<long long>(rg.n));
  r.kv("vertices", static_cast<long long>(rg.graph.size()));
  r.kv("edges", rg.graph.edge_count());
  r.kv("uncertified_edges", static_cast<long long>(rg.uncertified_edges.size()),
       !rg.uncertified_edges.empty());
  r.kv("uncertified_nonedges", rg.uncertified_nonedges,
       rg.uncertified_nonedges > 0);
  for (int v = 0; v < u_->vertex_count(); ++v)
    r.raw("v " + std::to_string(v) + " " + u_->vertex_label(v));
  for (auto [a, b] : rg.graph.edges())
    r.raw("e " + std::to_string(a) + " " + std::to_string(b));
  for (auto [a, b] : rg.uncertified_edges)
    r.raw("u " + std::to_string(a) + " " + std::to_string(b) + kMarker);
  result_.summary["scale.gamma_edges"] = std::to_string(rg.graph.edge_count());
}

void Pipeline::stage_complex(Report& r) {
  const SimplicialComplex& c = cplx();
  r.kv("d_max", static_cast<long long>(c_.d_max));
  r.kv("dim", static_cast<long long>(c.dim()));
  for (int d = 0; d <= c.dim(); ++d)
    r.kv("count." + std::to_string(d), static_cast<long long>(c.count(d)));
  for (int d = 0; d <= c.dim(); ++d)
    for (const Simplex& s : c.simplices(d)) {
      std::string line = "s";
      for (int v : s) line += " " + std::to_string(v);
      r.raw(line);
    }
  result_.summary["scale.complex_total"] = std::to_string(c.total());
}

void Pipeline::stage_estimate(Report& r) {
  SampleSpec spec{c_.samples == 0, c_.samples};
  r.kv("epsilon", static_cast<long long>(c_.epsilon));

  int R = c_.R;
  r.kv("R.directive", c_.estimate_R ? "estimate" : "pinned");
  if (c_.estimate_R) {
    REstimate re = estimate_R(*u_, *dist_, c_.epsilon, spec, c_.seed);
    R = re.R;
    r.kv("R.value", static_cast<long long>(re.R));
    r.kv("R.exhaustive", bstr(re.exhaustive));
    r.kv("R.geodesics", re.geodesics_scanned);
    r.kv("R.skipped", re.skipped, re.skipped > 0);
  } else {
    r.kv("R.value", static_cast<long long>(R));
  }
  result_.summary["stable.R_hat"] = std::to_string(R);

  r.kv("D.directive", c_.estimate_D ? "estimate" : "pinned");
  if (c_.estimate_D) {
    DEstimate de = estimate_D(*u_, *dist_, c_.epsilon, R, spec, c_.seed);
    r.kv("D.value", static_cast<long long>(de.D));
    r.kv("D.exhaustive", bstr(de.exhaustive));
    r.kv("D.measurements", de.measurements);
    r.kv("D.skipped", de.skipped, de.skipped > 0);
    for (const auto& [defect, count] : de.histogram)
      r.kv("D.histogram." + std::to_string(defect), count);
    result_.summary["stable.D_hat"] = std::to_string(de.D);
  } else {
    r.kv("D.value", static_cast<long long>(c_.D));
    result_.summary["stable.D_hat"] = std::to_string(c_.D);
  }
}

void Pipeline::stage_dismantle(Report& r) {
  const RipsGraph& rg = rips();
  bool view_truncated =
      !rg.uncertified_edges.empty() || rg.uncertified_nonedges > 0;

  DismantleResult res = is_dismantlable(rg.graph);
  r.kv("graph", "gamma_" + std::to_string(c_.n));
  r.kv("vertices", static_cast<long long>(rg.graph.size()));
  r.kv("dismantlable", bstr(res.dismantlable), view_truncated);
  r.kv("steps", static_cast<long long>(res.seq.steps.size()));
  for (std::size_t i = 0; i < res.seq.steps.size(); ++i) {
    const EliminationStep& s = res.seq.steps[i];
    r.raw("step " + std::to_string(i) + " vertex " +
          u_->vertex_label(s.removed_vertex) + " witness " +
          u_->vertex_label(s.witness));
  }
  r.kv("residual", join_labels(*u_, res.seq.residual_vertices, ' '));
  result_.summary["stable.dismantlable"] =
      bstr(res.dismantlable) + std::string(view_truncated ? kMarker : "");
}

void Pipeline::stage_fixed(Report& r) {
  std::vector<SubgroupReport> subs =
      enumerate_finite_subgroups(*u_, c_.max_subgroup_order);
  r.kv("max_order", static_cast<long long>(c_.max_subgroup_order));
  r.kv("subgroups", static_cast<long long>(subs.size()));

  long long cliques_found = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const SubgroupReport& s = subs[i];
    std::string p = "subgroup." + std::to_string(i);
    r.kv(p + ".order", static_cast<long long>(s.group.elements.size()));
    std::string gens;
    for (const Word& g : s.group.generators) {
      if (!gens.empty()) gens += ' ';
      gens += u_->model().word_str(g);
    }
    r.kv(p + ".generators", gens);
    r.kv(p + ".classification", s.classification);
    if (s.peripheral >= 0) {
      r.kv(p + ".peripheral", static_cast<long long>(s.peripheral));
      r.kv(p + ".conjugator", u_->model().word_str(s.conjugator));
    }
    r.kv(p + ".in_ball", bstr(s.in_ball));

    FixedCliqueResult fc = fixed_clique(*u_, rips().graph, s.group);
    if (fc.found) {
      ++cliques_found;
      r.kv(p + ".fixed_clique", join_labels(*u_, fc.clique, ' '));
      r.kv(p + ".fixed_clique_base", u_->vertex_label(fc.base));
    } else {
      r.kv(p + ".fixed_clique", "none", true);
    }

    try {
      std::vector<std::vector<int>> perms;
      for (const Word& g : s.group.generators)
        perms.push_back(left_action_permutation(*u_, g));
      SimplicialComplex fpc = fixed_point_complex(cplx(), perms);
      r.kv(p + ".fixed_point_complex.simplices",
           static_cast<long long>(fpc.total()));
      ContractibilityReport cr = contractibility_report(fpc, c_.seed);
      r.kv(p + ".fixed_point_complex.verdict", cr.verdict);
    } catch (const truncation_error&) {
      r.kv(p + ".fixed_point_complex", "not-representable", true);
    } catch (const input_error&) {
      r.kv(p + ".fixed_point_complex", "not-preserved", true);
    } catch (const resource_error& e) {
      r.kv(p + ".fixed_point_complex",
           std::string("complex-unavailable: ") + e.what());
    }
  }
  result_.summary["scale.subgroups"] = std::to_string(subs.size());
  result_.summary["stable.fixed_cliques_complete"] =
      bstr(cliques_found == static_cast<long long>(subs.size()));
}

bool Pipeline::neighborhood_complete(const std::vector<int>& seeds,
                                     int depth) {
  const Graph& g = coned();
  std::vector<int> dist(g.size(), -1);
  std::deque<int> queue;
  for (int s : seeds) {
    dist[s] = 0;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (dist[v] >= depth) continue;
    // v gets expanded: its true neighborhood must be fully present.
    if (u_->is_element_vertex(v)) {
      if (u_->layer(v) >= u_->radius()) return false;
    } else {
      int k = u_->coset_index(v);
      if (!u_->coset_members_known(k)) return false;
      if (u_->coset_all_members(k).size() != u_->coset_ball_members(k).size())
        return false;
    }
    for (int w = g.neighbors(v).next(0); w >= 0; w = g.neighbors(v).next(w + 1))
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        queue.push_back(w);
      }
  }
  return true;
}

void Pipeline::stage_fineness(Report& r) {
  if (c_.fineness_L < 3) {
    r.kv("L", static_cast<long long>(c_.fineness_L));
    r.raw("audited = 0 (circuits need length at least 3)");
    return;
  }
  const Graph& cg = coned();
  int half = c_.fineness_L / 2;
  r.kv("L", static_cast<long long>(c_.fineness_L));
  r.kv("budget", c_.budget);
  long long core_edges = 0;
  auto edges = cg.edges();
  r.kv("edges", static_cast<long long>(edges.size()));
  for (auto [a, b] : edges) {
    CircuitCount cc = fineness_audit(cg, a, b, c_.fineness_L, c_.budget);
    bool core = neighborhood_complete({a, b}, half);
    std::string key = u_->vertex_label(a) + "--" + u_->vertex_label(b);
    std::string value = std::to_string(cc.count) +
                        (cc.complete ? "" : " (budget exhausted)");
    r.kv("edge." + key, value, !core);
    if (core && cc.complete) {
      ++core_edges;
      result_.summary["stable.fineness." + key] = std::to_string(cc.count);
    }
  }
  r.kv("core_edges", core_edges);
  result_.summary["scale.fineness_edges"] = std::to_string(edges.size());
}

void Pipeline::stage_hulls(Report& r) {
  // Anchor pool: vertices whose defining words are short enough to exist in
  // any ball at least hull_core deep, in label order, so samples designate
  // the same sets across radii.
  std::vector<std::pair<std::string, int>> pool;
  for (int v = 0; v < u_->vertex_count(); ++v) {
    int len;
    if (u_->is_element_vertex(v)) {
      len = u_->layer(v);
    } else {
      len = static_cast<int>(u_->coset(u_->coset_index(v)).rep.size());
    }
    if (len <= c_.hull_core) pool.emplace_back(u_->vertex_label(v), v);
  }
  std::sort(pool.begin(), pool.end());

  r.kv("epsilon", static_cast<long long>(c_.epsilon));
  r.kv("hull_r", static_cast<long long>(c_.hull_r));
  r.kv("hull_core", static_cast<long long>(c_.hull_core));
  r.kv("candidates", static_cast<long long>(pool.size()));

  std::vector<std::vector<int>> sets;  // indices into pool, ascending
  if (c_.samples == 0) {
    for (std::size_t i = 0; i < pool.size(); ++i)
      for (std::size_t j = i + 1; j < pool.size(); ++j)
        sets.push_back({static_cast<int>(i), static_cast<int>(j)});
    r.kv("mode", "exhaustive-pairs");
  } else {
    Rng rng = Rng(c_.seed).substream("hulls");
    for (long long s = 0; s < c_.samples; ++s) {
      int size = 2 + rng.below(3);
      std::set<int> picks;
      while (static_cast<int>(picks.size()) < size)
        picks.insert(rng.below(static_cast<int>(pool.size())));
      sets.emplace_back(picks.begin(), picks.end());
    }
    r.kv("mode", "sampled");
    r.kv("samples", c_.samples);
  }

  long long certified = 0;
  for (const auto& set : sets) {
    std::vector<int> U;
    std::string key;
    for (int idx : set) {
      U.push_back(pool[idx].second);
      if (!key.empty()) key += '+';
      key += pool[idx].first;
    }
    HullResult h = r_hull(*u_, *dist_, U, c_.hull_r, c_.epsilon);
    bool exact = h.uncertain.empty();
    r.kv("hull." + key,
         "size " + std::to_string(h.members.size()) + ", uncertain " +
             std::to_string(h.uncertain.size()),
         !exact);
    if (exact) {
      ++certified;
      result_.summary["stable.hull." + key] = std::to_string(h.members.size());
    }
  }
  r.kv("certified", certified);
  result_.summary["scale.hulls_examined"] = std::to_string(sets.size());
}

void Pipeline::stage_delta(Report& r) {
  DeltaEstimate de = delta_hyperbolicity(rips().graph, c_.samples, c_.seed);
  r.kv("graph", "gamma_" + std::to_string(c_.n));
  r.kv("delta", fixed1(de.delta));
  r.kv("quadruples", de.quadruples);
  r.kv("exhaustive", bstr(de.exhaustive));
  result_.summary["scale.delta"] = fixed1(de.delta);
}

PipelineResult Pipeline::run() {
  validate(c_);
  result_.dir = c_.output_dir;
  std::filesystem::create_directories(result_.dir);

  mf_ = load_model_file(c_.model_path);
  for (const std::string& p : c_.extra_peripherals)
    attach_peripheral(*mf_->model, p);
  write_manifest();

  u_.emplace(*mf_->model, c_.radius);
  dist_.emplace(*u_);
  result_.summary["model"] = mf_->name;
  result_.summary["n"] = std::to_string(c_.n);
  result_.summary["radius"] = std::to_string(c_.radius);
  result_.summary["epsilon"] = std::to_string(c_.epsilon);
  result_.summary["seed"] = c_.has_seed ? std::to_string(c_.seed) : "none";
  result_.summary["scale.ball"] = std::to_string(u_->ball_size());
  result_.summary["scale.cosets"] = std::to_string(u_->coset_count());
  result_.summary["scale.vertices"] = std::to_string(u_->vertex_count());

  run_stage("graph", "graph.txt", &Pipeline::stage_graph);
  run_stage("complex", "complex.txt", &Pipeline::stage_complex);
  run_stage("estimate", "estimation.txt", &Pipeline::stage_estimate);
  run_stage("dismantle", "dismantle.txt", &Pipeline::stage_dismantle);
  run_stage("fixed", "fixed_points.txt", &Pipeline::stage_fixed);
  run_stage("fineness", "fineness.txt", &Pipeline::stage_fineness);
  run_stage("hulls", "hulls.txt", &Pipeline::stage_hulls);
  run_stage("delta", "delta.txt", &Pipeline::stage_delta);

  result_.exit_code = truncation_hit_ ? 3 : resource_hit_ ? 2 : 0;

  Report sum;
  for (const auto& [k, v] : result_.summary) sum.kv(k, v);
  write_file("summary.txt", sum.text());
  return result_;
}

std::map<std::string, std::string> read_summary(const std::string& dir) {
  std::filesystem::path p = std::filesystem::path(dir) / "summary.txt";
  std::ifstream in(p);
  if (!in)
    throw input_error("no summary.txt in '" + dir + "' (not a report bundle?)");
  std::map<std::string, std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t eq = line.find(" = ");
    if (eq == std::string::npos) continue;
    out[line.substr(0, eq)] = line.substr(eq + 3);
  }
  return out;
}

}  // namespace

PipelineResult run_pipeline(const RunConfig& config) {
  return Pipeline(config).run();
}

bool ReportDiff::stable_under(const std::string& prefix) const {
  for (const DiffEntry& e : changed)
    if (e.key.rfind(prefix, 0) == 0) return false;
  return true;
}

ReportDiff diff_reports(const std::string& dir_a, const std::string& dir_b) {
  auto a = read_summary(dir_a);
  auto b = read_summary(dir_b);
  for (const char* key : {"model", "n"}) {
    auto ia = a.find(key), ib = b.find(key);
    std::string va = ia == a.end() ? "<missing>" : ia->second;
    std::string vb = ib == b.end() ? "<missing>" : ib->second;
    if (va != vb)
      throw input_error(std::string("bundles disagree on ") + key + " (" + va +
                        " vs " + vb + ")");
  }

  ReportDiff diff;
  for (const auto& [k, v] : a) {
    if (k.rfind("stable.", 0) != 0) continue;
    auto it = b.find(k);
    if (it == b.end())
      diff.only_a.push_back(k);
    else if (it->second != v)
      diff.changed.push_back({k, v, it->second});
  }
  for (const auto& [k, v] : b) {
    if (k.rfind("stable.", 0) != 0) continue;
    if (!a.count(k)) diff.only_b.push_back(k);
  }
  return diff;
}

}  // namespace grips
