#include "commands.hpp"

#include <map>
#include <random>

#include "arrowlab/arrow.hpp"
#include "arrowlab/dot.hpp"

namespace arrowlab::cli {

namespace {

SolveOptions solve_options(const Options& o) { return {o.budget, o.workers}; }

json opt_budget(const Options& o) { return o.budget == kNoBudget ? json(nullptr) : json(o.budget); }

json base_params(const Options& o) { return {{"budget", opt_budget(o)}, {"seed", o.seed}}; }

GraphInput need_graph(const std::string& arg, const char* flag) {
  if (arg.empty()) throw Error(std::string("missing ") + flag);
  return load_graph(arg);
}

json witness_json(const std::optional<EdgeColouring>& c) { return c ? colouring_json(*c) : json(nullptr); }

bool witness_valid(const Graph& host, const Graph& target, std::size_t q, const std::optional<EdgeColouring>& c) {
  return c && !check_colouring(host, ColourConstraintSet::uniform(host, target, q), *c);
}

const char* violation_kind(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::Size: return "size";
    case Violation::Kind::Unassigned: return "unassigned";
    case Violation::Kind::ColourRange: return "colour-range";
    case Violation::Kind::Pin: return "pin";
    case Violation::Kind::Link: return "link";
    case Violation::Kind::MonochromaticCopy: return "monochromatic-copy";
  }
  return "unknown";
}

Polarity parse_polarity(const std::string& s) {
  if (s == "positive") return Polarity::Positive;
  if (s == "negative") return Polarity::Negative;
  throw Error("polarity must be positive or negative");
}

json check_json(const GadgetCheck& c) {
  return {{"verdict", to_string(c.verdict)}, {"property", c.property}, {"problems", c.problems},
          {"witness", witness_json(c.witness)}};
}

// Provider choice plus the hash of the corpus it reads.
struct ProviderChoice {
  std::string kind;
  std::vector<SenderSpec> corpus;
  json input;
};

ProviderChoice choose_provider(const Options& o) {
  ProviderChoice p{o.provider, {}, nullptr};
  if (o.provider == "mock") return p;
  if (o.provider != "corpus") throw Error("provider must be corpus or mock");
  if (o.corpus.empty()) {
    p.corpus = builtin_k3_senders();
    p.input = "builtin";
  } else {
    const std::string text = read_file(o.corpus);
    const json j = json::parse(text);
    const json& list = j.contains("senders") ? j.at("senders") : j.at("output").at("senders");
    for (const auto& s : list) p.corpus.push_back(sender_from_json(s));
    p.input = {{"sha256", sha256_hex(list.dump())}};
  }
  return p;
}

std::unique_ptr<SenderProvider> make_provider(const ProviderChoice& p) {
  if (p.kind == "mock") return std::make_unique<MockSenderProvider>();
  return std::make_unique<CorpusSenderProvider>(p.corpus);
}

void add_provider(Job& job, const ProviderChoice& p) {
  job.params["provider"] = p.kind;
  if (p.kind == "corpus") job.inputs["corpus"] = p.input;
}

std::vector<Vertex> to_vertices(const std::vector<std::size_t>& xs) {
  return {xs.begin(), xs.end()};
}

// --- commands ----------------------------------------------------------------

Job arrow_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  auto target = need_graph(o.target, "--target");
  Job job{"arrow", {{"host", input_json(host)}, {"target", input_json(target)}}, base_params(o), {}};
  job.params["q"] = o.q;
  job.compute = [=] {
    auto cert = arrow(host.graph, target.graph, o.q, solve_options(o));
    Result r;
    r.output = {{"verdict", verdict_name(cert.verdict)}, {"witness", witness_json(cert.witness)},
                {"witness_validated", witness_valid(host.graph, target.graph, o.q, cert.witness)}};
    r.stats = stats_json(cert.stats);
    return r;
  };
  return job;
}

Job minimal_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  auto target = need_graph(o.target, "--target");
  Job job{"minimal", {{"host", input_json(host)}, {"target", input_json(target)}}, base_params(o), {}};
  job.params["q"] = o.q;
  job.compute = [=] {
    auto rep = is_minimal(host.graph, target.graph, o.q, solve_options(o));
    SearchStats total = rep.host.stats;
    json dels = json::array();
    for (const auto& d : rep.deletions) {
      const Graph smaller = host.graph.without_edge(d.edge);
      dels.push_back({{"edge", d.edge},
                      {"endpoints", {d.endpoints.u, d.endpoints.v}},
                      {"verdict", verdict_name(d.certificate.verdict)},
                      {"witness", witness_json(d.certificate.witness)},
                      {"witness_validated", witness_valid(smaller, target.graph, o.q, d.certificate.witness)}});
      total.nodes += d.certificate.stats.nodes;
      total.propagations += d.certificate.stats.propagations;
      total.subproblems += d.certificate.stats.subproblems;
    }
    Result r;
    r.output = {{"minimal", rep.minimal}, {"host_verdict", verdict_name(rep.host.verdict)}, {"deletions", dels}};
    r.stats = stats_json(total);
    return r;
  };
  return job;
}

Job shrink_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  auto target = need_graph(o.target, "--target");
  Job job{"shrink", {{"host", input_json(host)}, {"target", input_json(target)}}, base_params(o), {}};
  job.params["q"] = o.q;
  job.compute = [=] {
    const Graph g = shrink_to_minimal(host.graph, target.graph, o.q, solve_options(o));
    Result r;
    r.output = {{"graph", graph_json(g)}, {"removed", host.graph.m() - g.m()}};
    return r;
  };
  return job;
}

Job ramsey_job(const Options& o) {
  const auto sizes = parse_list(o.sizes);
  if (sizes.empty()) throw Error("missing --sizes");
  Job job{"ramsey", json::object(), base_params(o), {}};
  job.params["sizes"] = sizes;
  job.params["max"] = o.n_max;
  job.compute = [=] {
    auto res = ramsey_number(sizes, o.n_max, solve_options(o));
    SearchStats total;
    json steps = json::array();
    for (const auto& s : res.steps) {
      steps.push_back({{"n", s.n}, {"verdict", verdict_name(s.verdict)}, {"stats", stats_json(s.stats)}});
      total.nodes += s.stats.nodes;
      total.propagations += s.stats.propagations;
      total.subproblems += s.stats.subproblems;
    }
    bool lower_ok = false;
    if (res.value && res.lower_witness) {
      const Graph kn = complete_graph(*res.value - 1);
      std::vector<Graph> targets;
      for (auto s : sizes) targets.push_back(complete_graph(s));
      lower_ok = !check_colouring(kn, ColourConstraintSet::per_colour(kn, targets), *res.lower_witness);
    }
    Result r;
    r.output = {{"value", res.value ? json(*res.value) : json(nullptr)},
                {"lower_witness", witness_json(res.lower_witness)},
                {"lower_witness_validated", lower_ok},
                {"steps", steps},
                {"unresolved", res.unresolved_reason}};
    r.stats = stats_json(total);
    return r;
  };
  return job;
}

Job sender_verify_job(const Options& o) {
  auto g = need_graph(o.graph, "--graph");
  auto h = need_graph(o.target, "--target");
  Job job{"sender verify", {{"graph", input_json(g)}, {"target", input_json(h)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"d", o.d}, {"e", o.e}, {"f", o.f_edge}, {"polarity", o.polarity}});
  job.compute = [=] {
    SenderSpec s;
    s.graph = g.graph;
    s.e = o.e;
    s.f = o.f_edge;
    if (s.e >= s.graph.m() || s.f >= s.graph.m()) throw Error("signal edge id out of range");
    s.polarity = parse_polarity(o.polarity);
    s.params = {o.q, h.graph, o.d};
    s.provenance = Provenance::Loaded;
    auto c = verify_sender(s, solve_options(o));
    Result r;
    r.output = check_json(c);
    r.stats = stats_json(c.stats);
    return r;
  };
  return job;
}

Job sender_search_job(const Options& o) {
  auto h = need_graph(o.target, "--target");
  Job job{"sender search", {{"target", input_json(h)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"d", o.d}, {"polarity", o.polarity}, {"max_vertices", o.max_vertices}});
  job.compute = [=] {
    auto s = search_sender(o.q, h.graph, o.d, parse_polarity(o.polarity), all_graphs_stream(o.max_vertices),
                           solve_options(o));
    Result r;
    r.output = {{"sender", s ? sender_json(*s) : json(nullptr)}};
    return r;
  };
  return job;
}

Job sender_builtin_job(const Options& o) {
  Job job{"sender builtin", json::object(), base_params(o), {}};
  job.compute = [] {
    json list = json::array();
    for (const auto& s : builtin_k3_senders()) list.push_back(sender_json(s));
    Result r;
    r.output = {{"senders", list}};
    return r;
  };
  return job;
}

Job indicator_job(const Options& o) {
  auto h = need_graph(o.target, "--target");
  auto f = need_graph(o.f, "--f");
  auto prov = choose_provider(o);
  Job job{"indicator", {{"target", input_json(h)}, {"f", input_json(f)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"d", o.d}, {"matching", o.matching}, {"verify", o.verify}});
  add_provider(job, prov);
  job.compute = [=] {
    auto provider = make_provider(prov);
    IndicatorSpec ind = o.matching ? build_matching_indicator(h.graph, o.q, o.d, *provider)
                                   : build_indicator(h.graph, f.graph, o.q, o.d, *provider);
    Result r;
    r.output = {{"graph", graph_json(ind.graph)}, {"f_image", ind.f_image}, {"f_edges", ind.f_edges},
                {"e", ind.e}, {"d", ind.params.d}, {"matching", ind.matching}, {"concrete", ind.concrete},
                {"parts", parts_json(ind.parts)}, {"structure_problems", indicator_structure_problems(ind)}};
    json labels = json::array();
    labels.push_back({{"edge", ind.e}, {"label", "e"}});
    for (std::size_t i = 0; i < ind.f_edges.size(); ++i)
      labels.push_back({{"edge", ind.f_edges[i]}, {"label", "F" + std::to_string(i)}});
    r.output["labels"] = labels;
    if (o.verify) {
      auto c = verify_indicator(ind, solve_options(o));
      r.output["verification"] = check_json(c);
      r.stats = stats_json(c.stats);
    }
    return r;
  };
  return job;
}

Job dennis_job(const Options& o) {
  auto h = need_graph(o.target, "--target");
  auto hp = need_graph(o.other, "--other");
  auto prov = choose_provider(o);
  Job job{"construct dennis", {{"target", input_json(h)}, {"other", input_json(hp)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"check", o.check}});
  add_provider(job, prov);
  job.compute = [=] {
    auto provider = make_provider(prov);
    auto res = build_dennis_distinguisher(h.graph, hp.graph, o.q, *provider);
    Result r;
    r.output = {{"graph", graph_json(res.graph)}, {"h_image", res.h_image}, {"e", res.e},
                {"parts", parts_json(res.parts)}, {"concrete", res.concrete},
                {"labels", json::array({{{"edge", res.e}, {"label", "e"}}})}};
    if (o.check) {
      auto a = arrow(res.graph, h.graph, o.q, solve_options(o));
      auto b = arrow(res.graph, hp.graph, o.q, solve_options(o));
      r.output["arrows_target"] = verdict_name(a.verdict);
      r.output["arrows_other"] = verdict_name(b.verdict);
      SearchStats s = a.stats;
      s.nodes += b.stats.nodes;
      s.propagations += b.stats.propagations;
      s.subproblems += b.stats.subproblems;
      r.stats = stats_json(s);
    }
    return r;
  };
  return job;
}

Job thm12_job(const Options& o) {
  auto h = need_graph(o.target, "--target");
  auto f = need_graph(o.f, "--f");
  auto prov = choose_provider(o);
  Job job{"construct thm12", {{"target", input_json(h)}, {"f", input_json(f)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"criticality", !o.no_criticality}});
  std::optional<EdgeColouring> given;
  if (!o.colouring.empty()) {
    given = load_colouring(o.colouring, o.q, f.graph.m());
    job.params["colouring"] = colouring_json(*given);
  }
  add_provider(job, prov);
  job.compute = [=] {
    auto free = given ? given : spread_free_colouring(f.graph, h.graph, o.q, solve_options(o));
    if (!free) throw Error("F has no H-free colouring in q colours");
    auto provider = make_provider(prov);
    auto res = build_theorem12_graph(h.graph, f.graph, o.q, *free, *provider, !o.no_criticality, solve_options(o));
    json crit = json::array();
    for (const auto& c : res.criticality)
      crit.push_back({{"f", c.f}, {"complete", c.complete}, {"validated", c.validated},
                      {"colouring", colouring_json(c.colouring)}});
    json labels = json::array();
    auto label = [&](const std::vector<EdgeId>& ids, const char* tag) {
      for (std::size_t i = 0; i < ids.size(); ++i)
        labels.push_back({{"edge", ids[i]}, {"label", tag + std::to_string(i + 1)}});
    };
    label(res.r, "r");
    label(res.e, "e");
    label(res.f, "f");
    Result r;
    r.output = {{"graph", graph_json(res.graph)}, {"f_image", res.f_image}, {"f_edges", res.f_edges},
                {"r", res.r}, {"e", res.e}, {"f", res.f}, {"d", res.d}, {"concrete", res.concrete},
                {"free_colouring", colouring_json(*free)}, {"parts", parts_json(res.parts)},
                {"criticality", crit}, {"labels", labels}};
    return r;
  };
  return job;
}

Job grow_job(const Options& o) {
  auto h = need_graph(o.target, "--target");
  auto f0 = need_graph(o.f0, "--f0");
  auto prov = choose_provider(o);
  Job job{"construct grow", {{"target", input_json(h)}, {"f0", input_json(f0)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"iterations", o.iterations}});
  add_provider(job, prov);
  job.compute = [=] {
    auto provider = make_provider(prov);
    auto res = grow_minimal_sequence(h.graph, o.q, f0.graph, o.iterations, *provider, solve_options(o));
    json steps = json::array();
    for (const auto& s : res.steps)
      steps.push_back({{"construction", graph_json(s.construction)}, {"minimal", graph_json(s.minimal)},
                       {"copies_of_f", s.copies_of_f}});
    Result r;
    r.output = {{"steps", steps}, {"stopped", res.stopped}};
    if (!res.steps.empty()) r.output["graph"] = graph_json(res.steps.back().minimal);
    return r;
  };
  return job;
}

InnerWitnessProvider inner_provider(const std::string& kind, const SolveOptions& so) {
  if (kind == "library") return library_inner_provider();
  if (kind == "solver") return solver_inner_provider(so);
  if (kind == "default") return default_inner_provider(so);
  throw Error("inner provider must be library, solver or default");
}

Job recolour_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  if (o.colouring.empty()) throw Error("missing --colouring");
  const auto c = load_colouring(o.colouring, o.q, host.graph.m());
  const CliqueSumFamily fam(parse_list(o.fam));
  Job job{"equiv recolour", {{"host", input_json(host)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"fam", fam.a}, {"inner", o.inner}, {"colouring", colouring_json(c)}});
  job.compute = [=] {
    auto t = recolour_theorem41(host.graph, c, fam, inner_provider(o.inner, solve_options(o)));
    json sel = json::array();
    for (const auto& s : t.selected)
      sel.push_back({{"colour", s.colour}, {"index", s.index}, {"vertices", s.vertices}});
    Result r;
    r.output = {{"selected", sel}, {"inner", t.inner}, {"bound", t.bound}, {"inner_sizes", t.inner_sizes},
                {"witness_source", t.witness.source}, {"colouring", colouring_json(t.output)}};
    return r;
  };
  return job;
}

Job focus_job(const Options& o) {
  std::vector<Vertex> a, b;
  std::vector<std::vector<Colour>> colours;
  std::size_t q = o.q;
  Job job{"equiv focus", json::object(), base_params(o), {}};
  if (!o.input_file.empty()) {
    const std::string text = read_file(o.input_file);
    const json j = json::parse(text);
    a = j.at("a").get<std::vector<Vertex>>();
    b = j.at("b").get<std::vector<Vertex>>();
    q = j.at("q").get<std::size_t>();
    for (const auto& row : j.at("colours")) {
      std::vector<Colour> cs;
      for (const auto& x : row) cs.push_back(static_cast<Colour>(x.get<int>()));
      colours.push_back(std::move(cs));
    }
    job.inputs["instance"] = {{"sha256", sha256_hex(j.dump())}};
  } else {
    const auto sizes = parse_list(o.random_spec);
    if (sizes.size() != 2) throw Error("focus needs --input or --random A,B");
    std::mt19937_64 rng(o.seed);
    for (std::size_t i = 0; i < sizes[0]; ++i) a.push_back(static_cast<Vertex>(i));
    for (std::size_t j = 0; j < sizes[1]; ++j) b.push_back(static_cast<Vertex>(sizes[0] + j));
    colours.assign(a.size(), std::vector<Colour>(b.size()));
    for (auto& row : colours)
      for (auto& x : row) x = static_cast<Colour>(1 + rng() % q);
    job.params["random"] = sizes;
  }
  job.params["q"] = q;
  job.compute = [=] {
    auto res = focus(a, b, colours, q);
    double bound = static_cast<double>(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) bound /= static_cast<double>(q);
    json cols = json::array();
    for (Colour c : res.colour_of_a) cols.push_back(static_cast<int>(c));
    Result r;
    r.output = {{"subset", res.subset}, {"colour_of_a", cols},
                {"size_bound_met", static_cast<double>(res.subset.size()) >= bound}};
    return r;
  };
  return job;
}

Job thm43_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  Job job{"equiv thm43", {{"host", input_json(host)}}, base_params(o), {}};
  job.compute = [=] {
    auto c = check_theorem43_predicate(host.graph, solve_options(o));
    Result r;
    r.output = {{"arrows_k3", c.arrows_k3}, {"arrows_k3_k2", c.arrows_k3_k2}, {"contains_k6", c.contains_k6},
                {"consistent", c.consistent}};
    r.stats = stats_json(c.stats);
    return r;
  };
  return job;
}

Job thm17_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  const auto s = to_vertices(parse_list(o.s_list));
  Job job{"equiv thm17", {{"host", input_json(host)}}, base_params(o), {}};
  job.params.update({{"s", s}, {"apex", o.apex}});
  job.compute = [=] {
    auto res = theorem17_colouring(host.graph, s, static_cast<Vertex>(o.apex));
    Result r;
    r.output = {{"colouring", colouring_json(res.colouring)},
                {"mono_triangle", res.mono_triangle ? json(*res.mono_triangle) : json(nullptr)},
                {"outside_triangle", res.outside_triangle}};
    return r;
  };
  return job;
}

Job tower_job(const Options& o) {
  auto gq = need_graph(o.gq, "--gq");
  if (o.pattern_file.empty()) throw Error("missing --pattern");
  const json pj = json::parse(read_file(o.pattern_file));
  const ColourPattern pattern = pattern_from_json(pj.contains("members") ? pj : pj.at("output").at("pattern"));
  auto prov = choose_provider(o);
  Job job{"equiv tower", {{"gq", input_json(gq)}, {"pattern", {{"sha256", sha256_hex(pattern_json(pattern).dump())}}}},
          base_params(o), {}};
  job.params.update({{"q", o.q}, {"k", o.k}, {"r", o.r_override ? json(o.r_override) : json(nullptr)}});
  std::optional<EdgeColouring> gqc;
  if (!o.colouring.empty()) {
    gqc = load_colouring(o.colouring, o.q, gq.graph.m());
    job.params["gq_colouring"] = colouring_json(*gqc);
  }
  add_provider(job, prov);
  job.compute = [=] {
    auto provider = make_provider(prov);
    TowerOptions to;
    if (o.r_override) to.r_override = o.r_override;
    to.gq_colouring = gqc;
    to.solve = solve_options(o);
    auto t = build_nonequiv_tower(gq.graph, o.k, o.q, pattern, *provider, to);
    json labels = json::array();
    for (std::size_t i = 0; i < t.matching.size(); ++i)
      labels.push_back({{"edge", t.matching[i]}, {"label", "e" + std::to_string(i + 1)}});
    Result r;
    r.output = {{"graph", graph_json(t.graph)}, {"levels", t.levels}, {"matching", t.matching},
                {"parts", parts_json(t.parts)}, {"r_formula", t.r_formula}, {"r_used", t.r_used},
                {"pattern_certified", t.pattern_certified}, {"structural_only", t.structural_only},
                {"concrete", t.concrete}, {"problems", t.problems}, {"colouring", witness_json(t.colouring)},
                {"colouring_validated", t.colouring_validated}, {"labels", labels}};
    return r;
  };
  return job;
}

Job split_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  auto target = need_graph(o.target, "--target");
  if (o.colouring.empty()) throw Error("missing --colouring");
  const auto c = load_colouring(o.colouring, o.q + o.extra, host.graph.m());
  Job job{"equiv split", {{"host", input_json(host)}, {"target", input_json(target)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"n", o.extra}, {"check_host", o.check_host}, {"colouring", colouring_json(c)}});
  job.compute = [=] {
    auto rep = split_lift_check(host.graph, c, target.graph, o.q, o.extra, o.check_host, solve_options(o));
    auto opt = [](const std::optional<bool>& b) { return b ? json(*b) : json(nullptr); };
    Result r;
    r.output = {{"first", graph_json(rep.first)}, {"second", graph_json(rep.second)},
                {"first_arrows", opt(rep.first_arrows)}, {"second_arrows", opt(rep.second_arrows)},
                {"host_arrows", opt(rep.host_arrows)}, {"lifted", witness_json(rep.lifted)},
                {"consistent", rep.consistent}};
    return r;
  };
  return job;
}

json criticality_json(const CriticalityReport& c) {
  return {{"critical", c.critical}, {"threshold", c.threshold}, {"max_free", c.max_free},
          {"clique", c.clique ? json(*c.clique) : json(nullptr)},
          {"free_set", c.free_set ? json(*c.free_set) : json(nullptr)}};
}

Job pattern_gen_job(const Options& o) {
  Job job{"pattern gen", json::object(), base_params(o), {}};
  job.params.update({{"r", o.r}, {"k", o.k}, {"n", o.n}, {"trials", o.trials}});
  job.compute = [=] {
    auto res = random_critical_pattern(o.r, o.k, o.n, o.trials, o.seed, o.workers ? o.workers : default_workers());
    Result r;
    r.output = {{"pattern", res.pattern ? pattern_json(*res.pattern) : json(nullptr)},
                {"trial", res.trial ? json(*res.trial) : json(nullptr)},
                {"trials_run", res.trials_run}, {"warnings", res.warnings}};
    return r;
  };
  return job;
}

Job pattern_check_job(const Options& o) {
  if (o.pattern_file.empty()) throw Error("missing --pattern");
  const json pj = json::parse(read_file(o.pattern_file));
  const ColourPattern pattern = pattern_from_json(pj.contains("members") ? pj : pj.at("output").at("pattern"));
  Job job{"pattern check", {{"pattern", {{"sha256", sha256_hex(pattern_json(pattern).dump())}}}}, base_params(o), {}};
  job.compute = [=] {
    auto rep = check_pattern(pattern);
    json members = json::array();
    for (const auto& m : rep.members) members.push_back(criticality_json(m));
    Result r;
    r.output = {{"edge_disjoint", rep.edge_disjoint}, {"certified", rep.certified}, {"members", members},
                {"problems", rep.problems}};
    return r;
  };
  return job;
}

Job colouring_classical_job(const Options& o) {
  if (o.name.empty()) throw Error("missing --name");
  Job job{"colouring classical", json::object(), base_params(o), {}};
  job.params.update({{"name", o.name}, {"n", o.n}});
  job.compute = [=] {
    const auto c = classical_colouring(o.name, o.n);
    Result r;
    r.output = {{"graph", graph_json(complete_graph(o.n))}, {"q", c.q()}, {"colouring", colouring_json(c)},
                {"triangle_free", true}};
    return r;
  };
  return job;
}

Job colouring_check_job(const Options& o) {
  auto host = need_graph(o.host, "--host");
  auto target = need_graph(o.target, "--target");
  if (o.colouring.empty()) throw Error("missing --colouring");
  const auto c = load_colouring(o.colouring, o.q, host.graph.m());
  Job job{"colouring check", {{"host", input_json(host)}, {"target", input_json(target)}}, base_params(o), {}};
  job.params.update({{"q", o.q}, {"colouring", colouring_json(c)}});
  job.compute = [=] {
    auto v = check_colouring(host.graph, ColourConstraintSet::uniform(host.graph, target.graph, o.q), c);
    Result r;
    r.output = {{"valid", !v}, {"colouring", colouring_json(c)}};
    r.output["violation"] = v ? json{{"kind", violation_kind(v->kind)}, {"detail", v->detail}} : json(nullptr);
    return r;
  };
  return job;
}

}  // namespace

Job make_job(const std::string& command, const Options& o) {
  static const std::map<std::string, Job (*)(const Options&)> table = {
      {"arrow", arrow_job},
      {"minimal", minimal_job},
      {"shrink", shrink_job},
      {"ramsey", ramsey_job},
      {"sender verify", sender_verify_job},
      {"sender search", sender_search_job},
      {"sender builtin", sender_builtin_job},
      {"indicator", indicator_job},
      {"construct dennis", dennis_job},
      {"construct thm12", thm12_job},
      {"construct grow", grow_job},
      {"equiv recolour", recolour_job},
      {"equiv focus", focus_job},
      {"equiv thm43", thm43_job},
      {"equiv thm17", thm17_job},
      {"equiv tower", tower_job},
      {"equiv split", split_job},
      {"pattern gen", pattern_gen_job},
      {"pattern check", pattern_check_job},
      {"colouring classical", colouring_classical_job},
      {"colouring check", colouring_check_job},
  };
  const auto it = table.find(command);
  if (it == table.end()) throw Error("unknown command '" + command + "'");
  return it->second(o);
}

std::string record_to_dot(const json& record) {
  const json& out = record.contains("output") ? record.at("output") : json::object();
  const json& in = record.contains("inputs") ? record.at("inputs") : json::object();
  std::string g6;
  if (out.contains("graph") && out.at("graph").is_object()) g6 = out.at("graph").at("graph6").get<std::string>();
  else if (in.contains("host")) g6 = in.at("host").at("graph6").get<std::string>();
  else if (in.contains("graph")) g6 = in.at("graph").at("graph6").get<std::string>();
  else throw Error("record carries no graph");
  const Graph g = from_graph6(g6);

  DotAnnotations notes;
  notes.name = record.value("command", std::string("G"));
  for (char& ch : notes.name)
    if (ch == ' ') ch = '_';
  for (const char* key : {"colouring", "witness"}) {
    if (!out.contains(key) || !out.at(key).is_array() || out.at(key).size() != g.m()) continue;
    std::vector<Colour> cs;
    std::size_t q = 0;
    for (const auto& x : out.at(key)) {
      cs.push_back(static_cast<Colour>(x.get<int>()));
      q = std::max<std::size_t>(q, cs.back());
    }
    EdgeColouring c(std::max<std::size_t>(q, 1), g.m());
    for (EdgeId e = 0; e < cs.size(); ++e)
      if (cs[e]) c.set(e, cs[e]);
    notes.colouring = c;
    break;
  }
  if (out.contains("parts")) notes.parts = parts_from_json(out.at("parts"));
  if (out.contains("labels"))
    for (const auto& l : out.at("labels")) notes.edge_labels.emplace_back(l.at("edge").get<EdgeId>(), l.at("label").get<std::string>());
  return export_dot(g, notes);
}

}  // namespace arrowlab::cli
