#include "cli.hpp"

#include <random>

#include "CLI11.hpp"
#include "commands.hpp"

namespace arrowlab::cli {

namespace {

constexpr double kAuditRate = 0.05;

json error_record(const std::string& command, const std::string& message) {
  return {{"command", command}, {"tool_version", kToolVersion}, {"error", message}};
}

json full_record(const Job& job, const Result& r) {
  return {{"command", job.command}, {"tool_version", kToolVersion}, {"inputs", job.inputs},
          {"params", job.params}, {"output", r.output}, {"stats", r.stats}};
}

Result execute(const Job& job) {
  try {
    return job.compute();
  } catch (const BudgetExceeded& e) {
    Result r;
    r.output = {{"status", "budget-exceeded"}};
    r.stats = stats_json(e.stats());
    r.exit_code = 2;
    return r;
  }
}

void emit(std::ostream& out, const json& record, const std::string& format) {
  if (format == "dot" && record.contains("output")) out << record_to_dot(record);
  else out << record.dump(2) << "\n";
}

void add_graph_flags(CLI::App* sub, Options& o, bool target = true) {
  sub->add_option("--host", o.host, "host graph: file, name or graph6");
  if (target) sub->add_option("--target", o.target, "target graph");
  sub->add_option("-q,--colours", o.q, "number of colours");
}

void add_provider_flags(CLI::App* sub, Options& o) {
  sub->add_option("--provider", o.provider, "sender provider: corpus or mock")->check(CLI::IsMember({"corpus", "mock"}));
  sub->add_option("--corpus", o.corpus, "sender corpus JSON (default: built-in K3 senders)");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"arrowlab: Ramsey arrow experiments"};
  app.name("arrowlab");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--budget", o.budget, "search node budget");
  app.add_option("--workers", o.workers, "worker threads")->envname("ARROWLAB_WORKERS");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--cache-dir", o.cache_dir, "record cache directory");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "dot"}));
  app.add_flag("--audit", o.audit, "recompute cache hits and compare");

  std::vector<std::pair<CLI::App*, std::string>> leaves;
  auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& desc, const std::string& path) {
    CLI::App* s = parent->add_subcommand(name, desc);
    leaves.emplace_back(s, path);
    return s;
  };

  auto* arrow = leaf(&app, "arrow", "decide host -> (target)_q", "arrow");
  add_graph_flags(arrow, o);
  auto* minimal = leaf(&app, "minimal", "check Ramsey minimality", "minimal");
  add_graph_flags(minimal, o);
  auto* shrink = leaf(&app, "shrink", "delete edges while the host still arrows", "shrink");
  add_graph_flags(shrink, o);
  auto* ramsey = leaf(&app, "ramsey", "clique Ramsey number by scanning n", "ramsey");
  ramsey->add_option("--sizes", o.sizes, "clique sizes, e.g. 3,4")->required();
  ramsey->add_option("--max", o.n_max, "largest n to try");

  auto* sender = app.add_subcommand("sender", "signal senders");
  sender->require_subcommand(1);
  auto* sverify = leaf(sender, "verify", "check (S1)-(S3) for a sender", "sender verify");
  sverify->add_option("--graph", o.graph, "sender graph")->required();
  sverify->add_option("--target", o.target, "H")->required();
  sverify->add_option("-e", o.e, "first signal edge id");
  sverify->add_option("-f", o.f_edge, "second signal edge id");
  sverify->add_option("-q,--colours", o.q);
  sverify->add_option("-d,--distance", o.d);
  sverify->add_option("--polarity", o.polarity);
  auto* ssearch = leaf(sender, "search", "search small graphs for a sender", "sender search");
  ssearch->add_option("--target", o.target, "H")->required();
  ssearch->add_option("-q,--colours", o.q);
  ssearch->add_option("-d,--distance", o.d);
  ssearch->add_option("--polarity", o.polarity);
  ssearch->add_option("--max-vertices", o.max_vertices);
  leaf(sender, "builtin", "list the built-in K3 senders", "sender builtin");

  auto* indicator = leaf(&app, "indicator", "build an F-indicator", "indicator");
  indicator->add_option("--target", o.target, "H")->required();
  indicator->add_option("--f", o.f, "F")->required();
  indicator->add_option("-q,--colours", o.q);
  indicator->add_option("-d,--distance", o.d);
  indicator->add_flag("--matching", o.matching, "use the two-edge matching construction");
  indicator->add_flag("--verify", o.verify, "run the semantic checks");
  add_provider_flags(indicator, o);

  auto* construct = app.add_subcommand("construct", "constructions");
  construct->require_subcommand(1);
  auto* dennis = leaf(construct, "dennis", "graph arrowing H but not H'", "construct dennis");
  dennis->add_option("--target", o.target, "H")->required();
  dennis->add_option("--other", o.other, "H'")->required();
  dennis->add_option("-q,--colours", o.q);
  dennis->add_flag("--check", o.check, "decide both arrows on the result");
  add_provider_flags(dennis, o);
  auto* thm12 = leaf(construct, "thm12", "minimal Ramsey graph containing F induced", "construct thm12");
  thm12->add_option("--target", o.target, "H")->required();
  thm12->add_option("--f", o.f, "F")->required();
  thm12->add_option("-q,--colours", o.q);
  thm12->add_option("--colouring", o.colouring, "H-free colouring of F");
  thm12->add_flag("--no-criticality", o.no_criticality, "skip the per-edge criticality colourings");
  add_provider_flags(thm12, o);
  auto* grow = leaf(construct, "grow", "growing sequence of minimal graphs", "construct grow");
  grow->add_option("--target", o.target, "H")->required();
  grow->add_option("--f0", o.f0, "starting F")->required();
  grow->add_option("-q,--colours", o.q);
  grow->add_option("--iterations", o.iterations);
  add_provider_flags(grow, o);

  auto* equiv = app.add_subcommand("equiv", "equivalence experiments");
  equiv->require_subcommand(1);
  auto* recolour = leaf(equiv, "recolour", "clique-sum recolouring", "equiv recolour");
  recolour->add_option("--host", o.host)->required();
  recolour->add_option("--colouring", o.colouring)->required();
  recolour->add_option("--fam", o.fam, "clique sizes a1,...,as")->required();
  recolour->add_option("-q,--colours", o.q);
  recolour->add_option("--inner", o.inner)->check(CLI::IsMember({"library", "solver", "default"}));
  auto* focus = leaf(equiv, "focus", "focusing on a bipartite colouring", "equiv focus");
  focus->add_option("--input", o.input_file, "JSON with a, b, colours, q");
  focus->add_option("--random", o.random_spec, "A,B sizes of a random instance");
  focus->add_option("-q,--colours", o.q);
  auto* thm43 = leaf(equiv, "thm43", "K3 versus K3+K2 predicate", "equiv thm43");
  thm43->add_option("--host", o.host)->required();
  auto* thm17 = leaf(equiv, "thm17", "three-colouring around a K6", "equiv thm17");
  thm17->add_option("--host", o.host)->required();
  thm17->add_option("--s", o.s_list, "the six clique vertices")->required();
  thm17->add_option("--apex", o.apex)->required();
  auto* tower = leaf(equiv, "tower", "non-equivalence tower step", "equiv tower");
  tower->add_option("--gq", o.gq)->required();
  tower->add_option("--pattern", o.pattern_file)->required();
  tower->add_option("-k", o.k);
  tower->add_option("-q,--colours", o.q);
  tower->add_option("--r", o.r_override, "criticality parameter override");
  tower->add_option("--colouring", o.colouring, "K_k.K_2-free colouring of Gq");
  add_provider_flags(tower, o);
  auto* split = leaf(equiv, "split", "split a (q+n)-colouring and lift back", "equiv split");
  add_graph_flags(split, o);
  split->add_option("--colouring", o.colouring)->required();
  split->add_option("-n,--extra", o.extra, "colours in the second part");
  split->add_flag("--check-host", o.check_host);

  auto* pattern = app.add_subcommand("pattern", "colour patterns");
  pattern->require_subcommand(1);
  auto* pgen = leaf(pattern, "gen", "random critical pattern", "pattern gen");
  pgen->add_option("--r", o.r);
  pgen->add_option("-k", o.k);
  pgen->add_option("-n", o.n);
  pgen->add_option("--trials", o.trials);
  auto* pcheck = leaf(pattern, "check", "certify a pattern", "pattern check");
  pcheck->add_option("--pattern", o.pattern_file)->required();

  auto* colouring = app.add_subcommand("colouring", "colourings");
  colouring->require_subcommand(1);
  auto* classical = leaf(colouring, "classical", "built-in colourings of K_n", "colouring classical");
  classical->add_option("--name", o.name)->required()->check(CLI::IsMember({"pentagon2", "gf16-3"}));
  classical->add_option("-n", o.n);
  auto* ccheck = leaf(colouring, "check", "check a colouring for monochromatic copies", "colouring check");
  add_graph_flags(ccheck, o);
  ccheck->add_option("--colouring", o.colouring)->required();

  auto* exp = app.add_subcommand("export", "render a graph or a record as DOT");
  exp->add_option("--graph", o.graph, "graph to draw");
  exp->add_option("--colouring", o.colouring, "edge colouring overlay");
  exp->add_option("-q,--colours", o.q);
  exp->add_option("--record", o.record_file, "result record JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_record("", e.what()).dump(2) << "\n";
    return 1;
  }

  if (exp->parsed()) {
    try {
      if (!o.record_file.empty()) {
        out << record_to_dot(json::parse(read_file(o.record_file)));
      } else {
        const GraphInput g = load_graph(o.graph);
        json rec = {{"command", "export"}, {"inputs", {{"graph", input_json(g)}}}, {"output", json::object()}};
        if (!o.colouring.empty()) rec["output"]["colouring"] = colouring_json(load_colouring(o.colouring, o.q, g.graph.m()));
        out << record_to_dot(rec);
      }
      return 0;
    } catch (const std::exception& e) {
      out << error_record("export", e.what()).dump(2) << "\n";
      return 1;
    }
  }

  std::string command;
  for (const auto& [sub, path] : leaves)
    if (sub->parsed()) command = path;

  Job job;
  try {
    job = make_job(command, o);
  } catch (const std::exception& e) {
    out << error_record(command, e.what()).dump(2) << "\n";
    return 1;
  }

  std::optional<RecordCache> cache;
  std::string key;
  try {
    if (!o.cache_dir.empty()) {
      cache.emplace(o.cache_dir);
      key = RecordCache::key({{"command", job.command}, {"inputs", job.inputs}, {"params", job.params},
                              {"tool_version", kToolVersion}});
      if (auto hit = cache->load(key)) {
        std::random_device rd;
        const bool audit = o.audit || std::uniform_real_distribution<double>(0.0, 1.0)(rd) < kAuditRate;
        if (!audit) {
          err << "cache: hit " << key << "\n";
          emit(out, *hit, o.format);
          return 0;
        }
        const Result fresh = execute(job);
        const json rec = full_record(job, fresh);
        if (rec.dump() == hit->dump()) {
          err << "cache: hit " << key << ", audit passed\n";
          emit(out, *hit, o.format);
          return fresh.exit_code;
        }
        err << "cache: audit mismatch for " << key << ", entry replaced\n";
        if (fresh.exit_code == 0) cache->store(key, rec);
        out << error_record(job.command, "cache audit mismatch for " + key).dump(2) << "\n";
        return 1;
      }
    }
    const Result r = execute(job);
    const json rec = full_record(job, r);
    if (cache && r.exit_code == 0) {
      cache->store(key, rec);
      err << "cache: stored " << key << "\n";
    }
    emit(out, rec, o.format);
    return r.exit_code;
  } catch (const std::exception& e) {
    out << error_record(job.command, e.what()).dump(2) << "\n";
    return 1;
  }
}

}  // namespace arrowlab::cli
