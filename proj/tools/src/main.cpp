#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "manifest.hpp"
#include "ptree/backbone.hpp"
#include "ptree/coalescent.hpp"
#include "ptree/errors.hpp"
#include "ptree/json_io.hpp"
#include "ptree/limits.hpp"
#include "ptree/oracle.hpp"
#include "ptree/sampler.hpp"
#include "ptree/verify.hpp"
#include "ptree/version.hpp"

namespace {

using namespace ptree;
using nlohmann::json;

// --degseq takes a JSON file, an inline JSON object, or the spelling "3,1,2".
DegreeSequence load_degseq(const std::string& arg) {
  if (std::filesystem::exists(arg)) return degseq_from_inline(read_file(arg));
  return degseq_from_inline(arg);
}

PlaneTree load_tree(const std::string& arg) {
  if (std::filesystem::exists(arg)) return tree_from_json(read_file(arg));
  return tree_from_json(arg);
}

OffspringDistribution load_mu(const std::string& arg) {
  if (std::filesystem::exists(arg)) return offspring_from_json(read_file(arg));
  return offspring_from_json(arg);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw validation_error("cannot write file: " + path);
  return out;
}

void write_trace_csv(const std::string& path, const CoalescentTrace& trace) {
  auto out = open_out(path);
  out << "step,cluster_size,count\n";
  for (std::size_t step = 0; step < trace.step_histograms.size(); ++step) {
    for (const auto& [size, count] : trace.step_histograms[step]) {
      out << step << ',' << size << ',' << count << '\n';
    }
  }
}

struct SampleArgs {
  std::string degseq;
  i64 count = 1;
  std::uint64_t seed = 0;
  std::string out;
  int threads = 1;
};

int run_sample(const SampleArgs& a, const cli::RunManifest& manifest) {
  DegreeSequence s = load_degseq(a.degseq);
  auto trees = sample_batch(s, a.count, RngSeed{a.seed}, a.threads);
  auto out = open_out(a.out);
  for (const auto& t : trees) out << tree_to_json(t) << '\n';
  out.close();
  manifest.write({a.out});
  std::cout << "wrote " << trees.size() << " trees to " << a.out << "\n";
  return 0;
}

struct SampleGwArgs {
  std::string mu;
  i64 size = 1;
  i64 count = 1;
  std::uint64_t seed = 0;
  i64 max_attempts = 1000000;
  std::string out;
};

int run_sample_gw(const SampleGwArgs& a, const cli::RunManifest& manifest) {
  OffspringDistribution mu = load_mu(a.mu);
  auto out = open_out(a.out);
  for (i64 k = 0; k < a.count; ++k) {
    PlaneTree t = sample_gw_conditioned(mu, a.size, derive_seed(RngSeed{a.seed},
                                                                static_cast<std::uint64_t>(k)),
                                        a.max_attempts);
    out << tree_to_json(t) << '\n';
  }
  out.close();
  manifest.write({a.out});
  std::cout << "wrote " << a.count << " conditioned GW trees to " << a.out << "\n";
  return 0;
}

struct EncodeArgs {
  std::string tree;
  std::string kind = "lukasiewicz";
  std::string out;
};

int run_encode(const EncodeArgs& a, const cli::RunManifest& manifest) {
  PlaneTree t = load_tree(a.tree);
  LatticePath path;
  if (a.kind == "height") {
    path = t.height();
  } else if (a.kind == "contour") {
    path = t.contour();
  } else if (a.kind == "lukasiewicz") {
    path = t.lukasiewicz();
  } else {
    throw validation_error("unknown kind '" + a.kind +
                           "' (expected height, contour or lukasiewicz)");
  }
  auto out = open_out(a.out);
  write_path_csv(out, path);
  out.close();
  manifest.write({a.out});
  std::cout << "wrote " << path.values.size() << " rows to " << a.out << "\n";
  return 0;
}

struct BackboneDecomposeArgs {
  std::string tree;
  i64 mark = 1;
  std::string out;
};

int run_backbone_decompose(const BackboneDecomposeArgs& a, const cli::RunManifest& manifest) {
  MarkedTree mt{load_tree(a.tree), NodeId{a.mark}};
  Decomposition d = decompose(mt);
  std::string text = decomposition_to_json(d);
  if (a.out.empty()) {
    std::cout << text << "\n";
  } else {
    write_file(a.out, text + "\n");
    manifest.write({a.out});
    std::cout << "wrote decomposition to " << a.out << "\n";
  }
  return 0;
}

struct BackboneLawArgs {
  std::string degseq;
  std::string out;
};

int run_backbone_law(const BackboneLawArgs& a, const cli::RunManifest& manifest) {
  DegreeSequence s = load_degseq(a.degseq);
  auto compositions = feasible_compositions(s);
  auto out = open_out(a.out);
  out << "m,probability\n";
  FactorialCache fact;
  for (const auto& m : compositions) {
    Rational p = prob_composition(s, m, fact);
    out << '"';
    const auto& counts = m.counts();
    if (counts.empty()) {
      out << 0;
    } else {
      for (std::size_t i = 0; i < counts.size(); ++i) {
        if (i) out << ' ';
        out << counts[i];
      }
    }
    out << "\"," << p << '\n';
  }
  out.close();
  manifest.write({a.out});
  std::cout << "wrote " << compositions.size() << " compositions to " << a.out << "\n";
  return 0;
}

struct OracleEnumerateArgs {
  std::string degseq;
  std::string out;
  i64 max_size = kDefaultEnumerationCap;
};

int run_oracle_enumerate(const OracleEnumerateArgs& a, const cli::RunManifest& manifest) {
  DegreeSequence s = load_degseq(a.degseq);
  TreeCatalogue catalogue = enumerate_trees(s, a.max_size);
  auto out = open_out(a.out);
  for (const auto& t : catalogue.trees) out << tree_to_json(t) << '\n';
  out.close();
  manifest.write({a.out});
  std::cout << "catalogue of " << catalogue.trees.size() << " trees written to " << a.out
            << "\n";
  return 0;
}

int run_oracle_verify_counts(i64 max_size) {
  i64 checked = 0;
  i64 failures = 0;
  for (const auto& counts : enumerate_tree_sequences(max_size)) {
    DegreeSequence s = DegreeSequence::validate(counts);
    TreeCatalogue catalogue = enumerate_trees(s, max_size);
    ++checked;
    if (BigInt(catalogue.trees.size()) != count_forests(s)) {
      ++failures;
      std::cout << "FAIL  " << degseq_to_json(s) << ": catalogue "
                << catalogue.trees.size() << " vs formula " << count_forests(s) << "\n";
    }
  }
  std::cout << (failures == 0 ? "PASS" : "FAIL") << "  counting identity on " << checked
            << " tree sequences with |s| <= " << max_size << "\n";
  return failures == 0 ? 0 : 1;
}

struct LimitsRunArgs {
  std::string config;
  std::string out;
  std::string plot_dir;
  int threads = 0;  // 0 = take from config
};

int run_limits(const LimitsRunArgs& a, const cli::RunManifest& manifest) {
  ExperimentConfig config = experiment_config_from_json(read_file(a.config));
  if (a.threads > 0) config.threads = a.threads;
  ExperimentReport report = run_experiment(config);
  std::vector<std::string> outputs{a.out};
  write_file(a.out, experiment_report_to_json(report) + "\n");
  if (!a.plot_dir.empty()) {
    std::filesystem::create_directories(a.plot_dir);
    for (const auto& r : report.results) {
      for (const auto& f : r.functionals) {
        std::string path = a.plot_dir + "/" + r.family + "_" +
                           std::to_string(r.requested_size) + "_" + f.name + ".csv";
        auto out = open_out(path);
        out << "index,value\n";
        for (std::size_t i = 0; i < f.sorted_values.size(); ++i) {
          out << i << ',' << f.sorted_values[i] << '\n';
        }
        outputs.push_back(path);
      }
    }
  }
  manifest.write(outputs);
  std::cout << "report written to " << a.out << "\n";
  for (const auto& entry : report.ks) {
    std::cout << "ks " << entry.functional << " " << entry.family_a << " vs " << entry.family_b
              << " at n=" << entry.size << ": statistic " << entry.report.statistic
              << ", p " << entry.report.p_value << "\n";
  }
  return 0;
}

struct CoalesceArgs {
  std::string degseq;
  std::string mode = "plane";
  i64 count = 1;
  std::uint64_t seed = 0;
  std::string out;
  std::string trace;
};

int run_coalesce(const CoalesceArgs& a, const cli::RunManifest& manifest) {
  DegreeSequence s = load_degseq(a.degseq);
  auto out = open_out(a.out);
  CoalescentTrace trace;
  CoalescentTrace* trace_ptr = a.trace.empty() ? nullptr : &trace;
  for (i64 k = 0; k < a.count; ++k) {
    RngSeed seed = derive_seed(RngSeed{a.seed}, static_cast<std::uint64_t>(k));
    // Only the first replica is traced.
    CoalescentTrace* tp = k == 0 ? trace_ptr : nullptr;
    if (a.mode == "plane") {
      out << tree_to_json(coalesce_plane(s, seed, tp)) << '\n';
    } else if (a.mode == "labelled") {
      out << labelled_tree_to_json(coalesce_labelled(s.degree_multiset(), seed, tp)) << '\n';
    } else {
      throw validation_error("unknown mode '" + a.mode + "' (expected plane or labelled)");
    }
  }
  out.close();
  std::vector<std::string> outputs{a.out};
  if (trace_ptr) {
    write_trace_csv(a.trace, trace);
    outputs.push_back(a.trace);
  }
  manifest.write(outputs);
  std::cout << "wrote " << a.count << " " << a.mode << " trees to " << a.out << "\n";
  return 0;
}

int run_verify(i64 max_size) {
  auto results = run_exhaustive_suite(max_size);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name;
    if (!r.pass) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
    all_pass = all_pass && r.pass;
  }
  std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << " (|s| <= "
            << max_size << ")\n";
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"uniform random plane trees with prescribed degree sequences"};
  app.set_version_flag("--version", ptree::kVersion);
  app.require_subcommand(1);

  std::vector<std::string> raw_argv(argv, argv + argc);
  int rc = 0;

  auto make_manifest = [&raw_argv](const std::string& command, json config,
                                   const std::uint64_t* seed) {
    cli::RunManifest m;
    m.command = command;
    m.argv = raw_argv;
    m.config = std::move(config);
    if (seed) {
      m.seed = *seed;
      m.has_seed = true;
    }
    return m;
  };

  SampleArgs sample_args;
  auto* sample = app.add_subcommand("sample", "sample uniform trees for a degree sequence");
  sample->add_option("--degseq", sample_args.degseq, "degree sequence file, JSON, or '3,1,2'")
      ->required();
  sample->add_option("--count", sample_args.count, "number of trees")->default_val(1);
  sample->add_option("--seed", sample_args.seed, "RNG seed")->required();
  sample->add_option("--out", sample_args.out, "output JSONL path")->required();
  sample->add_option("--threads", sample_args.threads, "worker threads")
      ->envname("PTREE_THREADS")
      ->default_val(1);
  sample->callback([&] {
    rc = run_sample(sample_args,
                    make_manifest("sample",
                                  json{{"degseq", sample_args.degseq},
                                       {"count", sample_args.count},
                                       {"threads", sample_args.threads}},
                                  &sample_args.seed));
  });

  SampleGwArgs gw_args;
  auto* sample_gw = app.add_subcommand("sample-gw", "sample conditioned Galton-Watson trees");
  sample_gw->add_option("--mu", gw_args.mu, "offspring distribution file or JSON")->required();
  sample_gw->add_option("--size", gw_args.size, "tree size n")->required();
  sample_gw->add_option("--count", gw_args.count, "number of trees")->default_val(1);
  sample_gw->add_option("--seed", gw_args.seed, "RNG seed")->required();
  sample_gw->add_option("--max-attempts", gw_args.max_attempts, "rejection budget per tree")
      ->default_val(1000000);
  sample_gw->add_option("--out", gw_args.out, "output JSONL path")->required();
  sample_gw->callback([&] {
    rc = run_sample_gw(gw_args,
                       make_manifest("sample-gw",
                                     json{{"mu", gw_args.mu},
                                          {"size", gw_args.size},
                                          {"count", gw_args.count},
                                          {"max_attempts", gw_args.max_attempts}},
                                     &gw_args.seed));
  });

  EncodeArgs encode_args;
  auto* encode = app.add_subcommand("encode", "export a path encoding of a tree as CSV");
  encode->add_option("--tree", encode_args.tree, "tree file or JSON")->required();
  encode->add_option("--kind", encode_args.kind, "height | contour | lukasiewicz")->required();
  encode->add_option("--out", encode_args.out, "output CSV path")->required();
  encode->callback([&] {
    rc = run_encode(encode_args,
                    make_manifest("encode",
                                  json{{"tree", encode_args.tree}, {"kind", encode_args.kind}},
                                  nullptr));
  });

  auto* backbone = app.add_subcommand("backbone", "branch decomposition tools");
  backbone->require_subcommand(1);
  BackboneDecomposeArgs bd_args;
  auto* bdecompose = backbone->add_subcommand("decompose", "decompose a marked tree");
  bdecompose->add_option("--tree", bd_args.tree, "tree file or JSON")->required();
  bdecompose->add_option("--mark", bd_args.mark, "1-based depth-first rank of the mark")
      ->required();
  bdecompose->add_option("--out", bd_args.out, "output JSON path (default: stdout)");
  bdecompose->callback([&] {
    rc = run_backbone_decompose(
        bd_args, make_manifest("backbone decompose",
                               json{{"tree", bd_args.tree}, {"mark", bd_args.mark}}, nullptr));
  });
  BackboneLawArgs bl_args;
  auto* blaw = backbone->add_subcommand("law", "exact branch-composition law as CSV");
  blaw->add_option("--degseq", bl_args.degseq, "degree sequence file, JSON, or '3,1,2'")
      ->required();
  blaw->add_option("--out", bl_args.out, "output CSV path")->required();
  blaw->callback([&] {
    rc = run_backbone_law(bl_args, make_manifest("backbone law",
                                                 json{{"degseq", bl_args.degseq}}, nullptr));
  });

  auto* oracle = app.add_subcommand("oracle", "exhaustive enumeration tools");
  oracle->require_subcommand(1);
  OracleEnumerateArgs oe_args;
  auto* oenumerate = oracle->add_subcommand("enumerate", "enumerate the tree catalogue");
  oenumerate->add_option("--degseq", oe_args.degseq, "degree sequence file, JSON, or '3,1,2'")
      ->required();
  oenumerate->add_option("--out", oe_args.out, "output JSONL path")->required();
  oenumerate->add_option("--max-size", oe_args.max_size, "enumeration size cap")
      ->default_val(kDefaultEnumerationCap);
  oenumerate->callback([&] {
    rc = run_oracle_enumerate(
        oe_args, make_manifest("oracle enumerate",
                               json{{"degseq", oe_args.degseq}, {"max_size", oe_args.max_size}},
                               nullptr));
  });
  i64 verify_counts_max = 10;
  auto* overify = oracle->add_subcommand("verify-counts",
                                         "check catalogue sizes against the forest formula");
  overify->add_option("--max-size", verify_counts_max, "check all |s| up to this size")
      ->default_val(10);
  overify->callback([&] { rc = run_oracle_verify_counts(verify_counts_max); });

  auto* limits = app.add_subcommand("limits", "scaling-limit experiments");
  limits->require_subcommand(1);
  LimitsRunArgs lr_args;
  auto* lrun = limits->add_subcommand("run", "run an experiment config");
  lrun->add_option("--config", lr_args.config, "experiment config JSON file")->required();
  lrun->add_option("--out", lr_args.out, "report JSON path")->required();
  lrun->add_option("--emit-plot-data", lr_args.plot_dir, "directory for plot-ready CSV series");
  lrun->add_option("--threads", lr_args.threads, "override config threads")
      ->envname("PTREE_THREADS")
      ->default_val(0);
  lrun->callback([&] {
    rc = run_limits(lr_args, make_manifest("limits run",
                                           json{{"config", lr_args.config},
                                                {"emit_plot_data", lr_args.plot_dir}},
                                           nullptr));
  });

  CoalesceArgs co_args;
  auto* coalesce = app.add_subcommand("coalesce", "constrained-valence coalescent sampler");
  coalesce->add_option("--degseq", co_args.degseq, "degree sequence file, JSON, or '3,1,2'")
      ->required();
  coalesce->add_option("--mode", co_args.mode, "plane | labelled")->default_val("plane");
  coalesce->add_option("--count", co_args.count, "number of runs")->default_val(1);
  coalesce->add_option("--seed", co_args.seed, "RNG seed")->required();
  coalesce->add_option("--out", co_args.out, "output JSONL path")->required();
  coalesce->add_option("--trace", co_args.trace, "per-step cluster-size CSV (first replica)");
  coalesce->callback([&] {
    rc = run_coalesce(co_args,
                      make_manifest("coalesce",
                                    json{{"degseq", co_args.degseq},
                                         {"mode", co_args.mode},
                                         {"count", co_args.count},
                                         {"trace", co_args.trace}},
                                    &co_args.seed));
  });

  i64 verify_max = 8;
  auto* verify = app.add_subcommand("verify", "run the exhaustive ground-truth suite");
  verify->add_option("--max-size", verify_max, "check all |s| up to this size")->default_val(8);
  verify->callback([&] { rc = run_verify(verify_max); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  } catch (const ptree::validation_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const ptree::feasibility_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}
