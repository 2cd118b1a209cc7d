// unchained: a toolkit for recursive coalgebras, hylomorphisms, and
// colimit-based initial-algebra construction over finite sets.

#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "unchained/chain.hpp"
#include "unchained/coalgebra.hpp"
#include "unchained/construction.hpp"
#include "unchained/examples.hpp"
#include "unchained/iterate.hpp"
#include "unchained/json_io.hpp"
#include "unchained/parallel.hpp"

using namespace unchained;
using io::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitCap = 3;
constexpr int kExitParse = 4;

struct Config {
  std::string format = "text";
  std::uint64_t cap = default_cap();
  std::uint64_t seed = 0;
  bool serial = false;
};

Signature functor_from_spec(const std::string& spec) {
  if (spec == "cherry") return examples::cherry();
  if (spec == "successor") return examples::successor();
  if (spec == "powerset") return Signature::powerset();
  if (spec == "empty") return Signature::polynomial({});
  if (spec.rfind("constants:", 0) == 0)
    return examples::constants(std::stoi(spec.substr(10)));
  if (!spec.empty() && spec.front() == '{')
    return io::signature_from_json(io::parse_document(spec));
  return io::signature_from_json(io::load_json_file(spec));
}

void emit(const Config& cfg, const json& report, const std::string& text) {
  if (cfg.format == "json") {
    json out = json{{"format", io::kFormatTag}};
    out.update(report);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

int run_check_recursive(const Config& cfg, const std::string& path) {
  Coalgebra c = io::coalgebra_from_json(io::load_json_file(path));
  RecResult r = is_recursive(c);
  json report{{"command", "check-recursive"}, {"recursive", r.recursive}};
  std::string text = r.recursive ? "recursive: yes\n" : "recursive: no\n";
  if (r.recursive) {
    json topo = json::array();
    text += "topological order:";
    for (int v : r.topo) {
      topo.push_back(c.carrier.name(v));
      text += " " + c.carrier.name(v);
    }
    text += "\n";
    report["topological_order"] = std::move(topo);
  } else {
    json cyc = json::array();
    text += "cycle:";
    for (const std::string& n : cycle_names(c, r)) {
      cyc.push_back(n);
      text += " " + n;
    }
    text += "\n";
    report["cycle"] = std::move(cyc);
  }
  if (cfg.format == "dot")
    std::cout << io::coalgebra_to_dot(c);
  else
    emit(cfg, report, text);
  return r.recursive ? kExitOk : kExitVerification;
}

int run_hylo(const Config& cfg, const std::string& coalg_path, const std::string& alg_path) {
  Coalgebra c = io::coalgebra_from_json(io::load_json_file(coalg_path));
  Algebra a = io::algebra_from_json(io::load_json_file(alg_path), cfg.cap);
  FinFn h = hylo(c, a);
  json report{{"command", "hylo"}, {"map", io::finfn_to_json(h)}};
  std::string text;
  for (int v = 0; v < c.carrier.size(); ++v)
    text += c.carrier.name(v) + " -> " + a.carrier.name(h(v)) + "\n";
  emit(cfg, report, text);
  return kExitOk;
}

int run_initial(const Config& cfg, const std::string& functor, int bound, bool emit_terms,
                bool dedup) {
  Signature sig = functor_from_spec(functor);
  TruncationOptions opts;
  opts.cap = cfg.cap;
  opts.dedup_isomorphic = dedup;
  InitialTruncation t = build_truncation(sig, bound, opts);
  OraclePartitionResult oc = oracle_partition(t);

  json report{{"command", "initial"},
              {"bound", bound},
              {"objects", t.diagram->size()},
              {"carrier_size", t.carrier.size()},
              {"alpha_injective", t.alpha.is_injective()},
              {"alpha_surjective", t.alpha.is_surjective()},
              {"oracle_agrees", oc.agree}};
  std::string text = "objects: " + std::to_string(t.diagram->size()) + "\n";
  text += "|A_" + std::to_string(bound) + "| = " + std::to_string(t.carrier.size()) + "\n";
  text += std::string("alpha injective: yes") + (t.alpha.is_surjective() ? ", surjective: yes" : ", surjective: no") + "\n";
  text += std::string("unfolding oracle agrees: ") + (oc.agree ? "yes" : "no") + "\n";
  if (emit_terms && oc.agree) {
    json terms = json::object();
    text += "classes:\n";
    for (int cls = 0; cls < t.carrier.size(); ++cls) {
      std::string term = oc.pool.to_string(oc.class_term[static_cast<std::size_t>(cls)]);
      terms[t.carrier.name(cls)] = term;
      text += "  " + t.carrier.name(cls) + " : " + term + "\n";
    }
    report["terms"] = std::move(terms);
  }
  if (cfg.format == "dot") {
    std::cout << io::coalgebra_to_dot(t.as_coalgebra());
    return oc.agree ? kExitOk : kExitVerification;
  }
  emit(cfg, report, text);
  return oc.agree ? kExitOk : kExitVerification;
}

int run_chain(const Config& cfg, const std::string& functor, int steps) {
  Signature sig = functor_from_spec(functor);
  ChainData cd = build_chain(sig, steps, cfg.cap);
  ChainAnalysisOptions opts;
  opts.cap = cfg.cap;
  ChainReport rep = analyze_chain(cd, opts);
  json stages = json::array();
  std::string text = "k |W_k| recursive link-injective\n";
  for (std::size_t k = 0; k < cd.stages.size(); ++k) {
    json stage{{"k", k}, {"size", cd.stages[k].size()}};
    std::string rec = "-", inj = "-";
    if (k < rep.stage_recursive.size()) {
      stage["recursive"] = static_cast<bool>(rep.stage_recursive[k]);
      rec = rep.stage_recursive[k] ? "yes" : "no";
    }
    if (k < rep.link_injective.size()) {
      stage["link_injective"] = static_cast<bool>(rep.link_injective[k]);
      inj = rep.link_injective[k] ? "yes" : "no";
    }
    text += std::to_string(k) + " " + std::to_string(cd.stages[k].size()) + " " + rec + " " +
            inj + "\n";
    stages.push_back(std::move(stage));
  }
  json report{{"command", "chain"},
              {"stages", std::move(stages)},
              {"term_counts_match", rep.term_counts_match}};
  if (rep.converges_at) {
    report["converges_at"] = *rep.converges_at;
    report["initial_algebra_size"] = rep.initial_algebra_size;
    text += "converges at k = " + std::to_string(*rep.converges_at) +
            "; initial algebra size " + std::to_string(rep.initial_algebra_size) + "\n";
  } else {
    text += "no convergence within " + std::to_string(steps) + " steps\n";
  }
  text += std::string("stage terms = terms of depth < k: ") +
          (rep.term_counts_match ? "yes" : "no") + "\n";
  emit(cfg, report, text);
  return rep.term_counts_match ? kExitOk : kExitVerification;
}

int run_iterate_check(const Config& cfg, const std::string& functor, int bound, int slice) {
  Signature sig = functor_from_spec(functor);
  InitialTruncation t = build_truncation(sig, bound, TruncationOptions{cfg.cap, false});
  EColimitResult ec = iterate_colimit_check(t, slice, EColimitOptions{cfg.cap, false});
  const char* verdict = ec.verdict == EColimitResult::Verdict::Bijective ? "bijective"
                        : ec.verdict == EColimitResult::Verdict::InjectiveOnly
                            ? "injective-only"
                            : "not-injective";
  json report{{"command", "iterate-check"}, {"bound", bound},          {"slice_bound", slice},
              {"e_objects", ec.ed.size()},  {"colim_size", ec.class_count},
              {"fa_size", t.fA.carrier().size()},
              {"verdict", verdict}};
  std::string text = "E-objects: " + std::to_string(ec.ed.size()) + "\n";
  text += "colim E: " + std::to_string(ec.class_count) +
          ", F(A_n): " + std::to_string(t.fA.carrier().size()) + "\n";
  text += std::string("comparison: ") + verdict + "\n";
  emit(cfg, report, text);
  return ec.verdict == EColimitResult::Verdict::NotInjective ? kExitVerification : kExitOk;
}

int run_colimit(const Config& cfg, const std::string& path) {
  Diagram d = io::diagram_from_json(io::load_json_file(path));
  ColimitData cd = colimit(d, cfg.cap);
  FilteredColimitReport rep = verify_filtered_characterization(d, cd);
  json inj = json::object();
  for (const auto& [id, fn] : cd.injections) inj[id] = io::finfn_to_json(fn);
  json report{{"command", "colimit"},
              {"apex", cd.apex.names()},
              {"injections", std::move(inj)},
              {"jointly_surjective", rep.joint_surjective},
              {"condition2", rep.condition2}};
  std::string text = "apex:";
  for (const auto& n : cd.apex.names()) text += " " + n;
  text += "\njointly surjective: ";
  text += rep.joint_surjective ? "yes" : "no";
  text += "\nmerges witnessed inside the diagram: ";
  text += rep.condition2 ? "yes" : "no";
  text += "\n";
  if (!rep.failures.empty()) {
    json fails = json::array();
    for (const auto& f : rep.failures) {
      fails.push_back(json{{"node", f.node}, {"x1", f.x1}, {"x2", f.x2}});
      text += "unwitnessed merge at node " + f.node + ": " + f.x1 + " ~ " + f.x2 + "\n";
    }
    report["failures"] = std::move(fails);
  }
  if (cfg.format == "dot") {
    std::cout << io::colimit_to_dot(d, cd);
    return kExitOk;
  }
  emit(cfg, report, text);
  return kExitOk;
}

int run_examples(const Config& cfg, const std::string& name, const std::string& input) {
  if (name == "height") {
    examples::HeightExample ex = examples::height_example();
    FinFn h = hylo(ex.coalg, ex.algebra);
    json report{{"command", "examples"},
                {"name", "height"},
                {"coalgebra", io::coalgebra_to_json(ex.coalg)},
                {"algebra", io::algebra_to_json(ex.algebra)},
                {"heights", io::finfn_to_json(h)}};
    std::string text = "six-state coalgebra over {leaf, node}:\n";
    for (int v = 0; v < ex.coalg.carrier.size(); ++v)
      text += "  " + ex.coalg.carrier.name(v) + " : " +
              felem_name(ex.coalg.sig, ex.coalg.carrier,
                         ex.coalg.structure[static_cast<std::size_t>(v)]) +
              "\n";
    text += "height algebra: leaf -> 0, node(k,n) -> 1+max(k,n)\n";
    text += "heights:\n";
    for (const std::string& s : {"x", "y", "z", "u", "w", "v"})
      text += "  " + s + " -> " + h.apply_name(s) + "\n";
    if (cfg.format == "dot") {
      std::cout << io::coalgebra_to_dot(ex.coalg);
      return kExitOk;
    }
    emit(cfg, report, text);
    return kExitOk;
  }
  if (name == "quicksort") {
    std::vector<int> letters;
    for (char ch : input)
      if (ch >= '1' && ch <= '9') letters.push_back(ch - '0');
    int alphabet = 3;
    for (int c : letters) alphabet = std::max(alphabet, c);
    int len = std::max<int>(3, static_cast<int>(letters.size()));
    // the example sizes its own cap: the divide/merge pair materializes
    // 1 + alphabet * lists^2 encoded elements
    std::uint64_t lists = 1, power = 1;
    for (int i = 0; i < len; ++i) {
      power *= static_cast<std::uint64_t>(alphabet);
      lists += power;
    }
    std::uint64_t need = 1 + static_cast<std::uint64_t>(alphabet) * lists * lists;
    examples::QuicksortExample qs =
        examples::quicksort_example(alphabet, len, std::max(cfg.cap, need));
    FinFn sorted = hylo(qs.divide, qs.merge);
    std::string in_name = examples::list_name(letters);
    std::string out_name = sorted.apply_name(in_name);
    std::vector<int> out_letters = examples::list_letters(out_name);
    std::string pretty;
    for (std::size_t i = 0; i < out_letters.size(); ++i)
      pretty += (i ? "," : "") + std::to_string(out_letters[i]);
    json report{{"command", "examples"}, {"name", "quicksort"}, {"input", input},
                {"sorted", pretty}};
    emit(cfg, report, pretty + "\n");
    return kExitOk;
  }
  if (name == "wf-relation") {
    examples::WfRelationExample ex = examples::wf_relation_example();
    RecResult r = is_recursive(ex.coalg);
    TermPool pool(Signature::powerset());
    auto terms = unfold_all(pool, ex.coalg);
    json rel = json::array();
    std::string text = "relation (y R x pairs):";
    for (const auto& [y, x] : ex.relation) {
      rel.push_back(json::array({y, x}));
      text += " " + y + "R" + x;
    }
    text += "\nrecursive: yes\nunfoldings (hereditarily finite sets):\n";
    json unfoldings = json::object();
    for (int v = 0; v < ex.coalg.carrier.size(); ++v) {
      std::string term = pool.to_string(terms[static_cast<std::size_t>(v)]);
      unfoldings[ex.coalg.carrier.name(v)] = term;
      text += "  " + ex.coalg.carrier.name(v) + " : " + term + "\n";
    }
    json report{{"command", "examples"},
                {"name", "wf-relation"},
                {"relation", std::move(rel)},
                {"recursive", r.recursive},
                {"unfoldings", std::move(unfoldings)}};
    if (cfg.format == "dot") {
      std::cout << io::coalgebra_to_dot(ex.coalg);
      return kExitOk;
    }
    emit(cfg, report, text);
    return r.recursive ? kExitOk : kExitVerification;
  }
  throw InvalidValueError("unknown example: " + name + " (height | quicksort | wf-relation)");
}

int run_selftest(const Config& cfg) {
  int failures = 0;
  std::string text;
  json checks = json::array();
  auto check = [&](const std::string& name, const std::function<bool()>& body) {
    bool ok = false;
    std::string error;
    try {
      ok = body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    if (!ok) ++failures;
    text += std::string(ok ? "[PASS] " : "[FAIL] ") + name +
            (error.empty() ? "" : " (" + error + ")") + "\n";
    checks.push_back(json{{"name", name}, {"ok", ok}});
  };

  check("six-state height table", [] {
    examples::HeightExample ex = examples::height_example();
    FinFn h = hylo(ex.coalg, ex.algebra);
    return h.apply_name("v") == "2" && h.apply_name("u") == "1" && h.apply_name("x") == "0";
  });
  check("divide-and-conquer sort (length <= 3)", [] {
    examples::QuicksortExample qs = examples::quicksort_example(3, 3);
    FinFn s = hylo(qs.divide, qs.merge);
    for (int i = 0; i < qs.lists.size(); ++i) {
      auto letters = examples::list_letters(qs.lists.name(i));
      std::sort(letters.begin(), letters.end());
      if (s.apply_name(qs.lists.name(i)) != examples::list_name(letters)) return false;
    }
    return true;
  });
  check("chain sizes 0,1,2,5,26", [] {
    ChainData cd = build_chain(examples::cherry(), 4);
    std::vector<int> sizes;
    for (const auto& s : cd.stages) sizes.push_back(s.size());
    return sizes == std::vector<int>{0, 1, 2, 5, 26};
  });
  check("unfolding oracle agreement (successor, bound 3)", [] {
    return oracle_partition(examples::successor(), 3).agree;
  });
  check("unfolding oracle agreement (cherry, bound 2)", [] {
    return oracle_partition(examples::cherry(), 2).agree;
  });
  check("convergent initial algebra (3 constants)", [] {
    MainTheoremResult r = main_theorem_check(examples::constants(3), 2);
    return r.status == MainTheoremResult::Status::Bijective && r.carrier_size == 3;
  });
  check("functor-applied colimit comparison (constants)", [] {
    InitialTruncation t = build_truncation(examples::constants(2), 2);
    return iterate_colimit_check(t, 1).verdict == EColimitResult::Verdict::Bijective;
  });
  check("parallel kernels match the serial reference", [&cfg] {
    std::mt19937_64 rng(cfg.seed);
    for (int trial = 0; trial < 3; ++trial) {
      std::uint64_t n = 1 + rng() % 50000;
      std::uint64_t mod = 2 + rng() % 13;
      auto pred = [mod](std::uint64_t i) { return i % mod == 0; };
      if (par::filter_indices(n, pred) != par::filter_indices_serial(n, pred)) return false;
    }
    par::Mode saved = par::mode();
    par::set_mode(par::Mode::Serial);
    auto a = enumerate_finrec(examples::cherry(), 2);
    par::set_mode(par::Mode::OpenMP);
    auto b = enumerate_finrec(examples::cherry(), 2);
    par::set_mode(saved);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (!(a[i].structure == b[i].structure)) return false;
    return true;
  });

  json report{{"command", "selftest"}, {"failures", failures}, {"checks", std::move(checks)}};
  emit(cfg, report, text + (failures ? "selftest: FAILED\n" : "selftest: ok\n"));
  return failures ? kExitVerification : kExitOk;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"unchained: recursive coalgebras, hylomorphisms, and initial algebras "
               "over finite sets"};
  app.require_subcommand(1);

  Config cfg;
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "json", "dot"}))
      ->capture_default_str();
  app.add_option("--cap", cfg.cap, "global element cap (env UNCHAINED_CAP)")
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for randomized checks")->capture_default_str();
  app.add_flag("--serial", cfg.serial, "disable OpenMP kernels");

  std::string coalg_path, alg_path, diagram_path, functor = "cherry", example_name, input = "3,1,2";
  int bound = 2, steps = 4, slice = 1;
  bool emit_terms = false, dedup = false;

  CLI::App* c_rec = app.add_subcommand("check-recursive", "decide recursiveness of a coalgebra");
  c_rec->add_option("coalgebra", coalg_path, "coalgebra JSON file")->required();

  CLI::App* c_hylo = app.add_subcommand("hylo", "evaluate the unique hylomorphism");
  c_hylo->add_option("coalgebra", coalg_path)->required();
  c_hylo->add_option("algebra", alg_path)->required();

  CLI::App* c_init = app.add_subcommand("initial", "truncated colimit of recursive coalgebras");
  c_init->add_option("--functor", functor, "builtin name, JSON file, or inline JSON");
  c_init->add_option("--bound", bound, "carrier bound")->required();
  c_init->add_flag("--emit-terms", emit_terms, "print the unfolding of each class");
  c_init->add_flag("--dedup", dedup, "deduplicate isomorphic coalgebras (performance)");

  CLI::App* c_chain = app.add_subcommand("chain", "the classical chain 0 -> F0 -> F^2 0 -> ...");
  c_chain->add_option("--functor", functor);
  c_chain->add_option("--steps", steps, "number of applications")->required();

  CLI::App* c_iter = app.add_subcommand("iterate-check", "compare colim E with F(A_n)");
  c_iter->add_option("--functor", functor);
  c_iter->add_option("--bound", bound)->required();
  c_iter->add_option("--slice", slice, "slice size bound");

  CLI::App* c_colim = app.add_subcommand("colimit", "colimit of a diagram of finite sets");
  c_colim->add_option("diagram", diagram_path, "diagram JSON file")->required();

  CLI::App* c_ex = app.add_subcommand("examples", "built-in worked examples");
  c_ex->add_option("name", example_name, "height | quicksort | wf-relation")->required();
  c_ex->add_option("--input", input, "comma-separated digits (quicksort)");

  CLI::App* c_self = app.add_subcommand("selftest", "run the built-in invariant suite");
  (void)c_self;

  CLI11_PARSE(app, argc, argv);

  if (cfg.serial) par::set_mode(par::Mode::Serial);

  auto fail = [&cfg](int code, const std::string& type, const std::string& message) {
    if (cfg.format == "json") {
      json err{{"format", io::kFormatTag}, {"error", json{{"type", type}, {"message", message}}}};
      std::cout << err.dump(2) << "\n";
    }
    std::cerr << "error (" << type << "): " << message << "\n";
    return code;
  };

  try {
    if (c_rec->parsed()) return run_check_recursive(cfg, coalg_path);
    if (c_hylo->parsed()) return run_hylo(cfg, coalg_path, alg_path);
    if (c_init->parsed()) return run_initial(cfg, functor, bound, emit_terms, dedup);
    if (c_chain->parsed()) return run_chain(cfg, functor, steps);
    if (c_iter->parsed()) return run_iterate_check(cfg, functor, bound, slice);
    if (c_colim->parsed()) return run_colimit(cfg, diagram_path);
    if (c_ex->parsed()) return run_examples(cfg, example_name, input);
    if (c_self->parsed()) return run_selftest(cfg);
  } catch (const ParseError& e) {
    return fail(kExitParse, "parse", e.what());
  } catch (const SizeCapError& e) {
    return fail(kExitCap, "size-cap", e.what());
  } catch (const NotRecursiveError& e) {
    return fail(kExitVerification, "not-recursive", e.what());
  } catch (const NotACoconeError& e) {
    return fail(kExitVerification, "not-a-cocone", e.what());
  } catch (const NoFactorizationError& e) {
    return fail(kExitVerification, "no-factorization", e.what());
  } catch (const NoMergeError& e) {
    return fail(kExitVerification, "no-merge", e.what());
  } catch (const NoTriangleError& e) {
    return fail(kExitVerification, "no-triangle", e.what());
  } catch (const HypothesisError& e) {
    return fail(kExitVerification, "hypothesis-failed", e.what());
  } catch (const MorphismCheckError& e) {
    return fail(kExitVerification, "morphism-check", e.what());
  } catch (const NotBijectiveError& e) {
    return fail(kExitVerification, "not-bijective", e.what());
  } catch (const VerificationError& e) {
    return fail(kExitVerification, "verification", e.what());
  } catch (const InvalidValueError& e) {
    return fail(kExitParse, "invalid-value", e.what());
  } catch (const Error& e) {
    return fail(kExitVerification, "error", e.what());
  }
  return kExitOk;
}
