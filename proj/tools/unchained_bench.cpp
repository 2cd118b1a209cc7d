// Benchmark comparing the OpenMP kernels with the serial reference paths.

#include <chrono>
#include <cstdio>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "unchained/coalgebra.hpp"
#include "unchained/construction.hpp"
#include "unchained/examples.hpp"
#include "unchained/parallel.hpp"

using namespace unchained;

namespace {

double time_once(const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

double time_best(int repeat, const std::function<void()>& body) {
  double best = 1e300;
  for (int i = 0; i < repeat; ++i) best = std::min(best, time_once(body));
  return best;
}

void report(const std::string& name, int repeat, const std::function<void()>& body) {
  par::set_mode(par::Mode::Serial);
  double serial = time_best(repeat, body);
  par::set_mode(par::Mode::OpenMP);
  double parallel = time_best(repeat, body);
  std::printf("%-44s serial %8.3fs   openmp %8.3fs   speedup %.2fx\n", name.c_str(), serial,
              parallel, parallel > 0 ? serial / parallel : 0.0);
  std::fflush(stdout);
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"unchained benchmarks: OpenMP kernels vs serial reference"};
  int repeat = 2;
  int finrec_bound = 7;
  int trunc_bound = 5;
  app.add_option("--repeat", repeat, "repetitions (best-of)");
  app.add_option("--finrec-bound", finrec_bound, "bound for the enumeration benchmark");
  app.add_option("--trunc-bound", trunc_bound, "bound for the truncation benchmark");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads available: %d (OpenMP %s)\n\n", par::max_threads(),
              par::openmp_compiled() ? "enabled" : "disabled");

  report("enumerate structures (successor, bound " + std::to_string(finrec_bound) + ")", repeat,
         [&] { enumerate_finrec(examples::successor(), finrec_bound, 1u << 30); });
  report("enumerate structures (cherry, bound 4)", repeat,
         [&] { enumerate_finrec(examples::cherry(), 4, 1u << 30); });
  report("truncated colimit (successor, bound " + std::to_string(trunc_bound) + ")", repeat,
         [&] { build_truncation(examples::successor(), trunc_bound); });
  report("truncated colimit (cherry, bound 3)", repeat,
         [&] { build_truncation(examples::cherry(), 3); });
  report("solution search (12-state chain, carrier 4)", repeat, [&] {
    // all 4^12 functions from a 12-state coalgebra into a 4-element algebra
    Signature succ = examples::successor();
    FinSet carrier = FinSet::ordinal(12);
    std::vector<FElem> st;
    st.push_back(FElem{0, {}});
    for (int i = 1; i < 12; ++i) st.push_back(FElem{1, {i - 1}});
    Coalgebra chain12{succ, carrier, std::move(st)};
    Algebra mod4 = make_algebra_by(succ, FinSet::ordinal(4), [](const FElem& e) {
      return e.op == 0 ? 0 : (e.args[0] + 1) % 4;
    });
    brute_force_solutions(chain12, mod4, 1u << 30);
  });
  return 0;
}
