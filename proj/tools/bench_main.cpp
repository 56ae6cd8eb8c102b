// Times the serial reference kernels against the OpenMP ones and checks that
// both produce identical results: model search, oracle subset scans, and
// exploration of the revision transition graph.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "rcalc/oracle.hpp"
#include "rcalc/runtime.hpp"
#include "rcalc/serialize.hpp"

using namespace rcalc;
using Clock = std::chrono::steady_clock;

namespace {

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

Formula random_law(std::mt19937& rng, const std::vector<std::string>& atoms, int depth) {
  std::uniform_int_distribution<int> pick_atom(0, static_cast<int>(atoms.size()) - 1);
  if (depth == 0) {
    Formula a = atom(atoms[static_cast<std::size_t>(pick_atom(rng))]);
    return std::uniform_int_distribution<int>(0, 3)(rng) == 0 ? neg(a) : a;
  }
  switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
    case 0: return conj(random_law(rng, atoms, depth - 1), random_law(rng, atoms, depth - 1));
    case 1: return disj(random_law(rng, atoms, depth - 1), random_law(rng, atoms, depth - 1));
    case 2: return implies(random_law(rng, atoms, depth - 1), random_law(rng, atoms, depth - 1));
    default: return random_law(rng, atoms, 0);
  }
}

struct Timing {
  double serial_ms = 0, parallel_ms = 0;
  bool equal = true;
};

void report(const char* name, const Timing& t) {
  std::printf("%-28s serial %9.1f ms   openmp %9.1f ms   speedup %5.2fx   results %s\n", name,
              t.serial_ms, t.parallel_ms, t.serial_ms / (t.parallel_ms > 0 ? t.parallel_ms : 1e-9),
              t.equal ? "equal" : "DIFFER");
}

Timing bench_model_search(unsigned seed) {
  // A signature big enough that the interpretation scan dominates.
  Signature sig;
  for (const std::string& c : {"a", "b", "c"}) sig.constants.insert(c);
  sig.note_function("f", 1);
  sig.note_predicate("P", 1);
  sig.note_predicate("Q", 1);
  std::mt19937 rng(seed);
  // Constraints chosen to be late-satisfiable so a large prefix is scanned.
  std::vector<Formula> require = {
      forall("x", implies(atom("P", {var("x")}), atom("Q", {app("f", {var("x")})}))),
      exists("x", conj(atom("P", {var("x")}), neg(atom("Q", {var("x")})))),
      neg(eq(cst("a"), cst("b"))),
      neg(eq(cst("b"), cst("c"))),
      neg(eq(cst("a"), cst("c"))),
      atom("P", {app("f", {app("f", {cst("a")})})}),
  };
  Timing t;
  runtime::set_parallel(false);
  auto t0 = Clock::now();
  auto serial = find_model(sig, require, {}, 4);
  t.serial_ms = ms_since(t0);
  runtime::set_parallel(true);
  t0 = Clock::now();
  auto parallel = find_model(sig, require, {}, 4);
  t.parallel_ms = ms_since(t0);
  t.equal = serial.has_value() == parallel.has_value() &&
            (!serial || serial->describe() == parallel->describe());
  return t;
}

Timing bench_subset_scan(unsigned seed, int laws) {
  std::mt19937 rng(seed);
  const std::vector<std::string> atoms = {"A", "B", "C", "D", "E", "F"};
  std::vector<Formula> gamma;
  while (static_cast<int>(gamma.size()) < laws) {
    Formula f = random_law(rng, atoms, 2);
    bool dup = false;
    for (const Formula& g : gamma)
      if (sentence_equal(f, g)) dup = true;
    if (!dup) gamma.push_back(f);
  }
  const RCondition delta = RCondition::make({neg(atom("A"))});
  Budget b;
  Timing t;
  runtime::set_parallel(false);
  auto t0 = Clock::now();
  auto serial = maximal_contractions(gamma, delta, b);
  t.serial_ms = ms_since(t0);
  runtime::set_parallel(true);
  t0 = Clock::now();
  auto parallel = maximal_contractions(gamma, delta, b);
  t.parallel_ms = ms_since(t0);
  t.equal = serial.size() == parallel.size();
  for (std::size_t i = 0; t.equal && i < serial.size(); ++i)
    t.equal = law_set_equal(serial[i], parallel[i]);
  return t;
}

Timing bench_exploration(unsigned seed, int laws) {
  std::mt19937 rng(seed);
  const std::vector<std::string> atoms = {"A", "B", "C", "D"};
  std::vector<Formula> gamma;
  gamma.push_back(atom("A"));
  gamma.push_back(implies(atom("A"), atom("B")));
  while (static_cast<int>(gamma.size()) < laws) {
    Formula f = random_law(rng, atoms, 2);
    bool dup = false;
    for (const Formula& g : gamma)
      if (sentence_equal(f, g)) dup = true;
    if (!dup) gamma.push_back(f);
  }
  Budget b;
  Configuration start = make_configuration({neg(atom("B"))}, gamma);
  Timing t;
  runtime::set_parallel(false);
  auto t0 = Clock::now();
  auto serial = explore_terminations(start, b, 4000);
  t.serial_ms = ms_since(t0);
  runtime::set_parallel(true);
  t0 = Clock::now();
  auto parallel = explore_terminations(start, b, 4000);
  t.parallel_ms = ms_since(t0);
  t.equal = serial.terminations.size() == parallel.terminations.size() &&
            serial.explored == parallel.explored;
  for (std::size_t i = 0; t.equal && i < serial.terminations.size(); ++i)
    t.equal = law_set_equal(serial.terminations[i].config.gamma, parallel.terminations[i].config.gamma);
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  unsigned seed = 7;
  int laws = 14;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--seed" && i + 1 < argc) seed = static_cast<unsigned>(std::stoul(argv[++i]));
    if (arg == "--laws" && i + 1 < argc) laws = std::stoi(argv[++i]);
  }
  std::printf("threads: %d\n", runtime::thread_count());
  report("model search", bench_model_search(seed));
  report("oracle subset scan", bench_subset_scan(seed, laws));
  report("revision exploration", bench_exploration(seed, 6));
  return 0;
}
