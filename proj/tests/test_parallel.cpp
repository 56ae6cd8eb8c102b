#include <random>

#include "doctest.h"
#include "rcalc/oracle.hpp"
#include "rcalc/runtime.hpp"
#include "rcalc/serialize.hpp"
#include "test_util.hpp"

using namespace rcalc;
using rcalc::testutil::F;

// The OpenMP kernels must return bit-identical results to the serial
// reference paths: model scans pick the smallest satisfying index, subset
// scans and frontier expansions merge in deterministic order.

namespace {

struct ParallelGuard {
  ~ParallelGuard() { runtime::set_parallel(false); }
};

const Budget kDefault{};

}  // namespace

TEST_CASE("model search: serial equals openmp") {
  ParallelGuard guard;
  std::mt19937 rng(1234);
  const std::vector<std::string> atoms = {"A", "B", "C", "D"};
  for (int i = 0; i < 30; ++i) {
    std::vector<Formula> require;
    const int n = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < n; ++k) require.push_back(testutil::random_prop(rng, atoms, 2));
    runtime::set_parallel(false);
    auto serial = find_model(signature_of(require), require, {}, 3);
    runtime::set_parallel(true);
    auto parallel = find_model(signature_of(require), require, {}, 3);
    REQUIRE(serial.has_value() == parallel.has_value());
    if (serial) CHECK(serial->describe() == parallel->describe());
  }
}

TEST_CASE("subset scan: serial equals openmp") {
  ParallelGuard guard;
  std::mt19937 rng(4321);
  const std::vector<std::string> atoms = {"A", "B", "C", "D"};
  for (int round = 0; round < 6; ++round) {
    std::vector<Formula> gamma;
    while (gamma.size() < 7) {
      Formula f = testutil::random_prop(rng, atoms, 2);
      bool dup = false;
      for (const Formula& g : gamma)
        if (sentence_equal(f, g)) dup = true;
      if (!dup) gamma.push_back(f);
    }
    const RCondition delta = RCondition::make({neg(atom(atoms[static_cast<std::size_t>(round) % 4]))});
    runtime::set_parallel(false);
    const auto serial = maximal_contractions(gamma, delta, kDefault);
    runtime::set_parallel(true);
    const auto parallel = maximal_contractions(gamma, delta, kDefault);
    REQUIRE(serial.size() == parallel.size());
    for (std::size_t i = 0; i < serial.size(); ++i) CHECK(law_set_equal(serial[i], parallel[i]));
  }
}

TEST_CASE("exploration: serial equals openmp, traces included") {
  ParallelGuard guard;
  const std::vector<Formula> gamma = {F("A"), F("A -> B"), F("B -> C"), F("A -> E"), F("E -> C")};
  const Configuration start = make_configuration({F("~C")}, gamma);
  runtime::set_parallel(false);
  const ExplorationResult serial = explore_terminations(start, kDefault, 2000);
  runtime::set_parallel(true);
  const ExplorationResult parallel = explore_terminations(start, kDefault, 2000);
  REQUIRE(serial.terminations.size() == parallel.terminations.size());
  CHECK(serial.explored == parallel.explored);
  CHECK(serial.exhausted == parallel.exhausted);
  for (std::size_t i = 0; i < serial.terminations.size(); ++i) {
    CHECK(config_key(serial.terminations[i].config) == config_key(parallel.terminations[i].config));
    CHECK(render_trace(serial.terminations[i].trace) == render_trace(parallel.terminations[i].trace));
  }
}
