#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "confmom/cone.hpp"
#include "confmom/conformal.hpp"

// Seeded property suites over all modules. Each suite reports check/failure
// counts and the worst residual it saw; the CLI's `verify` subcommand and the
// acceptance tests are both built on these.

namespace confmom::verify {

struct SuiteResult {
    std::string suite;
    int checks = 0;
    int failures = 0;
    double max_residual = 0.0;
    std::vector<std::string> failure_notes;

    bool passed() const { return failures == 0; }
};

// Tracks one named family of residual checks inside a suite.
class Checker {
  public:
    explicit Checker(SuiteResult& result) : result_(result) {}

    // residual must be <= tol
    void residual(const std::string& name, double value, double tol);
    // plain predicate
    void require(const std::string& name, bool ok);

  private:
    SuiteResult& result_;
};

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
FourMomentum random_momentum(Rng& rng, double lo = -2.0, double hi = 2.0);
// resampled until |q^2| is safely away from zero and from M^2 boundaries
FourMomentum random_offcone_momentum(Rng& rng, const ScaleM& M);
Lorentz random_lorentz(Rng& rng);
// kind in {0..4}: translation, lorentz, dilatation, inversion, special
ConformalElement random_element(int kind, Rng& rng);

SuiteResult run_group_suite(std::uint64_t seed);
SuiteResult run_cone_suite(std::uint64_t seed);
SuiteResult run_atlas_suite(std::uint64_t seed);
SuiteResult run_fifthdim_suite(std::uint64_t seed);
SuiteResult run_modes_suite(std::uint64_t seed);
SuiteResult run_models_suite(std::uint64_t seed);
SuiteResult run_sigma_series_suite();

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, std::uint64_t seed);
std::vector<SuiteResult> run_all(std::uint64_t seed);

}  // namespace confmom::verify
