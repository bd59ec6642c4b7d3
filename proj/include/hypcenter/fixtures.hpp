#pragma once

#include <string>
#include <vector>

#include "hypcenter/measures.hpp"
#include "hypcenter/weights.hpp"

namespace hypcenter {

/// The built-in one- and two-dimensional examples with known zero sets.
struct Fixture {
  std::string name;
  std::string description;
  RadialWeight weight;
  AtomicMeasure measure;
};

std::vector<std::string> fixture_names();

/// Throws UnknownFixture.
Fixture load_fixture(const std::string& name);

/// Escaping-mass family (1 - 1/k) delta_0 + (1/k) delta_{tanh k^2}.
AtomicMeasure escaping_mass_measure(int k);

struct Check {
  std::string label;
  double value;
  double expected;
  double tolerance;  // pass iff |value - expected| <= tolerance
  bool pass;
};

struct ReproduceReport {
  std::string name;
  std::vector<Check> checks;
  bool pass;
};

ReproduceReport reproduce(const std::string& name);

}  // namespace hypcenter
