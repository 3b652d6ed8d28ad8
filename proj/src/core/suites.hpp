#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json_io.hpp"

namespace simpson {

struct SuiteConfig {
  std::string suite;
  CyclotomicParams ring;
  ChartParams chart;
  int D = 12;
  int rank = 2;
  uint64_t seed = 7;
  int instances = 0;  // 0: suite default
  int heavy = 0;      // instances that also run the P_{<=D} cohomology checks; 0: suite default
  int samples = 50;   // seeded omegas per instance in h1-comparison
  int threads = 0;    // 0: hardware concurrency
};

const std::vector<std::string>& suite_names();
void validate_config(const SuiteConfig& cfg);

struct PropertyResult {
  std::string name;
  std::string anchor;  // the property the check stands for
  bool pass = false;
  std::string detail;
};

struct InstanceResult {
  std::string digest;
  json instance;
  std::vector<PropertyResult> properties;
  Status error = Status::ok;  // exception raised while checking, if any
  int min_floor = 0;          // smallest precision floor among produced outputs
};

struct SuiteReport {
  SuiteConfig cfg;
  std::vector<InstanceResult> instances;  // sorted by digest
  int checks = 0;
  int violations = 0;
  Status status = Status::ok;  // ok, property_violation, precision_exhausted or invalid_input
  int exit_code() const;
};

SuiteReport run_suite(const SuiteConfig& cfg);
json to_json(const SuiteReport& r);
std::string to_text(const SuiteReport& r);

}  // namespace simpson
