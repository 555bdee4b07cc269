#pragma once

#include "nulllda/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace nulllda::app {

enum ExitCode : int {
  kOk = 0,
  kInputError = 2,
  kRetriesExhausted = 3,
  kSketchRejected = 4,
  kDegenerateModel = 5,
};

int exit_code_for(ErrorKind kind);

struct TrainOptions {
  std::string data_path;
  std::string out_path;
  std::uint64_t seed = 0;
  double threshold = 1e-8;
  int max_retries = 5;
  std::optional<std::string> sketch_path;
  bool transpose = false;
};

struct ApplyOptions {
  std::string model_path;
  std::string data_path;
  std::optional<std::string> out_path;  // standard output when empty
  bool transpose = false;
};

struct CounterexampleOptions {
  long d = 10;
  double alpha = 0.5;
  std::string out_dir;
};

// Each command writes its report to `out`, diagnostics to `err`, and returns
// the process exit code. Library errors are mapped through exit_code_for.
int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err);
int cmd_transform(const ApplyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_classify(const ApplyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_verify(const ApplyOptions& opts, std::ostream& out, std::ostream& err);
int cmd_counterexample(const CounterexampleOptions& opts, std::ostream& out, std::ostream& err);

}  // namespace nulllda::app
