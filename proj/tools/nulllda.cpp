#include "nulllda/app/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace nulllda::app;

  CLI::App app{"Null-space LDA via randomized sketching with a full-rank certificate"};
  app.require_subcommand(1);

  TrainOptions train;
  auto* train_cmd = app.add_subcommand("train", "fit an orientation matrix and write a model file");
  train_cmd->add_option("--data", train.data_path, "training CSV")->required();
  train_cmd->add_option("--out", train.out_path, "model file to write")->required();
  train_cmd->add_option("--seed", train.seed, "sketch generator seed");
  train_cmd->add_option("--threshold", train.threshold, "near-singular ratio for the certificate");
  train_cmd->add_option("--max-retries", train.max_retries, "redraws after a rejected sketch")
      ->check(CLI::NonNegativeNumber);
  train_cmd->add_option("--sketch-file", train.sketch_path, "use this d x (c-1) sketch instead of drawing one");
  train_cmd->add_flag("--transpose", train.transpose, "one feature per row, labels on the last row");

  ApplyOptions transform, classify, verify;
  auto add_apply = [&](const char* name, const char* help, ApplyOptions& o, bool with_out) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--model", o.model_path, "model file")->required();
    cmd->add_option("--data", o.data_path, "input CSV")->required();
    if (with_out) cmd->add_option("--out", o.out_path, "output CSV (default: standard output)");
    cmd->add_flag("--transpose", o.transpose, "one feature per row");
    return cmd;
  };
  auto* transform_cmd = add_apply("transform", "project samples with W^T", transform, true);
  auto* classify_cmd = add_apply("classify", "nearest reduced centroid labels", classify, true);
  auto* verify_cmd = add_apply("verify", "check null-LDA criteria against a labelled dataset", verify, false);

  CounterexampleOptions ce;
  auto* ce_cmd = app.add_subcommand("counterexample", "emit an instance where an arbitrary sketch gives W = 0");
  ce_cmd->add_option("--d", ce.d, "dimension (>= 4)");
  ce_cmd->add_option("--alpha", ce.alpha, "sketch magnitude in (0, 1)");
  ce_cmd->add_option("--out", ce.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInputError;
  }

  if (*train_cmd) return cmd_train(train, std::cout, std::cerr);
  if (*transform_cmd) return cmd_transform(transform, std::cout, std::cerr);
  if (*classify_cmd) return cmd_classify(classify, std::cout, std::cerr);
  if (*verify_cmd) return cmd_verify(verify, std::cout, std::cerr);
  if (*ce_cmd) return cmd_counterexample(ce, std::cout, std::cerr);
  return kInputError;
}
