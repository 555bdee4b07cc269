#include "nulllda/app/commands.hpp"

#include "nulllda/io/csv.hpp"
#include "nulllda/io/model_file.hpp"
#include "nulllda/nulllda.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

namespace nulllda::app {

namespace {

using nlohmann::json;

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

json certificate_json(const CertificateReport<double>& cert) {
  return {{"verdict", std::string(to_string(cert.verdict))},
          {"sigma_min", cert.sigma_min},
          {"sigma_max", cert.sigma_max},
          {"threshold", cert.threshold}};
}

/// Writes to the file named in `path`, or to `fallback` when absent.
template <typename Fn>
void emit(const std::optional<std::string>& path, std::ostream& fallback, Fn&& write) {
  if (!path) {
    write(fallback);
    return;
  }
  std::ofstream f(*path, std::ios::binary);
  if (!f) throw Error(ErrorKind::InvalidInput, "cannot write '" + *path + "'");
  write(f);
}

NullLdaModel<double> load_checked_model(const std::string& path) {
  auto model = io::load_model_file(path);
  io::validate_model(model);
  return model;
}

}  // namespace

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::RetriesExhausted: return kRetriesExhausted;
    case ErrorKind::SketchRejected: return kSketchRejected;
    case ErrorKind::DegenerateModel: return kDegenerateModel;
    default: return kInputError;
  }
}

int cmd_train(const TrainOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto dataset = io::read_dataset_file(opts.data_path, opts.transpose);
    const auto ctx = prepare_fit(dataset);

    NullLdaModel<double> model;
    if (opts.sketch_path) {
      const Matrix<double> y = io::read_matrix_file(*opts.sketch_path);
      const auto cert = certificate(ctx.basis, y, opts.threshold);
      if (cert.verdict != Verdict::Nonsingular) {
        json report = certificate_json(cert);
        report["retries"] = 0;
        report["sketch"] = "file";
        out << report.dump() << '\n';
        err << "error: sketch rejected: certificate is " << to_string(cert.verdict) << '\n';
        return static_cast<int>(kSketchRejected);
      }
      model = model_from_sketch(ctx, y, cert);
      model.seed = opts.seed;
    } else {
      FitOptions fit;
      fit.seed = opts.seed;
      fit.max_retries = opts.max_retries;
      fit.threshold = opts.threshold;
      model = fit_with_retry(ctx, fit);
    }

    io::save_model_file(opts.out_path, model);
    json report = certificate_json(model.certificate);
    report["retries"] = model.retries;
    report["seed"] = model.seed;
    report["sketch"] = opts.sketch_path ? "file" : "gaussian";
    out << report.dump() << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_transform(const ApplyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto model = load_checked_model(opts.model_path);
    const auto samples = io::read_samples_file(opts.data_path, model.dim(), opts.transpose);
    const Matrix<double> projected = model.orientation.transpose() * samples.data;  // (c-1) x m
    emit(opts.out_path, out, [&](std::ostream& os) {
      if (opts.transpose) {
        io::write_matrix(os, projected);
      } else {
        io::write_matrix(os, projected.transpose());
      }
    });
    return static_cast<int>(kOk);
  });
}

int cmd_classify(const ApplyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto model = load_checked_model(opts.model_path);
    const auto samples = io::read_samples_file(opts.data_path, model.dim(), opts.transpose);
    const Matrix<double> projected = model.orientation.transpose() * samples.data;
    emit(opts.out_path, out, [&](std::ostream& os) {
      for (Index s = 0; s < projected.cols(); ++s) {
        Index best = 0;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Index j = 0; j < model.reduced_centroids.cols(); ++j) {
          const double dist = (projected.col(s) - model.reduced_centroids.col(j)).squaredNorm();
          if (dist < best_dist) {  // strict: ties keep the lower index
            best_dist = dist;
            best = j;
          }
        }
        os << model.class_names[static_cast<std::size_t>(best)] << '\n';
      }
    });
    return static_cast<int>(kOk);
  });
}

int cmd_verify(const ApplyOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto model = load_checked_model(opts.model_path);
    const auto dataset = io::read_dataset_file(opts.data_path, opts.transpose);
    if (dataset.dim() != model.dim() || dataset.num_classes() != model.num_classes()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "dataset is " + std::to_string(dataset.dim()) + "-dimensional with " +
                      std::to_string(dataset.num_classes()) + " classes; model expects " +
                      std::to_string(model.dim()) + " and " + std::to_string(model.num_classes()));
    }
    const auto factors = build_factors(dataset);
    const auto eigen = eigen_total(factors);
    const auto rep = verify_orientation(factors, eigen, model.orientation);

    json j{
        {"within_residual", rep.within_residual},
        {"between_norms", rep.between_norms},
        {"rank_W", rep.rank_w},
        {"fixed_point_residual", rep.fixed_point_residual ? json(*rep.fixed_point_residual) : json()},
        {"span_angle_vs_oracle", rep.span_angle_vs_oracle ? json(*rep.span_angle_vs_oracle) : json()},
        {"pass",
         {{"within", rep.within_pass},
          {"between", rep.between_pass},
          {"rank", rep.rank_pass},
          {"fixed_point", rep.fixed_point_pass},
          {"span", rep.span_pass}}},
        {"all_pass", rep.all_pass()},
    };
    out << j.dump() << '\n';
    return static_cast<int>(kOk);
  });
}

int cmd_counterexample(const CounterexampleOptions& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (opts.out_dir.empty()) throw Error(ErrorKind::InvalidInput, "--out directory is required");
    const auto ce = counterexample<double>(opts.d, opts.alpha);
    const auto factors = build_factors(ce.dataset);
    const auto eigen = eigen_total(factors);
    const auto basis = build_projector_basis(eigen, factors);
    const Matrix<double> sb_y = scatter_apply(factors, Scatter::Between, ce.sketch);
    const Matrix<double> w = fast_null_lda(factors, eigen, ce.sketch);
    const auto cert = certificate(basis, ce.sketch);

    namespace fs = std::filesystem;
    const fs::path dir(opts.out_dir);
    fs::create_directories(dir);
    const auto data_path = (dir / "dataset.csv").string();
    const auto sketch_path = (dir / "sketch.csv").string();
    const auto expected_path = (dir / "expected.json").string();
    emit(data_path, out, [&](std::ostream& os) { io::write_dataset(os, ce.dataset); });
    emit(sketch_path, out, [&](std::ostream& os) { io::write_matrix(os, ce.sketch); });

    std::vector<double> col_norms;
    for (Index j = 0; j < sb_y.cols(); ++j) col_norms.push_back(sb_y.col(j).norm());
    const json expected{
        {"d", opts.d},
        {"alpha", opts.alpha},
        {"sb_y_column_norms", col_norms},
        {"w_frobenius", w.norm()},
        {"certificate", certificate_json(cert)},
        {"expected_train_exit", static_cast<int>(kSketchRejected)},
    };
    emit(expected_path, out, [&](std::ostream& os) { os << expected.dump(2) << '\n'; });

    out << json{{"dataset", data_path}, {"sketch", sketch_path}, {"expected", expected_path}}.dump()
        << '\n';
    return static_cast<int>(kOk);
  });
}

}  // namespace nulllda::app
