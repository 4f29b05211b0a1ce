// randnla command-line harness: seeded execution of the library's
// algorithms with one JSON RunReport per line on stdout and a human
// summary on stderr. Exit codes: 0 ok, 2 flagged, 1 error.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "randnla/acceptance.hpp"
#include "randnla/apps.hpp"
#include "randnla/core.hpp"
#include "randnla/cur.hpp"
#include "randnla/io.hpp"
#include "randnla/randsvd.hpp"
#include "randnla/regression.hpp"
#include "randnla/rng.hpp"
#include "randnla/sketch.hpp"
#include "randnla/spsd.hpp"

namespace {

using randnla::DenseMatrix;
using randnla::Index;
using randnla::Vector;

struct Report {
  std::string command;
  std::uint64_t seed = 0;
  std::map<std::string, std::string> parameters;
  std::map<std::string, double> metrics;
  std::string status = "ok";
  std::string message;
};

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ =
      std::chrono::steady_clock::now();
};

void emit(const Report& report, double elapsed_ms) {
  for (const auto& [key, value] : report.metrics) {
    if (!std::isfinite(value))
      throw std::runtime_error("non-finite metric '" + key + "'");
  }
  nlohmann::ordered_json j;
  j["command"] = report.command;
  j["seed"] = report.seed;
  j["parameters"] = report.parameters;
  j["metrics"] = report.metrics;
  j["status"] = report.status;
  j["elapsed_ms"] = elapsed_ms;
  if (!report.message.empty()) j["message"] = report.message;
  std::cout << j.dump() << '\n';

  std::cerr << report.command << " [" << report.status << "]";
  for (const auto& [key, value] : report.metrics)
    std::cerr << ' ' << key << '=' << value;
  if (!report.message.empty()) std::cerr << " -- " << report.message;
  std::cerr << '\n';
}

int status_code(const std::string& status) {
  if (status == "ok") return 0;
  if (status == "flagged") return 2;
  return 1;
}

randnla::SketchKind parse_kind(const std::string& name) {
  if (name == "gaussian") return randnla::SketchKind::kGaussian;
  if (name == "srht") return randnla::SketchKind::kSrht;
  if (name == "count") return randnla::SketchKind::kCountSketch;
  if (name == "uniform") return randnla::SketchKind::kUniformColumns;
  if (name == "leverage") return randnla::SketchKind::kLeverageColumns;
  if (name == "landmark") return randnla::SketchKind::kLandmarkColumns;
  throw CLI::ValidationError("--method", "unknown sketch kind '" + name + "'");
}

DenseMatrix power_law_matrix(Index n, double exponent, std::uint64_t seed) {
  randnla::Rng rng = randnla::make_rng(seed);
  const DenseMatrix u =
      randnla::thin_qr(randnla::gaussian_matrix(n, n, rng)).Q;
  const DenseMatrix v =
      randnla::thin_qr(randnla::gaussian_matrix(n, n, rng)).Q;
  Vector sv(n);
  for (Index i = 0; i < n; ++i)
    sv(i) = std::pow(static_cast<double>(i + 1), -exponent);
  return u * sv.asDiagonal() * v.transpose();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"randnla: randomized matrix computations toolkit"};
  app.require_subcommand(1);
  int exit_code = 0;

  auto run = [&exit_code](const std::string& command,
                          const std::function<void(Report&)>& body) {
    Report report;
    report.command = command;
    Timer timer;
    try {
      body(report);
    } catch (const std::exception& e) {
      report.status = "error";
      report.message = e.what();
      report.metrics.clear();
    }
    emit(report, timer.ms());
    exit_code = std::max(exit_code, status_code(report.status));
  };

  // ---------------------------------------------------------------- sketch
  {
    auto* cmd = app.add_subcommand("sketch", "Apply a sketching operator");
    struct SketchOpts {
      std::string input, method = "gaussian", output;
      Index s = 0, s_cs = 0;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<SketchOpts>();
    cmd->add_option("--input", opt->input, "source matrix")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--method", opt->method,
                    "gaussian|srht|count|uniform|leverage|combined");
    cmd->add_option("--s", opt->s, "sketch size")->required();
    cmd->add_option("--s-cs", opt->s_cs,
                    "count-sketch stage size (combined; default 4s)");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->add_option("--output", opt->output, "save the sketch here");
    cmd->callback([&run, opt] {
      run("sketch", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"input", opt->input},
                             {"method", opt->method},
                             {"s", std::to_string(opt->s)}};
        const DenseMatrix a = randnla::load_matrix(opt->input);
        randnla::SketchSpec spec;
        if (opt->method == "combined") {
          const Index s_cs = opt->s_cs > 0 ? opt->s_cs : 4 * opt->s;
          spec = randnla::SketchSpec::combined(
              s_cs,
              randnla::SketchSpec::gaussian(opt->s,
                                            randnla::derive_seed(opt->seed, 1)),
              opt->seed);
        } else {
          spec.kind = parse_kind(opt->method);
          spec.s = opt->s;
          spec.seed = opt->seed;
        }
        const DenseMatrix c = randnla::apply_sketch(a, spec);
        if (!opt->output.empty()) randnla::save_matrix(c, opt->output);
        report.metrics["input_fro"] = a.norm();
        report.metrics["sketch_fro"] = c.norm();
        report.metrics["sketch_cols"] = static_cast<double>(c.cols());
      });
    });
  }

  // ---------------------------------------------------------------- verify
  {
    auto* cmd = app.add_subcommand(
        "verify", "Empirically verify a sketching property");
    struct VerifyOpts {
      std::string property = "subspace-embedding", method = "gaussian";
      Index m = 10, n = 1000, s = 100, k = 10;
      int trials = 100;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<VerifyOpts>();
    cmd->add_option("--property", opt->property,
                    "subspace-embedding|low-rank");
    cmd->add_option("--method", opt->method, "sketch kind");
    cmd->add_option("--m", opt->m, "rows of the test matrix");
    cmd->add_option("--n", opt->n, "columns of the test matrix");
    cmd->add_option("--s", opt->s, "sketch size")->required();
    cmd->add_option("--k", opt->k, "target rank (low-rank property)");
    cmd->add_option("--trials", opt->trials, "probe directions");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->callback([&run, opt] {
      run("verify", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"property", opt->property},
                             {"method", opt->method},
                             {"m", std::to_string(opt->m)},
                             {"n", std::to_string(opt->n)},
                             {"s", std::to_string(opt->s)},
                             {"trials", std::to_string(opt->trials)}};
        randnla::SketchSpec spec;
        spec.kind = parse_kind(opt->method);
        spec.s = opt->s;
        spec.seed = opt->seed;
        if (opt->property == "subspace-embedding") {
          randnla::Rng rng =
              randnla::make_rng(randnla::derive_seed(opt->seed, 100));
          const DenseMatrix a = randnla::gaussian_matrix(opt->m, opt->n, rng);
          report.metrics["gamma"] =
              randnla::estimate_gamma(a, spec, opt->trials, opt->seed);
        } else if (opt->property == "low-rank") {
          const DenseMatrix a = power_law_matrix(
              opt->n, 2.0, randnla::derive_seed(opt->seed, 100));
          const DenseMatrix c = randnla::apply_sketch(a, spec);
          const auto eta = randnla::estimate_eta(a, c, opt->k);
          report.metrics["eta_proj"] = eta.eta_proj;
          report.metrics["eta_best"] = eta.eta_best;
        } else {
          throw std::invalid_argument("unknown property '" + opt->property +
                                      "'");
        }
      });
    });
  }

  // ------------------------------------------------------------------- lsr
  {
    auto* cmd = app.add_subcommand("lsr", "Least squares regression");
    struct LsrOpts {
      std::string method = "exact", input, rhs, sketch = "count", output;
      Index s = 0;
      double eps = 1e-8, tol = 1e-10;
      int maxit = 1000;
      bool use_cg = false;
      std::uint64_t seed = 0;
      bool seed_given = false;
    };
    auto opt = std::make_shared<LsrOpts>();
    cmd->add_option("--method", opt->method,
                    "exact|cg|sketched|preconditioned");
    cmd->add_option("--input", opt->input, "design matrix A")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--rhs", opt->rhs, "right-hand side b")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--sketch", opt->sketch, "count|gaussian|srht");
    cmd->add_option("--sketch-size", opt->s, "row-sketch size");
    cmd->add_option("--eps", opt->eps, "target accuracy (preconditioned)");
    cmd->add_option("--tol", opt->tol, "CG tolerance");
    cmd->add_option("--maxit", opt->maxit, "CG iteration cap");
    cmd->add_flag("--cg", opt->use_cg, "CG inner loop (preconditioned)");
    auto* seed_opt = cmd->add_option("--seed", opt->seed, "RNG seed");
    cmd->add_option("--output", opt->output, "save the solution here");
    cmd->callback([&run, opt, seed_opt] {
      run("lsr", [&](Report& report) {
        const bool randomized =
            opt->method == "sketched" || opt->method == "preconditioned";
        if (randomized && seed_opt->count() == 0)
          throw std::invalid_argument("--seed is required for --method " +
                                      opt->method);
        report.seed = opt->seed;
        report.parameters = {{"method", opt->method},
                             {"input", opt->input},
                             {"rhs", opt->rhs}};
        const DenseMatrix a = randnla::load_matrix(opt->input);
        const DenseMatrix brhs = randnla::load_matrix(opt->rhs);
        if (brhs.cols() != 1)
          throw std::invalid_argument("--rhs must be a single column");
        const Vector b = brhs.col(0);

        randnla::LsrSolution sol;
        if (opt->method == "exact") {
          sol = randnla::lsr_exact(a, b);
        } else if (opt->method == "cg") {
          sol = randnla::lsr_cg(a, b, opt->tol, opt->maxit);
        } else if (opt->method == "sketched") {
          randnla::SketchSpec spec;
          spec.kind = parse_kind(opt->sketch == "count" ? "count"
                                                        : opt->sketch);
          spec.s = opt->s > 0 ? opt->s : 20 * a.cols();
          spec.seed = opt->seed;
          sol = randnla::lsr_sketched(a, b, spec);
        } else if (opt->method == "preconditioned") {
          randnla::PreconditionedOptions popts;
          popts.sketch_size = opt->s;
          popts.use_cg = opt->use_cg;
          popts.sketch_kind =
              parse_kind(opt->sketch == "count" ? "count" : opt->sketch);
          sol = randnla::lsr_preconditioned(a, b, opt->eps, opt->seed, popts);
        } else {
          throw std::invalid_argument("unknown method '" + opt->method + "'");
        }
        if (!opt->output.empty()) {
          DenseMatrix x(sol.x.size(), 1);
          x.col(0) = sol.x;
          randnla::save_matrix(x, opt->output);
        }
        report.metrics["objective"] = sol.objective;
        report.metrics["iterations"] = sol.iterations;
        if (sol.kappa_estimate)
          report.metrics["kappa"] = *sol.kappa_estimate;
        if (sol.flagged) report.status = "flagged";
      });
    });
  }

  // ------------------------------------------------------------------ ksvd
  {
    auto* cmd = app.add_subcommand("ksvd", "Randomized k-SVD");
    struct KsvdOpts2 {
      std::string method = "prototype", input, output;
      Index k = 10, s = 0, p = 0, p_cs = 0;
      int q = 10;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<KsvdOpts2>();
    cmd->add_option("--method", opt->method, "prototype|faster|lanczos");
    cmd->add_option("--input", opt->input, "source matrix")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--k", opt->k, "target rank")->required();
    cmd->add_option("--s", opt->s, "sketch size (default 4k)");
    cmd->add_option("--p", opt->p, "row-sketch size (faster; default 4s)");
    cmd->add_option("--p-cs", opt->p_cs,
                    "count-sketch stage size (faster; default 4p)");
    cmd->add_option("--q", opt->q, "Lanczos iterations");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->add_option("--output", opt->output, "save U*diag(s)*V' here");
    cmd->callback([&run, opt] {
      run("ksvd", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"method", opt->method},
                             {"input", opt->input},
                             {"k", std::to_string(opt->k)}};
        const DenseMatrix a = randnla::load_matrix(opt->input);
        const Index s = opt->s > 0 ? opt->s : 4 * opt->k;
        randnla::KsvdOptions kopts;
        kopts.evaluate_error = true;
        randnla::KsvdResult result;
        if (opt->method == "prototype") {
          result = randnla::prototype_ksvd(a, opt->k, s, opt->seed, nullptr,
                                           kopts);
        } else if (opt->method == "faster") {
          const Index p = opt->p > 0 ? opt->p : 4 * s;
          const Index p_cs = opt->p_cs > 0 ? opt->p_cs : 4 * p;
          result = randnla::faster_ksvd(a, opt->k, s, p_cs, p, opt->seed,
                                        kopts);
        } else if (opt->method == "lanczos") {
          result = randnla::block_lanczos_ksvd(a, opt->k, opt->q, opt->seed,
                                               kopts);
        } else {
          throw std::invalid_argument("unknown method '" + opt->method + "'");
        }
        if (!opt->output.empty())
          randnla::save_matrix(result.factors.reconstruct(), opt->output);
        report.metrics["error_fro"] = *result.error_fro;
        report.metrics["passes"] = result.passes_over_a;
        report.metrics["top_sv"] = result.factors.singular_values(0);
      });
    });
  }

  // ------------------------------------------------------------------ spsd
  {
    auto* cmd = app.add_subcommand("spsd", "SPSD kernel sketching");
    struct SpsdOpts {
      std::string data, method = "faster";
      double sigma = 1.0;
      Index s = 0, p = 0;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<SpsdOpts>();
    cmd->add_option("--data", opt->data, "data points (rows)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--sigma", opt->sigma, "RBF kernel width")->required();
    cmd->add_option("--s", opt->s, "sketch size")->required();
    cmd->add_option("--p", opt->p, "secondary sample size (default 4s)");
    cmd->add_option("--method", opt->method, "prototype|faster");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->callback([&run, opt] {
      run("spsd", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"data", opt->data},
                             {"method", opt->method},
                             {"s", std::to_string(opt->s)}};
        const DenseMatrix x = randnla::load_matrix(opt->data);
        const DenseMatrix kernel = randnla::rbf_kernel(x, x, opt->sigma);
        randnla::SpsdSketch sk;
        if (opt->method == "prototype") {
          sk = randnla::spsd_prototype(kernel, opt->s, opt->seed);
        } else if (opt->method == "faster") {
          const Index p =
              std::min<Index>(opt->p > 0 ? opt->p : 4 * opt->s, x.rows());
          randnla::KernelView view(x, randnla::KernelSpec{opt->sigma});
          sk = randnla::spsd_faster(view, opt->s, p, opt->seed);
          report.metrics["kernel_entries"] =
              static_cast<double>(view.entries_evaluated());
        } else {
          throw std::invalid_argument("unknown method '" + opt->method + "'");
        }
        report.metrics["error_rel"] =
            (kernel - sk.reconstruct()).norm() / kernel.norm();
        if (sk.flagged) report.status = "flagged";
      });
    });
  }

  // --------------------------------------------------------------- nystrom
  {
    auto* cmd = app.add_subcommand("nystrom", "Nystrom kernel approximation");
    struct NystromOpts {
      std::string data;
      double sigma = 1.0;
      Index l = 100, k = 0;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<NystromOpts>();
    cmd->add_option("--data", opt->data, "data points (rows)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--sigma", opt->sigma, "RBF kernel width")->required();
    cmd->add_option("--l", opt->l, "number of landmarks");
    cmd->add_option("--k", opt->k, "retained rank (default ceil(0.8 l))");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->callback([&run, opt] {
      run("nystrom", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"data", opt->data},
                             {"l", std::to_string(opt->l)}};
        const DenseMatrix x = randnla::load_matrix(opt->data);
        randnla::KernelView view(x, randnla::KernelSpec{opt->sigma});
        const randnla::NystromFactor factor =
            randnla::nystrom(view, std::min<Index>(opt->l, x.rows()),
                             opt->seed, opt->k);
        const DenseMatrix kernel = randnla::rbf_kernel(x, x, opt->sigma);
        report.metrics["error_rel"] =
            (kernel - factor.L * factor.L.transpose()).norm() / kernel.norm();
        report.metrics["rank"] = static_cast<double>(factor.L.cols());
      });
    });
  }

  // ------------------------------------------------------------------- cur
  {
    auto* cmd = app.add_subcommand("cur", "CUR decomposition");
    struct CurOpts {
      std::string input, train, test, method = "faster", output;
      double sigma = 1.0;
      Index c = 10, r = 10, p_c = 0, p_r = 0;
      bool leverage = false;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<CurOpts>();
    cmd->add_option("--input", opt->input, "dense source matrix")
        ->check(CLI::ExistingFile);
    cmd->add_option("--train", opt->train, "kernel mode: train points")
        ->check(CLI::ExistingFile);
    cmd->add_option("--test", opt->test, "kernel mode: test points")
        ->check(CLI::ExistingFile);
    cmd->add_option("--sigma", opt->sigma, "RBF kernel width (kernel mode)");
    cmd->add_option("--method", opt->method, "prototype|faster");
    cmd->add_option("--c", opt->c, "selected columns")->required();
    cmd->add_option("--r", opt->r, "selected rows")->required();
    cmd->add_option("--p-c", opt->p_c, "secondary rows (default 2(c+r))");
    cmd->add_option("--p-r", opt->p_r, "secondary cols (default 2(c+r))");
    cmd->add_flag("--leverage", opt->leverage,
                  "leverage-score secondary sampling");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->add_option("--output", opt->output, "save C*U*R here");
    cmd->callback([&run, opt] {
      run("cur", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"method", opt->method},
                             {"c", std::to_string(opt->c)},
                             {"r", std::to_string(opt->r)}};
        randnla::CurFactors factors;
        if (!opt->input.empty()) {
          report.parameters["input"] = opt->input;
          const DenseMatrix a = randnla::load_matrix(opt->input);
          if (opt->method == "prototype") {
            factors = randnla::cur_prototype(a, opt->c, opt->r, opt->seed);
          } else {
            factors = randnla::cur_faster(
                a, opt->c, opt->r, opt->p_c, opt->p_r, opt->seed,
                opt->leverage ? randnla::CurSampler::kLeverage
                              : randnla::CurSampler::kUniform);
          }
          report.metrics["error_rel"] =
              (a - factors.reconstruct()).norm() / a.norm();
        } else if (!opt->train.empty() && !opt->test.empty()) {
          report.parameters["train"] = opt->train;
          report.parameters["test"] = opt->test;
          const DenseMatrix xtrain = randnla::load_matrix(opt->train);
          const DenseMatrix xtest = randnla::load_matrix(opt->test);
          factors = randnla::cur_faster_kernel(xtest, xtrain, opt->sigma,
                                               opt->c, opt->r, opt->seed);
          report.metrics["entries_visited"] =
              static_cast<double>(factors.entries_visited);
        } else {
          throw std::invalid_argument(
              "provide --input (dense) or --train and --test (kernel)");
        }
        if (!opt->output.empty())
          randnla::save_matrix(factors.reconstruct(), opt->output);
        report.metrics["core_rows"] = static_cast<double>(factors.U.rows());
        report.metrics["core_cols"] = static_cast<double>(factors.U.cols());
        if (factors.flagged) report.status = "flagged";
      });
    });
  }

  // ------------------------------------------------------------------ kpca
  {
    auto* cmd = app.add_subcommand("kpca", "Kernel PCA");
    struct KpcaOpts {
      std::string train, test, output;
      double sigma = 1.0;
      Index k = 2, s = 0;
      bool use_cur = false;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<KpcaOpts>();
    cmd->add_option("--train", opt->train, "training points")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--test", opt->test, "test points (optional)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--sigma", opt->sigma, "RBF kernel width")->required();
    cmd->add_option("--k", opt->k, "number of features")->required();
    cmd->add_option("--s", opt->s, "sketch size (default 10k)");
    cmd->add_flag("--cur", opt->use_cur, "CUR-accelerated test features");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->add_option("--output", opt->output, "save features here");
    cmd->callback([&run, opt] {
      run("kpca", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"train", opt->train},
                             {"k", std::to_string(opt->k)}};
        const DenseMatrix xtrain = randnla::load_matrix(opt->train);
        const randnla::KpcaModel model = randnla::kpca_train(
            xtrain, opt->sigma, opt->k, opt->seed, opt->s);
        report.metrics["train_feature_fro"] = model.train_features.norm();
        report.metrics["lambda_1"] = model.lambdas(0);
        DenseMatrix features = model.train_features;
        if (!opt->test.empty()) {
          const DenseMatrix xtest = randnla::load_matrix(opt->test);
          features = randnla::kpca_test(xtrain, xtest, opt->sigma, model,
                                        opt->use_cur,
                                        randnla::derive_seed(opt->seed, 1));
          report.metrics["test_feature_fro"] = features.norm();
        }
        if (!opt->output.empty())
          randnla::save_matrix(features, opt->output);
      });
    });
  }

  // --------------------------------------------------------------- cluster
  {
    auto* cmd = app.add_subcommand("cluster", "Spectral clustering");
    struct ClusterOpts {
      std::string data, method = "faster", output;
      double sigma = 1.0;
      Index k = 2, s = 0;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<ClusterOpts>();
    cmd->add_option("--data", opt->data, "data points (rows)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--sigma", opt->sigma, "RBF kernel width")->required();
    cmd->add_option("--k", opt->k, "number of clusters")->required();
    cmd->add_option("--s", opt->s, "sketch size (default 10k)");
    cmd->add_option("--method", opt->method, "faster|nystrom");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->add_option("--output", opt->output, "save labels here (one column)");
    cmd->callback([&run, opt] {
      run("cluster", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"data", opt->data},
                             {"method", opt->method},
                             {"k", std::to_string(opt->k)}};
        const DenseMatrix x = randnla::load_matrix(opt->data);
        const auto method = opt->method == "nystrom"
                                ? randnla::SpectralMethod::kNystrom
                                : randnla::SpectralMethod::kFaster;
        if (opt->method != "nystrom" && opt->method != "faster")
          throw std::invalid_argument("unknown method '" + opt->method + "'");
        const std::vector<int> labels = randnla::spectral_cluster(
            x, opt->sigma, opt->k, method, opt->seed, opt->s);
        if (!opt->output.empty()) {
          DenseMatrix out(static_cast<Index>(labels.size()), 1);
          for (std::size_t i = 0; i < labels.size(); ++i)
            out(static_cast<Index>(i), 0) = labels[i];
          randnla::save_matrix(out, opt->output);
        }
        std::map<int, int> sizes;
        for (int label : labels) ++sizes[label];
        report.metrics["n_points"] = static_cast<double>(labels.size());
        report.metrics["clusters_used"] = static_cast<double>(sizes.size());
      });
    });
  }

  // ------------------------------------------------------------------- gpr
  {
    auto* cmd = app.add_subcommand("gpr", "Gaussian process regression");
    struct GprOpts {
      std::string train, labels, test, output;
      double sigma = 1.0, alpha = 1e-2;
      Index l = 100;
      bool use_cur = false;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<GprOpts>();
    cmd->add_option("--train", opt->train, "training points")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--labels", opt->labels, "training labels (one column)")
        ->required()
        ->check(CLI::ExistingFile);
    cmd->add_option("--test", opt->test, "test points (optional)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--sigma", opt->sigma, "RBF kernel width")->required();
    cmd->add_option("--alpha", opt->alpha, "noise intensity")->required();
    cmd->add_option("--l", opt->l, "Nystrom landmarks");
    cmd->add_flag("--cur", opt->use_cur, "CUR-accelerated prediction");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->add_option("--output", opt->output, "save predictions here");
    cmd->callback([&run, opt] {
      run("gpr", [&](Report& report) {
        report.seed = opt->seed;
        report.parameters = {{"train", opt->train},
                             {"alpha", std::to_string(opt->alpha)},
                             {"l", std::to_string(opt->l)}};
        const DenseMatrix xtrain = randnla::load_matrix(opt->train);
        const DenseMatrix ymat = randnla::load_matrix(opt->labels);
        if (ymat.cols() != 1)
          throw std::invalid_argument("--labels must be a single column");
        const Vector w = randnla::gpr_train(xtrain, ymat.col(0), opt->sigma,
                                            opt->alpha, opt->seed, opt->l);
        report.metrics["w_norm"] = w.norm();
        if (!opt->test.empty()) {
          const DenseMatrix xtest = randnla::load_matrix(opt->test);
          const Vector pred = randnla::gpr_predict(
              xtrain, xtest, opt->sigma, w, opt->use_cur,
              randnla::derive_seed(opt->seed, 1));
          report.metrics["prediction_norm"] = pred.norm();
          if (!opt->output.empty()) {
            DenseMatrix out(pred.size(), 1);
            out.col(0) = pred;
            randnla::save_matrix(out, opt->output);
          }
        }
      });
    });
  }

  // ------------------------------------------------------------------ bench
  {
    auto* cmd = app.add_subcommand(
        "bench", "Run a verification suite (one report per criterion)");
    struct BenchOpts {
      std::string suite = "acceptance";
      int threads = 0;
      std::uint64_t seed = 0;
    };
    auto opt = std::make_shared<BenchOpts>();
    cmd->add_option("--suite", opt->suite, "suite name (acceptance)");
    cmd->add_option("--threads", opt->threads,
                    "worker threads (default RANDNLA_THREADS or 1)");
    cmd->add_option("--seed", opt->seed, "RNG seed")->required();
    cmd->callback([&run, &exit_code, opt] {
      if (opt->suite != "acceptance") {
        run("bench", [&](Report&) {
          throw std::invalid_argument("unknown suite '" + opt->suite + "'");
        });
        return;
      }
      Timer timer;
      const auto results = randnla::run_acceptance(opt->seed, opt->threads);
      const double per_criterion = timer.ms() / results.size();
      for (const auto& criterion : results) {
        Report report;
        report.command = "bench";
        report.seed = opt->seed;
        report.parameters = {{"suite", opt->suite},
                             {"criterion", criterion.name},
                             {"id", std::to_string(criterion.id)}};
        report.metrics = criterion.metrics;
        report.metrics["passed"] = criterion.passed ? 1.0 : 0.0;
        report.status = criterion.passed ? "ok" : "flagged";
        report.message = criterion.summary;
        emit(report, per_criterion);
        exit_code = std::max(exit_code, status_code(report.status));
      }
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
