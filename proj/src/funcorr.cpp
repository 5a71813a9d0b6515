#include "madmm/funcorr.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <memory>
#include <random>

#include "json.hpp"
#include "madmm/io.hpp"
#include "madmm/rng.hpp"

namespace madmm {

void CorrespondenceProblem::validate() const {
  if (bases.empty()) throw std::invalid_argument("correspondence problem: no shapes");
  if (bases.size() != eigenvalues.size())
    throw DimensionError("correspondence problem: bases/eigenvalues count mismatch");
  const Eigen::Index kk = k();
  if (kk < 1) throw DimensionError("correspondence problem: empty basis");
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (bases[i].cols() != kk)
      throw DimensionError("correspondence problem: all bases must share k");
    if (bases[i].rows() < kk)
      throw DimensionError("correspondence problem: basis has fewer rows than columns");
    if (eigenvalues[i].size() != kk)
      throw DimensionError("correspondence problem: eigenvalue length mismatch");
    const Matrix gram = bases[i].transpose() * bases[i];
    if ((gram - Matrix::Identity(kk, kk)).norm() > 1e-6)
      throw std::invalid_argument("correspondence problem: basis " + std::to_string(i) +
                                  " is not orthonormal");
  }
  if (pairs.empty()) throw std::invalid_argument("correspondence problem: no pairs");
  for (const CorrespondencePair& p : pairs) {
    if (p.i < 0 || p.j < 0 || p.i >= num_shapes() || p.j >= num_shapes() || p.i == p.j)
      throw std::invalid_argument("correspondence problem: invalid pair indices");
    if (p.f.cols() != p.g.cols() || p.f.cols() < 1)
      throw DimensionError("correspondence problem: pair F/G column mismatch");
    if (p.f.rows() != bases[static_cast<std::size_t>(p.i)].rows() ||
        p.g.rows() != bases[static_cast<std::size_t>(p.j)].rows())
      throw DimensionError("correspondence problem: pair row counts do not match bases");
  }
  if (!(mu >= 0.0)) throw std::invalid_argument("correspondence problem: mu must be >= 0");
}

double off_value(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("off_value: matrix must be square");
  return m.squaredNorm() - m.diagonal().squaredNorm();
}

double l21_norm(const Matrix& a) {
  double s = 0.0;
  for (Eigen::Index j = 0; j < a.cols(); ++j) s += a.col(j).norm();
  return s;
}

Matrix off_gradient(const Matrix& x, const Vector& lambda) {
  if (x.rows() != x.cols()) throw DimensionError("off_gradient: X must be square");
  if (lambda.size() != x.rows()) throw DimensionError("off_gradient: lambda length mismatch");
  const Matrix lx = lambda.asDiagonal() * x;
  Matrix s = x.transpose() * lx;
  s.diagonal().setZero();
  return 4.0 * lx * s;
}

FuncorrObjective funcorr_objective_parts(const std::vector<Matrix>& xs,
                                         const CorrespondenceProblem& prob) {
  if (xs.size() != prob.bases.size())
    throw DimensionError("funcorr_objective: rotation count mismatch");
  FuncorrObjective out;
  for (const CorrespondencePair& p : prob.pairs) {
    const Matrix lhs = p.f.transpose() *
                       (prob.bases[static_cast<std::size_t>(p.i)] * xs[static_cast<std::size_t>(p.i)]);
    const Matrix rhs = p.g.transpose() *
                       (prob.bases[static_cast<std::size_t>(p.j)] * xs[static_cast<std::size_t>(p.j)]);
    out.data_term += l21_norm(lhs - rhs);
  }
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Matrix s = xs[i].transpose() * (prob.eigenvalues[i].asDiagonal() * xs[i]);
    out.coupling_term += prob.mu * off_value(s);
  }
  return out;
}

double funcorr_objective(const std::vector<Matrix>& xs, const CorrespondenceProblem& prob) {
  return funcorr_objective_parts(xs, prob).total();
}

namespace {

// Per-pair reduced data P = F'Phi_i and Q = G'Phi_j; the residual block is
// P X_i - Q X_j, of size q x k.
struct PairBlock {
  int i = 0;
  int j = 0;
  Eigen::Index offset = 0;
  Matrix p;
  Matrix q;
};

std::shared_ptr<std::vector<PairBlock>> reduce_pairs(const CorrespondenceProblem& prob) {
  auto blocks = std::make_shared<std::vector<PairBlock>>();
  blocks->reserve(prob.pairs.size());
  Eigen::Index offset = 0;
  for (const CorrespondencePair& p : prob.pairs) {
    PairBlock b;
    b.i = p.i;
    b.j = p.j;
    b.offset = offset;
    b.p = p.f.transpose() * prob.bases[static_cast<std::size_t>(p.i)];
    b.q = p.g.transpose() * prob.bases[static_cast<std::size_t>(p.j)];
    offset += p.f.cols();
    blocks->push_back(std::move(b));
  }
  return blocks;
}

}  // namespace

std::vector<Eigen::Index> funcorr_block_offsets(const CorrespondenceProblem& prob) {
  std::vector<Eigen::Index> offsets;
  offsets.reserve(prob.pairs.size() + 1);
  Eigen::Index offset = 0;
  for (const CorrespondencePair& p : prob.pairs) {
    offsets.push_back(offset);
    offset += p.f.cols();
  }
  offsets.push_back(offset);
  return offsets;
}

LinearOperator funcorr_operator(const CorrespondenceProblem& prob) {
  prob.validate();
  auto blocks = reduce_pairs(prob);
  const Eigen::Index k = prob.k();
  const int num_shapes = prob.num_shapes();
  Eigen::Index total_rows = 0;
  for (const PairBlock& b : *blocks) total_rows += b.p.rows();

  LinearOperator op;
  op.out_rows = total_rows;
  op.out_cols = k;
  op.apply = [blocks, total_rows, k](const Point& x) {
    Matrix out(total_rows, k);
    for (const PairBlock& b : *blocks)
      out.middleRows(b.offset, b.p.rows()) =
          b.p * x.factors[static_cast<std::size_t>(b.i)] -
          b.q * x.factors[static_cast<std::size_t>(b.j)];
    return out;
  };
  op.adjoint = [blocks, num_shapes, k](const Point&, const Matrix& r) {
    FactorList g(static_cast<std::size_t>(num_shapes), Matrix::Zero(k, k));
    for (const PairBlock& b : *blocks) {
      const Matrix block = r.middleRows(b.offset, b.p.rows());
      g[static_cast<std::size_t>(b.i)] += b.p.transpose() * block;
      g[static_cast<std::size_t>(b.j)] -= b.q.transpose() * block;
    }
    return g;
  };
  return op;
}

MadmmOptions funcorr_default_options() {
  MadmmOptions opts;
  opts.rho = 1.0;
  opts.inner_iters = 4;
  opts.inner_method = DescentMethod::ConjugateGradient;
  opts.max_outer = 300;
  return opts;
}

FuncorrResult funcorr_solve(const CorrespondenceProblem& prob, const MadmmOptions& opts,
                            const MadmmIterCallback& on_iteration) {
  prob.validate();
  const Eigen::Index k = prob.k();
  const std::size_t num_shapes = prob.bases.size();
  const std::vector<Eigen::Index> offsets = funcorr_block_offsets(prob);

  SplitProblem sp{Manifold::product_stiefel(std::vector<Eigen::Index>(num_shapes, k), k),
                  {}, {}, {}, {}, {}};
  const double mu = prob.mu;
  const std::vector<Vector>& lambdas = prob.eigenvalues;
  sp.smooth_cost = [mu, &lambdas](const Point& x) {
    double c = 0.0;
    for (std::size_t i = 0; i < x.factors.size(); ++i) {
      const Matrix s = x.factors[i].transpose() * (lambdas[i].asDiagonal() * x.factors[i]);
      c += off_value(s);
    }
    return mu * c;
  };
  sp.smooth_grad = [mu, &lambdas](const Point& x) {
    FactorList g;
    g.reserve(x.factors.size());
    for (std::size_t i = 0; i < x.factors.size(); ++i)
      g.push_back(mu * off_gradient(x.factors[i], lambdas[i]));
    return g;
  };
  sp.op = funcorr_operator(prob);
  sp.prox_g = [offsets](const Matrix& v, double tau) {
    Matrix z(v.rows(), v.cols());
    for (std::size_t p = 0; p + 1 < offsets.size(); ++p) {
      const Eigen::Index rows = offsets[p + 1] - offsets[p];
      z.middleRows(offsets[p], rows) =
          group_shrink_columns(v.middleRows(offsets[p], rows), tau);
    }
    return z;
  };
  sp.g_value = [offsets](const Matrix& z) {
    double s = 0.0;
    for (std::size_t p = 0; p + 1 < offsets.size(); ++p)
      s += l21_norm(z.middleRows(offsets[p], offsets[p + 1] - offsets[p]));
    return s;
  };

  FactorList init(num_shapes, Matrix::Identity(k, k));
  MadmmResult res = madmm_solve(sp, Point(init), opts, on_iteration);

  FuncorrResult out;
  out.rotations = std::move(res.x.factors);
  out.objective = funcorr_objective_parts(out.rotations, prob);
  out.trace = std::move(res.trace);
  return out;
}

SynthCorrespondence synth_correspondence_problem(std::uint64_t seed, int num_shapes,
                                                 Eigen::Index n, Eigen::Index k,
                                                 Eigen::Index q, double outlier_frac) {
  if (num_shapes < 2) throw std::invalid_argument("synth: need at least two shapes");
  if (n < k || k < 1 || q < 1) throw std::invalid_argument("synth: need n >= k >= 1, q >= 1");
  if (!(outlier_frac >= 0.0 && outlier_frac < 1.0))
    throw std::invalid_argument("synth: outlier_frac must lie in [0, 1)");

  std::mt19937_64 gen(seed);
  SynthCorrespondence out;
  CorrespondenceProblem& prob = out.problem;

  std::uniform_real_distribution<double> jitter(0.0, 0.5);
  for (int s = 0; s < num_shapes; ++s) {
    prob.bases.push_back(qr_unique(gaussian_matrix(n, k, gen)));
    Vector lambda(k);
    for (Eigen::Index m = 0; m < k; ++m)
      lambda(m) = static_cast<double>(m) + jitter(gen);  // increasing, gaps >= 0.5
    prob.eigenvalues.push_back(lambda);
    out.ground_truth.push_back(qr_unique(gaussian_matrix(k, k, gen)));
  }

  const int outliers = static_cast<int>(std::floor(outlier_frac * static_cast<double>(q)));
  for (int i = 0; i < num_shapes; ++i) {
    for (int j = 0; j < num_shapes; ++j) {
      if (i == j) continue;
      CorrespondencePair pair;
      pair.i = i;
      pair.j = j;
      pair.f = gaussian_matrix(n, q, gen);
      // Consistent G: G' Phi_j R_j = F' Phi_i R_i holds exactly.
      const Matrix& ri = out.ground_truth[static_cast<std::size_t>(i)];
      const Matrix& rj = out.ground_truth[static_cast<std::size_t>(j)];
      const Matrix common = pair.f.transpose() * (prob.bases[static_cast<std::size_t>(i)] * ri);
      pair.g = prob.bases[static_cast<std::size_t>(j)] * (rj * common.transpose());

      // Replace a seeded subset of G's columns by norm-matched noise.
      std::vector<int> idx(static_cast<std::size_t>(q));
      for (Eigen::Index c = 0; c < q; ++c) idx[static_cast<std::size_t>(c)] = static_cast<int>(c);
      for (int t = 0; t < outliers; ++t) {
        std::uniform_int_distribution<int> pick(t, static_cast<int>(q) - 1);
        std::swap(idx[static_cast<std::size_t>(t)], idx[static_cast<std::size_t>(pick(gen))]);
      }
      std::vector<int> chosen(idx.begin(), idx.begin() + outliers);
      std::sort(chosen.begin(), chosen.end());
      for (int c : chosen) {
        Vector noise = gaussian_vector(n, gen);
        const double target = pair.g.col(c).norm();
        const double nn = noise.norm();
        pair.g.col(c) = noise * (nn > 0.0 ? (target > 0.0 ? target : 1.0) / nn : 0.0);
      }
      out.outlier_columns.push_back(std::move(chosen));
      prob.pairs.push_back(std::move(pair));
    }
  }

  // Default coupling weight: 1e-2 times the data term at the identity start.
  prob.mu = 0.0;
  std::vector<Matrix> identity(static_cast<std::size_t>(num_shapes), Matrix::Identity(k, k));
  prob.mu = 1e-2 * funcorr_objective_parts(identity, prob).data_term;
  return out;
}

void write_correspondence_problem(const std::filesystem::path& dir,
                                  const CorrespondenceProblem& prob) {
  prob.validate();
  std::filesystem::create_directories(dir);
  nlohmann::json manifest;
  manifest["format"] = "funcorr-problem-v1";
  manifest["num_shapes"] = prob.num_shapes();
  manifest["k"] = prob.k();
  manifest["mu"] = prob.mu;
  nlohmann::json shapes = nlohmann::json::array();
  for (int s = 0; s < prob.num_shapes(); ++s) {
    const std::string phi = "phi_" + std::to_string(s) + ".csv";
    const std::string lam = "lambda_" + std::to_string(s) + ".csv";
    write_dense_csv(dir / phi, prob.bases[static_cast<std::size_t>(s)]);
    write_dense_csv(dir / lam, prob.eigenvalues[static_cast<std::size_t>(s)]);
    shapes.push_back({{"basis", phi}, {"eigenvalues", lam}});
  }
  manifest["shapes"] = shapes;
  nlohmann::json pairs = nlohmann::json::array();
  for (std::size_t p = 0; p < prob.pairs.size(); ++p) {
    const std::string f = "F_" + std::to_string(p) + ".csv";
    const std::string g = "G_" + std::to_string(p) + ".csv";
    write_dense_csv(dir / f, prob.pairs[p].f);
    write_dense_csv(dir / g, prob.pairs[p].g);
    pairs.push_back({{"i", prob.pairs[p].i}, {"j", prob.pairs[p].j}, {"F", f}, {"G", g}});
  }
  manifest["pairs"] = pairs;
  std::ofstream out(dir / "problem.json", std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + (dir / "problem.json").string());
  out << manifest.dump(2) << "\n";
  if (!out) throw IoError("write failed: " + (dir / "problem.json").string());
}

CorrespondenceProblem read_correspondence_problem(const std::filesystem::path& dir) {
  const std::filesystem::path manifest_path = dir / "problem.json";
  std::ifstream in(manifest_path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + manifest_path.string());
  nlohmann::json manifest;
  try {
    in >> manifest;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(manifest_path.string() + ": " + e.what());
  }
  CorrespondenceProblem prob;
  try {
    prob.mu = manifest.at("mu").get<double>();
    for (const auto& shape : manifest.at("shapes")) {
      prob.bases.push_back(read_dense_csv(dir / shape.at("basis").get<std::string>()));
      Matrix lam = read_dense_csv(dir / shape.at("eigenvalues").get<std::string>());
      if (lam.cols() != 1) throw IoError("eigenvalue files must be a single column");
      prob.eigenvalues.push_back(lam.col(0));
    }
    for (const auto& pair : manifest.at("pairs")) {
      CorrespondencePair p;
      p.i = pair.at("i").get<int>();
      p.j = pair.at("j").get<int>();
      p.f = read_dense_csv(dir / pair.at("F").get<std::string>());
      p.g = read_dense_csv(dir / pair.at("G").get<std::string>());
      prob.pairs.push_back(std::move(p));
    }
  } catch (const nlohmann::json::exception& e) {
    throw IoError(manifest_path.string() + ": " + e.what());
  }
  try {
    prob.validate();
  } catch (const std::exception& e) {
    throw IoError(manifest_path.string() + ": " + e.what());
  }
  return prob;
}

}  // namespace madmm
