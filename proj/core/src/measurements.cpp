#include "qict/measurements.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "qict/rng.hpp"

namespace qict {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_prime(int n) {
  if (n < 2) return false;
  for (int k = 2; k * k <= n; ++k) {
    if (n % k == 0) return false;
  }
  return true;
}

Matrix shift_matrix(int d) {
  Matrix x = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) x((j + 1) % d, j) = 1.0;
  return x;
}

Matrix clock_matrix(int d) {
  Matrix z = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) z(j, j) = std::polar(1.0, 2.0 * kPi * j / d);
  return z;
}

CVector builtin_fiducial(int d) {
  if (d == 2) {
    // Bloch vector (1,1,1)/sqrt(3).
    double theta = std::acos(1.0 / std::sqrt(3.0));
    CVector f(2);
    f << std::cos(theta / 2), std::polar(std::sin(theta / 2), kPi / 4);
    return f;
  }
  if (d == 3) {
    // Hesse configuration fiducial (0, 1, -1)/sqrt(2).
    CVector f(3);
    f << 0.0, 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
    return f;
  }
  throw std::invalid_argument("sic_rank_one: no built-in fiducial for d = " + std::to_string(d) +
                              "; supply one");
}

double gram_condition(const std::vector<Operator>& ops) {
  int n = static_cast<int>(ops.size());
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      g(j, k) = g(k, j) = hs_inner(ops[j], ops[k]).real();
    }
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(g);
  double smin = svd.singularValues()(n - 1);
  if (smin <= 0) return std::numeric_limits<double>::infinity();
  return svd.singularValues()(0) / smin;
}

}  // namespace

Povm::Povm(std::vector<Operator> outcomes_, std::string label_)
    : outcomes(std::move(outcomes_)), label(std::move(label_)) {
  if (outcomes.empty()) throw std::invalid_argument("Povm: needs at least one outcome");
  int d = outcomes.front().dim();
  for (const auto& op : outcomes) {
    if (op.dim() != d) throw std::invalid_argument("Povm: outcomes have mixed dimensions");
  }
}

std::string ValidationReport::describe() const {
  std::ostringstream os;
  os << (passed ? "pass" : "FAIL") << " (completeness deviation " << completeness_deviation
     << ", min eigenvalue " << min_eigenvalue << " at outcome " << worst_outcome << ")";
  return os.str();
}

ValidationReport validate(const Povm& p, double tolerance) {
  ValidationReport rep;
  int d = p.dim();
  Matrix sum = Matrix::Zero(d, d);
  rep.min_eigenvalue = std::numeric_limits<double>::infinity();
  for (int j = 0; j < p.size(); ++j) {
    sum += p.outcomes[j].matrix();
    double lo = p.outcomes[j].min_eigenvalue();
    if (lo < rep.min_eigenvalue) {
      rep.min_eigenvalue = lo;
      rep.worst_outcome = j;
    }
  }
  rep.completeness_deviation = (sum - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  rep.passed = rep.completeness_deviation < tolerance && rep.min_eigenvalue > -tolerance;
  return rep;
}

Povm sic_rank_one(int d, const std::optional<CVector>& fiducial) {
  if (d < 2) throw std::invalid_argument("sic_rank_one: d must be at least 2");
  CVector fid = fiducial ? *fiducial : builtin_fiducial(d);
  if (fid.size() != d) throw std::invalid_argument("sic_rank_one: fiducial has wrong dimension");
  double norm = fid.norm();
  if (norm < 1e-12) throw std::invalid_argument("sic_rank_one: zero fiducial");
  fid /= norm;

  Matrix x = shift_matrix(d);
  Matrix z = clock_matrix(d);
  std::vector<CVector> states;
  states.reserve(d * d);
  Matrix xa = Matrix::Identity(d, d);
  for (int a = 0; a < d; ++a) {
    Matrix zb = Matrix::Identity(d, d);
    for (int b = 0; b < d; ++b) {
      states.push_back(xa * (zb * fid));
      zb = z * zb;
    }
    xa = x * xa;
  }

  // Eq.-of-equiangularity check on the orbit.
  double target = 1.0 / (d + 1);
  double worst = 0.0;
  for (size_t j = 0; j < states.size(); ++j) {
    for (size_t k = j + 1; k < states.size(); ++k) {
      double ov = std::norm(states[j].dot(states[k]));
      worst = std::max(worst, std::abs(ov - target));
    }
  }
  double allowed = fiducial ? 1e-6 : 1e-9;
  if (worst > allowed) {
    throw std::runtime_error("sic_rank_one: orbit is not equiangular, worst |<psi_j|psi_k>|^2 "
                             "deviation from 1/(d+1) is " + std::to_string(worst));
  }

  std::vector<Operator> outcomes;
  outcomes.reserve(states.size());
  for (const auto& s : states) {
    outcomes.emplace_back(Matrix(s * s.adjoint() / static_cast<double>(d)));
  }
  return Povm(std::move(outcomes), "sic-d" + std::to_string(d));
}

Povm generalized_sic_depolarized(const Povm& base, double x) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw std::invalid_argument("generalized_sic_depolarized: x must lie in (0, 1]");
  }
  int d = base.dim();
  if (base.size() != d * d) {
    throw std::invalid_argument("generalized_sic_depolarized: base must have d^2 outcomes");
  }
  Operator pad = ((1.0 - x) / (d * d)) * Operator::identity(d);
  std::vector<Operator> outcomes;
  outcomes.reserve(base.size());
  for (const auto& op : base.outcomes) outcomes.push_back(x * op + pad);
  std::ostringstream label;
  label << "gen-sic-depol-d" << d << "-x" << x;
  return Povm(std::move(outcomes), label.str());
}

std::vector<Operator> traceless_hermitian_basis(int d) {
  std::vector<Operator> basis;
  basis.reserve(d * d - 1);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int j = 0; j < d; ++j) {
    for (int k = j + 1; k < d; ++k) {
      Matrix sym = Matrix::Zero(d, d);
      sym(j, k) = inv_sqrt2;
      sym(k, j) = inv_sqrt2;
      basis.emplace_back(sym);
      Matrix asym = Matrix::Zero(d, d);
      asym(j, k) = Complex(0, -inv_sqrt2);
      asym(k, j) = Complex(0, inv_sqrt2);
      basis.emplace_back(asym);
    }
  }
  for (int l = 1; l < d; ++l) {
    Matrix diag = Matrix::Zero(d, d);
    double scale = 1.0 / std::sqrt(static_cast<double>(l) * (l + 1));
    for (int i = 0; i < l; ++i) diag(i, i) = scale;
    diag(l, l) = -l * scale;
    basis.emplace_back(diag);
  }
  return basis;
}

Povm generalized_sic_simplex(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("generalized_sic_simplex: d must be at least 2");
  const int n = d * d;
  const int m = n - 1;

  // Regular simplex vertices v_j in the sum-zero hyperplane of R^n,
  // v_j . v_k = d^2 delta_jk - 1, expressed in an orthonormal basis of the
  // hyperplane obtained from the QR of [ones | e_1 .. e_{n-1}].
  Eigen::MatrixXd span(n, n);
  span.col(0).setOnes();
  span.rightCols(m) = Eigen::MatrixXd::Identity(n, n).leftCols(m);
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(span);
  Eigen::MatrixXd h = Eigen::MatrixXd(qr.householderQ()).rightCols(m);  // n x (n-1)

  Eigen::MatrixXd verts =
      static_cast<double>(d) *
      (Eigen::MatrixXd::Identity(n, n) - Eigen::MatrixXd::Constant(n, n, 1.0 / n));
  Eigen::MatrixXd coords = verts * h;  // n x (n-1), rows are vertex coordinates

  auto rng = seeded_rng(seed);
  Eigen::MatrixXd rot = random_orthogonal(m, rng);
  coords = coords * rot.transpose();

  std::vector<Operator> tbasis = traceless_hermitian_basis(d);
  std::vector<Operator> bs;
  bs.reserve(n);
  double most_negative = 0.0;
  for (int j = 0; j < n; ++j) {
    Matrix b = Matrix::Zero(d, d);
    for (int a = 0; a < m; ++a) b += coords(j, a) * tbasis[a].matrix();
    bs.emplace_back(b);
    most_negative = std::min(most_negative, bs.back().min_eigenvalue());
  }
  // Largest admissible scale: pushes the worst eigenvalue to exactly -1.
  double t = 1.0 / std::abs(most_negative);

  std::vector<Operator> outcomes;
  outcomes.reserve(n);
  Operator id = Operator::identity(d);
  for (int j = 0; j < n; ++j) {
    outcomes.push_back((1.0 / n) * (id + t * bs[j]));
  }
  return Povm(std::move(outcomes), "gen-sic-simplex-d" + std::to_string(d));
}

Povm mub_complete(int d) {
  if (!is_prime(d)) {
    throw std::invalid_argument("mub_complete: dimension must be prime, got " + std::to_string(d));
  }
  std::vector<CVector> states;
  states.reserve(d * (d + 1));
  // Computational basis.
  for (int v = 0; v < d; ++v) states.push_back(CVector::Unit(d, v));
  if (d == 2) {
    CVector plus(2), minus(2), plus_i(2), minus_i(2);
    double s = 1.0 / std::sqrt(2.0);
    plus << s, s;
    minus << s, -s;
    plus_i << s, Complex(0, s);
    minus_i << s, Complex(0, -s);
    states.insert(states.end(), {plus, minus, plus_i, minus_i});
  } else {
    // Odd prime: basis b has vectors with components w^(b l^2 + v l)/sqrt(d).
    for (int b = 0; b < d; ++b) {
      for (int v = 0; v < d; ++v) {
        CVector psi(d);
        for (int l = 0; l < d; ++l) {
          int phase = (b * l * l + v * l) % d;
          psi(l) = std::polar(1.0 / std::sqrt(static_cast<double>(d)), 2.0 * kPi * phase / d);
        }
        states.push_back(psi);
      }
    }
  }
  std::vector<Operator> outcomes;
  outcomes.reserve(states.size());
  for (const auto& s : states) {
    outcomes.emplace_back(Matrix(s * s.adjoint() / static_cast<double>(d + 1)));
  }
  return Povm(std::move(outcomes), "mub-d" + std::to_string(d));
}

Povm cube_qubit() {
  const double s = 1.0 / std::sqrt(3.0);
  const double corners[8][3] = {{1, 1, 1},   {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1},
                                {-1, -1, -1}, {-1, 1, 1},  {1, -1, 1},  {1, 1, -1}};
  std::vector<Operator> outcomes;
  outcomes.reserve(8);
  for (const auto& c : corners) {
    Matrix bloch(2, 2);
    double x = c[0] * s, y = c[1] * s, z = c[2] * s;
    bloch << Complex(1 + z, 0), Complex(x, -y), Complex(x, y), Complex(1 - z, 0);
    outcomes.emplace_back(Matrix(bloch / 8.0));
  }
  return Povm(std::move(outcomes), "cube-qubit");
}

Povm random_minimal_ic(int d, std::uint64_t seed) {
  if (d < 2) throw std::invalid_argument("random_minimal_ic: d must be at least 2");
  auto rng = seeded_rng(seed);
  const int n = d * d;
  constexpr int kMaxTries = 64;
  for (int attempt = 0; attempt < kMaxTries; ++attempt) {
    std::vector<Matrix> raw;
    raw.reserve(n);
    Matrix total = Matrix::Zero(d, d);
    for (int j = 0; j < n; ++j) {
      Matrix g = complex_ginibre(d, d, rng);
      raw.push_back(g * g.adjoint());
      total += raw.back();
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(total);
    Matrix inv_sqrt = es.operatorInverseSqrt();
    std::vector<Operator> outcomes;
    outcomes.reserve(n);
    for (const auto& a : raw) outcomes.emplace_back(Matrix(inv_sqrt * a * inv_sqrt));
    if (gram_condition(outcomes) < 1e6) {
      return Povm(std::move(outcomes), "random-ic-d" + std::to_string(d));
    }
  }
  throw std::runtime_error("random_minimal_ic: retry budget exhausted for seed " +
                           std::to_string(seed));
}

PurityReport purity_report(const Povm& p, const DensityState* rho) {
  PurityReport rep;
  rep.per_outcome.reserve(p.size());
  double avg = 0.0;
  for (int j = 0; j < p.size(); ++j) {
    double tr = p.outcomes[j].trace();
    if (tr < tol::prob) {
      throw std::invalid_argument("purity_report: outcome " + std::to_string(j) +
                                  " has (near-)zero trace; drop it upstream");
    }
    double purity = p.outcomes[j].hs_norm_sq() / (tr * tr);
    rep.per_outcome.push_back(purity);
    avg += tr * purity;
  }
  rep.average = avg / p.dim();
  if (rho != nullptr) {
    RVector probs = born_probabilities(p, *rho);
    double w = 0.0;
    for (int j = 0; j < p.size(); ++j) w += probs(j) * rep.per_outcome[j];
    rep.weighted = w;
  }
  return rep;
}

RVector born_probabilities(const Povm& p, const DensityState& rho) {
  if (p.dim() != rho.dim()) {
    throw std::invalid_argument("born_probabilities: dimension mismatch");
  }
  RVector probs(p.size());
  for (int j = 0; j < p.size(); ++j) {
    probs(j) = hs_inner(p.outcomes[j], rho.op()).real();
  }
  return probs;
}

}  // namespace qict
