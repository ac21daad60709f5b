#include "rhb/completion.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <string>

#include <Eigen/Dense>

#include "rhb/errors.hpp"
#include "rhb/kernels.hpp"
#include "rhb/rng.hpp"
#include "rhb/trace_io.hpp"

namespace rhb {

MatrixCompletionProblem::MatrixCompletionProblem(std::size_t p, std::size_t q, std::size_t r,
                                                 std::vector<RatingTriple> omega)
    : p_(p), q_(q), r_(r), omega_(std::move(omega)) {
  if (p == 0 || q == 0 || r == 0) throw InvalidInput("completion: p, q, r must be positive");
  if (omega_.empty()) throw InvalidInput("completion: no observed entries");
  for (const auto& t : omega_) {
    if (t.row >= p_ || t.col >= q_)
      throw IndexOutOfRange("completion: entry (" + std::to_string(t.row) + ", " + std::to_string(t.col) +
                            ") outside " + std::to_string(p_) + " x " + std::to_string(q_));
    if (!std::isfinite(t.value)) throw InvalidInput("completion: non-finite rating");
  }
  // Canonical order makes every sum independent of the input permutation.
  std::sort(omega_.begin(), omega_.end(), [](const RatingTriple& a, const RatingTriple& b) {
    if (a.row != b.row) return a.row < b.row;
    if (a.col != b.col) return a.col < b.col;
    return a.value < b.value;
  });

  row_start_.assign(p_ + 1, 0);
  col_start_.assign(q_ + 1, 0);
  for (const auto& t : omega_) {
    ++row_start_[t.row + 1];
    ++col_start_[t.col + 1];
  }
  std::partial_sum(row_start_.begin(), row_start_.end(), row_start_.begin());
  std::partial_sum(col_start_.begin(), col_start_.end(), col_start_.begin());
  col_order_.resize(omega_.size());
  std::vector<std::size_t> fill = col_start_;
  for (std::size_t t = 0; t < omega_.size(); ++t) col_order_[fill[omega_[t].col]++] = t;
}

double MatrixCompletionProblem::evaluate(std::span<const double> x, std::span<double> grad) const {
  const std::size_t r = r_;
  const double n_inv = 1.0 / static_cast<double>(omega_.size());
  const double* u = x.data();
  const double* v = x.data() + p_ * r;
  double* gu = grad.data();
  double* gv = grad.data() + p_ * r;

  // M = U^T U - V^T V (r x r, row-major).
  std::vector<double> m(r * r);
  kernels::for_each_index(r * r, [&](std::size_t ab) {
    const std::size_t a = ab / r, b = ab % r;
    double su = 0.0, sv = 0.0;
    for (std::size_t i = 0; i < p_; ++i) su += u[i * r + a] * u[i * r + b];
    for (std::size_t j = 0; j < q_; ++j) sv += v[j * r + a] * v[j * r + b];
    m[ab] = su - sv;
  });
  const double balance = kernels::serial::norm_sq(m);

  std::vector<double> resid(omega_.size());
  const double fit = kernels::reduce_indexed(omega_.size(), [&](std::size_t t) {
    const auto& e = omega_[t];
    double s = 0.0;
    for (std::size_t c = 0; c < r; ++c) s += u[e.row * r + c] * v[e.col * r + c];
    resid[t] = s - e.value;
    return resid[t] * resid[t];
  });

  kernels::for_each_index(p_, [&](std::size_t i) {
    double* gi = gu + i * r;
    for (std::size_t c = 0; c < r; ++c) gi[c] = 0.0;
    for (std::size_t t = row_start_[i]; t < row_start_[i + 1]; ++t) {
      const double e = resid[t];
      const double* vj = v + omega_[t].col * r;
      for (std::size_t c = 0; c < r; ++c) gi[c] += e * vj[c];
    }
    for (std::size_t c = 0; c < r; ++c) {
      double um = 0.0;
      for (std::size_t a = 0; a < r; ++a) um += u[i * r + a] * m[a * r + c];
      gi[c] = n_inv * gi[c] + 2.0 * n_inv * um;
    }
  });
  kernels::for_each_index(q_, [&](std::size_t j) {
    double* gj = gv + j * r;
    for (std::size_t c = 0; c < r; ++c) gj[c] = 0.0;
    for (std::size_t s = col_start_[j]; s < col_start_[j + 1]; ++s) {
      const std::size_t t = col_order_[s];
      const double e = resid[t];
      const double* ui = u + omega_[t].row * r;
      for (std::size_t c = 0; c < r; ++c) gj[c] += e * ui[c];
    }
    for (std::size_t c = 0; c < r; ++c) {
      double vm = 0.0;
      for (std::size_t a = 0; a < r; ++a) vm += v[j * r + a] * m[a * r + c];
      gj[c] = n_inv * gj[c] - 2.0 * n_inv * vm;
    }
  });

  return 0.5 * n_inv * fit + 0.5 * n_inv * balance;
}

std::unique_ptr<MatrixCompletionProblem> make_matrix_completion(std::size_t p, std::size_t q, std::size_t r,
                                                                std::vector<RatingTriple> omega) {
  return std::make_unique<MatrixCompletionProblem>(p, q, r, std::move(omega));
}

namespace {

template <class T>
bool parse_int(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

}  // namespace

RatingData load_movielens(std::istream& in) {
  RatingData data;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::string_view rest = line;
    std::string_view fields[4];
    std::size_t nf = 0;
    while (nf < 4) {
      const auto tab = rest.find('\t');
      fields[nf++] = rest.substr(0, tab);
      if (tab == std::string_view::npos) {
        rest = {};
        break;
      }
      rest.remove_prefix(tab + 1);
    }
    if (nf != 4 || !rest.empty()) throw ParseError("expected 4 tab-separated fields", line_no);
    std::uint64_t user = 0, item = 0, stamp = 0;
    std::int64_t rating = 0;
    if (!parse_int(fields[0], user) || !parse_int(fields[1], item) || !parse_int(fields[2], rating) ||
        !parse_int(fields[3], stamp))
      throw ParseError("non-integer field", line_no);
    if (user == 0 || item == 0) throw ParseError("ids are 1-based", line_no);
    data.triples.push_back({user - 1, item - 1, static_cast<double>(rating)});
    data.rows = std::max<std::size_t>(data.rows, user);
    data.cols = std::max<std::size_t>(data.cols, item);
  }
  if (data.triples.empty()) throw EmptyFile("no ratings found");
  return data;
}

RatingData load_movielens(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open " + path.string());
  return load_movielens(in);
}

void expect_ml100k_shape(const RatingData& data) {
  if (data.rows != 943 || data.cols != 1682 || data.triples.size() != 100000)
    throw ParseError("not MovieLens-100K: got " + std::to_string(data.rows) + " x " + std::to_string(data.cols) +
                         " with " + std::to_string(data.triples.size()) + " ratings",
                     0);
}

SyntheticCompletion synthetic_completion(std::size_t p, std::size_t q, std::size_t r, double density,
                                         std::uint64_t seed) {
  if (p == 0 || q == 0 || r == 0) throw InvalidInput("synthetic: p, q, r must be positive");
  if (!(density > 0.0 && density <= 1.0)) throw InvalidInput("synthetic: density must lie in (0, 1]");
  const double cells = static_cast<double>(p) * static_cast<double>(q);
  const auto count = static_cast<std::size_t>(std::ceil(density * cells));
  if (count < 1) throw InvalidInput("synthetic: density * p * q must be >= 1");

  Rng rng(seed);
  using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  const auto P = static_cast<Eigen::Index>(p), Q = static_cast<Eigen::Index>(q), R = static_cast<Eigen::Index>(r);
  Mat g(P, R), h(Q, R);
  for (Eigen::Index i = 0; i < P; ++i)
    for (Eigen::Index c = 0; c < R; ++c) g(i, c) = rng.normal();
  for (Eigen::Index j = 0; j < Q; ++j)
    for (Eigen::Index c = 0; c < R; ++c) h(j, c) = rng.normal();

  // Partial Fisher-Yates over cell ids, then row-major order.
  std::vector<std::size_t> ids(p * q);
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  for (std::size_t t = 0; t < count; ++t) {
    const std::size_t pick = t + static_cast<std::size_t>(rng.below(ids.size() - t));
    std::swap(ids[t], ids[pick]);
  }
  ids.resize(count);
  std::sort(ids.begin(), ids.end());

  SyntheticCompletion out;
  out.data.rows = p;
  out.data.cols = q;
  out.data.triples.reserve(count);
  for (std::size_t id : ids) {
    const std::size_t i = id / q, j = id % q;
    const double s = g.row(static_cast<Eigen::Index>(i)).dot(h.row(static_cast<Eigen::Index>(j)));
    out.data.triples.push_back({i, j, s});
  }

  // Balanced factors of G H^T: with G = Qg Rg, H = Qh Rh and Rg Rh^T = A S B^T,
  // U = Qg A sqrt(S), V = Qh B sqrt(S) satisfy U V^T = G H^T and U^T U = V^T V = S.
  Eigen::HouseholderQR<Mat> qr_g(g), qr_h(h);
  const Eigen::Index kg = std::min(P, R), kh = std::min(Q, R);
  const Mat qg = qr_g.householderQ() * Mat::Identity(P, kg);
  const Mat qh = qr_h.householderQ() * Mat::Identity(Q, kh);
  const Mat rg = qr_g.matrixQR().topRows(kg).template triangularView<Eigen::Upper>();
  const Mat rh = qr_h.matrixQR().topRows(kh).template triangularView<Eigen::Upper>();
  Eigen::JacobiSVD<Mat> svd(rg * rh.transpose(), Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::VectorXd root = svd.singularValues().cwiseSqrt();
  const Eigen::Index k = root.size();
  Mat u = Mat::Zero(P, R), v = Mat::Zero(Q, R);
  u.leftCols(k) = qg * svd.matrixU().leftCols(k) * root.asDiagonal();
  v.leftCols(k) = qh * svd.matrixV().leftCols(k) * root.asDiagonal();

  std::vector<double> packed(u.data(), u.data() + u.size());
  packed.insert(packed.end(), v.data(), v.data() + v.size());
  out.planted = DenseVector(std::move(packed));
  return out;
}

void write_triples_csv(std::ostream& out, const std::vector<RatingTriple>& triples) {
  out << "row,col,value\n";
  for (const auto& t : triples) out << t.row << ',' << t.col << ',' << format_real(t.value) << '\n';
}

RatingData read_triples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw EmptyFile("no header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "row,col,value") throw ParseError("expected header row,col,value", 1);
  RatingData data;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto c1 = line.find(',');
    const auto c2 = c1 == std::string::npos ? c1 : line.find(',', c1 + 1);
    if (c2 == std::string::npos) throw ParseError("expected 3 fields", line_no);
    const std::string_view s(line);
    RatingTriple t;
    const auto vs = s.substr(c2 + 1);
    const auto [ptr, ec] = std::from_chars(vs.data(), vs.data() + vs.size(), t.value);
    if (!parse_int(s.substr(0, c1), t.row) || !parse_int(s.substr(c1 + 1, c2 - c1 - 1), t.col) ||
        ec != std::errc{} || ptr != vs.data() + vs.size())
      throw ParseError("bad field", line_no);
    data.rows = std::max(data.rows, t.row + 1);
    data.cols = std::max(data.cols, t.col + 1);
    data.triples.push_back(t);
  }
  if (data.triples.empty()) throw EmptyFile("no triples");
  return data;
}

}  // namespace rhb
