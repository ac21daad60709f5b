#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <vector>

#include "rhb/problem.hpp"

namespace rhb {

struct RatingTriple {
  std::size_t row = 0;
  std::size_t col = 0;
  double value = 0.0;
  friend bool operator==(const RatingTriple&, const RatingTriple&) = default;
};

struct RatingData {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<RatingTriple> triples;
};

// Low-rank factorization objective over observed entries Ω (N = |Ω|):
//   f(U, V) = 1/(2N) Σ ((U V^T)_ij - s)^2 + 1/(2N) ||U^T U - V^T V||_F^2
// The variable packs U (p x r) then V (q x r), both row-major.
class MatrixCompletionProblem final : public Problem {
 public:
  MatrixCompletionProblem(std::size_t p, std::size_t q, std::size_t r, std::vector<RatingTriple> omega);

  std::string name() const override { return "completion"; }
  std::size_t dim() const override { return (p_ + q_) * r_; }
  double evaluate(std::span<const double> x, std::span<double> grad) const override;
  std::optional<double> known_optimum() const override { return 0.0; }

  std::size_t rows() const { return p_; }
  std::size_t cols() const { return q_; }
  std::size_t rank() const { return r_; }
  std::size_t observed() const { return omega_.size(); }

 private:
  std::size_t p_, q_, r_;
  // Sorted by (row, col, value); row_start_ indexes into it.
  std::vector<RatingTriple> omega_;
  std::vector<std::size_t> row_start_;
  // Positions of omega_ entries grouped by column.
  std::vector<std::size_t> col_order_;
  std::vector<std::size_t> col_start_;
};

std::unique_ptr<MatrixCompletionProblem> make_matrix_completion(std::size_t p, std::size_t q, std::size_t r,
                                                                std::vector<RatingTriple> omega);

// MovieLens-100K `u.data`: tab-separated `user item rating timestamp`, ids 1-based.
// Throws ParseError (with line number) or EmptyFile.
RatingData load_movielens(std::istream& in);
RatingData load_movielens(const std::filesystem::path& path);

// Throws ParseError unless the data has the MovieLens-100K shape
// (943 users, 1682 items, 100000 ratings).
void expect_ml100k_shape(const RatingData& data);

struct SyntheticCompletion {
  RatingData data;
  // Planted factors, packed like the problem variable (U then V).
  DenseVector planted{1};
};

// Balanced planting: U0 = V0 = G with G_{ij} ~ N(0, 1) (requires p == q) gives
// U0^T U0 = V0^T V0; for p != q, U0 and V0 are drawn independently.
// Samples ceil(density * p * q) distinct cells uniformly without replacement.
SyntheticCompletion synthetic_completion(std::size_t p, std::size_t q, std::size_t r, double density,
                                         std::uint64_t seed);

// CSV with header `row,col,value`, indices 0-based.
void write_triples_csv(std::ostream& out, const std::vector<RatingTriple>& triples);
RatingData read_triples_csv(std::istream& in);

}  // namespace rhb
