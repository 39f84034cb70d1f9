#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace nlpsel {

// Malformed or inconsistent input data.
struct DataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Unrecoverable numerical failure (singular system after jitter, etc.).
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Ordered set of column indices. Immutable iteration order: ascending.
class VariableSet {
 public:
  VariableSet() = default;
  explicit VariableSet(std::vector<int> indices);

  bool contains(int j) const;
  void insert(int j);
  void erase(int j);
  int size() const { return static_cast<int>(idx_.size()); }
  bool empty() const { return idx_.empty(); }
  const std::vector<int>& indices() const { return idx_; }

  auto begin() const { return idx_.begin(); }
  auto end() const { return idx_.end(); }

  friend bool operator==(const VariableSet&, const VariableSet&) = default;

 private:
  std::vector<int> idx_;  // ascending, unique
};

// Design matrix + binary outcome. Immutable after construction.
struct Dataset {
  Eigen::MatrixXd X;               // n x p
  Eigen::VectorXd y;               // length n, entries in {0,1}
  std::vector<std::string> names;  // p column names
  bool standardized = false;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index p() const { return X.cols(); }

  // Checks all invariants (binary y with both classes, finite X,
  // no constant columns, n >= 2, p >= 1). Throws DataError.
  void validate() const;
};

// Loads X from a CSV with a header row. y_spec is either a path to a
// single-column CSV or the name of a column of the X file (that column is
// then removed from the predictors).
Dataset load_dataset(const std::string& x_path, const std::string& y_spec);

// Center each column and scale to unit sample sd (divisor n-1). y untouched.
Dataset standardize(const Dataset& ds);

// Sample Pearson correlation of columns j and l.
double pearson_correlation(const Dataset& ds, int j, int l);

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& X,
                      const std::vector<std::string>& names);
void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& name);

}  // namespace nlpsel
