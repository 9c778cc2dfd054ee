#pragma once

#include "coupled/cmtf.hpp"
#include "coupled/linalg.hpp"
#include "coupled/sketching.hpp"
#include "coupled/tensor.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace coupled::facerec {

struct Person {
  std::string label;
  std::vector<Matrix> images;
};

/// Labeled training images, all of one size.
///
/// Candidates are numbered person-major: person 0's images first, then
/// person 1's, and so on.
class Gallery {
 public:
  explicit Gallery(std::vector<Person> persons);

  [[nodiscard]] Index person_count() const noexcept { return static_cast<Index>(persons_.size()); }
  [[nodiscard]] const std::string& label(Index person) const { return persons_.at(static_cast<std::size_t>(person)).label; }
  [[nodiscard]] Index image_rows() const noexcept { return rows_; }
  [[nodiscard]] Index image_cols() const noexcept { return cols_; }
  /// Shared per-person image count, or nullopt for a ragged gallery.
  [[nodiscard]] std::optional<Index> images_per_person() const;

  [[nodiscard]] Index candidate_count() const noexcept { return static_cast<Index>(images_.size()); }
  [[nodiscard]] const Matrix& candidate(Index i) const { return images_.at(static_cast<std::size_t>(i)); }
  [[nodiscard]] Index owner(Index candidate) const { return owner_.at(static_cast<std::size_t>(candidate)); }
  /// Position of the candidate among its owner's images.
  [[nodiscard]] Index slot(Index candidate) const { return slot_.at(static_cast<std::size_t>(candidate)); }

  /// rows x cols x (images of person) stack of the person's training images.
  [[nodiscard]] const Tensor3& tensor(Index person) const { return tensors_.at(static_cast<std::size_t>(person)); }

  [[nodiscard]] std::optional<Index> find(const std::string& label) const;

 private:
  std::vector<Person> persons_;
  std::vector<Matrix> images_;
  std::vector<Index> owner_;
  std::vector<Index> slot_;
  std::vector<Tensor3> tensors_;
  Index rows_ = 0;
  Index cols_ = 0;
};

struct LabeledImage {
  std::string name;   ///< identifier, e.g. "person/file.pgm"
  std::string truth;  ///< person label
  Matrix image;
};

/// Directory layout: <dir>/<person>/<image>.pgm. Persons are ordered by an
/// optional manifest.json {"persons": [...]} and otherwise by name; images
/// by file name. Every person must have the same number of images.
[[nodiscard]] Gallery load_gallery(const std::filesystem::path& dir);

/// Same layout as a gallery; counts may differ per person.
[[nodiscard]] std::vector<LabeledImage> load_queries(const std::filesystem::path& dir);

enum class Mode { cmf, cmtf_tucker, cmtf_cp };

[[nodiscard]] std::string_view to_string(Mode m) noexcept;
[[nodiscard]] Mode parse_mode(std::string_view name);

struct Classification {
  Index predicted_person = 0;
  Index best_candidate = 0;
  /// err^(i) = err_X^(i) + err_Y^(i) per candidate (+inf for failed ALS runs).
  std::vector<double> errs;
};

/// One coupled factorization per gallery image against the query.
[[nodiscard]] Classification classify_cmf(const Gallery& g, MatrixCRef query, const SketchPlan& plan);

/// One coupled matrix-tensor factorization per person against the query.
[[nodiscard]] Classification classify_cmtf(const Gallery& g, MatrixCRef query, const SketchPlan& plan,
                                           Mode format, const AlsOptions& als = {});

[[nodiscard]] Classification classify(const Gallery& g, MatrixCRef query, const SketchPlan& plan,
                                      Mode mode, const AlsOptions& als = {});

struct QueryOutcome {
  std::string query;
  std::string truth;
  std::string predicted;
  std::vector<double> errs;
};

struct RecognitionReport {
  std::vector<QueryOutcome> rows;
  /// Success rate per gallery label, for labels that had queries.
  std::map<std::string, double> per_person;
  double total_rate = 0.0;
};

/// Classifies every query and tallies success rates.
[[nodiscard]] RecognitionReport evaluate(const Gallery& g, const std::vector<LabeledImage>& queries,
                                         const SketchPlan& plan, Mode mode, const AlsOptions& als = {});

}  // namespace coupled::facerec
