#include "coupled/facerec.hpp"

#include "coupled/cmf.hpp"
#include "coupled/errors.hpp"
#include "coupled/pgm.hpp"
#include "coupled/random.hpp"

#include "json.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <string>

namespace coupled::facerec {

namespace fs = std::filesystem;

Gallery::Gallery(std::vector<Person> persons) : persons_(std::move(persons)) {
  if (persons_.empty()) throw ParameterError("gallery needs at least one person");
  for (std::size_t p = 0; p < persons_.size(); ++p) {
    const Person& person = persons_[p];
    const auto first = static_cast<Index>(owner_.size());
    if (person.images.empty()) {
      throw ParameterError("person '" + person.label + "' has no images");
    }
    for (const Matrix& img : person.images) {
      if (rows_ == 0) {
        rows_ = img.rows();
        cols_ = img.cols();
      }
      if (img.size() == 0 || img.rows() != rows_ || img.cols() != cols_) {
        throw ShapeError("gallery images must share one non-empty size; person '" +
                         person.label + "' has a " + std::to_string(img.rows()) + "x" +
                         std::to_string(img.cols()) + " image, expected " +
                         std::to_string(rows_) + "x" + std::to_string(cols_));
      }
      require_finite(img, "gallery image");
      images_.push_back(img);
      slot_.push_back(static_cast<Index>(owner_.size()) - first);
      owner_.push_back(static_cast<Index>(p));
    }
    const auto count = static_cast<Index>(person.images.size());
    Tensor3 t({rows_, cols_, count});
    auto entries = t.entries();
    for (Index l = 0; l < count; ++l) {
      const Matrix& img = person.images[static_cast<std::size_t>(l)];
      std::copy(img.data(), img.data() + img.size(), entries.begin() + l * rows_ * cols_);
    }
    tensors_.push_back(std::move(t));
  }
}

std::optional<Index> Gallery::images_per_person() const {
  const std::size_t first = persons_.front().images.size();
  for (const Person& p : persons_) {
    if (p.images.size() != first) return std::nullopt;
  }
  return static_cast<Index>(first);
}

std::optional<Index> Gallery::find(const std::string& label) const {
  for (std::size_t p = 0; p < persons_.size(); ++p) {
    if (persons_[p].label == label) return static_cast<Index>(p);
  }
  return std::nullopt;
}

namespace {

std::vector<std::string> person_order(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw FormatError("'" + dir.string() + "' is not a directory");
  const fs::path manifest = dir / "manifest.json";
  std::vector<std::string> names;
  if (fs::exists(manifest)) {
    std::ifstream is(manifest);
    try {
      const auto doc = nlohmann::json::parse(is);
      for (const auto& entry : doc.at("persons")) names.push_back(entry.get<std::string>());
    } catch (const nlohmann::json::exception& e) {
      throw FormatError(manifest.string() + ": " + e.what());
    }
    for (const auto& name : names) {
      if (!fs::is_directory(dir / name)) {
        throw FormatError("manifest lists '" + name + "' but " + (dir / name).string() +
                          " is not a directory");
      }
    }
  } else {
    for (const auto& entry : fs::directory_iterator(dir)) {
      if (entry.is_directory()) names.push_back(entry.path().filename().string());
    }
    std::sort(names.begin(), names.end());
  }
  if (names.empty()) throw FormatError("no person directories under '" + dir.string() + "'");
  return names;
}

std::vector<fs::path> images_in(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".pgm") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end());
  return files;
}

template <typename Solve>
Classification argmin_over(Index count, Solve&& solve) {
  Classification out;
  out.errs.reserve(static_cast<std::size_t>(count));
  double best = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < count; ++i) {
    const double e = solve(i);
    out.errs.push_back(e);
    if (e < best) {
      best = e;
      out.best_candidate = i;
    }
  }
  return out;
}

void check_query(const Gallery& g, MatrixCRef query) {
  if (query.rows() != g.image_rows() || query.cols() != g.image_cols()) {
    throw ShapeError("query is " + std::to_string(query.rows()) + "x" +
                     std::to_string(query.cols()) + " but gallery images are " +
                     std::to_string(g.image_rows()) + "x" + std::to_string(g.image_cols()));
  }
  require_finite(query, "query");
}

// Seeds depend on (person, slot) so adding images to one person leaves the
// other persons' sketches unchanged.
SketchPlan candidate_plan(const SketchPlan& plan, Index person, Index slot = 0) {
  SketchPlan p = plan;
  p.seed = derive_seed(derive_seed(plan.seed, static_cast<std::uint64_t>(person)),
                       static_cast<std::uint64_t>(slot));
  return p;
}

}  // namespace

Gallery load_gallery(const fs::path& dir) {
  std::vector<Person> persons;
  for (const auto& name : person_order(dir)) {
    Person p{name, {}};
    for (const auto& file : images_in(dir / name)) p.images.push_back(pgm::load(file));
    if (p.images.empty()) throw FormatError("person directory '" + name + "' holds no .pgm images");
    if (!persons.empty() && p.images.size() != persons.front().images.size()) {
      throw FormatError("person '" + name + "' has " + std::to_string(p.images.size()) +
                        " images but '" + persons.front().label + "' has " +
                        std::to_string(persons.front().images.size()));
    }
    persons.push_back(std::move(p));
  }
  return Gallery(std::move(persons));
}

std::vector<LabeledImage> load_queries(const fs::path& dir) {
  std::vector<LabeledImage> out;
  for (const auto& name : person_order(dir)) {
    for (const auto& file : images_in(dir / name)) {
      out.push_back({name + "/" + file.filename().string(), name, pgm::load(file)});
    }
  }
  if (out.empty()) throw FormatError("no query images under '" + dir.string() + "'");
  return out;
}

std::string_view to_string(Mode m) noexcept {
  switch (m) {
    case Mode::cmf: return "cmf";
    case Mode::cmtf_tucker: return "cmtf-tucker";
    case Mode::cmtf_cp: return "cmtf-cp";
  }
  return "cmf";
}

Mode parse_mode(std::string_view name) {
  if (name == "cmf") return Mode::cmf;
  if (name == "cmtf-tucker" || name == "cmtf_tucker" || name == "tucker") return Mode::cmtf_tucker;
  if (name == "cmtf-cp" || name == "cmtf_cp" || name == "cp") return Mode::cmtf_cp;
  throw ParameterError("unknown recognition mode '" + std::string(name) + "'");
}

Classification classify_cmf(const Gallery& g, MatrixCRef query, const SketchPlan& plan) {
  check_query(g, query);
  Classification out = argmin_over(g.candidate_count(), [&](Index i) {
    const Matrix& x = g.candidate(i);
    const CmfResult r = cmf(x, query, candidate_plan(plan, g.owner(i), g.slot(i)));
    return relative_errors(x, query, r).sum();
  });
  out.predicted_person = g.owner(out.best_candidate);
  return out;
}

Classification classify_cmtf(const Gallery& g, MatrixCRef query, const SketchPlan& plan,
                             Mode format, const AlsOptions& als) {
  if (format == Mode::cmf) throw ParameterError("classify_cmtf needs a tensor format");
  check_query(g, query);
  Classification out = argmin_over(g.person_count(), [&](Index p) {
    const Tensor3& t = g.tensor(p);
    const SketchPlan pp = candidate_plan(plan, p);
    if (format == Mode::cmtf_tucker) {
      const TuckerCmtfResult r = cmtf_tucker(t, query, pp);
      return cmtf_errors(t, query, r).sum();
    }
    try {
      const CpCmtfResult r = cmtf_cp_als_randomized(t, query, pp, als);
      return cmtf_errors(t, query, r).sum();
    } catch (const DegenerateIterate&) {
      return std::numeric_limits<double>::infinity();
    }
  });
  out.predicted_person = out.best_candidate;
  return out;
}

Classification classify(const Gallery& g, MatrixCRef query, const SketchPlan& plan, Mode mode,
                        const AlsOptions& als) {
  if (mode == Mode::cmf) return classify_cmf(g, query, plan);
  return classify_cmtf(g, query, plan, mode, als);
}

RecognitionReport evaluate(const Gallery& g, const std::vector<LabeledImage>& queries,
                           const SketchPlan& plan, Mode mode, const AlsOptions& als) {
  if (queries.empty()) throw ParameterError("evaluation needs at least one query");
  for (const LabeledImage& q : queries) {
    if (!g.find(q.truth)) {
      throw ParameterError("query '" + q.name + "' is labeled '" + q.truth +
                           "', which is not a gallery person");
    }
  }
  RecognitionReport report;
  std::map<std::string, std::pair<int, int>> tally;
  int correct = 0;
  for (const LabeledImage& q : queries) {
    Classification c = classify(g, q.image, plan, mode, als);
    const std::string& predicted = g.label(c.predicted_person);
    const bool hit = predicted == q.truth;
    correct += hit ? 1 : 0;
    auto& t = tally[q.truth];
    t.first += hit ? 1 : 0;
    t.second += 1;
    report.rows.push_back({q.name, q.truth, predicted, std::move(c.errs)});
  }
  for (const auto& [label, t] : tally) {
    report.per_person[label] = static_cast<double>(t.first) / t.second;
  }
  report.total_rate = static_cast<double>(correct) / static_cast<double>(queries.size());
  return report;
}

}  // namespace coupled::facerec
