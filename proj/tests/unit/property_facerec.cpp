#include "coupled/facerec.hpp"
#include "property.hpp"

namespace {

using namespace coupled;
using namespace coupled::facerec;

struct Scene {
  std::vector<Person> persons;
  Matrix query;
  Index truth = 0;
};

// Persons built around rank-2 bases with 30% noise so that predictions are
// neither trivial nor random; the query comes from a random person.
Scene random_scene(oracle::Gen& gen) {
  const Index rows = oracle::random_index(8, 12, gen);
  const Index cols = oracle::random_index(6, 9, gen);
  // Three or more images per person keep rank 2 admissible for CP fits.
  const Index count = oracle::random_index(3, 4, gen);
  Scene s;
  std::vector<Matrix> bases;
  for (Index p = 0; p < 3; ++p) {
    bases.push_back(oracle::random_low_rank(rows, cols, 2, gen));
    Person person{"p" + std::to_string(p), {}};
    for (Index i = 0; i < count; ++i) {
      const Matrix noise = oracle::random_matrix(rows, cols, gen);
      person.images.push_back(bases.back() + 0.3 * bases.back().norm() / noise.norm() * noise);
    }
    s.persons.push_back(std::move(person));
  }
  s.truth = oracle::random_index(0, 2, gen);
  const Matrix noise = oracle::random_matrix(rows, cols, gen);
  s.query = bases[static_cast<std::size_t>(s.truth)] + 0.3 * bases[static_cast<std::size_t>(s.truth)].norm() / noise.norm() * noise;
  return s;
}

SketchPlan random_plan(oracle::Gen& gen) {
  const auto seed = static_cast<std::uint64_t>(gen());
  switch (oracle::random_index(0, 3, gen)) {
    case 0: return SketchPlan::basic(2);
    case 1: return SketchPlan::simple(2, seed);
    case 2: return SketchPlan::rsi(2, 2, seed);
    default: return SketchPlan::rbki(2, 2, 2, seed);
  }
}

TEST(FacerecLaws, PredictionsInvariantUnderCommonPositiveScaling) {
  prop::for_all(601, [](oracle::Gen& gen, int c) {
    Scene s = random_scene(gen);
    const SketchPlan plan = random_plan(gen);
    const Mode mode = c % 2 == 0 ? Mode::cmf : Mode::cmtf_tucker;
    const double scale = std::exp(std::uniform_real_distribution<double>(-4.0, 4.0)(gen));
    const Index before = classify(Gallery(s.persons), s.query, plan, mode).predicted_person;
    for (Person& p : s.persons)
      for (Matrix& img : p.images) img *= scale;
    const Index after = classify(Gallery(s.persons), scale * s.query, plan, mode).predicted_person;
    ASSERT_EQ(before, after) << to_string(mode) << " scale " << scale;
  });
}

TEST(FacerecLaws, FixedSeedAndPlanGiveIdenticalReports) {
  prop::for_all(602, [](oracle::Gen& gen, int c) {
    const Scene s = random_scene(gen);
    const Gallery g(s.persons);
    const SketchPlan plan = random_plan(gen);
    const Mode mode = static_cast<Mode>(c % 3);
    AlsOptions als;
    als.max_iters = 20;
    als.init_seed = static_cast<std::uint64_t>(c);
    const std::vector<LabeledImage> queries = {{"q", g.label(s.truth), s.query}};
    const RecognitionReport a = evaluate(g, queries, plan, mode, als);
    const RecognitionReport b = evaluate(g, queries, plan, mode, als);
    ASSERT_EQ(a.rows.front().predicted, b.rows.front().predicted);
    ASSERT_EQ(a.rows.front().errs, b.rows.front().errs);
    ASSERT_EQ(a.total_rate, b.total_rate);
    ASSERT_EQ(a.per_person, b.per_person);
  });
}

TEST(FacerecLaws, AddingQueryCopyNeverUnselectsItsPerson) {
  prop::for_all(603, [](oracle::Gen& gen, int) {
    Scene s = random_scene(gen);
    const SketchPlan plan = random_plan(gen);
    const Index j = oracle::random_index(0, 2, gen);
    const Classification before = classify_cmf(Gallery(s.persons), s.query, plan);
    s.persons[static_cast<std::size_t>(j)].images.push_back(s.query);
    const Gallery augmented(s.persons);
    const Classification after = classify_cmf(augmented, s.query, plan);
    if (before.predicted_person == j) ASSERT_EQ(after.predicted_person, j);
    // Existing candidates keep their errors; only the copy is new.
    std::vector<double> kept;
    for (Index i = 0; i < augmented.candidate_count(); ++i) {
      const bool is_copy = augmented.owner(i) == j &&
                           augmented.slot(i) == static_cast<Index>(s.persons[static_cast<std::size_t>(j)].images.size()) - 1;
      if (!is_copy) kept.push_back(after.errs[static_cast<std::size_t>(i)]);
    }
    ASSERT_EQ(kept, before.errs);
  });
}

}  // namespace
