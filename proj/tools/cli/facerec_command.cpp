#include "commands.hpp"

#include "csv.hpp"
#include "parallel.hpp"

#include "coupled/facerec.hpp"

#include <cmath>

namespace coupled::cli {

namespace {

struct Variant {
  facerec::Mode mode;
  Strategy strategy;
};

std::string variant_name(const Variant& v) {
  return std::string(facerec::to_string(v.mode)) + "/" + std::string(to_string(v.strategy));
}

nlohmann::json number_or_text(double v) {
  if (std::isfinite(v)) return v;
  return csv_number(v);
}

nlohmann::json report_json(const facerec::RecognitionReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : report.rows) {
    nlohmann::json errs = nlohmann::json::array();
    for (const double e : r.errs) errs.push_back(number_or_text(e));
    rows.push_back({{"query", r.query}, {"truth", r.truth}, {"predicted", r.predicted}, {"errs", errs}});
  }
  return {{"rows", rows}, {"per_person", report.per_person}, {"total_rate", report.total_rate}};
}

}  // namespace

void run_facerec(const FacerecOptions& opts, Context& ctx) {
  const facerec::Gallery gallery = facerec::load_gallery(opts.gallery);
  const std::vector<facerec::LabeledImage> queries = facerec::load_queries(opts.queries);

  std::vector<facerec::Mode> modes;
  if (opts.mode == "all") {
    modes = {facerec::Mode::cmf, facerec::Mode::cmtf_tucker, facerec::Mode::cmtf_cp};
  } else {
    modes = {facerec::parse_mode(opts.mode)};
  }
  std::vector<Strategy> strategies;
  if (opts.plan == "all") {
    strategies = {Strategy::none, Strategy::simple, Strategy::rsi, Strategy::rbki};
  } else {
    strategies = {parse_strategy(opts.plan)};
  }
  std::vector<Variant> variants;
  for (const auto m : modes)
    for (const auto s : strategies) variants.push_back({m, s});

  const AlsOptions als = opts.als.resolve();
  std::vector<facerec::RecognitionReport> reports(variants.size());
  parallel_for(variants.size(), [&](std::size_t i) {
    SketchPlan plan{variants[i].strategy, opts.k, opts.q, opts.ell, ctx.global.seed, opts.trunc_tol};
    plan.validate();
    reports[i] = facerec::evaluate(gallery, queries, plan, variants[i].mode, als);
  });

  const nlohmann::json params = {
      {"mode", opts.mode},
      {"plan", opts.plan},
      {"k", opts.k},
      {"q", opts.q},
      {"ell", opts.ell},
      {"seed", ctx.global.seed},
      {"trunc_tol", opts.trunc_tol},
      {"als",
       {{"max_iters", als.max_iters}, {"rel_tol", als.rel_tol}, {"init", opts.als.init},
        {"init_seed", als.init_seed}}},
      {"gallery", opts.gallery},
      {"queries", opts.queries},
      {"persons", gallery.person_count()},
      {"query_count", queries.size()}};

  if (ctx.format() == "csv") {
    Table t;
    t.header = {"mode", "plan"};
    for (Index p = 0; p < gallery.person_count(); ++p) t.header.push_back(gallery.label(p));
    t.header.push_back("total_rate");
    for (std::size_t i = 0; i < variants.size(); ++i) {
      std::vector<Cell> row{std::string(facerec::to_string(variants[i].mode)),
                            std::string(to_string(variants[i].strategy))};
      for (Index p = 0; p < gallery.person_count(); ++p) {
        const auto it = reports[i].per_person.find(gallery.label(p));
        row.push_back(it == reports[i].per_person.end() ? Cell{} : Cell{it->second});
      }
      row.push_back(reports[i].total_rate);
      t.rows.push_back(std::move(row));
    }
    ctx.emit(t);
    return;
  }

  nlohmann::json doc;
  if (variants.size() == 1) {
    doc = report_json(reports.front());
    doc["params"] = params;
  } else {
    nlohmann::json list = nlohmann::json::array();
    for (std::size_t i = 0; i < variants.size(); ++i) {
      nlohmann::json v = report_json(reports[i]);
      v["variant"] = variant_name(variants[i]);
      v["mode"] = std::string(facerec::to_string(variants[i].mode));
      v["plan"] = std::string(to_string(variants[i].strategy));
      list.push_back(std::move(v));
    }
    doc = {{"params", params}, {"variants", list}};
  }
  ctx.emit(doc);
}

}  // namespace coupled::cli
