#include "run.hpp"

#include <CLI11.hpp>

#include <functional>
#include <optional>
#include <thread>

#include "cache.hpp"
#include "io.hpp"
#include "pencillab/checked.hpp"
#include "pencillab/geometry.hpp"
#include "pencillab/monodromy.hpp"
#include "pencillab/numerology.hpp"
#include "pencillab/search.hpp"
#include "pencillab/severi.hpp"

namespace pencillab::cli {

namespace {

namespace geo = geometry;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct Output {
  Json doc;
  std::optional<Table> table;
  int exit_code = 0;
};

struct Options {
  std::string g, k, n, e, p, delta, q, pencil, tuple, a, b, point, order, counts, incidence, ramification, conic,
      pairs, lengths, marked, compare;
  std::string format = "json";
  std::string mode = "linear";
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  bool no_cache = false;
  bool count_only = false;
  std::uint64_t budget = 100'000'000;
  std::int64_t seed = 0;
};

std::int64_t need_int(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
  return parse_int(value, flag);
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required flag ") + flag);
  return value;
}

std::vector<int> to_ints(const std::vector<std::int64_t>& xs) {
  std::vector<int> out;
  for (auto x : xs) {
    checked::bounded(x, "list entry");
    out.push_back(static_cast<int>(x));
  }
  return out;
}

int small_int(std::int64_t v, const char* what) {
  require(v >= -(std::int64_t{1} << 30) && v <= (std::int64_t{1} << 30), ErrorCode::InvalidArgument,
          std::string(what) + " is out of range");
  return static_cast<int>(v);
}

std::string join(const std::vector<std::int64_t>& xs, char sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(xs[i]);
  }
  return out;
}

/// Dispatches on --q: the rationals when absent, F_q otherwise.
template <class Fn>
Output with_field(const Options& o, Fn&& fn) {
  if (o.q.empty()) return fn(Rationals{});
  const auto q = parse_int(o.q, "--q");
  require(q > 2 && q < (std::int64_t{1} << 31), ErrorCode::InvalidArgument, "--q must be an odd prime below 2^31");
  return fn(PrimeField(static_cast<std::uint32_t>(q)));
}

// --- numerology -----------------------------------------------------------

Json profile_json(const numerology::RamificationProfile& prof) {
  using namespace numerology;
  const auto verdict = hurwitz_to_moduli_verdict(prof);
  return Json{{"g", prof.g},
              {"k", prof.k},
              {"n", prof.n()},
              {"e", prof.e},
              {"rho", brill_noether_number(prof.g, 1, prof.k)},
              {"rho_tilde", adjusted_rho(prof)},
              {"r", simple_branch_count(prof)},
              {"hurwitz_dim", hurwitz_dimension(prof)},
              {"codim", expected_codimension(prof)},
              {"pencil_dim", expected_pencil_dimension(prof)},
              {"verdict", std::string(verdict_name(verdict.tag))},
              {"n_plus_rho", verdict.n_plus_rho}};
}

Output cmd_numerology(const Options& o) {
  const auto k = need_int(o.k, "--k");
  const auto e = parse_int_list(o.e, "--e");
  if (!o.n.empty())
    require(parse_int(o.n, "--n") == static_cast<std::int64_t>(e.size()), ErrorCode::InvalidProfile,
            "--n must equal the number of ramification orders in --e");
  const auto [lo, hi] = parse_range(need(o.g, "--g"), "--g");
  if (lo == hi && o.format == "json") return {profile_json(numerology::make_profile(lo, k, e)), std::nullopt, 0};

  require(hi - lo <= 100000, ErrorCode::ResourceLimit, "genus sweep longer than 100000 values");
  Output out;
  out.doc = Json{{"rows", Json::array()}};
  Table table{{"g", "k", "n", "e", "rho", "rho_tilde", "r", "hurwitz_dim", "codim", "pencil_dim", "verdict"}, {}};
  for (auto g = lo; g <= hi; ++g) {
    Json row;
    try {
      row = profile_json(numerology::make_profile(g, k, e));
    } catch (const Error& err) {
      row = Json{{"g", g}, {"k", k}, {"n", e.size()}, {"e", e}, {"error", std::string(err.code_name())},
                 {"detail", err.what()}};
    }
    std::vector<std::string> cells;
    for (const auto& key : table.header) {
      if (!row.contains(key)) {
        cells.push_back(key == "verdict" ? row.value("error", "") : "");
      } else if (key == "e") {
        cells.push_back(join(e, ';'));
      } else if (row[key].is_string()) {
        cells.push_back(row[key].get<std::string>());
      } else {
        cells.push_back(row[key].dump());
      }
    }
    table.rows.push_back(std::move(cells));
    out.doc["rows"].push_back(std::move(row));
  }
  out.table = std::move(table);
  return out;
}

// --- monodromy ------------------------------------------------------------

Json report_json(const monodromy::TupleReport& r) {
  return Json{{"product_is_identity", r.product_is_identity},
              {"transitive", r.transitive},
              {"consecutive_nondisjoint", r.consecutive_nondisjoint},
              {"genus", r.genus},
              {"genus_integral", r.genus_integral},
              {"genus_valid", r.genus_valid}};
}

monodromy::EnumerationLimits limits_for(const Options& o) {
  monodromy::EnumerationLimits limits;
  limits.jobs = o.jobs;
  return limits;
}

Output cmd_construct(const Options& o) {
  const int k = small_int(need_int(o.k, "--k"), "--k");
  const auto e = to_ints(parse_int_list(need(o.e, "--e"), "--e"));
  const auto t = monodromy::construct_tuple(k, e);
  const auto r = monodromy::verify_tuple(t);
  const bool ok = r.product_is_identity && r.transitive && r.consecutive_nondisjoint && r.genus_valid && r.genus == 0;
  return {Json{{"k", k}, {"e", e}, {"cycles", tuple_json(t)}, {"verified", ok}, {"report", report_json(r)}},
          std::nullopt, 0};
}

Output cmd_verify(const Options& o) {
  const int k = small_int(need_int(o.k, "--k"), "--k");
  const auto t = monodromy::tuple_from_cycles(k, parse_cycles(need(o.tuple, "--tuple")));
  return {Json{{"k", k}, {"orders", t.orders}, {"report", report_json(monodromy::verify_tuple(t))}}, std::nullopt, 0};
}

Output cmd_enumerate(const Options& o) {
  const int k = small_int(need_int(o.k, "--k"), "--k");
  const auto e = to_ints(parse_int_list(need(o.e, "--e"), "--e"));
  if (o.count_only) return {Json{{"k", k}, {"e", e}, {"count", monodromy::count_tuples(k, e, limits_for(o))}}, std::nullopt, 0};
  const auto tuples = monodromy::enumerate_tuples(k, e, limits_for(o));
  Json list = Json::array();
  for (const auto& t : tuples) list.push_back(tuple_json(t));
  return {Json{{"k", k}, {"e", e}, {"count", tuples.size()}, {"tuples", std::move(list)}}, std::nullopt, 0};
}

Output cmd_pad(const Options& o) {
  const int k = small_int(need_int(o.k, "--k"), "--k");
  const auto e = to_ints(parse_int_list(o.e, "--e"));
  return {Json{{"k", k}, {"e", monodromy::pad_profile(k, e)}}, std::nullopt, 0};
}

// --- pencil ---------------------------------------------------------------

template <class F>
Json ramification_point_json(const geo::Pencil<F>& pencil, const geo::ProjPoint<F>& x, int e) {
  return Json{{"point", point_json(x)},
              {"order", e},
              {"ramified", geo::has_ramification_at(pencil, x, e)},
              {"base_point", geo::is_base_point(pencil, x)},
              {"max_order", geo::max_vanishing_order(pencil, x)}};
}

Output cmd_pencil(const std::string& which, const Options& o) {
  return with_field(o, [&](const auto& K) -> Output {
    using F = std::decay_t<decltype(K)>;
    Json doc{{"field", field_json(K)}};
    if (which == "total") {
      const int k = small_int(need_int(o.k, "--k"), "--k");
      const auto a = parse_point(K, need(o.a, "--a"));
      const auto b = parse_point(K, need(o.b, "--b"));
      const auto pencil = geo::total_ramification_pencil(a, b, k);
      doc["pencil"] = pencil_json(pencil);
      doc["ramified_a"] = geo::has_ramification_at(pencil, a, k);
      doc["ramified_b"] = geo::has_ramification_at(pencil, b, k);
      return {doc, std::nullopt, 0};
    }
    const auto pencil = parse_pencil(K, need(o.pencil, "--pencil"));
    doc["k"] = pencil.k();
    if (which == "bezoutian") {
      const auto curve = geo::bezoutian_curve(pencil);
      doc["curve"] = curve_json(curve);
      try {
        doc["reduced"] = geo::is_reduced_curve(curve);
      } catch (const Error& err) {
        doc["reduced"] = nullptr;
        doc["reduced_error"] = std::string(err.code_name());
      }
    } else if (which == "wronskian") {
      const auto div = geo::ramification_divisor(pencil);
      doc["wronskian"] = form_json(div.wronskian);
      Json points = Json::array();
      for (const auto& [x, m] : div.points) points.push_back(Json{{"point", point_json(x)}, {"order", m}});
      Json residual = Json::array();
      for (const auto& [h, m] : div.residual) residual.push_back(Json{{"factor", form_json(h)}, {"multiplicity", m}});
      doc["points"] = std::move(points);
      doc["residual"] = std::move(residual);
      doc["total_multiplicity"] = div.total_multiplicity;
    } else if (which == "base-locus") {
      doc["gcd"] = form_json(geo::base_locus(pencil));
      doc["multiple_base_points"] = geo::has_multiple_base_points(pencil);
    } else if (which == "ramification") {
      const auto x = parse_point(K, need(o.point, "--point"));
      const int e = small_int(need_int(o.order, "--order"), "--order");
      doc.update(ramification_point_json(pencil, x, e));
    } else if (which == "same-fiber") {
      const auto a = parse_point(K, need(o.a, "--a"));
      const auto b = parse_point(K, need(o.b, "--b"));
      const auto sf = geo::same_fiber(pencil, a, b);
      doc["same_fiber"] = sf.value;
      doc["base_point_ambiguity"] = sf.base_point_ambiguity;
      doc["curve_incidence"] = is_zero(geo::bezoutian_curve(pencil).eval(geo::sym_point(a, b)));
    } else if (which == "conic") {
      geo::PlaneCurve<F> conic = geo::diagonal_conic(K);
      if (!o.conic.empty()) conic = geo::PlaneCurve<F>(K, 2, parse_elements(K, o.conic));
      const auto r = geo::conic_intersection(geo::bezoutian_curve(pencil), conic);
      doc["conic"] = curve_json(conic);
      doc["resultant"] = form_json(r.resultant);
      doc["transversal"] = r.transversal;
    }
    return {doc, std::nullopt, 0};
  });
}

// --- severi ---------------------------------------------------------------

Output cmd_exists(const Options& o) {
  const auto in = numerology::make_severi_input(need_int(o.p, "--p"), need_int(o.delta, "--delta"), need_int(o.k, "--k"));
  const bool exists = numerology::severi_nonempty(in);
  Json doc{{"p", in.p}, {"delta", in.delta}, {"k", in.k}, {"alpha", numerology::severi_alpha(in)}, {"exists", exists}};
  if (exists) return {doc, std::nullopt, 0};
  doc["error"] = std::string(error_code_name(ErrorCode::EmptyVariety));
  doc["detail"] = "no delta-nodal curve with a g^1_k on its normalization: the Brill-Noether bound fails";
  return {doc, std::nullopt, 1};
}

Output cmd_alpha(const Options& o) {
  const int p = small_int(need_int(o.p, "--p"), "--p");
  const int delta = small_int(need_int(o.delta, "--delta"), "--delta");
  const int k = small_int(need_int(o.k, "--k"), "--k");
  const auto tuples = severi::enumerate_alpha(p, delta, k);
  Table table;
  for (int j = 1; j <= p; ++j) table.header.push_back("alpha_" + std::to_string(j));
  table.header.push_back("genus");
  table.header.push_back("delta");
  Json list = Json::array();
  for (const auto& t : tuples) {
    list.push_back(t.alphas);
    std::vector<std::string> row;
    for (int a : t.alphas) row.push_back(std::to_string(a));
    row.push_back(std::to_string(t.genus()));
    row.push_back(std::to_string(t.delta()));
    table.rows.push_back(std::move(row));
  }
  return {Json{{"p", p}, {"delta", delta}, {"k", k}, {"count", tuples.size()}, {"exists", !tuples.empty()},
               {"tuples", std::move(list)}},
          std::move(table), 0};
}

Output cmd_delta0(const Options& o) {
  const auto p = need_int(o.p, "--p");
  const auto k = need_int(o.k, "--k");
  const auto d = numerology::delta_zero(p, k);
  return {Json{{"p", p}, {"k", k}, {"delta0", d.value ? Json(*d.value) : Json(nullptr)}, {"upward_closed", d.upward_closed}},
          std::nullopt, 0};
}

Output cmd_descend(const Options& o) {
  return with_field(o, [&](const auto& K) -> Output {
    using F = std::decay_t<decltype(K)>;
    const auto pencil = parse_pencil(K, need(o.pencil, "--pencil"));
    std::optional<geo::Pencil<F>> comparison;
    if (!o.compare.empty()) comparison = parse_pencil(K, o.compare);

    std::vector<severi::ChainSpec<F>> chains;
    const auto pair_texts = split(need(o.pairs, "--pairs"), ';');
    const auto lengths = to_ints(parse_int_list(o.lengths, "--lengths"));
    require(lengths.empty() || lengths.size() == pair_texts.size(), ErrorCode::ChainMismatch,
            "--lengths must give one chain half-length per pair");
    int p = 0;
    for (std::size_t i = 0; i < pair_texts.size(); ++i) {
      const auto pts = split(pair_texts[i], ',');
      require(pts.size() == 2, ErrorCode::ParseError, "each pair must be written x0:x1,y0:y1");
      const int m = lengths.empty() ? 1 : lengths[i];
      require(m >= 1, ErrorCode::ChainMismatch, "chain half-lengths must be positive");
      chains.push_back({m, parse_point(K, pts[0]), parse_point(K, pts[1])});
      p += m;
    }
    severi::AlphaTuple alpha{p, std::vector<int>(p, 0)};
    for (const auto& c : chains) ++alpha.alphas[c.m - 1];

    std::vector<severi::MarkedPoint<F>> marked;
    for (const auto& text : split(o.marked, ';')) {
      const auto at = text.find('@');
      require(at != std::string::npos, ErrorCode::ParseError, "marked points must be written x0:x1@order");
      marked.push_back({parse_point(K, text.substr(0, at)),
                        small_int(parse_int(text.substr(at + 1), "--marked"), "--marked")});
    }
    const auto model = severi::build_limit_curve(alpha, chains, marked);
    const auto report = severi::descends(model, pencil, comparison);

    Json pairs = Json::array();
    for (std::size_t i = 0; i < model.node_pairs.size(); ++i) {
      Json entry{{"a", point_json(model.node_pairs[i].first)},
                 {"b", point_json(model.node_pairs[i].second)},
                 {"same_fiber", report.pairs[i].same_fiber},
                 {"base_point_ambiguity", report.pairs[i].base_point_ambiguity}};
      if (report.pairs[i].neutral) entry["neutral"] = *report.pairs[i].neutral;
      pairs.push_back(std::move(entry));
    }
    Json marks = Json::array();
    for (std::size_t i = 0; i < model.marked_points.size(); ++i)
      marks.push_back(Json{{"point", point_json(model.marked_points[i])},
                           {"order", model.orders[i]},
                           {"ramified", report.marked[i].ramified},
                           {"base_point", report.marked[i].base_point}});
    Json doc{{"field", field_json(K)},
             {"p", model.p},
             {"delta", model.delta},
             {"genus", model.genus()},
             {"pairs", std::move(pairs)},
             {"marked", std::move(marks)},
             {"all_pairs_descend", report.all_pairs_descend},
             {"all_ramified", report.all_ramified},
             {"descends", report.descends}};
    return {doc, std::nullopt, 0};
  });
}

// --- dimlab ---------------------------------------------------------------

PrimeField prime_field(const Options& o) {
  const auto q = need_int(o.q, "--q");
  require(q > 2 && q < (std::int64_t{1} << 31), ErrorCode::InvalidArgument, "--q must be an odd prime below 2^31");
  return PrimeField(static_cast<std::uint32_t>(q));
}

search::SearchConstraint parse_constraint(const PrimeField& K, const Options& o) {
  search::SearchConstraint c;
  for (const auto& text : split(o.incidence, ';')) c.incidences.push_back(parse_sym_point(K, text));
  for (const auto& text : split(o.ramification, ';')) {
    const auto at = text.find('@');
    require(at != std::string::npos, ErrorCode::ParseError, "ramification constraints must be written x0:x1@order");
    c.ramifications.emplace_back(parse_point(K, text.substr(0, at)),
                                 small_int(parse_int(text.substr(at + 1), "--ramification"), "--ramification"));
  }
  return c;
}

Json constraint_json(const search::SearchConstraint& c) {
  Json inc = Json::array();
  for (const auto& w : c.incidences) inc.push_back(sym_point_json(w));
  Json ram = Json::array();
  for (const auto& [x, e] : c.ramifications) ram.push_back(Json{{"point", point_json(x)}, {"order", e}});
  return Json{{"incidences", std::move(inc)}, {"ramifications", std::move(ram)}};
}

search::SearchMode parse_mode(const std::string& mode) {
  if (mode == "linear") return search::SearchMode::Linear;
  if (mode == "exhaustive") return search::SearchMode::Exhaustive;
  throw UsageError("--mode must be linear or exhaustive");
}

Json run_search(int k, const PrimeField& K, const search::SearchConstraint& c, const Options& o) {
  search::SearchOptions opts;
  opts.mode = parse_mode(o.mode);
  opts.budget = o.budget;
  opts.jobs = o.jobs;
  const Json request{{"command", "dimlab search"}, {"version", 1}, {"k", k}, {"q", K.order()}, {"mode", o.mode},
                     {"constraint", constraint_json(c)}};
  const auto cache = ResultCache::from_environment();
  if (!o.no_cache)
    if (auto hit = cache.load(request)) return *hit;

  const auto r = search::search_pencils_ffield(k, K, c, opts);
  Json samples = Json::array();
  for (const auto& s : r.samples) samples.push_back(pencil_json(s));
  Json doc{{"k", k},
           {"q", K.order()},
           {"mode", o.mode},
           {"constraint", constraint_json(c)},
           {"count", r.count},
           {"grassmannian", search::grassmannian_pencil_count(k, K.order())},
           {"multiple_base_point_count",
            r.multiple_base_point_count ? Json(*r.multiple_base_point_count) : Json(nullptr)},
           {"tests", r.tests},
           {"samples", std::move(samples)}};
  if (!o.no_cache) cache.store(request, doc);
  return doc;
}

Output cmd_search(const Options& o) {
  const int k = small_int(need_int(o.k, "--k"), "--k");
  const auto K = prime_field(o);
  return {run_search(k, K, parse_constraint(K, o), o), std::nullopt, 0};
}

Json estimate_json(const search::DimensionEstimate& d) {
  return Json{{"estimate", d.raw}, {"rounded", d.rounded.get_str()}, {"nearest", d.nearest}, {"residual", d.residual}};
}

Output cmd_estimate(const Options& o) {
  std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
  for (const auto& item : split(need(o.counts, "--counts"), ',')) {
    const auto parts = split(item, ':');
    require(parts.size() == 2, ErrorCode::ParseError, "counts must be written q:count,q:count");
    const auto q = parse_int(parts[0], "--counts");
    const auto c = parse_int(parts[1], "--counts");
    require(q >= 2 && q < (std::int64_t{1} << 31) && c >= 0, ErrorCode::InvalidArgument, "count entry out of range");
    counts.emplace_back(static_cast<std::uint32_t>(q), static_cast<std::uint64_t>(c));
  }
  return {estimate_json(search::dimension_estimate(counts)), std::nullopt, 0};
}

// --- reproduce ------------------------------------------------------------

Output cmd_example_p345(const Options&) {
  Json rows = Json::array();
  Table table{{"p", "k", "delta0", "nonempty_deltas"}, {}};
  Json thresholds = Json::array();
  for (int p = 3; p <= 5; ++p) {
    std::optional<int> min_k;
    for (int k = 2; k <= 5; ++k) {
      const auto d0 = numerology::delta_zero(p, k);
      std::vector<std::int64_t> deltas;
      for (int delta = 0; delta < p; ++delta)
        if (numerology::severi_nonempty(numerology::make_severi_input(p, delta, k))) deltas.push_back(delta);
      if (!min_k && !deltas.empty() && deltas.front() == 0) min_k = k;
      rows.push_back(Json{{"p", p},
                          {"k", k},
                          {"delta0", d0.value ? Json(*d0.value) : Json(nullptr)},
                          {"nonempty_deltas", deltas},
                          {"upward_closed", d0.upward_closed}});
      table.rows.push_back({std::to_string(p), std::to_string(k), d0.value ? std::to_string(*d0.value) : "",
                            join(deltas, ';')});
    }
    thresholds.push_back(Json{{"p", p}, {"min_k_with_delta_zero", min_k ? Json(*min_k) : Json(nullptr)}});
  }
  return {Json{{"rows", std::move(rows)}, {"delta_zero_thresholds", std::move(thresholds)}}, std::move(table), 0};
}

Output cmd_unique_pencil(const Options& o) {
  const PrimeField K(5);
  search::SearchConstraint c;
  c.ramifications = {{search::FqPoint::affine(K, K.zero()), 2}, {search::FqPoint::infinity(K), 2}};
  return {run_search(2, K, c, o), std::nullopt, 0};
}

/// Pairs {a, b} on distinct fibers of <x1^3 - x0^2 x1, x0^3>, defined over Q.
std::vector<std::pair<Rational, Rational>> experiment_pairs() {
  return {{Rational(3, 7), Rational(-8, 7)},
          {Rational(8, 13), Rational(-15, 13)},
          {Rational(-3, 7), Rational(-5, 7)},
          {Rational(15, 13), Rational(-8, 13)}};
}

Output cmd_dimension(const Options& o) {
  const int k = 3;
  const std::vector<std::uint32_t> primes{31, 101};
  Json rows = Json::array();
  Table table{{"constraints", "count_31", "count_101", "estimate", "expected", "within_band"}, {}};
  const auto pairs = experiment_pairs();
  for (std::size_t n = 0; n <= pairs.size(); ++n) {
    std::vector<std::pair<std::uint32_t, std::uint64_t>> counts;
    Json per_prime = Json::array();
    for (auto q : primes) {
      const PrimeField K(q);
      search::SearchConstraint c;
      for (std::size_t i = 0; i < n; ++i) {
        const auto a = reduce(K, pairs[i].first), b = reduce(K, pairs[i].second);
        c.incidences.emplace_back(K, K.one(), a + b, a * b);
      }
      const auto doc = run_search(k, K, c, o);
      counts.emplace_back(q, doc["count"].get<std::uint64_t>());
      per_prime.push_back(Json{{"q", q}, {"count", doc["count"]}, {"grassmannian", doc["grassmannian"]}});
    }
    const auto est = search::dimension_estimate(counts);
    const std::int64_t expected = 2 * (k - 1) - static_cast<std::int64_t>(n);
    const bool ok = std::abs(est.raw - static_cast<double>(expected)) <= 0.35;
    rows.push_back(Json{{"constraints", n}, {"counts", std::move(per_prime)}, {"estimate", estimate_json(est)},
                        {"expected", expected}, {"within_band", ok}});
    table.rows.push_back({std::to_string(n), std::to_string(counts[0].second), std::to_string(counts[1].second),
                          est.rounded.get_str(), std::to_string(expected), ok ? "true" : "false"});
  }
  return {Json{{"k", k}, {"rows", std::move(rows)}}, std::move(table), 0};
}

// --- driver ---------------------------------------------------------------

void emit_error(std::ostream& out, std::string_view code, const std::string& detail) {
  out << Json{{"error", code}, {"detail", detail}}.dump(2) << '\n';
}

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with pencils on the projective line", "pencillab"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--jobs", o.jobs, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--no-cache", o.no_cache, "Ignore and do not write the result cache");
  app.add_option("--budget", o.budget, "Maximum number of unit tests for a search");
  app.add_option("--seed", o.seed, "Reserved; every computation is deterministic");
  app.add_option("--q", o.q, "Work over F_q instead of Q");

  std::function<Output()> action;
  auto bind = [&](CLI::App* cmd, std::function<Output()> fn) { cmd->callback([&action, fn] { action = fn; }); };
  auto opt = [](CLI::App* cmd, const char* name, std::string& target, const char* help) {
    cmd->add_option(name, target, help);
  };

  auto* num = app.add_subcommand("numerology", "Brill-Noether and Hurwitz numerology of a profile");
  opt(num, "--g", o.g, "Genus, or a range a..b");
  opt(num, "--k", o.k, "Degree of the pencil");
  opt(num, "--n", o.n, "Number of marked points (must match --e)");
  opt(num, "--e", o.e, "Ramification orders, comma-separated");
  bind(num, [&] { return cmd_numerology(o); });

  auto* mono = app.add_subcommand("monodromy", "Cycle tuples realizing ramification over the line");
  mono->require_subcommand(1, 1);
  auto* construct = mono->add_subcommand("construct", "Build a tuple for a balanced profile");
  auto* verify = mono->add_subcommand("verify", "Check product, transitivity and genus of a tuple");
  auto* enumerate = mono->add_subcommand("enumerate", "List every tuple for a profile");
  auto* pad = mono->add_subcommand("pad", "Append simple branch points to balance a profile");
  for (auto* c : {construct, enumerate, pad}) {
    opt(c, "--k", o.k, "Degree");
    opt(c, "--e", o.e, "Cycle lengths, comma-separated");
  }
  opt(verify, "--k", o.k, "Degree");
  opt(verify, "--tuple", o.tuple, "Cycles as JSON, e.g. [[1,2],[1,2]]");
  enumerate->add_flag("--count-only", o.count_only, "Report only the number of tuples");
  bind(construct, [&] { return cmd_construct(o); });
  bind(verify, [&] { return cmd_verify(o); });
  bind(enumerate, [&] { return cmd_enumerate(o); });
  bind(pad, [&] { return cmd_pad(o); });

  auto* pen = app.add_subcommand("pencil", "Geometry of a pencil of binary forms");
  pen->require_subcommand(1, 1);
  for (const char* name : {"bezoutian", "wronskian", "base-locus", "ramification", "same-fiber", "conic", "total"}) {
    auto* c = pen->add_subcommand(name);
    if (std::string(name) != "total") opt(c, "--pencil", o.pencil, "Coefficients f0,..,fk;g0,..,gk");
    const std::string which = name;
    if (which == "ramification") {
      opt(c, "--point", o.point, "Point x0:x1");
      opt(c, "--order", o.order, "Vanishing order");
    }
    if (which == "same-fiber" || which == "total") {
      opt(c, "--a", o.a, "Point x0:x1");
      opt(c, "--b", o.b, "Point x0:x1");
    }
    if (which == "total") opt(c, "--k", o.k, "Degree");
    if (which == "conic") opt(c, "--conic", o.conic, "Conic coefficients of u^2,uv,uw,v^2,vw,w^2 (default v^2-4uw)");
    bind(c, [&o, which] { return cmd_pencil(which, o); });
  }

  auto* sev = app.add_subcommand("severi", "Nodal limit curves and alpha-tuples");
  sev->require_subcommand(1, 1);
  auto* exists = sev->add_subcommand("exists", "Nonemptiness of the nodal locus");
  auto* alpha = sev->add_subcommand("alpha", "List alpha-tuples");
  auto* delta0 = sev->add_subcommand("delta0", "Least node count with a nonempty locus");
  auto* descend = sev->add_subcommand("descend", "Whether a pencil descends to a nodal model");
  for (auto* c : {exists, alpha}) {
    opt(c, "--p", o.p, "Genus of the polarization");
    opt(c, "--delta", o.delta, "Number of nodes");
    opt(c, "--k", o.k, "Gonality");
  }
  opt(delta0, "--p", o.p, "Genus of the polarization");
  opt(delta0, "--k", o.k, "Gonality");
  opt(descend, "--pencil", o.pencil, "Coefficients f0,..,fk;g0,..,gk");
  opt(descend, "--pairs", o.pairs, "Node pairs x0:x1,y0:y1;...");
  opt(descend, "--lengths", o.lengths, "Chain half-length of each pair (default 1)");
  opt(descend, "--marked", o.marked, "Marked points x0:x1@order;...");
  opt(descend, "--compare", o.compare, "Second pencil for neutrality of the nodes");
  bind(exists, [&] { return cmd_exists(o); });
  bind(alpha, [&] { return cmd_alpha(o); });
  bind(delta0, [&] { return cmd_delta0(o); });
  bind(descend, [&] { return cmd_descend(o); });

  auto* lab = app.add_subcommand("dimlab", "Point counts of pencil loci over F_q");
  lab->require_subcommand(1, 1);
  auto* search_cmd = lab->add_subcommand("search", "Count pencils satisfying incidence and ramification constraints");
  opt(search_cmd, "--k", o.k, "Degree");
  opt(search_cmd, "--incidence", o.incidence, "Points u:v:w;... the Bezoutian curve passes through");
  opt(search_cmd, "--ramification", o.ramification, "Constraints x0:x1@order;...");
  search_cmd->add_option("--mode", o.mode, "linear or exhaustive");
  auto* estimate = lab->add_subcommand("estimate", "Fit an exponent to point counts");
  opt(estimate, "--counts", o.counts, "q:count,q:count,...");
  bind(search_cmd, [&] { return cmd_search(o); });
  bind(estimate, [&] { return cmd_estimate(o); });

  auto* rep = app.add_subcommand("reproduce", "Worked values");
  rep->require_subcommand(1, 1);
  bind(rep->add_subcommand("example-p345", "Node thresholds for p = 3, 4, 5"), [&] { return cmd_example_p345(o); });
  bind(rep->add_subcommand("unique-pencil", "Total ramification at two points, k = 2, q = 5"),
       [&] { return cmd_unique_pencil(o); });
  bind(rep->add_subcommand("dimension", "Incidence dimension drop for k = 3 over F_31 and F_101"),
       [&] { return cmd_dimension(o); });

  std::vector<const char*> argv{"pencillab"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    emit_error(out, "UsageError", e.what());
    return 2;
  }

  try {
    Output result = action();
    if (o.format == "csv") {
      if (!result.table) throw UsageError("this command has no tabular output; use --format json");
      for (std::size_t i = 0; i < result.table->header.size(); ++i)
        out << (i ? "," : "") << csv_cell(result.table->header[i]);
      out << '\n';
      for (const auto& row : result.table->rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
      }
    } else {
      out << result.doc.dump(2) << '\n';
    }
    return result.exit_code;
  } catch (const UsageError& e) {
    emit_error(out, "UsageError", e.what());
    return 2;
  } catch (const Error& e) {
    emit_error(out, e.code_name(), e.what());
    return e.code() == ErrorCode::ParseError ? 2 : 1;
  } catch (const std::exception& e) {
    emit_error(out, "InternalError", e.what());
    return 1;
  }
}

}  // namespace pencillab::cli
