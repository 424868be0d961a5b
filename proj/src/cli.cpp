#include "icb/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "icb/coordination.hpp"
#include "icb/game_sim.hpp"
#include "icb/svg.hpp"

namespace icb::cli {

namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RefusalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

std::string fmt_full(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

// Merged scenario-file and flag inputs.
struct Settings {
  std::optional<double> a, b, snr1_db, snr2_db;
  std::string scheme = "hk";
  double p1 = 0.5, p2 = 0.5;
  std::string first_mover = "u1";
  std::string solution = "both";
  // sweep block
  std::string sweep_variable = "p1";
  double p1_from = 0.05, p1_to = 0.95, p1_step = 0.05;
  // sim block
  long long trials = 10000;
  std::uint64_t seed = 12345;
  int grid_size = 201;
  int max_rounds = 10000;
  // io
  std::string out_dir = "out";
  bool want_svg = false;
};

int line_of_offset(const std::string& text, std::size_t byte) {
  int line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

double num_field(const ordered_json& j, const std::string& key) {
  if (!j.at(key).is_number()) {
    throw InputError("scenario file: key '" + key + "' must be a number");
  }
  const double v = j.at(key).get<double>();
  if (!std::isfinite(v)) throw InputError("scenario file: key '" + key + "' must be finite");
  return v;
}

void load_scenario_file(const std::string& path, Settings& st) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scenario file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("scenario file '" + path + "' line " +
                     std::to_string(line_of_offset(text, e.byte)) + ": " + e.what());
  }
  if (!j.is_object()) throw InputError("scenario file '" + path + "': top level must be an object");

  static const std::vector<std::string> known = {"a",  "b",  "snr1_db",     "snr2_db", "scheme",
                                                 "p1", "p2", "first_mover", "solution", "sweep",
                                                 "sim"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InputError("scenario file '" + path + "': unknown key '" + key + "'");
    }
  }

  if (j.contains("a")) st.a = num_field(j, "a");
  if (j.contains("b")) st.b = num_field(j, "b");
  if (j.contains("snr1_db")) st.snr1_db = num_field(j, "snr1_db");
  if (j.contains("snr2_db")) st.snr2_db = num_field(j, "snr2_db");
  if (j.contains("scheme")) st.scheme = j.at("scheme").get<std::string>();
  if (j.contains("p1")) st.p1 = num_field(j, "p1");
  if (j.contains("p2")) st.p2 = num_field(j, "p2");
  if (j.contains("first_mover")) st.first_mover = j.at("first_mover").get<std::string>();
  if (j.contains("solution")) st.solution = j.at("solution").get<std::string>();

  if (j.contains("sweep")) {
    const ordered_json& sw = j.at("sweep");
    if (!sw.is_object()) throw InputError("scenario file: 'sweep' must be an object");
    for (const auto& [key, value] : sw.items()) {
      if (key != "variable" && key != "from" && key != "to" && key != "step") {
        throw InputError("scenario file: unknown key 'sweep." + key + "'");
      }
    }
    if (sw.contains("variable")) st.sweep_variable = sw.at("variable").get<std::string>();
    if (sw.contains("from")) st.p1_from = num_field(sw, "from");
    if (sw.contains("to")) st.p1_to = num_field(sw, "to");
    if (sw.contains("step")) st.p1_step = num_field(sw, "step");
  }
  if (j.contains("sim")) {
    const ordered_json& sm = j.at("sim");
    if (!sm.is_object()) throw InputError("scenario file: 'sim' must be an object");
    for (const auto& [key, value] : sm.items()) {
      if (key != "trials" && key != "seed" && key != "grid_size" && key != "max_rounds") {
        throw InputError("scenario file: unknown key 'sim." + key + "'");
      }
    }
    if (sm.contains("trials")) st.trials = sm.at("trials").get<long long>();
    if (sm.contains("seed")) st.seed = sm.at("seed").get<std::uint64_t>();
    if (sm.contains("grid_size")) st.grid_size = sm.at("grid_size").get<int>();
    if (sm.contains("max_rounds")) st.max_rounds = sm.at("max_rounds").get<int>();
  }
}

Scheme parse_scheme(const std::string& s) {
  if (s == "hk") return Scheme::Hk;
  if (s == "tdm") return Scheme::Tdm;
  throw InputError("scheme must be 'hk' or 'tdm', got '" + s + "'");
}

Player parse_first_mover(const std::string& s) {
  if (s == "u1") return Player::User1;
  if (s == "u2") return Player::User2;
  throw InputError("first_mover must be 'u1' or 'u2', got '" + s + "'");
}

SolutionKind parse_solution(const std::string& s) {
  if (s == "spe") return SolutionKind::Spe;
  if (s == "nbs") return SolutionKind::Nbs;
  if (s == "both") return SolutionKind::Both;
  throw InputError("solution must be 'spe', 'nbs' or 'both', got '" + s + "'");
}

Scenario build_scenario(const Settings& st) {
  if (!st.a || !st.b) throw InputError("missing channel gains (--a/--b or scenario file)");
  if (!st.snr1_db || !st.snr2_db) {
    throw InputError("missing SNRs (--snr1-db/--snr2-db or scenario file)");
  }
  if (!(st.p1 > 0.0 && st.p1 < 1.0) || !(st.p2 > 0.0 && st.p2 < 1.0)) {
    throw InputError("breakdown probabilities must lie in (0, 1)");
  }
  ChannelParams params(*st.a, *st.b, db_to_linear(*st.snr1_db), db_to_linear(*st.snr2_db));
  return Scenario{params, parse_scheme(st.scheme), BreakdownProbs(st.p1, st.p2),
                  parse_first_mover(st.first_mover), parse_solution(st.solution)};
}

ordered_json point_json(const RatePair& r) {
  return ordered_json{{"r1", fmt_full(r.r1)}, {"r2", fmt_full(r.r2)}};
}

ordered_json inputs_json(const Settings& st, const Scenario& sc) {
  ordered_json j;
  j["a"] = fmt_full(sc.params.a);
  j["b"] = fmt_full(sc.params.b);
  j["snr1_db"] = fmt_full(*st.snr1_db);
  j["snr2_db"] = fmt_full(*st.snr2_db);
  j["P1"] = fmt_full(sc.params.P1);
  j["P2"] = fmt_full(sc.params.P2);
  j["scheme"] = st.scheme;
  j["p1"] = fmt_full(st.p1);
  j["p2"] = fmt_full(st.p2);
  j["first_mover"] = st.first_mover;
  j["solution"] = st.solution;
  return j;
}

ordered_json outcome_json(const CoordinationOutcome& oc) {
  ordered_json j;
  j["phase1"] = oc.agreed ? "agreed" : "disagreed";
  j["regular"] = oc.regular;
  j["spe_refused"] = oc.spe_refused;
  if (oc.split) {
    j["split"] = ordered_json{{"alpha", fmt_full(oc.split->alpha)},
                              {"beta", fmt_full(oc.split->beta)}};
  }
  if (oc.rho_interval) {
    j["rho_interval"] = ordered_json{{"lo", fmt_full(oc.rho_interval->first)},
                                     {"hi", fmt_full(oc.rho_interval->second)}};
  }
  j["disagreement"] = point_json(oc.disagreement);
  if (oc.nbs) j["nbs"] = point_json(*oc.nbs);
  if (oc.spe) {
    j["spe"] = ordered_json{
        {"r_bar", point_json(oc.spe->r_bar)},
        {"r_tilde", point_json(oc.spe->r_tilde)},
        {"first_mover", oc.spe->first_mover == Player::User1 ? "u1" : "u2"},
        {"outcome", point_json(oc.spe->outcome)}};
  }
  j["operating_point"] = point_json(oc.operating_point);
  return j;
}

void write_file(const std::string& path, const std::string& content,
                std::vector<std::string>& artifacts, std::ostream& out) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write '" + path + "'");
  f << content;
  f.close();
  artifacts.push_back(path);
  out << "wrote " << path << "\n";
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows,
               std::vector<std::string>& artifacts, std::ostream& out) {
  std::string content;
  for (std::size_t i = 0; i < header.size(); ++i) {
    content += header[i];
    content += (i + 1 < header.size()) ? "," : "\n";
  }
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      content += row[i];
      content += (i + 1 < row.size()) ? "," : "\n";
    }
  }
  write_file(path, content, artifacts, out);
}

// Boundary polygon of a region for plotting: hull-ordered vertices for
// polytopes, the sampled Pareto curve closed through the axes for TDM.
std::vector<RatePair> boundary_points(const RateRegion& region) {
  if (region.kind() == RegionKind::Tdm) {
    std::vector<RatePair> pts;
    pts.push_back({0.0, 0.0});
    for (int i = 0; i <= 200; ++i) {
      pts.push_back(tdm_point(static_cast<double>(i) / 200.0, region.params()));
    }
    pts.push_back({0.0, 0.0});
    return pts;
  }
  std::vector<RatePair> pts = region.vertices();
  double cx = 0.0, cy = 0.0;
  for (const RatePair& p : pts) {
    cx += p.r1;
    cy += p.r2;
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const RatePair& u, const RatePair& v) {
    return std::atan2(u.r2 - cy, u.r1 - cx) < std::atan2(v.r2 - cy, v.r1 - cx);
  });
  return pts;
}

std::vector<svg::Marker> outcome_markers(const CoordinationOutcome& oc) {
  std::vector<svg::Marker> ms;
  ms.push_back({oc.disagreement, "R0", "#000000"});
  if (oc.nbs) ms.push_back({*oc.nbs, "NBS", "#2ca02c"});
  if (oc.spe) {
    ms.push_back({oc.spe->r_bar, "Rbar", "#d62728"});
    ms.push_back({oc.spe->r_tilde, "Rtilde", "#ff7f0e"});
  }
  return ms;
}

struct Context {
  Settings st;
  std::string out_path(const std::string& name) const {
    return (fs::path(st.out_dir) / name).string();
  }
};

// ---- command handlers ----------------------------------------------------

void cmd_region(const Context& ctx, RunReport& rep, std::ostream& out) {
  const Scenario sc = build_scenario(ctx.st);
  const Scheme scheme = sc.scheme;
  const RatePair d = disagreement_point(sc.params);
  const Regime regime = classify_interference(sc.params);
  const PowerSplit split = default_power_split(sc.params);
  const RateRegion region =
      scheme == Scheme::Hk ? hk_polytope(sc.params, split) : tdm_region(sc.params);

  ordered_json oc;
  oc["regime"] = regime == Regime::Strong ? "strong" : regime == Regime::Weak ? "weak" : "mixed";
  oc["kind"] = scheme == Scheme::Hk ? "hk_polytope" : "tdm";
  if (scheme == Scheme::Hk) {
    const HkBounds hb = hk_bounds(sc.params, split);
    oc["split"] =
        ordered_json{{"alpha", fmt_full(split.alpha)}, {"beta", fmt_full(split.beta)}};
    oc["bounds"] = ordered_json{{"phi1", fmt_full(hb.phi1)}, {"phi2", fmt_full(hb.phi2)},
                                {"phi3", fmt_full(hb.phi3)}, {"phi4", fmt_full(hb.phi4)},
                                {"phi5", fmt_full(hb.phi5)}};
    if (hb.phi6) oc["bounds"]["phi6"] = fmt_full(*hb.phi6);
    ordered_json verts = ordered_json::array();
    for (const RatePair& v : region.vertices()) verts.push_back(point_json(v));
    oc["vertices"] = verts;
  }
  oc["disagreement"] = point_json(d);

  std::vector<std::vector<std::string>> rows;
  if (scheme == Scheme::Hk) {
    for (const RatePair& v : region.vertices()) rows.push_back({fmt6(v.r1), fmt6(v.r2)});
    write_csv(ctx.out_path("region_vertices.csv"), {"r1", "r2"}, rows, rep.artifacts, out);
  } else {
    std::vector<std::vector<std::string>> frows;
    for (int i = 0; i <= 100; ++i) {
      const double rho = static_cast<double>(i) / 100.0;
      const RatePair p = tdm_point(rho, sc.params);
      frows.push_back({fmt6(rho), fmt6(p.r1), fmt6(p.r2)});
    }
    write_csv(ctx.out_path("region_frontier.csv"), {"rho1", "r1", "r2"}, frows, rep.artifacts,
              out);
  }

  if (ctx.st.want_svg) {
    const std::vector<svg::Series> series = {
        {boundary_points(region), "#1f77b4", scheme == Scheme::Hk ? "HK" : "TDM",
         scheme == Scheme::Hk}};
    write_file(ctx.out_path("region.svg"),
               svg::render_plot(series, {{d, "R0", "#000000"}}, "Achievable rate region"),
               rep.artifacts, out);
  }

  rep.record["outcome"] = oc;
}

void cmd_bargain(const Context& ctx, RunReport& rep, std::ostream& out) {
  const Scenario sc = build_scenario(ctx.st);
  const CoordinationOutcome oc = negotiate(sc);

  std::vector<std::vector<std::string>> rows;
  const auto add_row = [&](const std::string& name, const RatePair& p) {
    rows.push_back({name, fmt6(p.r1), fmt6(p.r2)});
  };
  add_row("disagreement", oc.disagreement);
  if (oc.nbs) add_row("nbs", *oc.nbs);
  if (oc.spe) {
    add_row("r_bar", oc.spe->r_bar);
    add_row("r_tilde", oc.spe->r_tilde);
  }
  add_row("operating_point", oc.operating_point);
  write_csv(ctx.out_path("bargain.csv"), {"point", "r1", "r2"}, rows, rep.artifacts, out);

  if (ctx.st.want_svg) {
    const RateRegion region = sc.scheme == Scheme::Hk
                                  ? hk_polytope(sc.params, oc.split ? *oc.split
                                                                    : default_power_split(sc.params))
                                  : tdm_region(sc.params);
    const std::vector<svg::Series> series = {
        {boundary_points(region), "#1f77b4", sc.scheme == Scheme::Hk ? "HK" : "TDM",
         sc.scheme == Scheme::Hk}};
    write_file(ctx.out_path("bargain.svg"),
               svg::render_plot(series, outcome_markers(oc), "Bargaining outcome"),
               rep.artifacts, out);
  }

  rep.record["outcome"] = outcome_json(oc);
  if (sc.solution == SolutionKind::Spe && oc.spe_refused) {
    throw RefusalError("bargaining problem is non-regular; refusing to select an equilibrium");
  }
}

void cmd_simulate(const Context& ctx, RunReport& rep, std::ostream& out) {
  Scenario sc = build_scenario(ctx.st);
  sc.solution = SolutionKind::Both;
  const CoordinationOutcome oc = negotiate(sc);
  ordered_json rec = outcome_json(oc);

  if (!oc.agreed) {
    rep.record["outcome"] = rec;
    out << "phase 1 failed: users stay at the disagreement point; nothing to simulate\n";
    return;
  }
  if (!oc.spe) {
    rep.record["outcome"] = rec;
    throw RefusalError("bargaining problem is non-regular; no equilibrium strategies to simulate");
  }

  const RateRegion region = sc.scheme == Scheme::Hk ? hk_polytope(sc.params, *oc.split)
                                                    : tdm_region(sc.params);
  const GameSpec spec{BargainingProblem(region, oc.disagreement), sc.probs, sc.first_mover,
                      ctx.st.max_rounds};
  const auto [s1, s2] = equilibrium_strategies(spec.problem, spec.probs);

  const PlayOutcome po = play(spec, s1, s2, ctx.st.seed);
  const RatePair exp = expected_payoffs(spec, s1, s2);
  const DeviationGain gains = deviation_gain(spec, s1, s2, ctx.st.grid_size);
  const MonteCarloResult mc = monte_carlo(spec, s1, s2, ctx.st.trials, ctx.st.seed);

  rec["strategies"] = ordered_json{
      {"user1", ordered_json{{"offer", point_json(s1.offer)},
                             {"accept_threshold", fmt_full(s1.accept_threshold)}}},
      {"user2", ordered_json{{"offer", point_json(s2.offer)},
                             {"accept_threshold", fmt_full(s2.accept_threshold)}}}};
  rec["play"] = ordered_json{
      {"ending", po.ending == PlayOutcome::Ending::Agreement ? "agreement" : "breakdown"},
      {"round", po.round},
      {"payoffs", point_json(po.payoffs)},
      {"truncated", po.truncated}};
  rec["expected_payoffs"] = point_json(exp);
  rec["deviation_gain"] = ordered_json{{"user1", fmt_full(gains.user1)},
                                       {"user2", fmt_full(gains.user2)},
                                       {"grid_size", ctx.st.grid_size}};
  rec["monte_carlo"] =
      ordered_json{{"trials", mc.trials},
                   {"seed", ctx.st.seed},
                   {"mean_payoffs", point_json(mc.mean_payoffs)},
                   {"truncated", mc.truncated}};

  std::vector<std::vector<std::string>> rows;
  std::map<int, std::pair<long long, long long>> hist;
  for (const auto& [round, n] : mc.agreement_rounds) hist[round].first = n;
  for (const auto& [round, n] : mc.breakdown_rounds) hist[round].second = n;
  for (const auto& [round, counts] : hist) {
    rows.push_back({std::to_string(round), std::to_string(counts.first),
                    std::to_string(counts.second)});
  }
  write_csv(ctx.out_path("simulate_histogram.csv"), {"round", "agreements", "breakdowns"}, rows,
            rep.artifacts, out);

  rep.record["outcome"] = rec;
}

void cmd_sweep(const Context& ctx, RunReport& rep, std::ostream& out) {
  const Scenario sc = build_scenario(ctx.st);
  if (!(ctx.st.p1_step > 0.0)) throw InputError("sweep step must be positive");
  if (ctx.st.p1_to < ctx.st.p1_from) throw InputError("sweep range is empty (to < from)");
  if (ctx.st.sweep_variable != "p1" && ctx.st.sweep_variable != "p") {
    throw InputError("sweep variable must be 'p1' (vary p1) or 'p' (joint p1 = p2)");
  }
  const bool joint = ctx.st.sweep_variable == "p";

  std::vector<double> grid;
  for (double v = ctx.st.p1_from; v <= ctx.st.p1_to + 1e-12; v += ctx.st.p1_step) {
    grid.push_back(std::min(v, ctx.st.p1_to));
  }
  const std::vector<SweepRow> rows = sweep(sc, grid, ctx.st.p2, joint);

  std::vector<std::vector<std::string>> csv;
  ordered_json jrows = ordered_json::array();
  int refused = 0;
  for (const SweepRow& row : rows) {
    const CoordinationOutcome& o = row.outcome;
    const std::string status =
        !o.agreed ? "disagreed" : (o.spe_refused ? "nonregular" : "agreed");
    if (o.spe_refused) ++refused;
    std::vector<std::string> line = {fmt6(row.p1), fmt6(row.p2), status};
    if (o.spe) {
      line.insert(line.end(), {fmt6(o.spe->r_bar.r1), fmt6(o.spe->r_bar.r2),
                               fmt6(o.spe->r_tilde.r1), fmt6(o.spe->r_tilde.r2)});
    } else {
      line.insert(line.end(), {"", "", "", ""});
    }
    if (o.nbs) {
      line.insert(line.end(), {fmt6(o.nbs->r1), fmt6(o.nbs->r2)});
    } else {
      line.insert(line.end(), {"", ""});
    }
    csv.push_back(line);

    ordered_json jr;
    jr["p1"] = fmt_full(row.p1);
    jr["p2"] = fmt_full(row.p2);
    jr["outcome"] = outcome_json(o);
    jrows.push_back(jr);
  }
  write_csv(ctx.out_path("sweep.csv"),
            {"p1", "p2", "status", "rbar1", "rbar2", "rtilde1", "rtilde2", "nbs1", "nbs2"}, csv,
            rep.artifacts, out);
  rep.record["outcome"] = ordered_json{{"rows", jrows}};

  if (sc.solution == SolutionKind::Spe && !rows.empty() &&
      refused == static_cast<int>(rows.size())) {
    throw RefusalError("every sweep row is non-regular; no equilibria to report");
  }
}

void cmd_compare(const Context& ctx, RunReport& rep, std::ostream& out) {
  const Scenario sc = build_scenario(ctx.st);
  const SchemeComparison cmp = compare_schemes(sc.params, sc.probs, sc.first_mover);

  const auto verdict_name = [](Verdict v) {
    switch (v) {
      case Verdict::HkDominates: return "hk_dominates";
      case Verdict::TdmDominates: return "tdm_dominates";
      case Verdict::Mixed: return "mixed";
      case Verdict::Incomparable: return "incomparable";
    }
    return "incomparable";
  };

  std::vector<std::vector<std::string>> rows;
  const auto add_scheme_row = [&](const std::string& name, const CoordinationOutcome& o) {
    std::vector<std::string> line = {
        name, !o.agreed ? "disagreed" : (o.spe_refused ? "nonregular" : "agreed"),
        fmt6(o.operating_point.r1), fmt6(o.operating_point.r2)};
    if (o.nbs) {
      line.insert(line.end(), {fmt6(o.nbs->r1), fmt6(o.nbs->r2)});
    } else {
      line.insert(line.end(), {"", ""});
    }
    rows.push_back(line);
  };
  add_scheme_row("hk", cmp.hk);
  add_scheme_row("tdm", cmp.tdm);
  write_csv(ctx.out_path("compare.csv"), {"scheme", "status", "op_r1", "op_r2", "nbs1", "nbs2"},
            rows, rep.artifacts, out);

  if (ctx.st.want_svg) {
    std::vector<svg::Series> series;
    const PowerSplit split =
        cmp.hk.split ? *cmp.hk.split : default_power_split(sc.params);
    series.push_back({boundary_points(hk_polytope(sc.params, split)), "#1f77b4", "HK", true});
    series.push_back({boundary_points(tdm_region(sc.params)), "#9467bd", "TDM", false});
    std::vector<svg::Marker> markers = outcome_markers(cmp.hk);
    for (svg::Marker m : outcome_markers(cmp.tdm)) {
      m.label += " (TDM)";
      markers.push_back(m);
    }
    write_file(ctx.out_path("compare.svg"),
               svg::render_plot(series, markers, "HK vs TDM bargaining outcomes"),
               rep.artifacts, out);
  }

  rep.record["outcome"] = ordered_json{{"verdict", verdict_name(cmp.verdict)},
                                       {"hk", outcome_json(cmp.hk)},
                                       {"tdm", outcome_json(cmp.tdm)}};
  out << "verdict: " << verdict_name(cmp.verdict) << "\n";
}

}  // namespace

RunReport run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunReport rep;
  Context ctx;
  Settings flag;  // values given on the command line
  std::string scenario_path;

  CLI::App app{"Rate-region and alternating-offer bargaining solver for the two-user "
               "Gaussian interference channel"};
  app.name("icbargain");
  app.require_subcommand(1);

  std::string command;
  std::optional<double> f_a, f_b, f_snr1, f_snr2, f_p1, f_p2;
  std::optional<std::string> f_scheme, f_first_mover, f_solution;
  std::optional<long long> f_trials;
  std::optional<std::uint64_t> f_seed;
  std::optional<int> f_grid, f_max_rounds;
  std::optional<double> f_p1_from, f_p1_to, f_p1_step;
  std::optional<std::string> f_sweep_var;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--scenario", scenario_path, "JSON scenario file; flags override its values");
    sub->add_option("--a", f_a, "cross gain 2->1 (linear)");
    sub->add_option("--b", f_b, "cross gain 1->2 (linear)");
    sub->add_option("--snr1-db", f_snr1, "SNR of user 1 in dB");
    sub->add_option("--snr2-db", f_snr2, "SNR of user 2 in dB");
    sub->add_option("--scheme", f_scheme, "hk or tdm");
    sub->add_option("--p1", f_p1, "breakdown probability after user 1's offers");
    sub->add_option("--p2", f_p2, "breakdown probability after user 2's offers");
    sub->add_option("--first-mover", f_first_mover, "u1 or u2");
    sub->add_option("--solution", f_solution, "spe, nbs or both");
    sub->add_option("--out", ctx.st.out_dir, "output directory (default: out)");
    sub->add_flag("--svg", ctx.st.want_svg, "also emit an SVG plot");
    sub->parse_complete_callback([&, sub] { command = sub->get_name(); });
  };

  CLI::App* c_region = app.add_subcommand("region", "construct and export a rate region");
  add_common(c_region);
  CLI::App* c_bargain =
      app.add_subcommand("bargain", "two-phase coordination: incentives, then NBS/SPE");
  add_common(c_bargain);
  CLI::App* c_sim = app.add_subcommand(
      "simulate", "play the alternating-offer game and verify the equilibrium");
  add_common(c_sim);
  c_sim->add_option("--trials", f_trials, "Monte Carlo trials (default 10000)");
  c_sim->add_option("--seed", f_seed, "master seed (default 12345)");
  c_sim->add_option("--grid-size", f_grid, "deviation grid size (default 201)");
  c_sim->add_option("--max-rounds", f_max_rounds, "simulation round cap (default 10000)");
  CLI::App* c_sweep = app.add_subcommand("sweep", "equilibrium as a function of p1");
  add_common(c_sweep);
  c_sweep->add_option("--p1-from", f_p1_from, "sweep start (default 0.05)");
  c_sweep->add_option("--p1-to", f_p1_to, "sweep end (default 0.95)");
  c_sweep->add_option("--p1-step", f_p1_step, "sweep step (default 0.05)");
  c_sweep->add_option("--variable", f_sweep_var, "p1 (vary p1 only) or p (joint p1 = p2)");
  CLI::App* c_compare = app.add_subcommand("compare", "negotiate under HK and TDM and compare");
  add_common(c_compare);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    rep.exit_code = 0;
    return rep;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    rep.exit_code = 2;
    return rep;
  }

  try {
    if (!scenario_path.empty()) load_scenario_file(scenario_path, ctx.st);
    // Flags override scenario-file values.
    if (f_a) ctx.st.a = *f_a;
    if (f_b) ctx.st.b = *f_b;
    if (f_snr1) ctx.st.snr1_db = *f_snr1;
    if (f_snr2) ctx.st.snr2_db = *f_snr2;
    if (f_scheme) ctx.st.scheme = *f_scheme;
    if (f_p1) ctx.st.p1 = *f_p1;
    if (f_p2) ctx.st.p2 = *f_p2;
    if (f_first_mover) ctx.st.first_mover = *f_first_mover;
    if (f_solution) ctx.st.solution = *f_solution;
    if (f_trials) ctx.st.trials = *f_trials;
    if (f_seed) ctx.st.seed = *f_seed;
    if (f_grid) ctx.st.grid_size = *f_grid;
    if (f_max_rounds) ctx.st.max_rounds = *f_max_rounds;
    if (f_p1_from) ctx.st.p1_from = *f_p1_from;
    if (f_p1_to) ctx.st.p1_to = *f_p1_to;
    if (f_p1_step) ctx.st.p1_step = *f_p1_step;
    if (f_sweep_var) ctx.st.sweep_variable = *f_sweep_var;

    fs::create_directories(ctx.st.out_dir);

    const Scenario sc = build_scenario(ctx.st);
    rep.record["command"] = command;
    rep.record["inputs"] = inputs_json(ctx.st, sc);
    if (command == "simulate") {
      rep.record["inputs"]["trials"] = ctx.st.trials;
      rep.record["inputs"]["seed"] = ctx.st.seed;
      rep.record["inputs"]["grid_size"] = ctx.st.grid_size;
      rep.record["inputs"]["max_rounds"] = ctx.st.max_rounds;
    } else if (command == "sweep") {
      rep.record["inputs"]["sweep"] =
          ordered_json{{"variable", ctx.st.sweep_variable},
                       {"from", fmt_full(ctx.st.p1_from)},
                       {"to", fmt_full(ctx.st.p1_to)},
                       {"step", fmt_full(ctx.st.p1_step)}};
    }

    int refusal = 0;
    try {
      if (command == "region") {
        cmd_region(ctx, rep, out);
      } else if (command == "bargain") {
        cmd_bargain(ctx, rep, out);
      } else if (command == "simulate") {
        cmd_simulate(ctx, rep, out);
      } else if (command == "sweep") {
        cmd_sweep(ctx, rep, out);
      } else if (command == "compare") {
        cmd_compare(ctx, rep, out);
      }
    } catch (const RefusalError& e) {
      err << "refusal: " << e.what() << "\n";
      refusal = 3;
    }

    rep.record["artifacts"] = rep.artifacts;
    const std::string record_path = ctx.out_path(command + ".json");
    write_file(record_path, rep.record.dump(2) + "\n", rep.artifacts, out);
    rep.record["artifacts"].push_back(record_path);
    rep.exit_code = refusal;
    return rep;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    rep.exit_code = 2;
    return rep;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    rep.exit_code = 2;
    return rep;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    rep.exit_code = 2;
    return rep;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    rep.exit_code = 1;
    return rep;
  }
}

}  // namespace icb::cli
