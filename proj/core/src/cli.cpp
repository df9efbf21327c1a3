#include "etrails/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "etrails/gadgets.hpp"
#include "etrails/kotzig.hpp"
#include "etrails/reductions.hpp"
#include "etrails/report.hpp"

namespace etrails {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MapError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void spit(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw MapError("cannot write " + path);
  out << text;
}

mpq_class parse_rational(const std::string& s) {
  mpq_class q;
  if (s.find('/') != std::string::npos) {
    q = mpq_class(s);
  } else if (s.find('.') != std::string::npos || s.find('e') != std::string::npos) {
    q = mpq_class(std::stod(s));
  } else {
    q = mpq_class(s);
  }
  q.canonicalize();
  return q;
}

Json map_json(const MixedMap& m) { return Json::parse(serialize_map_json(m)); }

GadgetBlueprint blueprint_from(const std::string& kind, int k, int p, int d, int layers) {
  using Kind = GadgetBlueprint::Kind;
  GadgetBlueprint bp;
  bp.k = k;
  bp.p = p;
  bp.d = d;
  bp.layers = layers;
  if (kind == "xyy")
    bp.kind = Kind::Xyy;
  else if (kind == "oxy")
    bp.kind = Kind::Oxy;
  else if (kind == "q")
    bp.kind = Kind::Q;
  else if (kind == "deg4map")
    bp.kind = Kind::Deg4Map;
  else if (kind == "shuffle")
    bp.kind = Kind::Shuffle;
  else if (kind == "crossover")
    bp.kind = Kind::Crossover;
  else
    throw CLI::ValidationError("kind", "unknown gadget kind " + kind);
  return bp;
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
             const RunConfig& base) {
  CLI::App app{"counting toolkit for Eulerian tours and A-trails"};
  app.require_subcommand(1);

  RunConfig cfg = base;
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file (overrides ETRAILS_CONFIG)");
  app.add_option("--threads", cfg.threads, "worker threads (0 = all cores)");
  app.add_option("--prec", cfg.precision_bits, "region precision in bits");
  std::string tol_str;
  app.add_option("--tol", tol_str, "region tolerance (rational)");
  app.add_option("--seed", cfg.seed, "RNG seed");

  // count
  auto* count_cmd = app.add_subcommand("count", "exact counts for a map file");
  std::string count_mode = "et", count_file;
  count_cmd->add_option("--mode", count_mode, "et | atrails | vr | vr-atrails")
      ->check(CLI::IsMember({"et", "atrails", "vr", "vr-atrails"}));
  count_cmd->add_option("file", count_file, "map JSON file")->required();

  // gadget build/verify
  auto* gadget_cmd = app.add_subcommand("gadget", "gadget builders and verification");
  gadget_cmd->require_subcommand(1);
  std::string gb_kind, gb_out;
  int gb_k = 1, gb_p = 3, gb_d = 2, gb_layers = 1;
  auto* gb = gadget_cmd->add_subcommand("build", "emit a gadget as map JSON");
  gb->add_option("kind", gb_kind, "xyy|oxy|q|deg4map|shuffle|crossover|smg|sgg")->required();
  gb->add_option("--k", gb_k);
  gb->add_option("--p", gb_p);
  gb->add_option("--d", gb_d);
  gb->add_option("--layers", gb_layers);
  gb->add_option("--out", gb_out, "write to file instead of stdout");
  auto* gv = gadget_cmd->add_subcommand("verify", "builder-vs-oracle comparison");
  std::string gv_kind;
  int gv_k = 1, gv_p = 3, gv_d = 2, gv_layers = 1;
  gv->add_option("kind", gv_kind)->required();
  gv->add_option("--k", gv_k);
  gv->add_option("--p", gv_p);
  gv->add_option("--d", gv_d);
  gv->add_option("--layers", gv_layers);

  // reduce
  auto* reduce_cmd = app.add_subcommand("reduce", "the reductions");
  reduce_cmd->require_subcommand(1);
  std::string rin;
  int rp = 5;
  std::string rthreshold = "gt4";
  bool rauto = false;
  double reps = 0.5, rconst = 0.0;
  auto* r4 = reduce_cmd->add_subcommand("to4regular", "Q-gadget expansion");
  r4->add_option("--input", rin)->required();
  r4->add_option("--p", rp);
  r4->add_flag("--primes-auto", rauto, "full CRT pipeline with auto-selected primes");
  r4->add_option("--threshold", rthreshold)->check(CLI::IsMember({"gt4", "ge4"}));
  auto* rplanar = reduce_cmd->add_subcommand("planar", "crossing replacement");
  rplanar->add_option("--input", rin)->required();
  rplanar->add_option("--p", rp);
  auto* ratrail = reduce_cmd->add_subcommand("atrails", "ET -> A-trails map gadget substitution");
  ratrail->add_option("--input", rin)->required();
  auto* rap = reduce_cmd->add_subcommand("ap", "approximation-preserving shuffle instance");
  rap->add_option("--input", rin)->required();
  rap->add_option("--eps", reps)->required();
  rap->add_option("--const", rconst, "layer constant C (default: calibrated)");

  // kotzig
  auto* kotzig_cmd = app.add_subcommand("kotzig", "#A-trails for 4-regular plane maps");
  std::string kfile;
  kotzig_cmd->add_option("file", kfile)->required();

  // sig
  auto* sig_cmd = app.add_subcommand("sig", "signature algebra");
  sig_cmd->require_subcommand(1);
  std::string sfile, sfile2;
  auto* sof = sig_cmd->add_subcommand("of", "signature of a 4-external gadget");
  sof->add_option("file", sfile)->required();
  auto* sglue = sig_cmd->add_subcommand("glue", "2-glue of two gadget files");
  sglue->add_option("a", sfile)->required();
  sglue->add_option("b", sfile2)->required();
  std::vector<std::string> sig_args;
  auto* sregion = sig_cmd->add_subcommand("region", "classify a signature against S");
  sregion->add_option("abc", sig_args, "alpha beta gamma")->expected(3);
  auto* smap = sig_cmd->add_subcommand("synth-map", "exact map-gadget synthesis");
  smap->add_option("abc", sig_args, "alpha beta gamma")->expected(3);
  double seps = 0.05;
  auto* sgraph = sig_cmd->add_subcommand("synth-graph", "approximate graph-gadget synthesis");
  sgraph->add_option("abc", sig_args, "alpha beta gamma")->expected(3);
  sgraph->add_option("--eps", seps);

  // experiment
  auto* exp_cmd = app.add_subcommand("experiment", "region experiments");
  exp_cmd->require_subcommand(1);
  int en = 3;
  bool eloops = false, eno_dedup = false;
  std::string ecsv;
  auto* escan = exp_cmd->add_subcommand("region-scan", "signatures of all small gadgets");
  escan->add_option("--n", en)->required();
  escan->add_flag("--loops", eloops);
  escan->add_flag("--no-dedup", eno_dedup);
  escan->add_option("--csv", ecsv, "write alpha,beta,gamma,class rows");
  long long etrials = 10000;
  auto* eclosure = exp_cmd->add_subcommand("closure", "random 2-glue closure sampling");
  eclosure->add_option("--trials", etrials);
  eclosure->add_option("--csv", ecsv);

  // chain
  auto* chain_cmd = app.add_subcommand("chain", "even/odd sweep chain");
  int cd = 4, clayers = 1;
  double ceps = 0.1;
  chain_cmd->add_option("--d", cd)->required();
  chain_cmd->add_option("--layers", clayers);
  auto* ccal = chain_cmd->add_subcommand("calibrate", "minimal layer search");
  ccal->add_option("--eps", ceps);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (!config_path.empty()) {
      RunConfig file_cfg = RunConfig::from_json_file(config_path);
      // flags win over the file: re-apply any explicitly set flags
      if (!app.count("--threads")) cfg.threads = file_cfg.threads;
      if (!app.count("--prec")) cfg.precision_bits = file_cfg.precision_bits;
      if (!app.count("--seed")) cfg.seed = file_cfg.seed;
      cfg.half_edge_budget = file_cfg.half_edge_budget;
      cfg.gadget_size_cap = file_cfg.gadget_size_cap;
      cfg.chain_cap = file_cfg.chain_cap;
      cfg.calibration_c = file_cfg.calibration_c;
      cfg.synth_delta_divisor = file_cfg.synth_delta_divisor;
      if (!app.count("--tol")) cfg.tolerance = file_cfg.tolerance;
    }
    if (!tol_str.empty()) cfg.tolerance = parse_rational(tol_str);
    int threads = cfg.resolved_threads();

    if (*count_cmd) {
      MixedMap m = parse_map_json(slurp(count_file));
      if (count_mode == "et")
        out << render(json_count("et", count_closed(m, TraceMode::General, threads))) << "\n";
      else if (count_mode == "atrails")
        out << render(json_count("atrails", count_closed(m, TraceMode::ATrail, threads))) << "\n";
      else if (count_mode == "vr")
        out << render(json_vr_table(count_vr(m, TraceMode::General, threads))) << "\n";
      else
        out << render(json_vr_table(count_vr(m, TraceMode::ATrail, threads))) << "\n";
      return 0;
    }

    if (*gadget_cmd) {
      if (*gb) {
        MixedMap m;
        if (gb_kind == "smg")
          m = build_smg();
        else if (gb_kind == "sgg")
          m = build_sgg();
        else if (gb_kind == "xyy")
          m = build_xyy(gb_k);
        else if (gb_kind == "oxy")
          m = build_0xy(gb_p, gb_k);
        else if (gb_kind == "crossover")
          m = build_crossover(gb_p);
        else if (gb_kind == "deg4map")
          m = build_deg4_map_gadget();
        else if (gb_kind == "shuffle")
          m = build_shuffle_gadget(gb_d, gb_layers);
        else if (gb_kind == "q")
          m = flatten(build_q(gb_d, gb_p));
        else
          throw MapError("unknown gadget kind " + gb_kind);
        std::string text = serialize_map_json(m);
        if (gb_out.empty())
          out << text << "\n";
        else
          spit(gb_out, text + "\n");
        return 0;
      }
      VerifyReport rep = verify_blueprint(blueprint_from(gv_kind, gv_k, gv_p, gv_d, gv_layers),
                                          threads);
      out << render(json_verify(rep)) << "\n";
      return rep.pass ? 0 : 1;
    }

    if (*reduce_cmd) {
      MixedMap g = parse_map_json(slurp(rin));
      if (*r4) {
        ReplaceThreshold thr = rthreshold == "ge4" ? ReplaceThreshold::AtLeast4
                                                   : ReplaceThreshold::GreaterThan4;
        Json j;
        if (rauto) {
          std::vector<long long> primes;
          BigCount t = count_et_via_crt(g, thr, threads, &primes);
          j["primes"] = primes;
          j["count"] = decimal(t);
          Json factors = Json::object();
          for (const auto& [d, nd] : degree_profile(g))
            if ((thr == ReplaceThreshold::GreaterThan4 && d > 4) || d >= 4)
              factors[std::to_string(d)] = decimal(q_closure_factor(d));
          j["factors"] = factors;
        } else {
          ExpandResult ex = expand_to_4regular(g, rp, thr, threads);
          j["p"] = rp;
          Json factors = Json::object();
          for (const auto& [d, nd] : ex.replaced)
            factors[std::to_string(d)] = decimal(q_closure_factor(d));
          j["factors"] = factors;
          Json replaced = Json::object();
          for (const auto& [d, nd] : ex.replaced) replaced[std::to_string(d)] = nd;
          j["replaced"] = replaced;
          j["map"] = map_json(flatten(ex.network));
        }
        out << render(j) << "\n";
        return 0;
      }
      if (*rplanar) {
        PlanarizeResult res = planarize(g, rp, cfg.seed);
        Json j;
        j["p"] = rp;
        j["crossings"] = res.report.crossings.size();
        Json cr = Json::array();
        for (const auto& x : res.report.crossings) cr.push_back({x.edge_a, x.edge_b});
        j["crossing_pairs"] = cr;
        j["seed_used"] = res.report.seed_used;
        j["map"] = map_json(res.plane_map);
        out << render(j) << "\n";
        return 0;
      }
      if (*ratrail) {
        MixedMap res = to_atrail_instance(g);
        Json j;
        j["vertices_in"] = g.n_vertices();
        j["map"] = map_json(res);
        out << render(j) << "\n";
        return 0;
      }
      double cc = rconst > 0 ? rconst : cfg.calibration_c;
      ApInstance inst = ap_instance(g, reps, cc, cfg.chain_cap);
      Json j;
      j["eps"] = reps;
      j["const"] = cc;
      j["normalizer"] = fraction(inst.normalizer);
      Json layers = Json::object(), sizes = Json::object();
      for (const auto& [d, t] : inst.layer_counts) layers[std::to_string(d)] = t;
      for (const auto& [d, s] : inst.gadget_sizes) sizes[std::to_string(d)] = s;
      j["layers"] = layers;
      j["gadget_vertices"] = sizes;
      j["map"] = map_json(inst.gprime);
      out << render(j) << "\n";
      return 0;
    }

    if (*kotzig_cmd) {
      MixedMap m = parse_map_json(slurp(kfile));
      FaceStructure fs = trace_faces(m);
      Json j;
      j["atrails"] = decimal(count_atrails_plane(m));
      j["faces"] = fs.faces.size();
      j["genus"] = fs.genus;
      out << render(j) << "\n";
      return 0;
    }

    if (*sig_cmd) {
      if (*sof) {
        Signature s = signature_of(parse_map_json(slurp(sfile)), threads);
        out << render(json_signature(s)) << "\n";
        return 0;
      }
      if (*sglue) {
        MixedMap a = parse_map_json(slurp(sfile)), b = parse_map_json(slurp(sfile2));
        MixedMap glued = glue_build(a, b);
        Json j;
        j["signature"] = json_signature(glue_signature(signature_of(a, threads),
                                                       signature_of(b, threads)));
        j["map"] = map_json(glued);
        out << render(j) << "\n";
        return 0;
      }
      std::array<mpq_class, 3> abc;
      for (int i = 0; i < 3; ++i) abc[i] = parse_rational(sig_args[i]);
      if (*sregion) {
        RegionClass cls = region_classify(abc, cfg.tolerance, cfg.precision_bits);
        out << render(json_region_class(cls, region_margin(abc, cfg.precision_bits))) << "\n";
        return 0;
      }
      if (*smap) {
        SynthesisResult res = synthesize_map_gadget(abc, cfg.gadget_size_cap);
        Json j;
        j["signature"] = json_signature(res.achieved);
        j["vertices"] = res.gadget.n_vertices();
        j["map"] = map_json(res.gadget);
        out << render(j) << "\n";
        return 0;
      }
      GraphSynthOptions opts;
      opts.eps = seps;
      opts.delta_divisor = cfg.synth_delta_divisor;
      opts.prec_bits = cfg.precision_bits;
      opts.tol = cfg.tolerance;
      opts.vertex_cap = cfg.gadget_size_cap;
      SynthesisResult res = synthesize_graph_gadget(abc, opts);
      Json j;
      j["signature"] = json_signature(res.achieved);
      j["l1_distance"] = res.l1_distance.get_d();
      j["vertices"] = res.gadget.n_vertices();
      out << render(j) << "\n";
      return 0;
    }

    if (*exp_cmd) {
      if (*escan) {
        EnumOptions eo;
        eo.allow_loops = eloops;
        eo.dedup = !eno_dedup;
        RegionScanReport rep = region_scan(en, eo, cfg.tolerance, cfg.precision_bits, threads,
                                           !ecsv.empty());
        if (!ecsv.empty()) spit(ecsv, csv_region_scan(rep));
        out << render(json_region_scan(rep)) << "\n";
        return rep.outside == 0 ? 0 : 1;
      }
      ClosureSampleReport rep =
          closure_sample(etrials, cfg.seed, cfg.tolerance, cfg.precision_bits);
      if (!ecsv.empty()) spit(ecsv, csv_closure(rep));
      out << render(json_closure(rep)) << "\n";
      return rep.outside == 0 ? 0 : 1;
    }

    if (*chain_cmd) {
      if (*ccal) {
        MixingReport rep = mixing_report(cd, ceps, cfg.calibration_c, cfg.chain_cap);
        out << render(json_mixing(rep)) << "\n";
        return 0;
      }
      PermDistribution dist = chain_distribution(cd, clayers, cfg.chain_cap);
      Json j;
      j["d"] = cd;
      j["layers"] = clayers;
      j["tv"] = fraction(tv_to_uniform(dist));
      Json probs = Json::object();
      long long nf = factorial_ll(cd);
      for (long long r = 0; r < nf; ++r) {
        if (dist.weight[r] == 0) continue;
        std::vector<int> perm = perm_unrank(cd, r);
        std::string key;
        for (int i = 0; i < cd; ++i) key += std::to_string(perm[i] + 1) + (i + 1 < cd ? " " : "");
        probs[key] = fraction(dist.prob(static_cast<int>(r)));
      }
      j["distribution"] = probs;
      out << render(j) << "\n";
      return 0;
    }
  } catch (const MapError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "usage error: no command\n";
  return 2;
}

}  // namespace etrails
