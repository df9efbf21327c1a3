#include "etrails/signature.hpp"

#include <algorithm>
#include <numeric>

#include "etrails/gadgets.hpp"

namespace etrails {

namespace {

const std::array<RouteType, 3>& the_types() {
  static const std::array<RouteType, 3> t = {RouteType::of({{0, 1}, {2, 3}}),
                                             RouteType::of({{0, 2}, {1, 3}}),
                                             RouteType::of({{0, 3}, {1, 2}})};
  return t;
}

int type_index(const RouteType& t) {
  const auto& types = the_types();
  for (int i = 0; i < 3; ++i)
    if (types[i] == t) return i;
  throw MapError("not a 4-external route type: " + t.str());
}

mpq_class canon(mpq_class q) {
  q.canonicalize();
  return q;
}

}  // namespace

std::string Signature::str() const {
  return "(" + alpha.get_str() + ", " + beta.get_str() + ", " + gamma.get_str() + ")";
}

Signature make_signature(const mpq_class& a, const mpq_class& b, const mpq_class& c) {
  Signature s{canon(a), canon(b), canon(c)};
  if (s.alpha < 0 || s.beta < 0 || s.gamma < 0)
    throw MapError("signature entries must be non-negative");
  if (s.alpha + s.beta + s.gamma != 1) throw MapError("signature entries must sum to 1");
  return s;
}

Signature signature_of(const VRTable& table) {
  if (table.n_labels != 4) throw MapError("signature_of needs exactly 4 externals");
  const auto& types = the_types();
  BigCount total = table.total();
  if (total == 0) throw MapError("signature undefined: gadget has no valid route set");
  auto frac = [&](const RouteType& t) { return canon(mpq_class(table.at(t), total)); };
  return Signature{frac(types[0]), frac(types[1]), frac(types[2])};
}

Signature signature_of(const MixedMap& gadget, int threads) {
  TraceMode mode = gadget.kind == MapKind::Map ? TraceMode::ATrail : TraceMode::General;
  return signature_of(count_vr(gadget, mode, threads));
}

MixedMap relabel_externals(const MixedMap& g, const std::array<int, 4>& perm) {
  if (g.n_externals() != 4) throw MapError("relabel_externals needs exactly 4 externals");
  MixedMap out = g;
  for (External& x : out.externals) x.label = perm[x.label];
  return out;
}

std::array<int, 3> type_permutation(const std::array<int, 4>& perm) {
  const auto& types = the_types();
  std::array<int, 3> out{};
  for (int i = 0; i < 3; ++i) {
    std::vector<std::pair<std::int32_t, std::int32_t>> mapped;
    for (const auto& [a, b] : types[i].pairs) mapped.push_back({perm[a], perm[b]});
    out[i] = type_index(RouteType::of(std::move(mapped)));
  }
  return out;
}

std::array<int, 4> label_perm_for_types(const std::array<int, 3>& type_perm) {
  std::array<int, 4> p = {0, 1, 2, 3};
  std::sort(p.begin(), p.end());
  do {
    if (type_permutation(p) == type_perm) return p;
  } while (std::next_permutation(p.begin(), p.end()));
  throw MapError("no label permutation realizes the requested type permutation");
}

Signature permute_signature(const Signature& s, const std::array<int, 4>& perm) {
  std::array<int, 3> tp = type_permutation(perm);
  std::array<mpq_class, 3> in = s.arr(), out;
  for (int i = 0; i < 3; ++i) out[tp[i]] = in[i];
  return Signature{out[0], out[1], out[2]};
}

MixedMap glue_build(const MixedMap& g1, const MixedMap& g2) {
  if (g1.n_externals() != 4 || g2.n_externals() != 4)
    throw MapError("glue_build needs two 4-external gadgets");
  if (g1.kind != g2.kind) throw MapError("glue_build: gadget kinds differ");
  MixedMap a = canonicalize(g1), b = canonicalize(g2);
  int off = 2 * a.n_edges() + 4;
  MixedMap out;
  out.kind = a.kind;
  out.vertices = a.vertices;
  for (const Vertex& v : b.vertices) {
    Vertex nv;
    nv.id = static_cast<int>(out.vertices.size());
    for (HalfEdge h : v.rotation) nv.rotation.push_back(h + off);
    out.vertices.push_back(std::move(nv));
  }
  out.edges = a.edges;
  for (const auto& e : b.edges) out.edges.push_back({e[0] + off, e[1] + off});
  std::array<HalfEdge, 4> ha{}, hb{};
  for (const External& x : a.externals) ha[x.label] = x.half_edge;
  for (const External& x : b.externals) hb[x.label] = x.half_edge + off;
  out.edges.push_back({ha[3], hb[0]});
  out.edges.push_back({ha[2], hb[1]});
  out.externals = {{0, ha[0]}, {1, ha[1]}, {2, hb[2]}, {3, hb[3]}};
  return canonicalize(out);
}

Signature glue_signature(const Signature& s1, const Signature& s2) {
  mpq_class den = 1 - s1.alpha * s2.alpha;
  if (den == 0) throw MapError("glue_signature: degenerate denominator (alpha1*alpha2 = 1)");
  mpq_class a = (s1.alpha * s2.beta + s1.alpha * s2.gamma + s1.beta * s2.alpha +
                 s1.gamma * s2.alpha) /
                den;
  mpq_class b = (s1.beta * s2.gamma + s1.gamma * s2.beta) / den;
  mpq_class c = (s1.beta * s2.beta + s1.gamma * s2.gamma) / den;
  return make_signature(a, b, c);
}

VRTable glue_tables(const VRTable& t1, const VRTable& t2) {
  if (t1.n_labels != 4 || t2.n_labels != 4) throw MapError("glue_tables needs 4-external tables");
  const auto& ty = the_types();
  BigCount x1 = t1.at(ty[0]), y1 = t1.at(ty[1]), z1 = t1.at(ty[2]);
  BigCount x2 = t2.at(ty[0]), y2 = t2.at(ty[1]), z2 = t2.at(ty[2]);
  VRTable out;
  out.mode = t1.mode;
  out.n_labels = 4;
  out.counts[ty[0]] = x1 * (y2 + z2) + (y1 + z1) * x2;
  out.counts[ty[1]] = y1 * z2 + z1 * y2;
  out.counts[ty[2]] = y1 * y2 + z1 * z2;
  return out;
}

// ---------------------------------------------------------------------------
// replayable construction

GadgetProgram GadgetProgram::start(const std::string& base) {
  GadgetProgram p;
  p.base_ = base;
  if (base == "SMG")
    p.sig_ = make_signature(mpq_class(1, 2), mpq_class(1, 2), 0);
  else if (base == "SGG")
    p.sig_ = make_signature(mpq_class(1, 3), mpq_class(1, 3), mpq_class(1, 3));
  else
    throw MapError("unknown base gadget " + base);
  p.vertices_ = 1;
  return p;
}

void GadgetProgram::relabel(const std::array<int, 4>& perm) {
  sig_ = permute_signature(sig_, perm);
  steps_.push_back({Step::Op::Relabel, perm, "", sig_});
}

void GadgetProgram::glue(const std::string& name, std::shared_ptr<const GadgetProgram> partner) {
  auto it = partners_.find(name);
  if (it == partners_.end())
    partners_.emplace(name, partner);
  else if (it->second != partner)
    throw MapError("glue partner name reused with a different program: " + name);
  sig_ = glue_signature(sig_, partner->sig());
  vertices_ += partner->vertex_count();
  steps_.push_back({Step::Op::Glue, {0, 1, 2, 3}, name, sig_});
}

MixedMap GadgetProgram::build(long vertex_cap) const {
  if (vertices_ > vertex_cap)
    throw MapError("gadget exceeds the size cap: " + std::to_string(vertices_) + " > " +
                   std::to_string(vertex_cap) + " vertices");
  std::map<std::string, MixedMap> built;
  for (const auto& [name, prog] : partners_) built.emplace(name, prog->build(vertex_cap));
  MixedMap cur = (base_ == "SMG") ? build_smg() : build_sgg();
  for (const Step& s : steps_) {
    if (s.op == Step::Op::Relabel)
      cur = relabel_externals(cur, s.perm);
    else
      cur = glue_build(cur, built.at(s.gadget));
  }
  return cur;
}

Signature GadgetProgram::replay_signature() const {
  Signature cur = start(base_).sig();
  for (const Step& s : steps_) {
    if (s.op == Step::Op::Relabel)
      cur = permute_signature(cur, s.perm);
    else
      cur = glue_signature(cur, partners_.at(s.gadget)->replay_signature());
  }
  return cur;
}

// ---------------------------------------------------------------------------
// map-gadget synthesis

namespace {

constexpr std::array<int, 4> kSwapAB = {0, 2, 1, 3};   // swap types alpha,beta
constexpr std::array<int, 4> kSwapBC = {0, 1, 3, 2};   // swap types beta,gamma
constexpr std::array<int, 4> kSwapAC = {0, 3, 2, 1};   // swap types alpha,gamma
constexpr std::array<int, 4> kCycleABC = {0, 2, 3, 1}; // alpha->beta->gamma->alpha

std::shared_ptr<const GadgetProgram> smg_swap_bc() {
  auto p = std::make_shared<GadgetProgram>(GadgetProgram::start("SMG"));
  p->relabel(kSwapBC);  // (1/2, 0, 1/2)
  return p;
}

// Map gadget with signature (q/(1+q), 1/(1+q), 0) for q = s/t, via the
// q -> 1/q relabel and the (q1,q2) -> q1+q2 glue, Euclid-style.
GadgetProgram ratio_program(mpz_class s, mpz_class t) {
  if (s <= 0 || t <= 0) throw MapError("ratio_program: q must be positive");
  enum { Add1, Invert };
  std::vector<int> ops;
  while (s != t) {
    if (s > t) {
      ops.push_back(Add1);
      s -= t;
    } else {
      ops.push_back(Invert);
      std::swap(s, t);
    }
    if (ops.size() > 4000000) throw MapError("ratio_program: continued fraction too long");
  }
  GadgetProgram prog = GadgetProgram::start("SMG");
  auto add1 = smg_swap_bc();
  for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
    if (*it == Add1)
      prog.glue("SMG+", add1);
    else
      prog.relabel(kSwapAB);
  }
  return prog;
}

mpq_class l1_dist(const Signature& s, const std::array<mpq_class, 3>& t) {
  mpq_class d = abs(s.alpha - t[0]) + abs(s.beta - t[1]) + abs(s.gamma - t[2]);
  d.canonicalize();
  return d;
}

}  // namespace

SynthesisResult synthesize_map_gadget(const std::array<mpq_class, 3>& target, long vertex_cap) {
  Signature t = make_signature(target[0], target[1], target[2]);
  for (const mpq_class& e : target)
    if (e >= 1) throw MapError("synthesize_map_gadget: entries must be < 1");

  GadgetProgram prog = GadgetProgram::start("SMG");
  auto ratio_q = [](const mpq_class& num, const mpq_class& den) {
    mpq_class q = num / den;
    q.canonicalize();
    return ratio_program(q.get_num(), q.get_den());
  };
  if (t.gamma == 0) {
    prog = ratio_q(t.alpha, t.beta);  // (a, b, 0) with a+b=1 comes out exactly
  } else if (t.beta == 0) {
    prog = ratio_q(t.alpha, t.gamma);
    prog.relabel(kSwapBC);
  } else if (t.alpha == 0) {
    prog = ratio_q(t.beta, t.gamma);
    prog.relabel(kCycleABC);
  } else {
    prog = ratio_q(t.beta, t.gamma);
    prog.relabel(kCycleABC);  // (0, beta/(1-alpha), gamma/(1-alpha))
    auto g2 = std::make_shared<GadgetProgram>(ratio_q(t.alpha, 1 - t.alpha));
    g2->relabel(kSwapBC);  // (alpha, 0, 1-alpha)
    prog.glue("G2", g2);
  }

  SynthesisResult res{prog.build(vertex_cap), prog, prog.sig(), l1_dist(prog.sig(), target)};
  if (res.l1_distance != 0)
    throw MapError("synthesize_map_gadget: construction missed the target (bug)");
  return res;
}

// ---------------------------------------------------------------------------
// graph-gadget synthesis

namespace {

// mapt2: form-F gadget (1-2a, a, a) glued with SGG stays form F,
// ratio q -> q/(1+q).  mapt1: relabel to form E first, ratio q -> (1+q)/(1+3q).
struct Stage1Result {
  GadgetProgram prog;  // form F
  mpq_class ratio;     // beta/alpha of the form-F signature
};

mpq_class form_f_ratio(const Signature& s) {
  mpq_class q = s.beta / s.alpha;
  q.canonicalize();
  return q;
}

Stage1Result stage1_replay(const std::vector<int>& ops_reversed,
                           const std::shared_ptr<const GadgetProgram>& sgg) {
  GadgetProgram prog = GadgetProgram::start("SGG");
  for (auto it = ops_reversed.rbegin(); it != ops_reversed.rend(); ++it) {
    if (*it == 1) prog.relabel(kSwapAC);  // form F -> form E for mapt1
    prog.glue("SGG", sgg);
  }
  return {prog, form_f_ratio(prog.sig())};
}

Stage1Result stage1_ratio(const mpq_class& r, long max_steps,
                          const std::shared_ptr<const GadgetProgram>& sgg) {
  if (r >= 1) return {GadgetProgram::start("SGG"), mpq_class(1)};
  std::vector<int> ops;  // outermost first; 0 = mapt2, 1 = mapt1
  mpq_class q = r;
  mpq_class half(1, 2);
  if (q <= 0) {
    ops.assign(max_steps, 0);  // mapt2 chain: ratio 1/(max_steps+1) -> 0
  } else {
    while (q != 1 && static_cast<long>(ops.size()) < max_steps) {
      if (q < half) {
        ops.push_back(0);
        q = q / (1 - q);
      } else if (q > half) {
        ops.push_back(1);
        q = (1 - q) / (3 * q - 1);
      } else {
        ops.push_back(0);
        q = 1;
      }
      q.canonicalize();
    }
  }
  return stage1_replay(ops, sgg);
}

// Beam fallback: breadth-first over mapping sequences keeping the closest
// candidates to r per depth.
Stage1Result stage1_beam(const mpq_class& r, long depth, std::size_t beam_width,
                         const std::shared_ptr<const GadgetProgram>& sgg) {
  struct Cand {
    mpq_class q;
    std::vector<int> ops;  // innermost first
  };
  std::vector<Cand> level = {{mpq_class(1), {}}};
  Cand best = level[0];
  auto better = [&](const mpq_class& a, const mpq_class& b) { return abs(a - r) < abs(b - r); };
  for (long i = 0; i < depth; ++i) {
    std::vector<Cand> next;
    next.reserve(2 * level.size());
    for (const Cand& c : level) {
      mpq_class q2 = c.q / (1 + c.q);
      q2.canonicalize();
      Cand m2{q2, c.ops};
      m2.ops.push_back(0);
      mpq_class q1 = (1 + c.q) / (1 + 3 * c.q);
      q1.canonicalize();
      Cand m1{q1, c.ops};
      m1.ops.push_back(1);
      next.push_back(std::move(m2));
      next.push_back(std::move(m1));
    }
    for (const Cand& c : next)
      if (better(c.q, best.q)) best = c;
    std::sort(next.begin(), next.end(),
              [&](const Cand& a, const Cand& b) { return better(a.q, b.q); });
    if (next.size() > beam_width) next.resize(beam_width);
    level = std::move(next);
  }
  std::vector<int> reversed(best.ops.rbegin(), best.ops.rend());
  return stage1_replay(reversed, sgg);
}

}  // namespace

SynthesisResult synthesize_graph_gadget(const std::array<mpq_class, 3>& target,
                                        const GraphSynthOptions& opts) {
  Signature tsig = make_signature(target[0], target[1], target[2]);
  mpq_class tol = opts.tol;
  if (tol == 0) {
    mpz_class den = 1;
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), 64);
    tol = mpq_class(1, den);
    tol.canonicalize();
  }
  if (region_classify(target, tol, opts.prec_bits) == RegionClass::Outside)
    throw MapError("synthesize_graph_gadget: target is outside the region S");
  if (opts.eps <= 0) throw MapError("synthesize_graph_gadget: eps must be positive");

  auto sgg = std::make_shared<GadgetProgram>(GadgetProgram::start("SGG"));

  mpq_class third(1, 3);
  if (tsig.alpha == third && tsig.beta == third && tsig.gamma == third) {
    GadgetProgram prog = GadgetProgram::start("SGG");
    return {opts.materialize ? prog.build(opts.vertex_cap) : MixedMap{}, prog, prog.sig(),
            mpq_class(0)};
  }

  // sorted order s3 >= s1 >= s2; remember where each sorted slot came from
  std::array<mpq_class, 3> in = target;
  std::array<int, 3> order = {0, 1, 2};  // order[k]: input index of k-th smallest
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return in[a] < in[b]; });
  mpq_class s2 = in[order[0]], s1 = in[order[1]], s3 = in[order[2]];

  mpq_class eps(opts.eps);
  eps.canonicalize();
  mpq_class delta = eps / mpq_class(opts.delta_divisor);
  delta.canonicalize();

  // glue partner with signature (dh/2, dh/2, 1-dh), dh <= delta
  long m = 1;
  while (mpq_class(2, m + 2) > delta) ++m;
  GadgetProgram gd = GadgetProgram::start("SGG");
  for (long i = 0; i + 1 < m; ++i) gd.glue("SGG", sgg);  // mapt2 chain, ratio 1/m
  gd.relabel(kSwapAC);                                   // form E
  auto gdelta = std::make_shared<GadgetProgram>(std::move(gd));
  mpq_class dhat = 2 * gdelta->sig().alpha;
  dhat.canonicalize();

  // c* with f_{c*}(s1) = s2, then the fixed point alpha* of f_{c*}
  int prec = opts.prec_bits;
  Real s1r = Real::of(s1, prec), s2r = Real::of(s2, prec);
  Real lo = Real::of(0L, prec), hi = Real::of(mpq_class(1, 2), prec);
  for (int i = 0; i < prec; ++i) {
    Real mid = (lo + hi) / Real::of(2L, prec);
    if (region_family_f(mid, s1r) < s2r)
      lo = mid;
    else
      hi = mid;
  }
  Real cstar = (lo + hi) / Real::of(2L, prec);
  Real alo = Real::of(0L, prec), ahi = Real::of(mpq_class(1, 3), prec);
  for (int i = 0; i < prec; ++i) {
    Real mid = (alo + ahi) / Real::of(2L, prec);
    if (region_family_f(cstar, mid) > mid)
      alo = mid;
    else
      ahi = mid;
  }
  mpq_class alpha_star = ((alo + ahi) / Real::of(2L, prec)).to_rational();
  mpq_class rstar = alpha_star / (1 - 2 * alpha_star);
  rstar.canonicalize();
  if (rstar > 1) rstar = 1;
  if (rstar < 0) rstar = 0;

  // stage 1: form-E start point with alpha0 near alpha*
  mpq_class eps1 = delta / 4;
  eps1.canonicalize();
  long n0 = std::max<long>(16, mpz_class(mpq_class(4) / eps1).get_si());
  Stage1Result st1 = stage1_ratio(rstar, n0, sgg);
  for (int attempt = 0; attempt < 3 && abs(st1.ratio - rstar) > eps1; ++attempt)
    st1 = stage1_ratio(rstar, n0 << (attempt + 1), sgg);
  if (abs(st1.ratio - rstar) > eps1) {
    long depth = std::min<long>(n0, 4096);
    Stage1Result beam = stage1_beam(rstar, depth, 128, sgg);
    if (abs(beam.ratio - rstar) < abs(st1.ratio - rstar)) st1 = std::move(beam);
  }
  GadgetProgram prog = std::move(st1.prog);
  prog.relabel(kSwapAC);  // form E: (alpha0, alpha0, 1-2 alpha0)

  // stage 2: drive alpha up to s1 by gluing the delta gadget
  long iter_cap = 64 + 16 * static_cast<long>(mpz_class(mpq_class(1) / dhat).get_si());
  long iters = 0;
  while (prog.sig().alpha < s1) {
    if (++iters > iter_cap)
      throw MapError("synthesize_graph_gadget: iteration cap exceeded");
    if (prog.vertex_count() + gdelta->vertex_count() > opts.vertex_cap)
      throw MapError("gadget exceeds the size cap: needs more than " +
                     std::to_string(opts.vertex_cap) + " vertices; raise the cap or loosen eps");
    prog.glue("Gdelta", gdelta);
  }

  // back to the input component order: sorted slots (s1,s2,s3) currently sit
  // at positions (alpha,beta,gamma)
  std::array<int, 3> tperm{};
  tperm[0] = order[1];
  tperm[1] = order[0];
  tperm[2] = order[2];
  if (tperm != std::array<int, 3>{0, 1, 2}) prog.relabel(label_perm_for_types(tperm));

  SynthesisResult res;
  res.trace = prog;
  res.achieved = prog.sig();
  res.l1_distance = l1_dist(res.achieved, target);
  if (opts.materialize) res.gadget = prog.build(opts.vertex_cap);
  return res;
}

}  // namespace etrails
