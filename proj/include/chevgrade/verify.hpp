#pragma once

// Verification suites over cominiscule pairs and analytic samples, and the
// report they produce. Records are ordered by (pair, suite) regardless of
// how many worker threads ran them.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "chevgrade/analytic/curvature.hpp"
#include "chevgrade/analytic/samplers.hpp"
#include "chevgrade/analytic/schwarzian.hpp"
#include "chevgrade/chevalley.hpp"
#include "chevgrade/cominiscule.hpp"
#include "chevgrade/io.hpp"
#include "chevgrade/tensor_ops.hpp"

namespace chevgrade {

enum class Suite { Chevalley, Lemma1, Lemma2, Lemma4, Lemma5, Lemma6, Barnacle, Gamma, Delta2, Eq1, Schwarzian, Atiyah, Prop3 };

inline const std::vector<std::pair<Suite, std::string>>& suite_table() {
  static const std::vector<std::pair<Suite, std::string>> t{
      {Suite::Chevalley, "chevalley"}, {Suite::Lemma1, "lemma1"},         {Suite::Lemma2, "lemma2"},
      {Suite::Lemma4, "lemma4"},       {Suite::Lemma5, "lemma5"},         {Suite::Lemma6, "lemma6"},
      {Suite::Barnacle, "barnacle"},   {Suite::Gamma, "gamma"},           {Suite::Delta2, "delta2"},
      {Suite::Eq1, "eq1"},             {Suite::Schwarzian, "schwarzian"}, {Suite::Atiyah, "atiyah"},
      {Suite::Prop3, "prop3"}};
  return t;
}

inline std::string suite_name(Suite s) {
  for (const auto& [id, name] : suite_table()) {
    if (id == s) return name;
  }
  return "?";
}

/// "all" or a comma-separated list of suite names.
inline std::vector<Suite> parse_suites(const std::string& spec) {
  std::vector<Suite> out;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "all") {
      for (const auto& [id, name] : suite_table()) out.push_back(id);
      continue;
    }
    auto it = std::find_if(suite_table().begin(), suite_table().end(), [&](const auto& e) { return e.second == item; });
    if (it == suite_table().end()) throw ArgumentError("unknown suite '" + item + "'");
    out.push_back(it->first);
  }
  if (out.empty()) throw ArgumentError("no suite selected");
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_pair_suite(Suite s) { return s != Suite::Schwarzian && s != Suite::Atiyah && s != Suite::Prop3; }

struct SuiteResult {
  Json body;  // includes "pass"
  bool pass = false;
};

inline SuiteResult finish(Json body, bool pass) {
  body["pass"] = pass;
  return {std::move(body), pass};
}

// ---------------------------------------------------------------------------
// Algebraic suites

inline SuiteResult run_chevalley_suite(const ChevalleyAlgebra& alg) {
  const ChevalleyReport r = verify_chevalley_axioms(alg);
  Json body;
  for (const auto& c : r.checks) {
    body[c.name] = c.pass;
    if (!c.pass) body[c.name + "_witness"] = c.witness;
  }
  body["dimension"] = alg.dim();
  return finish(std::move(body), r.pass());
}

/// Bracket relations of the grading, including (ad X)^3 = 0 for X in g_+.
inline SuiteResult run_grading_structure(const Grading& g) {
  const auto& alg = g.algebra();
  bool abelian = true, nilpotent = true;
  for (std::size_t a : g.plus()) {
    for (std::size_t b : g.plus()) abelian = abelian && alg.basis_bracket(a, b).empty();
  }
  for (std::size_t a : g.minus()) {
    for (std::size_t b : g.minus()) abelian = abelian && alg.basis_bracket(a, b).empty();
  }
  for (std::size_t x : g.plus()) {
    const AlgebraElement X = AlgebraElement::basis(x);
    for (std::size_t y = 0; y < alg.dim() && nilpotent; ++y) {
      AlgebraElement v = AlgebraElement::basis(y);
      for (int i = 0; i < 3; ++i) v = alg.bracket(X, v);
      nilpotent = v.is_zero();
    }
  }
  return finish({{"abelian", abelian}, {"ad_cubed_zero", nilpotent}, {"dim_minus", g.dim_minus()},
                 {"dim_plus", g.dim_plus()}},
                abelian && nilpotent && g.dim_minus() == g.dim_plus());
}

inline SuiteResult run_lemma1(const Grading& g) {
  const auto r = g0_faithful_check(g);
  return finish({{"kernel_dim", r.kernel_dim}, {"g0_dim", g.dim_zero()}}, r.pass);
}

inline SuiteResult run_lemma2(const Grading& g) {
  const auto r = tau_span_check(g);
  return finish({{"span_dim", r.span_dim}, {"g0_dim", r.g0_dim}, {"values_in_g0", r.values_in_g0}}, r.pass);
}

inline SuiteResult run_lemma4(const Grading& g) {
  const std::size_t rank = ad_plus_rank(g);
  return finish({{"rank", rank}, {"plus_dim", g.dim_plus()}}, rank == g.dim_plus());
}

/// D o ad = 0 and tr o ad = id on a basis of g_+, plus the III_0 dimension
/// against the exact rank of tr.
inline SuiteResult run_lemma5(const Grading& g) {
  bool d_ad = true, tr_ad = true;
  for (std::size_t x : g.plus()) {
    const AlgebraElement X = AlgebraElement::basis(x);
    const Tensor a = ad_plus(g, X);
    d_ad = d_ad && torsion_D(g, a).is_zero();
    tr_ad = tr_ad && trace_tr(g, a) == X;
  }
  const std::size_t tr_rank = trace_rank(g);
  const std::size_t dim_iii0 = iii0(g, make_obstruction(g)).dim_iii0;
  const std::size_t exact_dim = g.dim_minus() * (g.dim_zero() + g.dim_plus()) - tr_rank;
  return finish({{"D_ad_zero", d_ad}, {"tr_ad_identity", tr_ad}, {"trace_rank", tr_rank}, {"iii0_dim", dim_iii0}},
                d_ad && tr_ad && tr_rank == g.dim_plus() && exact_dim == dim_iii0);
}

/// Random integer combinations of a ker D basis decompose with D b = 0, tr b = 0.
inline SuiteResult run_lemma6(const Grading& g, std::uint64_t seed, int samples = 20) {
  const auto basis = torsion_kernel_basis(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-5, 5);
  bool ok = true;
  for (int s = 0; s < samples && ok; ++s) {
    Tensor a(piece_dims(g), cochain_axes());
    for (const auto& b : basis) {
      const int c = coef(rng);
      if (c != 0) a += Rational(c) * b;
    }
    const auto r = decompose_kernel(g, a);
    ok = torsion_D(g, r.b).is_zero() && trace_tr(g, r.b).is_zero() && ad_plus(g, r.x_plus) + r.b == a;
  }
  return finish({{"kernel_dim", basis.size()}, {"samples", samples}}, ok);
}

/// Square matrix of a barnacle acting on its input slot(s).
inline RationalMatrix barnacle_matrix(const Grading& g, const Tensor& a) {
  if (a.rank() == 2) {
    RationalMatrix M(a.extents()[0], a.extents()[1]);
    for (const auto& [l, v] : a.entries()) {
      const auto idx = a.unravel(l);
      M(idx[0], idx[1]) = v;
    }
    return M;
  }
  const std::size_t m = g.dim_minus();
  RationalMatrix M(m * m, m * m);
  for (const auto& [l, v] : a.entries()) {
    const auto idx = a.unravel(l);
    M(idx[0] * m + idx[1], idx[2] * m + idx[3]) = v;
  }
  return M;
}

inline SuiteResult run_barnacle(const Grading& g) {
  const BarnacleKind kind = barnacle_kind(g);
  const Tensor a = barnacle(g);
  const std::size_t s0 = stabilizer_algebra(g, false).dimension;
  const std::size_t s1 = stabilizer_algebra(g, true).dimension;
  Json body{{"stabilizer_dim", s0}, {"stabilizer_dim_with_barnacle", s1}, {"g0_dim", g.dim_zero()}, {"nnz", a.nnz()}};
  bool ok = s0 == g.dim_zero() && s1 == g.dim_zero();
  if (kind == BarnacleKind::None) {
    body["kind"] = "none";
    ok = ok && a.is_zero();
  } else {
    body["kind"] = kind == BarnacleKind::GrassmannianIdeal ? "grassmannian_ideal" : "quadric_self_dual";
    bool invariant = true;
    for (const auto& z : g0_image(g)) invariant = invariant && act(z, a).is_zero();
    const RationalMatrix M = barnacle_matrix(g, a);
    const bool idempotent = M * M == M;
    std::vector<SparseRationalRow> rows;
    for (std::size_t i = 0; i < M.rows(); ++i) {
      SparseRationalRow r;
      for (std::size_t j = 0; j < M.cols(); ++j) {
        if (M(i, j) != 0) r.emplace_back(static_cast<std::int64_t>(j), M(i, j));
      }
      rows.push_back(std::move(r));
    }
    const std::size_t rank = exact_rank(rows);
    std::size_t expected = 0;
    if (kind == BarnacleKind::GrassmannianIdeal) {
      const std::size_t p = static_cast<std::size_t>((g.type().rank + 1) / 2);
      expected = p * p - 1;
    } else {
      expected = binomial(g.dim_minus(), g.dim_minus() / 2) / 2;
    }
    body["g0_invariant"] = invariant;
    body["idempotent"] = idempotent;
    body["rank"] = rank;
    body["expected_rank"] = expected;
    ok = ok && invariant && idempotent && rank == expected && !a.is_zero();
  }
  return finish(std::move(body), ok);
}

/// True for the two families with a diagram symmetry named in the
/// symmetry-breaking argument: (A, 2p-1, node p), p >= 2, and (D, n, node 1).
inline bool in_symmetric_family(const Grading& g) { return barnacle_kind(g) != BarnacleKind::None; }

inline SuiteResult run_gamma(const Grading& g) {
  const auto& alg = g.algebra();
  const auto gamma = diagram_automorphisms(g);
  const Tensor tau = fundamental_tensor(g);
  const Tensor a = barnacle(g);
  bool partition = true, killing = true, tau_ok = true, square = true, moved_all = true, moved_any = false;
  for (std::size_t e = 1; e < gamma.size(); ++e) {
    const AlgebraMap phi = lift_automorphism(g, gamma[e]);
    partition = partition && preserves_partition(g, phi);
    for (std::size_t x = 0; x < alg.dim() && killing; ++x) {
      for (std::size_t y = x; y < alg.dim() && killing; ++y) {
        killing = alg.killing(phi.image(x), phi.image(y)) == Rational(static_cast<long>(alg.killing(x, y)));
      }
    }
    square = square && (phi * phi).is_diagonal_sign();
    const GlMinusMap G = restrict_map_to_minus(g, phi);
    tau_ok = tau_ok && transform(G, tau) == tau;
    const bool moved = !(transform(G, a) == a);
    moved_all = moved_all && moved;
    moved_any = moved_any || moved;
  }
  const bool nontrivial = gamma.size() > 1;
  const bool listed = in_symmetric_family(g);
  Json body{{"Gamma_order", gamma.size()},
            {"tau_preserved", tau_ok},
            {"partition_preserved", partition},
            {"killing_preserved", killing},
            {"square_is_sign", square},
            {"barnacle_nonzero", !a.is_zero()},
            {"barnacle_moved", nontrivial && moved_all},
            {"lemma3_case_list_agrees", nontrivial == listed}};
  // The barnacle must break every nontrivial symmetry where it exists and be
  // absent elsewhere. Whether Gamma itself is trivial off the two families is
  // reported, not enforced: it fails for the D4 spinor nodes.
  const bool breaks = listed ? (nontrivial && moved_all) : (a.is_zero() && !moved_any);
  return finish(std::move(body), partition && killing && tau_ok && square && breaks);
}

inline SuiteResult run_delta2(const Grading& g, std::uint64_t seed, int chains = 50) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> coef(-4, 4);
  const int kmax = static_cast<int>(std::min<std::size_t>(3, g.dim_minus()));
  bool ok = true;
  for (int c = 0; c < chains && ok; ++c) {
    const int k = 1 + c % kmax;
    Tensor ch = make_chain(g, k);
    std::uniform_int_distribution<std::size_t> form(0, ch.extents()[0] - 1), vec(0, ch.extents()[1] - 1);
    for (int e = 0; e < 8; ++e) ch.add({form(rng), vec(rng)}, coef(rng));
    ok = boundary_delta(g, k - 1, boundary_delta(g, k, ch)).is_zero();
  }
  return finish({{"chains", chains}, {"max_degree", kmax}}, ok);
}

inline SuiteResult run_eq1(const Grading& g) {
  const auto& alg = g.algebra();
  bool series = true, inverse = true;
  for (std::size_t x : g.plus()) {
    const AlgebraElement X = AlgebraElement::basis(x);
    for (std::size_t y = 0; y < alg.dim(); ++y) {
      const AlgebraElement Y = AlgebraElement::basis(y);
      const AlgebraElement XY = alg.bracket(X, Y);
      const AlgebraElement Z = ad_exp(g, X, Y);
      series = series && Z == Y - XY + Rational(1, 2) * alg.bracket(X, XY);
      inverse = inverse && ad_exp(g, -X, Z) == Y;
    }
  }
  Json body{{"matches_exp_minus_ad", series}, {"inverse_roundtrip", inverse}};
  bool ok = series && inverse;
  if (g.type().family == Family::A && g.type().rank == 1) {
    // X_{-a} - H_a - X_a
    const AlgebraElement want = AlgebraElement::basis(g.minus()[0]) - AlgebraElement::basis(0) -
                                AlgebraElement::basis(g.plus()[0]);
    const bool oracle = ad_exp(g, AlgebraElement::basis(g.plus()[0]), AlgebraElement::basis(g.minus()[0])) == want;
    body["sl2_oracle"] = oracle;
    ok = ok && oracle;
  }
  return finish(std::move(body), ok);
}

// ---------------------------------------------------------------------------
// Analytic suites

namespace detail {

template <typename F>
auto retry_regular(F&& f, int attempts = 50) -> decltype(f()) {
  for (int i = 1; i < attempts; ++i) {
    try {
      return f();
    } catch (const EvaluationError&) {
    }
  }
  return f();
}

}  // namespace detail

inline SuiteResult run_schwarzian_suite(std::uint64_t seed) {
  using namespace analytic;
  MapSampler S(seed);
  double projective_max = 0;
  for (std::size_t p = 1; p <= 3; ++p) {
    for (int s = 0; s < 20; ++s) {
      const RationalMap f = S.projective(p);
      const double v = chevgrade::detail::retry_regular([&] {
        const auto z = S.point(p, 0.4);
        return p == 1 ? std::abs(schwarzian_1d(f, z[0])) : schwarzian_nd(f, z).max_abs();
      });
      projective_max = std::max(projective_max, v);
    }
  }
  double foliated_max = 0;
  for (std::size_t p = 1; p <= 2; ++p) {
    for (int s = 0; s < 10; ++s) {
      const RationalMap f = S.foliated_projective(p, 1);
      foliated_max = std::max(foliated_max, chevgrade::detail::retry_regular([&] {
                                return schwarzian_foliated(f, S.point(p + 1, 0.4)).max_abs();
                              }));
    }
  }
  RationalMap sq;
  sq.dimension = 1;
  sq.components.push_back(analytic::RationalFunction::from(
      Polynomial::variable(1, 0) * Polynomial::variable(1, 0), Polynomial::constant(1, {1, 0})));
  const double sq_err = std::abs(schwarzian_1d(sq, 1.0) - Complex(-1.5));

  double sym = 0, trace = 0;
  for (std::size_t p = 2; p <= 3; ++p) {
    for (int s = 0; s < 5; ++s) {
      const RationalMap f = S.polynomial(p, 3);
      const auto v = chevgrade::detail::retry_regular([&] { return schwarzian_nd(f, S.point(p, 0.3)); });
      sym = std::max(sym, v.symmetry_defect());
      trace = std::max(trace, v.trace_defect());
    }
  }
  double cocycle = 0;
  for (int s = 0; s < 20; ++s) {
    const RationalMap f = S.rational_1d(3), g = S.rational_1d(3);
    const RationalMap gf = compose_1d(g, f);
    cocycle = std::max(cocycle, chevgrade::detail::retry_regular([&] {
                         const Complex z = S.point(1, 0.3)[0];
                         const Complex fz = f.components[0].evaluate({z});
                         const Complex df = f.components[0].derivative(0).evaluate({z});
                         const Complex lhs = schwarzian_1d(gf, z);
                         const Complex rhs = df * df * schwarzian_1d(g, fz) + schwarzian_1d(f, z);
                         return std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs));
                       }));
  }
  const bool ok = projective_max < 1e-10 && foliated_max < 1e-10 && sq_err < 1e-12 && sym < 1e-12 &&
                  trace < 1e-9 && cocycle < 1e-8;
  return finish({{"projective_max_abs", projective_max},
                 {"foliated_projective_max_abs", foliated_max},
                 {"z_squared_error", sq_err},
                 {"symmetry_defect", sym},
                 {"trace_defect", trace},
                 {"cocycle_relative_error", cocycle}},
                ok);
}

inline SuiteResult run_atiyah_suite(std::uint64_t seed) {
  using namespace analytic;
  MapSampler S(seed);
  double worst = 0;
  int maps = 0;
  auto add = [&](const RationalMap& f, std::size_t n) {
    worst = std::max(worst, chevgrade::detail::retry_regular([&] { return atiyah_identity_residual(f, S.point(n, 0.3)); }));
    ++maps;
  };
  add(RationalMap::identity(2), 2);
  for (int s = 0; s < 4; ++s) add(S.polynomial(2, 2), 2);
  for (int s = 0; s < 3; ++s) add(S.foliated_polynomial(2, 1, 2), 3);
  for (int s = 0; s < 3; ++s) add(S.polynomial(3, 3), 3);
  return finish({{"maps", maps}, {"max_residual", worst}}, worst < 1e-8);
}

inline SuiteResult run_prop3_suite(std::uint64_t seed, int samples = 100) {
  using namespace analytic;
  double worst = 0, min_integrand = std::numeric_limits<double>::infinity(), constant = 0, scaling = 0;
  for (int n = 2; n <= 4; ++n) {
    for (int s = 0; s < samples; ++s) {
      const auto R = make_einstein_curvature(n, 0.5 + 0.25 * (s % 4), seed + static_cast<std::uint64_t>(1000 * n + s));
      const auto e = eta_identity_residual(R);
      worst = std::max(worst, e.residual / std::max(1.0, std::abs(e.integrand)));
      min_integrand = std::min(min_integrand, e.integrand);
      if (s == 0) {
        const auto e2 = eta_identity_residual(2.0 * R);
        scaling = std::max(scaling, std::abs(e2.integrand - 4 * e.integrand) / std::max(1.0, std::abs(e.integrand)));
      }
    }
    const auto c = eta_identity_residual(make_einstein_curvature(n, 0.7, seed, 0.0));
    constant = std::max({constant, std::abs(c.integrand), c.residual});
  }
  const bool ok = worst < 1e-10 && min_integrand >= -1e-10 && constant < 1e-12 && scaling < 1e-10;
  return finish({{"samples_per_n", samples},
                 {"max_relative_residual", worst},
                 {"min_integrand", min_integrand},
                 {"constant_curvature_max", constant},
                 {"scaling_error", scaling}},
                ok);
}

// ---------------------------------------------------------------------------
// Report and runner

struct Record {
  Json pair;  // null for analytic suites
  Suite suite = Suite::Chevalley;
  SuiteResult result;
  double wall_ms = 0;
};

struct RunReport {
  std::vector<Record> records;

  bool pass() const {
    return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.result.pass; });
  }

  Json to_json() const {
    Json recs = Json::array();
    for (const auto& r : records) {
      recs.push_back({{"pair", r.pair}, {suite_name(r.suite), r.result.body}, {"wall_ms", r.wall_ms}});
    }
    return {{"pass", pass()}, {"records", recs}};
  }
};

struct VerifyOptions {
  std::vector<Suite> suites;
  int max_rank = 5;
  unsigned threads = 0;  // 0: hardware concurrency
  std::uint64_t seed = 1;
};

inline Json pair_json(const SimpleType& t, std::optional<std::size_t> node) {
  Json j{{"type", t.family_name()}, {"rank", t.rank}};
  if (node) j["node"] = *node + 1;
  return j;
}

inline RunReport run_verification(const VerifyOptions& opt) {
  struct Task {
    Json pair;
    Suite suite;
    std::function<SuiteResult()> run;
  };
  std::vector<Task> tasks;
  const bool any_pair_suite = std::any_of(opt.suites.begin(), opt.suites.end(), is_pair_suite);
  if (any_pair_suite) {
    const auto pairs = default_scope(opt.max_rank);
    std::map<std::string, std::shared_ptr<const ChevalleyAlgebra>> algebras;
    std::vector<std::shared_ptr<const Grading>> gradings;
    for (const auto& p : pairs) {
      auto& alg = algebras[p.type.name()];
      if (!alg) {
        alg = std::make_shared<const ChevalleyAlgebra>(build_chevalley(build_root_system(p.type)));
        if (std::find(opt.suites.begin(), opt.suites.end(), Suite::Chevalley) != opt.suites.end()) {
          tasks.push_back({pair_json(p.type, std::nullopt), Suite::Chevalley, [alg] { return run_chevalley_suite(*alg); }});
        }
      }
      gradings.push_back(std::make_shared<const Grading>(build_grading(alg, p.node)));
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto g = gradings[i];
      const std::uint64_t seed = opt.seed * 1000003ULL + i;
      for (Suite s : opt.suites) {
        std::function<SuiteResult()> fn;
        switch (s) {
          case Suite::Lemma1: fn = [g] {
            // The grading relations are structural preconditions of every lemma; report them here.
            SuiteResult a = run_grading_structure(*g), b = run_lemma1(*g);
            b.body["grading"] = a.body;
            return finish(b.body, a.pass && b.pass);
          }; break;
          case Suite::Lemma2: fn = [g] { return run_lemma2(*g); }; break;
          case Suite::Lemma4: fn = [g] { return run_lemma4(*g); }; break;
          case Suite::Lemma5: fn = [g] { return run_lemma5(*g); }; break;
          case Suite::Lemma6: fn = [g, seed] { return run_lemma6(*g, seed); }; break;
          case Suite::Barnacle: fn = [g] { return run_barnacle(*g); }; break;
          case Suite::Gamma: fn = [g] { return run_gamma(*g); }; break;
          case Suite::Delta2: fn = [g, seed] { return run_delta2(*g, seed); }; break;
          case Suite::Eq1: fn = [g] { return run_eq1(*g); }; break;
          default: break;
        }
        if (fn) tasks.push_back({pair_json(g->type(), g->marked_node()), s, std::move(fn)});
      }
    }
  }
  for (Suite s : opt.suites) {
    if (s == Suite::Schwarzian) tasks.push_back({nullptr, s, [seed = opt.seed] { return run_schwarzian_suite(seed); }});
    if (s == Suite::Atiyah) tasks.push_back({nullptr, s, [seed = opt.seed] { return run_atiyah_suite(seed); }});
    if (s == Suite::Prop3) tasks.push_back({nullptr, s, [seed = opt.seed] { return run_prop3_suite(seed); }});
  }

  RunReport report;
  report.records.resize(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      Record& r = report.records[i];
      r.pair = tasks[i].pair;
      r.suite = tasks[i].suite;
      try {
        r.result = tasks[i].run();
      } catch (const std::exception& e) {
        r.result = finish({{"error", e.what()}}, false);
      }
      r.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    }
  };
  unsigned n = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  n = static_cast<unsigned>(std::min<std::size_t>(n, std::max<std::size_t>(tasks.size(), 1)));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return report;
}

}  // namespace chevgrade
