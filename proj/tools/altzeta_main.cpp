// Command-line front end: evaluate indices, rewrite them over the constant
// basis, run certification suites, and tabulate reduction families.

#include "altzeta/exact.hpp"
#include "altzeta/numeric.hpp"
#include "altzeta/quadrature.hpp"
#include "altzeta/reduce.hpp"
#include "altzeta/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>

namespace {

using namespace altzeta;

// Rewrite hook handed to the evaluator: indices inside a supported family go
// through their closed form, everything else falls back to summation.
std::optional<SymExpr> rewrite_hook(const SignedIndex& index) {
    try {
        return reduce_index(index).second;
    } catch (const CapabilityError&) {
        return std::nullopt;
    }
}

struct GlobalOptions {
    long prec = 40;
    std::string cache_path;
    bool no_cache = false;
    bool stats = false;
    int jobs = 1;
};

EvalOptions make_eval_options(const GlobalOptions& g, ConstantCache* cache,
                              bool with_hook) {
    EvalOptions eo;
    eo.precision_bits = digits_to_bits(g.prec);
    eo.cache = cache;
    if (with_hook) eo.closed_form_hook = rewrite_hook;
    return eo;
}

// "I(2,1)" / "J(0,3)" -> (which, k, m).
bool parse_integral_target(const std::string& t, char& which, int& k, int& m) {
    if (t.size() < 6 || (t[0] != 'I' && t[0] != 'J') || t[1] != '(' || t.back() != ')')
        return false;
    size_t comma = t.find(',');
    if (comma == std::string::npos) return false;
    try {
        k = std::stoi(t.substr(2, comma - 2));
        m = std::stoi(t.substr(comma + 1, t.size() - comma - 2));
    } catch (const std::exception&) {
        return false;
    }
    which = t[0];
    return true;
}

std::vector<ConstAtom> residues_of(const SymExpr& expr) {
    std::vector<ConstAtom> out = expr.atoms_of_kind(AtomKind::MplHalf);
    for (const ConstAtom& a : expr.atoms_of_kind(AtomKind::Mzv)) out.push_back(a);
    return out;
}

nlohmann::json certify_json(const Float& lhs, const Float& rhs, const Float& tol,
                            long digits, bool& ok) {
    Float resid = abs(lhs - rhs);
    ok = resid <= tol;
    return {{"reduced", lhs.str(static_cast<std::streamsize>(digits),
                                std::ios_base::fmtflags(0))},
            {"direct", rhs.str(static_cast<std::streamsize>(digits),
                               std::ios_base::fmtflags(0))},
            {"residual", resid.str(3, std::ios_base::scientific)},
            {"tolerance", tol.str(3, std::ios_base::scientific)},
            {"status", ok ? "pass" : "fail"}};
}

int cmd_eval(const GlobalOptions& g, ConstantCache* cache, const std::string& text) {
    PrecisionScope scope(static_cast<unsigned>(g.prec + 15));
    SignedIndex index = SignedIndex::parse(text);
    EvalOptions eo = make_eval_options(g, cache, true);
    ApproxReal value = eval_atom(ConstAtom::mzv(index), eo);

    nlohmann::json out = {{"index", index.to_string()},
                          {"value", value.decimal(g.prec)},
                          {"error_bound", value.error_bound.str(3, std::ios_base::scientific)},
                          {"method", value.method},
                          {"precision_digits", g.prec}};
    std::cout << index.to_string() << " = " << value.decimal(g.prec) << "\n";
    std::cout << out.dump() << "\n";
    return 0;
}

int cmd_reduce(const GlobalOptions& g, ConstantCache* cache, const std::string& target,
               bool certify) {
    PrecisionScope scope(static_cast<unsigned>(g.prec + 15));
    std::string family;
    SymExpr expr;
    std::optional<SignedIndex> index;
    char which = 0;
    int k = 0, m = 0;
    if (parse_integral_target(target, which, k, m)) {
        if (which == 'I') {
            family = "closed-I";
            expr = closed_I(k, m);
        } else {
            family = "closed-J";
            expr = closed_J(k, m, JVariant::B);
        }
    } else {
        index = SignedIndex::parse(target);
        auto reduced = reduce_index(*index);
        family = reduced.first;
        expr = reduced.second;
    }

    nlohmann::json out = {{"target", target},
                          {"family", family},
                          {"pretty", expr.pretty()},
                          {"weight", expr.max_weight()},
                          {"expr", expr.to_json()}};
    nlohmann::json residues = nlohmann::json::array();
    for (const ConstAtom& a : residues_of(expr)) residues.push_back(a.pretty());
    out["residues"] = residues;

    bool ok = true;
    if (certify) {
        EvalOptions eo = make_eval_options(g, cache, false);
        Float lhs = eval_expr(expr, eo).value;
        Float rhs;
        Float tol;
        if (index) {
            // Ladder-backed indices are certified to 20 digits at most.
            long digits = std::min(g.prec, 20L);
            tol = pow(Float(10), -static_cast<int>(digits));
            rhs = eval_alt_outer(*index, tol / 4, eo).value;
        } else {
            long digits = std::min(g.prec, 25L);
            tol = pow(Float(10), -static_cast<int>(digits));
            QuadResult q = (which == 'I') ? quad_I(k, m, eo.precision_bits)
                                          : quad_J(k, m, eo.precision_bits);
            rhs = q.value.value;
        }
        out["certify"] = certify_json(lhs, rhs, tol, g.prec, ok);
    }

    std::cout << target << " [" << family << "]\n";
    std::cout << "  = " << expr.pretty() << "\n";
    if (!residues.empty()) {
        std::cout << "  residues:";
        for (const auto& r : residues) std::cout << " " << r.get<std::string>();
        std::cout << "\n";
    }
    if (certify)
        std::cout << "  certify: " << out["certify"]["status"].get<std::string>()
                  << " (residual " << out["certify"]["residual"].get<std::string>()
                  << ")\n";
    std::cout << out.dump() << "\n";
    return ok ? 0 : 1;
}

int cmd_verify(const GlobalOptions& g, ConstantCache* cache, const std::string& suite,
               const std::string& out_path) {
    VerifyOptions vo;
    vo.digits = g.prec;
    vo.jobs = g.jobs;
    vo.cache = cache;
    VerificationReport report = run_suite(suite, vo);
    std::string body = report.to_json().dump(2);
    if (out_path.empty()) {
        std::cout << body << "\n";
    } else {
        std::ofstream file(out_path);
        if (!file) throw std::runtime_error("cannot write report to '" + out_path + "'");
        file << body << "\n";
    }
    std::cerr << "suite '" << report.suite << "': " << report.cases.size() << " cases, "
              << report.count("pass") << " pass, " << report.count("fail") << " fail ("
              << report.wall_seconds << " s)\n";
    return report.all_passed() ? 0 : 1;
}

// "a:b" or "a".
std::pair<int, int> parse_range(const std::string& text) {
    size_t colon = text.find(':');
    if (colon == std::string::npos) {
        int v = std::stoi(text);
        return {v, v};
    }
    return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
}

int cmd_table(const GlobalOptions& g, ConstantCache* cache, const std::string& family,
              const std::string& k_range, const std::string& m_range, bool certify) {
    PrecisionScope scope(static_cast<unsigned>(g.prec + 15));
    auto [k_lo, k_hi] = parse_range(k_range);
    auto [m_lo, m_hi] = parse_range(m_range);
    EvalOptions eo = make_eval_options(g, cache, false);
    Float tol("1e-8");

    auto build_index = [&](int m, int k) -> std::string {
        auto ones = [](int n) {
            std::string s;
            for (int i = 0; i < n; ++i) s += ",1";
            return s;
        };
        if (family == "head") return "b" + std::to_string(k + 2) + ones(m - 1);
        if (family == "two-bars") return "b1" + ones(m - 1) + ",b1" + ones(k - 1);
        if (family == "interior-two") return "b1" + ones(m - 1) + ",2" + ones(k - 1);
        if (family == "interior-three-diagonal")
            return "b1" + ones(k - 1) + ",3" + ones(k - 1);
        if (family == "triple-bar") return "b1" + ones(m - 1) + ",b1,b1" + ones(k - 1);
        if (family == "quad-bar")
            return "b1" + ones(m - 1) + ",b1,b1,b1" + ones(k - 1);
        return std::to_string(k) + ones(m); // plain: outer k, m trailing ones
    };

    bool all_ok = true;
    bool diag = (family == "interior-three-diagonal");
    for (int k = k_lo; k <= k_hi; ++k) {
        for (int m = (diag ? k : m_lo); m <= (diag ? k : m_hi); ++m) {
            SymExpr expr;
            if (family == "head") expr = reduce_head_family(k, m);
            else if (family == "two-bars") expr = reduce_two_bars(m, k);
            else if (family == "interior-two") expr = reduce_interior_two(m, k);
            else if (family == "interior-three-diagonal")
                expr = reduce_interior_three_diagonal(k);
            else if (family == "triple-bar") expr = reduce_triple_bar(m, k);
            else if (family == "quad-bar") expr = map_quad_bar(m, k);
            else if (family == "plain") expr = adz_reduce(k, m);
            else
                throw CapabilityError("table: unknown family '" + family + "'");

            std::string idx = build_index(m, k);
            std::cout << family << " k=" << k;
            if (!diag) std::cout << " m=" << m;
            std::cout << " [" << idx << "]\n  = " << expr.pretty() << "\n";

            if (certify) {
                Float lhs = eval_expr(expr, eo).value;
                Float rhs;
                if (family == "plain" && k == 2) {
                    // The plain outer-2 row equals zeta(m+2); direct summation
                    // cannot reach the tolerance, the zeta value itself can.
                    rhs = eval_atom(ConstAtom::zeta(m + 2), eo).value;
                } else {
                    rhs = eval_alt_outer(SignedIndex::parse(idx), tol / 4, eo).value;
                }
                Float resid = abs(lhs - rhs);
                bool ok = resid <= tol;
                all_ok = all_ok && ok;
                std::cout << "  certify: " << (ok ? "pass" : "fail") << " (residual "
                          << resid.str(3, std::ios_base::scientific) << ")\n";
            }
        }
    }
    return all_ok ? 0 : 1;
}

void print_stats(const ConstantCache* cache) {
    if (!cache) {
        std::cerr << R"({"hits":0,"misses":0,"derivations":0})" << "\n";
        return;
    }
    ConstantCache::Stats s = cache->stats();
    nlohmann::json j = {{"hits", s.hits}, {"misses", s.misses}, {"derivations", s.derivations}};
    std::cerr << j.dump() << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"alternating nested zeta values: evaluation, reduction, certification"};
    app.require_subcommand(1);

    GlobalOptions g;
    app.add_option("--prec", g.prec, "working precision in decimal digits")
        ->check(CLI::Range(16L, 1000L))
        ->capture_default_str();
    app.add_option("--cache", g.cache_path,
                   "constant-store file (default: $ALTZETA_CACHE_FILE or "
                   "~/.cache/altzeta/constants.tsv)");
    app.add_flag("--no-cache", g.no_cache, "disable the persistent constant store");
    app.add_flag("--stats", g.stats, "print constant-store statistics to stderr");
    app.add_option("--jobs", g.jobs,
                   "worker threads for verify (currently serialized: the big-float "
                   "working precision is process-wide)")
        ->check(CLI::Range(1, 64));

    auto* eval_cmd = app.add_subcommand("eval", "evaluate an index numerically");
    std::string eval_index;
    eval_cmd->add_option("index", eval_index, "index in the b-grammar, e.g. b2,1,1")
        ->required();

    auto* reduce_cmd =
        app.add_subcommand("reduce", "rewrite an index or integral over the constant basis");
    std::string reduce_target;
    bool reduce_certify = false;
    reduce_cmd->add_option("target", reduce_target, "index, or I(k,m) / J(k,m)")->required();
    reduce_cmd->add_flag("--certify", reduce_certify, "numerically certify the rewrite");

    auto* verify_cmd = app.add_subcommand("verify", "run a certification suite");
    std::string suite, out_path;
    verify_cmd->add_option("suite", suite, "exact|quadrature|fixtures|theorems|all")
        ->required();
    verify_cmd->add_option("--out", out_path, "write the JSON report to a file");

    auto* table_cmd = app.add_subcommand("table", "tabulate a reduction family");
    std::string family, k_range = "1:3", m_range = "1:3";
    bool table_certify = false;
    table_cmd
        ->add_option("family", family,
                     "head|two-bars|interior-two|interior-three-diagonal|triple-bar|"
                     "quad-bar|plain")
        ->required();
    table_cmd->add_option("--k", k_range, "k range, a:b or a");
    table_cmd->add_option("--m", m_range, "m range, a:b or a");
    table_cmd->add_flag("--certify", table_certify, "numerically certify each row");

    CLI11_PARSE(app, argc, argv);

    std::optional<ConstantCache> cache;
    if (!g.no_cache)
        cache.emplace(g.cache_path.empty() ? ConstantCache::default_path() : g.cache_path);
    ConstantCache* cache_ptr = cache ? &*cache : nullptr;

    int rc = 0;
    try {
        if (eval_cmd->parsed()) rc = cmd_eval(g, cache_ptr, eval_index);
        else if (reduce_cmd->parsed()) rc = cmd_reduce(g, cache_ptr, reduce_target, reduce_certify);
        else if (verify_cmd->parsed()) rc = cmd_verify(g, cache_ptr, suite, out_path);
        else if (table_cmd->parsed()) rc = cmd_table(g, cache_ptr, family, k_range, m_range, table_certify);
    } catch (const ParseError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        rc = 2;
    } catch (const DomainError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        rc = 2;
    } catch (const AccuracyError& ex) {
        std::cerr << "error: " << ex.what() << " (best bound " << ex.best_bound() << ")\n";
        rc = 3;
    } catch (const CapabilityError& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        rc = 4;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        rc = 3;
    }

    if (g.stats) print_stats(cache_ptr);
    if (cache) cache->flush();
    return rc;
}
