// Command-line front end: construct family tables, analyze arbitrary tables,
// run the verification suite, and inspect orbits / equivalences.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
// 3 I/O or file format error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "apnlab/analysis.hpp"
#include "apnlab/equivalence.hpp"
#include "apnlab/functions.hpp"
#include "apnlab/group_action.hpp"
#include "apnlab/report.hpp"
#include "apnlab/table_io.hpp"
#include "apnlab/verify.hpp"

namespace {

using namespace apnlab;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint32_t parse_uint(const std::string& s, const char* what) {
    try {
        std::size_t pos = 0;
        const unsigned long v = std::stoul(s, &pos, 0);  // accepts 0x.. and decimal
        if (pos != s.size() || v > 0xffffffffull) throw std::invalid_argument(s);
        return static_cast<std::uint32_t>(v);
    } catch (const std::exception&) {
        throw UsageError(std::string("bad ") + what + " value '" + s + "'");
    }
}

// Reduction polynomial: --poly flag first, then APNLAB_FIELD_POLY_<m> (hex),
// then the built-in smallest irreducible.
Field make_field(unsigned m, const std::string& poly_flag) {
    try {
        if (!poly_flag.empty()) return Field(m, parse_uint(poly_flag, "--poly"));
        const std::string env_name = "APNLAB_FIELD_POLY_" + std::to_string(m);
        if (const char* env = std::getenv(env_name.c_str())) {
            std::size_t pos = 0;
            const unsigned long v = std::stoul(env, &pos, 16);
            if (pos != std::string(env).size()) {
                throw UsageError(env_name + " is not a hex polynomial");
            }
            return Field(m, static_cast<std::uint32_t>(v));
        }
        return Field(m);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

std::uint32_t resolve_alpha(const Field& field, unsigned k, const std::string& alpha) {
    if (alpha == "auto") {
        const auto alphas = admissible_alphas(field, k);
        if (alphas.empty()) throw UsageError("no admissible alpha exists");
        return alphas.front();
    }
    return parse_uint(alpha, "--alpha");
}

void emit(const Json& j, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << j.dump(2) << '\n';
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open '" + out_path + "' for writing");
    os << j.dump(2) << '\n';
}

// --- construct -------------------------------------------------------------

int cmd_construct(unsigned m, unsigned k, const std::string& alpha_arg,
                  const std::string& poly, const std::string& out) {
    const Field field = make_field(m, poly);
    const std::uint32_t alpha = resolve_alpha(field, k, alpha_arg);
    FunctionTable t;
    try {
        t = build_family_new(FamilyParams{&field, k, alpha});
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (out.empty() || out == "-") {
        write_table(std::cout, t, k, alpha);
    } else {
        write_table_file(out, t, k, alpha);
        std::cerr << "wrote " << t.size() << " entries to " << out << "\n";
    }
    return kExitOk;
}

// --- analyze ---------------------------------------------------------------

struct AnalyzeSelection {
    bool apn = false, walsh = false, image = false, degree = false, ortho = false;
    bool any() const { return apn || walsh || image || degree || ortho; }
    void all() { apn = walsh = image = degree = ortho = true; }
};

int cmd_analyze(const std::string& path, AnalyzeSelection sel,
                const std::string& poly, const std::string& csv_base,
                const std::string& out, unsigned jobs) {
    if (!sel.any()) sel.all();
    const TableFile tf = read_table_file(path);
    const FunctionTable& t = tf.table;
    const Field field = make_field(t.m, poly);

    Json j;
    j["format"] = "apnlab-report v1";
    Json meta;
    meta["source"] = path;
    meta["m"] = t.m;
    meta["n"] = t.n();
    meta["entries"] = t.size();
    meta["k"] = tf.k;
    meta["alpha"] = tf.alpha ? Json(hex_value(*tf.alpha)) : Json("-");
    j["table"] = meta;
    j["convention"] = convention_json(field);

    Json analysis;
    std::optional<DifferentialSpectrum> diff;
    if (sel.apn) {
        diff = differential_spectrum(t, jobs);
        analysis["apn"] = diff->delta == 2;
        analysis["delta"] = diff->delta;
        analysis["differential"] = differential_json(*diff);
    }
    std::optional<WalshReport> walsh;
    if (sel.walsh) {
        walsh = walsh_spectrum(t, field, jobs);
        analysis["walsh"] = walsh_json(*walsh);
    }
    if (sel.image) {
        const ImageReport rep = image_report(t);
        analysis["image"] = image_json(rep);
    }
    unsigned degree = 0;
    if (sel.degree || sel.ortho) degree = algebraic_degree(t);
    if (sel.degree) analysis["algebraic_degree"] = degree;
    std::optional<DifferentialSpectrum> ods;
    if (sel.ortho) {
        const bool eligible = t.values[0] == 0 && degree == 2;
        if (eligible) {
            try {
                ods = ortho_derivative_spectrum(t, field, jobs);
                analysis["ortho_derivative"] = differential_json(*ods);
            } catch (const std::invalid_argument& e) {
                analysis["ortho_derivative"] = Json{{"skipped", e.what()}};
            }
        } else {
            analysis["ortho_derivative"] =
                Json{{"skipped", "requires a quadratic table with F(0) = 0"}};
        }
    }
    j["analysis"] = analysis;

    if (!csv_base.empty()) {
        auto dump_csv = [&](const std::string& suffix,
                            const std::map<std::uint32_t, std::uint64_t>& counts) {
            const std::string p = csv_base + suffix;
            std::ofstream os(p, std::ios::binary);
            if (!os) throw std::runtime_error("cannot open '" + p + "' for writing");
            write_spectrum_csv(os, counts);
        };
        if (diff) dump_csv(".diff.csv", diff->counts);
        if (walsh) dump_csv(".walsh.csv", walsh->counts);
        if (ods) dump_csv(".ortho.csv", ods->counts);
    }
    emit(j, out);
    return kExitOk;
}

// --- verify ------------------------------------------------------------------

void parse_m_range(const std::string& s, unsigned& lo, unsigned& hi) {
    const auto dots = s.find("..");
    try {
        if (dots == std::string::npos) {
            lo = hi = static_cast<unsigned>(std::stoul(s));
        } else {
            lo = static_cast<unsigned>(std::stoul(s.substr(0, dots)));
            hi = static_cast<unsigned>(std::stoul(s.substr(dots + 2)));
        }
    } catch (const std::exception&) {
        throw UsageError("bad --m range '" + s + "' (use e.g. 4 or 3..5)");
    }
    if (lo < 2 || hi > 16 || lo > hi) {
        throw UsageError("--m range must satisfy 2 <= lo <= hi <= 16");
    }
}

int cmd_verify(const std::string& m_range, const std::string& checks_arg,
               unsigned jobs, bool corrupt, const std::string& out) {
    VerifyPlan plan;
    parse_m_range(m_range, plan.m_lo, plan.m_hi);
    plan.jobs = jobs;
    plan.corrupt_tables = corrupt;
    plan.field_factory = [](unsigned m) { return make_field(m, ""); };
    if (!checks_arg.empty() && checks_arg != "all") {
        std::string item;
        for (char c : checks_arg + ",") {
            if (c == ',') {
                if (!item.empty()) plan.checks.push_back(item);
                item.clear();
            } else {
                item += c;
            }
        }
    }

    std::vector<CheckResult> results;
    try {
        results = run_verification(plan);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    bool all_pass = true;
    Json jresults = Json::array();
    for (const auto& r : results) {
        const char* status = !r.ran ? "SKIP" : r.pass ? "PASS" : "FAIL";
        if (r.ran && !r.pass) all_pass = false;
        std::cout << r.id << ' ' << r.name << ": " << status << " — " << r.details
                  << '\n';
        Json jr;
        jr["id"] = r.id;
        jr["check"] = r.name;
        jr["ran"] = r.ran;
        jr["pass"] = r.pass;
        jr["details"] = r.details;
        jresults.push_back(jr);
    }
    Json j;
    j["format"] = "apnlab-verify v1";
    j["m"] = m_range;
    j["pass"] = all_pass;
    j["results"] = jresults;
    emit(j, out.empty() ? "-" : out);
    return all_pass ? kExitOk : kExitVerifyFail;
}

// --- orbit -------------------------------------------------------------------

int cmd_orbit(unsigned m, unsigned k, const std::string& alpha_arg,
              const std::string& poly, bool list) {
    const Field field = make_field(m, poly);
    const std::uint32_t alpha = resolve_alpha(field, k, alpha_arg);
    try {
        require_family_params(FamilyParams{&field, k, alpha});
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (m > 5) throw UsageError("orbit search limited to m <= 5");

    const auto stab = stabilizer_f(family_first_poly(field, k, alpha));
    std::map<std::uint32_t, unsigned> per_det;
    for (const auto& g : stab) ++per_det[gl2_det(field, g.M)];

    const std::uint64_t q2 = static_cast<std::uint64_t>(field.order()) * field.order();
    const std::uint64_t gl_order =
        (q2 - 1) * (q2 - field.order());  // |GL(2, K)|
    const std::uint64_t group_order = static_cast<std::uint64_t>(field.units()) * gl_order;

    Json j;
    j["format"] = "apnlab-orbit v1";
    j["m"] = m;
    j["k"] = k;
    j["alpha"] = hex_value(alpha);
    j["convention"] = convention_json(field);
    j["group_order"] = group_order;  // |K*| * |GL(2, K)|
    j["stabilizer_size"] = stab.size();
    j["orbit_size"] = group_order / stab.size();
    Json dets = Json::object();
    for (const auto& [d, c] : per_det) dets[hex_value(d)] = c;
    j["stabilizer_per_det"] = dets;
    if (list) {
        Json els = Json::array();
        for (const auto& g : stab) {
            els.push_back(Json{{"a", hex_value(g.a)},
                               {"c1", hex_value(g.M.c1)},
                               {"c2", hex_value(g.M.c2)},
                               {"c3", hex_value(g.M.c3)},
                               {"c4", hex_value(g.M.c4)}});
        }
        j["stabilizer"] = els;
    }
    emit(j, "-");
    return kExitOk;
}

// --- equiv -------------------------------------------------------------------

int cmd_equiv(unsigned m, unsigned k1, const std::string& alpha1_arg, unsigned k2,
              const std::string& alpha2_arg, const std::string& poly,
              const std::string& witness_path, unsigned jobs) {
    const Field field = make_field(m, poly);
    const std::uint32_t alpha1 = resolve_alpha(field, k1, alpha1_arg);
    const std::uint32_t alpha2 = resolve_alpha(field, k2, alpha2_arg);
    const FamilyParams p1{&field, k1, alpha1}, p2{&field, k2, alpha2};
    try {
        require_family_params(p1);
        require_family_params(p2);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    Json j;
    j["format"] = "apnlab-equiv v1";
    j["m"] = m;
    j["lhs"] = Json{{"k", k1}, {"alpha", hex_value(alpha1)}};
    j["rhs"] = Json{{"k", k2}, {"alpha", hex_value(alpha2)}};
    j["convention"] = convention_json(field);

    std::optional<LinearEquivalence> witness;
    if (k1 == k2) {
        witness = build_alpha_equivalence(p1, p2);
        j["status"] = "equivalent-with-witness";
        j["detail"] = "same exponent, alpha move";
    } else if (k2 == m - k1) {
        const auto hop = inverse_sigma_equivalence(p1);
        const auto align = build_alpha_equivalence(hop.target, p2);
        witness = compose(align, hop.witness);
        if (!verify_el_equivalence_witness(build_family_new(p1), build_family_new(p2),
                                           *witness)) {
            throw std::logic_error("composed witness failed pointwise");
        }
        j["status"] = "equivalent-with-witness";
        j["detail"] = "inverse-exponent hop plus alpha move";
    } else {
        const auto s1 = ortho_derivative_spectrum(build_family_new(p1), field, jobs);
        const auto s2 = ortho_derivative_spectrum(build_family_new(p2), field, jobs);
        if (!(s1 == s2)) {
            j["status"] = "inequivalent-by-invariant";
            j["detail"] = "ortho-derivative differential spectra differ";
        } else {
            j["status"] = "undecided";
            j["detail"] = "ortho-derivative spectra agree; no witness search "
                          "covers this exponent pair";
        }
        j["lhs_ortho_spectrum"] = differential_json(s1);
        j["rhs_ortho_spectrum"] = differential_json(s2);
    }

    if (witness && !witness_path.empty()) {
        std::ofstream os(witness_path, std::ios::binary);
        if (!os) {
            throw std::runtime_error("cannot open '" + witness_path + "' for writing");
        }
        write_witness(os, *witness);
        j["witness_file"] = witness_path;
    }
    emit(j, "-");
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"biprojective APN family constructor and analyzer"};
    app.require_subcommand(1);
    unsigned jobs = 0;
    app.add_option("--jobs", jobs, "worker thread cap (0 = all cores)");

    auto* construct = app.add_subcommand("construct", "build a family table file");
    unsigned c_m = 0, c_k = 1;
    std::string c_alpha = "auto", c_poly, c_out;
    construct->add_option("--m", c_m, "field degree m")->required();
    construct->add_option("--k", c_k, "Frobenius exponent k");
    construct->add_option("--alpha", c_alpha, "alpha value or 'auto'");
    construct->add_option("--poly", c_poly, "reduction polynomial override");
    construct->add_option("--out,-o", c_out, "output file ('-' = stdout)");

    auto* analyze = app.add_subcommand("analyze", "run analyzers on a table file");
    std::string a_path, a_poly, a_csv, a_out;
    AnalyzeSelection a_sel;
    analyze->add_option("table", a_path, "APNTBL v1 file")->required();
    analyze->add_flag("--apn", a_sel.apn, "differential spectrum and APN flag");
    analyze->add_flag("--walsh", a_sel.walsh, "Walsh value distribution");
    analyze->add_flag("--image", a_sel.image, "image size and fiber profile");
    analyze->add_flag("--degree", a_sel.degree, "algebraic degree");
    analyze->add_flag("--ortho", a_sel.ortho, "ortho-derivative spectrum");
    bool a_all = false;
    analyze->add_flag("--all", a_all, "all analyzers (default)");
    analyze->add_option("--poly", a_poly, "reduction polynomial override");
    analyze->add_option("--csv", a_csv, "write spectra as <base>.*.csv");
    analyze->add_option("--out,-o", a_out, "report file ('-' = stdout)");

    auto* verify = app.add_subcommand("verify", "run the verification suite");
    std::string v_m = "3..5", v_checks = "all", v_out;
    bool v_corrupt = false;
    verify->add_option("--m", v_m, "m or lo..hi range");
    verify->add_option("--checks", v_checks,
                       "'all' or comma list (apn, alpha-count, image, walsh, "
                       "stabilizer, lemma-lift, block-autos, alpha-equiv, "
                       "inverse-sigma, class-count, quadratic)");
    verify->add_flag("--corrupt-tables", v_corrupt,
                     "test hook: corrupt every table, run must fail")
        ->group("");  // hidden
    verify->add_option("--out,-o", v_out, "summary file ('-' = stdout)");

    auto* orbit = app.add_subcommand("orbit", "stabilizer and orbit of a family member");
    unsigned o_m = 0, o_k = 1;
    std::string o_alpha = "auto", o_poly;
    bool o_list = false;
    orbit->add_option("--m", o_m, "field degree m")->required();
    orbit->add_option("--k", o_k, "Frobenius exponent k");
    orbit->add_option("--alpha", o_alpha, "alpha value or 'auto'");
    orbit->add_option("--poly", o_poly, "reduction polynomial override");
    orbit->add_flag("--list", o_list, "list stabilizer elements");

    auto* equiv = app.add_subcommand("equiv", "equivalence verdict for two members");
    unsigned e_m = 0, e_k1 = 1, e_k2 = 1;
    std::string e_alpha1 = "auto", e_alpha2 = "auto", e_poly, e_witness;
    equiv->add_option("--m", e_m, "field degree m")->required();
    equiv->add_option("--k1", e_k1, "first exponent")->required();
    equiv->add_option("--alpha1", e_alpha1, "first alpha or 'auto'");
    equiv->add_option("--k2", e_k2, "second exponent")->required();
    equiv->add_option("--alpha2", e_alpha2, "second alpha or 'auto'");
    equiv->add_option("--poly", e_poly, "reduction polynomial override");
    equiv->add_option("--export-witness", e_witness, "write the witness block here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*construct) return cmd_construct(c_m, c_k, c_alpha, c_poly, c_out);
        if (*analyze) {
            if (a_all) a_sel.all();
            return cmd_analyze(a_path, a_sel, a_poly, a_csv, a_out, jobs);
        }
        if (*verify) return cmd_verify(v_m, v_checks, jobs, v_corrupt, v_out);
        if (*orbit) return cmd_orbit(o_m, o_k, o_alpha, o_poly, o_list);
        if (*equiv)
            return cmd_equiv(e_m, e_k1, e_alpha1, e_k2, e_alpha2, e_poly, e_witness, jobs);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const TableFormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitUsage;
}
