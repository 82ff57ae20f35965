#include "apnlab/verify.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "apnlab/analysis.hpp"
#include "apnlab/equivalence.hpp"
#include "apnlab/functions.hpp"
#include "apnlab/group_action.hpp"
#include "apnlab/report.hpp"

namespace apnlab {

namespace {

unsigned euler_phi(unsigned n) {
    unsigned result = n;
    for (unsigned p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            while (n % p == 0) n /= p;
            result -= result / p;
        }
    }
    if (n > 1) result -= result / n;
    return result;
}

std::vector<unsigned> coprime_ks(unsigned m) {
    std::vector<unsigned> ks;
    for (unsigned k = 1; k < m; ++k) {
        if (std::gcd(k, m) == 1) ks.push_back(k);
    }
    return ks;
}

struct Ctx {
    const VerifyPlan& plan;
    std::map<unsigned, Field> fields;

    const Field& field(unsigned m) {
        auto it = fields.find(m);
        if (it == fields.end()) {
            it = fields.emplace(m, plan.field_factory ? plan.field_factory(m)
                                                      : Field(m)).first;
        }
        return it->second;
    }

    FunctionTable table(const FamilyParams& p) {
        FunctionTable t = build_family_new(p);
        if (plan.corrupt_tables) t.values[1] ^= 1u;
        return t;
    }
};

struct Failures {
    std::vector<std::string> items;
    void add(std::string s) {
        if (items.size() < 8) items.push_back(std::move(s));
    }
    bool empty() const { return items.empty(); }
    std::string str() const {
        std::string s;
        for (const auto& i : items) s += "; " + i;
        return s;
    }
};

std::string inst_str(unsigned m, unsigned k, std::uint32_t alpha) {
    return "m=" + std::to_string(m) + ",k=" + std::to_string(k) +
           ",alpha=" + hex_value(alpha);
}

// Runs fn for every admissible (k, alpha) of every m in [lo, hi].
template <typename Fn>
std::uint64_t for_each_instance(Ctx& ctx, unsigned lo, unsigned hi, Fn&& fn) {
    std::uint64_t count = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        for (unsigned k : coprime_ks(m)) {
            for (std::uint32_t alpha : admissible_alphas(field, k)) {
                fn(field, m, k, alpha);
                ++count;
            }
        }
    }
    return count;
}

// --- C1 ------------------------------------------------------------------

CheckResult check_apn(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::uint64_t full_scans = 0, kernel_checks = 0;
    const std::uint64_t total = for_each_instance(
        ctx, lo, hi, [&](const Field& field, unsigned m, unsigned k, std::uint32_t alpha) {
            const FunctionTable t = ctx.table(FamilyParams{&field, k, alpha});
            bool ok;
            if (m <= 6) {
                ok = is_apn(t, ctx.plan.jobs);
                ++full_scans;
            } else {
                // Degree-2 tables are APN iff every symmetrized derivative has
                // rank n-1; the first instance also gets the plain scan.
                ok = algebraic_degree(t) == 2 && quadratic_apn_kernel_check(t);
                ++kernel_checks;
                if (ok && kernel_checks == 1) {
                    ok = is_apn(t, ctx.plan.jobs);
                    ++full_scans;
                }
            }
            if (!ok) bad.add(inst_str(m, k, alpha) + " is not APN");
        });
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(total) + " family instances, delta=2 for all (" +
                std::to_string(full_scans) + " full scans, " +
                std::to_string(kernel_checks) + " kernel-criterion checks)" +
                bad.str();
    return r;
}

// --- C2 ------------------------------------------------------------------

CheckResult check_alpha_count(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::uint64_t checked = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        const std::uint64_t expect = (m % 2 == 1) ? ((1ull << (m + 1)) + 2) / 6
                                                  : ((1ull << (m + 1)) - 2) / 6;
        for (unsigned k : coprime_ks(m)) {
            const auto alphas = admissible_alphas(field, k);
            ++checked;
            if (alphas.size() != expect) {
                bad.add("m=" + std::to_string(m) + ",k=" + std::to_string(k) +
                        ": count " + std::to_string(alphas.size()) + " != " +
                        std::to_string(expect));
            }
        }
    }
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(checked) +
                " (m,k) pairs; counts match (2^(m+1)+2)/6 for odd m and "
                "(2^(m+1)-2)/6 for even m, independent of k" +
                bad.str();
    return r;
}

// --- C3 ------------------------------------------------------------------

CheckResult check_image(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    const std::uint64_t total = for_each_instance(
        ctx, lo, hi, [&](const Field& field, unsigned m, unsigned k, std::uint32_t alpha) {
            const FunctionTable t = ctx.table(FamilyParams{&field, k, alpha});
            const ImageReport rep = image_report(t);
            const std::uint64_t expect_size = ((t.size() - 1)) / 3 + 1;
            if (!rep.three_to_one) {
                bad.add(inst_str(m, k, alpha) + " is not 3-to-1");
            } else if (rep.image_size != expect_size) {
                bad.add(inst_str(m, k, alpha) + " image size " +
                        std::to_string(rep.image_size) + " != " +
                        std::to_string(expect_size));
            }
        });
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(total) +
                " instances; 0 has the only singleton fiber, every nonzero image "
                "value has 3 preimages, image size (2^(2m)-1)/3 + 1" +
                bad.str();
    return r;
}

// --- C4 ------------------------------------------------------------------

CheckResult check_walsh(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    const std::uint64_t total = for_each_instance(
        ctx, lo, hi, [&](const Field& field, unsigned m, unsigned k, std::uint32_t alpha) {
            const FunctionTable t = ctx.table(FamilyParams{&field, k, alpha});
            const WalshReport rep = walsh_spectrum(t, field, ctx.plan.jobs);
            if (!rep.parseval_ok) {
                bad.add(inst_str(m, k, alpha) + " violates Parseval");
            } else if (!rep.classical) {
                std::string support;
                for (const auto& [v, c] : rep.counts) {
                    support += " " + std::to_string(v) + ":" + std::to_string(c);
                }
                bad.add(inst_str(m, k, alpha) + " spectrum not classical:" + support);
            }
        });
    CheckResult r;
    r.pass = bad.empty();
    std::string note;
    if (lo <= hi) {
        const unsigned n = 2 * lo;
        note = "; at n=" + std::to_string(n) + " the 2^(n/2+1) multiplicity is " +
               std::to_string(classical_top_count(n)) +
               " = (2^n-1)*2^(n-2)/3 as totality and Parseval force; the "
               "alternative figure (2^n-1)*2^n/3 = " +
               std::to_string(((std::uint64_t{1} << n) - 1) / 3 *
                              (std::uint64_t{1} << n)) +
               " is inconsistent with both";
    }
    r.details = std::to_string(total) +
                " instances; |W| support {0, 2^m, 2^(m+1)} with zero count "
                "(2^n-1)*2^(n-2) and 2^m count (2^n-1)*2^(n+1)/3" +
                note + bad.str();
    return r;
}

// --- C5 ------------------------------------------------------------------

CheckResult check_stabilizer(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::uint64_t searched = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        const std::uint64_t expect = 3ull * field.units();
        for (unsigned k : coprime_ks(m)) {
            auto alphas = admissible_alphas(field, k);
            if (m == 5 && alphas.size() > 2) alphas.resize(2);
            for (std::uint32_t alpha : alphas) {
                ++searched;
                const auto stab = stabilizer_f(family_first_poly(field, k, alpha));
                if (stab.size() != expect) {
                    bad.add(inst_str(m, k, alpha) + " stabilizer size " +
                            std::to_string(stab.size()) + " != " +
                            std::to_string(expect));
                    continue;
                }
                std::map<std::uint32_t, unsigned> per_det;
                for (const auto& g : stab) ++per_det[gl2_det(field, g.M)];
                bool dets_ok = per_det.size() == field.units();
                for (const auto& [d, c] : per_det) {
                    if (c != 3) dets_ok = false;
                    (void)d;
                }
                if (!dets_ok) {
                    bad.add(inst_str(m, k, alpha) + " determinant classes not 3 each");
                }
            }
        }
    }
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(searched) +
                " exhaustive GL(2,K) searches; stabilizer order 3*(2^m-1) with "
                "exactly 3 elements per determinant" +
                bad.str();
    return r;
}

// --- C6 ------------------------------------------------------------------

CheckResult check_lemma_lift(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::uint64_t moves_checked = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        const std::uint32_t q = field.order();
        for (unsigned k : coprime_ks(m)) {
            const auto alphas = admissible_alphas(field, k);
            for (std::uint32_t a1 : alphas) {
                for (std::uint32_t a2 : alphas) {
                    const auto f1 = family_first_poly(field, k, a1);
                    const auto f2 = family_first_poly(field, k, a2);
                    const auto g1 = family_second_poly(field, k, a1);
                    const auto g2 = family_second_poly(field, k, a2);
                    const auto moves = find_all_moves(f1, f2);
                    if (moves.size() != 3ull * field.units()) {
                        bad.add(inst_str(m, k, a1) + "->" + hex_value(a2) +
                                ": " + std::to_string(moves.size()) + " moves");
                        continue;
                    }
                    for (const auto& mv : moves) {
                        ++moves_checked;
                        const std::uint32_t lifted =
                            lift_scalar(field, k, mv.M, a1, a2);
                        const GroupElement gmove{lifted, mv.M};
                        if (!(act(gmove, g1) == g2)) {
                            bad.add(inst_str(m, k, a1) + "->" + hex_value(a2) +
                                    ": lift failed on coefficients");
                            continue;
                        }
                        // Pointwise: lifted * g1(M(x,y)) == g2(x,y) everywhere.
                        bool pw = true;
                        for (std::uint32_t v = 0; v < q * q && pw; ++v) {
                            const std::uint32_t u =
                                gl2_apply_point(field, mv.M, v);
                            const std::uint32_t lhs = field.mul(
                                lifted, eval_biprojective(g1, pair_lo(m, u),
                                                          pair_hi(m, u)));
                            const std::uint32_t rhs = eval_biprojective(
                                g2, pair_lo(m, v), pair_hi(m, v));
                            pw = lhs == rhs;
                        }
                        if (!pw) {
                            bad.add(inst_str(m, k, a1) + "->" + hex_value(a2) +
                                    ": lift failed pointwise");
                        }
                        for (std::uint32_t other = 1; other < q; ++other) {
                            if (other == lifted) continue;
                            if (act(GroupElement{other, mv.M}, g1) == g2) {
                                bad.add(inst_str(m, k, a1) + "->" + hex_value(a2) +
                                        ": lifted scalar not unique");
                                break;
                            }
                        }
                    }
                }
            }
        }
    }
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(moves_checked) +
                " first-component moves lifted; each lift verified on "
                "coefficients and pointwise, uniqueness by scalar scan" +
                bad.str();
    return r;
}

// --- C7 ------------------------------------------------------------------

CheckResult check_block_autos(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::uint64_t instances = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        for (unsigned k : coprime_ks(m)) {
            auto alphas = admissible_alphas(field, k);
            if (m > 3 && alphas.size() > 1) alphas.resize(1);
            for (std::uint32_t alpha : alphas) {
                ++instances;
                const FamilyParams params{&field, k, alpha};
                const FunctionTable t = ctx.table(params);
                std::vector<BlockAutomorphism> autos;
                try {
                    autos = block_automorphisms(t, params);
                } catch (const std::exception& e) {
                    bad.add(inst_str(m, k, alpha) + ": " + e.what());
                    continue;
                }
                if (autos.size() != 3ull * field.units()) {
                    bad.add(inst_str(m, k, alpha) + ": " +
                            std::to_string(autos.size()) + " pairs");
                    continue;
                }
                std::map<std::uint32_t, unsigned> per_det;
                std::vector<GL2> det1;
                for (const auto& aut : autos) {
                    const std::uint32_t d = gl2_det(field, aut.M);
                    ++per_det[d];
                    if (d == 1) det1.push_back(aut.M);
                }
                bool ok = per_det.size() == field.units();
                for (const auto& [d, c] : per_det) {
                    if (c != 3) ok = false;
                    (void)d;
                }
                if (!ok || det1.size() != 3) {
                    bad.add(inst_str(m, k, alpha) + ": determinant split wrong");
                    continue;
                }
                // det 1 subset is {I, M, M^2} with M^3 = I and no nonzero
                // fixed point.
                const GL2 id{};
                std::vector<GL2> nontrivial;
                bool has_id = false;
                for (const auto& M : det1) {
                    if (M == id) has_id = true;
                    else nontrivial.push_back(M);
                }
                if (!has_id || nontrivial.size() != 2) {
                    bad.add(inst_str(m, k, alpha) + ": det-1 subset lacks identity");
                    continue;
                }
                const GL2& M = nontrivial[0];
                const GL2 M2 = gl2_mul(field, M, M);
                const GL2 M3 = gl2_mul(field, M2, M);
                if (!(M2 == nontrivial[1]) || !(M3 == id)) {
                    bad.add(inst_str(m, k, alpha) + ": det-1 subset is not {I, M, M^2}");
                    continue;
                }
                for (const GL2& W : nontrivial) {
                    for (std::uint32_t v = 1; v < t.size(); ++v) {
                        if (gl2_apply_point(field, W, v) == v) {
                            bad.add(inst_str(m, k, alpha) + ": fixed point at v=" +
                                    hex_value(v));
                            break;
                        }
                    }
                }
            }
        }
    }
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(instances) +
                " instances; 3*(2^m-1) block pairs each, det-1 subset a "
                "fixed-point-free cyclic group of order 3" +
                bad.str();
    return r;
}

// --- C8 ------------------------------------------------------------------

CheckResult check_alpha_equiv(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::uint64_t witnesses = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        for (unsigned k : coprime_ks(m)) {
            const auto alphas = admissible_alphas(field, k);
            for (std::size_t i = 0; i < alphas.size(); ++i) {
                for (std::size_t j = i + 1; j < alphas.size(); ++j) {
                    try {
                        build_alpha_equivalence(FamilyParams{&field, k, alphas[i]},
                                                FamilyParams{&field, k, alphas[j]});
                        ++witnesses;
                    } catch (const std::exception& e) {
                        bad.add(inst_str(m, k, alphas[i]) + "->" +
                                hex_value(alphas[j]) + ": " + e.what());
                    }
                }
            }
        }
    }
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(witnesses) +
                " pairwise witnesses built and verified pointwise" + bad.str();
    return r;
}

// --- C9 ------------------------------------------------------------------

CheckResult check_inverse_sigma(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::uint64_t witnesses = 0;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        for (unsigned k : coprime_ks(m)) {
            for (std::uint32_t alpha : admissible_alphas(field, k)) {
                try {
                    const auto res =
                        inverse_sigma_equivalence(FamilyParams{&field, k, alpha});
                    if (res.target.k != m - k ||
                        res.target.alpha != field.frob(alpha, m - k)) {
                        bad.add(inst_str(m, k, alpha) + ": unexpected target");
                    } else {
                        ++witnesses;
                    }
                } catch (const std::exception& e) {
                    bad.add(inst_str(m, k, alpha) + ": " + e.what());
                }
            }
        }
    }
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(witnesses) +
                " inverse-exponent witnesses verified pointwise on all inputs" +
                bad.str();
    return r;
}

// --- C10 -----------------------------------------------------------------

std::string spectrum_str(const DifferentialSpectrum& s) {
    std::string out = "{";
    for (const auto& [v, c] : s.counts) {
        out += std::to_string(v) + ":" + std::to_string(c) + " ";
    }
    out += "}";
    return out;
}

CheckResult check_class_count(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    std::string summary;
    for (unsigned m = lo; m <= hi; ++m) {
        const Field& field = ctx.field(m);
        ClassMatrix cm;
        try {
            cm = certify_classes(field, ctx.plan.jobs);
        } catch (const std::exception& e) {
            bad.add("m=" + std::to_string(m) + ": " + std::string(e.what()));
            continue;
        }
        const unsigned expect = euler_phi(m) / 2;
        if (cm.num_classes != expect) {
            bad.add("m=" + std::to_string(m) + ": " +
                    std::to_string(cm.num_classes) + " classes != phi(m)/2 = " +
                    std::to_string(expect));
        }
        bool attach_spectra = false;
        for (std::size_t i = 0; i < cm.ks.size(); ++i) {
            for (std::size_t j = 0; j < cm.ks.size(); ++j) {
                const auto& v = cm.verdicts[i][j];
                const bool same_class =
                    std::min(cm.ks[i], m - cm.ks[i]) == std::min(cm.ks[j], m - cm.ks[j]);
                if (same_class && v.status != VerdictStatus::EquivalentWithWitness) {
                    bad.add("m=" + std::to_string(m) + " (" +
                            std::to_string(cm.ks[i]) + "," + std::to_string(cm.ks[j]) +
                            "): expected witness, got " + v.detail);
                }
                if (!same_class &&
                    (v.status != VerdictStatus::InequivalentByInvariant ||
                     v.detail.rfind("ortho-derivative differential", 0) != 0)) {
                    bad.add("m=" + std::to_string(m) + " (" +
                            std::to_string(cm.ks[i]) + "," + std::to_string(cm.ks[j]) +
                            "): not separated by ortho-derivative spectra: " +
                            v.detail);
                    attach_spectra = true;
                }
            }
        }
        if (attach_spectra) {
            for (const auto& [k, s] : cm.rep_ods) {
                bad.add("m=" + std::to_string(m) + " rep k=" + std::to_string(k) +
                        " ods=" + spectrum_str(s));
            }
        }
        summary += " m=" + std::to_string(m) + ":" + std::to_string(cm.num_classes);
    }
    CheckResult r;
    r.pass = bad.empty();
    r.details = "classes" + summary +
                "; every cross-class pair separated by ortho-derivative spectra, "
                "every same-class pair tied by a pointwise-verified witness" +
                bad.str();
    return r;
}

// --- C11 -----------------------------------------------------------------

CheckResult check_quadratic(Ctx& ctx, unsigned lo, unsigned hi) {
    Failures bad;
    const std::uint64_t total = for_each_instance(
        ctx, lo, hi, [&](const Field& field, unsigned m, unsigned k, std::uint32_t alpha) {
            const FunctionTable t = ctx.table(FamilyParams{&field, k, alpha});
            const unsigned d = algebraic_degree(t);
            if (d != 2) {
                bad.add(inst_str(m, k, alpha) + " degree " + std::to_string(d));
            }
        });
    CheckResult r;
    r.pass = bad.empty();
    r.details = std::to_string(total) + " instances, algebraic degree 2 everywhere" +
                bad.str();
    return r;
}

using CheckFn = CheckResult (*)(Ctx&, unsigned, unsigned);

struct CheckEntry {
    CheckInfo info;
    CheckFn fn;
};

const std::vector<CheckEntry>& entries() {
    static const std::vector<CheckEntry> table = {
        {{"C1", "apn", 3, 7}, check_apn},
        {{"C2", "alpha-count", 2, 8}, check_alpha_count},
        {{"C3", "image", 3, 6}, check_image},
        {{"C4", "walsh", 3, 6}, check_walsh},
        {{"C5", "stabilizer", 3, 5}, check_stabilizer},
        {{"C6", "lemma-lift", 3, 4}, check_lemma_lift},
        {{"C7", "block-autos", 3, 5}, check_block_autos},
        {{"C8", "alpha-equiv", 3, 5}, check_alpha_equiv},
        {{"C9", "inverse-sigma", 3, 6}, check_inverse_sigma},
        {{"C10", "class-count", 3, 7}, check_class_count},
        {{"C11", "quadratic", 3, 5}, check_quadratic},
    };
    return table;
}

}  // namespace

const std::vector<CheckInfo>& check_catalog() {
    static const std::vector<CheckInfo> infos = [] {
        std::vector<CheckInfo> v;
        for (const auto& e : entries()) v.push_back(e.info);
        return v;
    }();
    return infos;
}

std::vector<CheckResult> run_verification(const VerifyPlan& plan) {
    if (plan.m_lo > plan.m_hi) throw std::invalid_argument("empty m range");

    std::vector<const CheckEntry*> selected;
    if (plan.checks.empty()) {
        for (const auto& e : entries()) selected.push_back(&e);
    } else {
        for (const auto& name : plan.checks) {
            const CheckEntry* found = nullptr;
            for (const auto& e : entries()) {
                if (e.info.name == name) found = &e;
            }
            if (!found) throw std::invalid_argument("unknown check '" + name + "'");
            selected.push_back(found);
        }
    }

    bool any_in_range = false;
    for (const auto* e : selected) {
        if (plan.m_hi >= e->info.m_lo && plan.m_lo <= e->info.m_hi) any_in_range = true;
    }
    if (!any_in_range) {
        throw std::invalid_argument("m range [" + std::to_string(plan.m_lo) + ", " +
                                    std::to_string(plan.m_hi) +
                                    "] is outside every requested check");
    }

    Ctx ctx{plan, {}};
    std::vector<CheckResult> results;
    for (const auto* e : selected) {
        CheckResult r;
        r.id = e->info.id;
        r.name = e->info.name;
        const unsigned lo = std::max(plan.m_lo, e->info.m_lo);
        const unsigned hi = std::min(plan.m_hi, e->info.m_hi);
        if (lo > hi) {
            r.ran = false;
            r.pass = true;
            r.details = "skipped: criterion range m=" + std::to_string(e->info.m_lo) +
                        ".." + std::to_string(e->info.m_hi) +
                        " does not meet the plan";
            results.push_back(std::move(r));
            continue;
        }
        r.ran = true;
        try {
            CheckResult inner = e->fn(ctx, lo, hi);
            r.pass = inner.pass;
            r.details = "m=" + std::to_string(lo) + ".." + std::to_string(hi) + ": " +
                        inner.details;
        } catch (const std::exception& ex) {
            r.pass = false;
            r.details = std::string("exception: ") + ex.what();
        }
        results.push_back(std::move(r));
    }
    return results;
}

}  // namespace apnlab
