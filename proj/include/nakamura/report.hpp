#pragma once

#include <chrono>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "verdicts.hpp"
#include "version.hpp"

namespace nakamura {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Spec document I/O

inline json spec_to_json(const NakamuraSpec& spec) {
    json j;
    j["schema_version"] = spec_schema_version;
    json rows = json::array();
    for (int i = 0; i < spec.n; ++i) {
        json row = json::array();
        for (int k = 0; k < spec.n; ++k) row.push_back(spec.m.at(i, k).get_si());
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    if (spec.tau.mode == TauMode::admissible) j["tau"] = {{"mode", "admissible"}};
    else j["tau"] = {{"mode", "explicit"}, {"value", q_to_decimal(spec.tau.value, 40, false)}};
    if (spec.p) {
        json prows = json::array();
        for (const auto& row : *spec.p) {
            json prow = json::array();
            for (const auto& e : row) prow.push_back(q_to_decimal(e, 60, false));
            prows.push_back(std::move(prow));
        }
        j["P"] = std::move(prows);
    }
    if (!spec.label.empty()) j["label"] = spec.label;
    return j;
}

inline NakamuraSpec spec_from_json(const json& j, const ValidateOptions& opts = {}) {
    if (!j.is_object()) fail(errc::bad_input, "spec document must be a JSON object");
    if (!j.contains("matrix") || !j["matrix"].is_array())
        fail(errc::bad_input, "field 'matrix': required, rows of integers");
    const json& rows = j["matrix"];
    int n = static_cast<int>(rows.size());
    if (n == 0) fail(errc::bad_input, "field 'matrix': must be nonempty");
    ZMatrix m(n, n);
    for (int i = 0; i < n; ++i) {
        if (!rows[i].is_array() || static_cast<int>(rows[i].size()) != n)
            fail(errc::bad_input, "field 'matrix' row " + std::to_string(i) + ": expected " +
                                      std::to_string(n) + " integers");
        for (int k = 0; k < n; ++k) {
            if (!rows[i][k].is_number_integer())
                fail(errc::bad_input, "field 'matrix'[" + std::to_string(i) + "][" +
                                          std::to_string(k) + "]: expected an integer");
            m.at(i, k) = Z(rows[i][k].get<long>());
        }
    }

    TauSpec tau = TauSpec::admissible();
    if (j.contains("tau")) {
        const json& t = j["tau"];
        std::string mode = t.value("mode", "");
        if (mode == "admissible") {
            tau = TauSpec::admissible();
        } else if (mode == "explicit") {
            if (!t.contains("value") || !t["value"].is_string())
                fail(errc::bad_input, "field 'tau.value': explicit mode needs a decimal string");
            try {
                tau = TauSpec::explicit_value(q_from_decimal(t["value"].get<std::string>()));
            } catch (const std::invalid_argument& e) {
                fail(errc::bad_input, std::string("field 'tau.value': ") + e.what());
            }
        } else {
            fail(errc::bad_input, "field 'tau.mode': must be 'admissible' or 'explicit'");
        }
    }

    std::optional<std::vector<std::vector<Q>>> p;
    if (j.contains("P")) {
        const json& pj = j["P"];
        if (!pj.is_array() || static_cast<int>(pj.size()) != n)
            fail(errc::bad_input, "field 'P': must be an n x n array of decimal strings");
        std::vector<std::vector<Q>> rows_q;
        for (int i = 0; i < n; ++i) {
            if (!pj[i].is_array() || static_cast<int>(pj[i].size()) != n)
                fail(errc::bad_input, "field 'P' row " + std::to_string(i) + ": expected " +
                                          std::to_string(n) + " decimal strings");
            std::vector<Q> row;
            for (int k = 0; k < n; ++k) {
                if (!pj[i][k].is_string())
                    fail(errc::bad_input, "field 'P'[" + std::to_string(i) + "][" +
                                              std::to_string(k) + "]: expected a decimal string");
                try {
                    row.push_back(q_from_decimal(pj[i][k].get<std::string>()));
                } catch (const std::invalid_argument& e) {
                    fail(errc::bad_input, std::string("field 'P': ") + e.what());
                }
            }
            rows_q.push_back(std::move(row));
        }
        p = std::move(rows_q);
    }

    std::string label = j.value("label", "");
    return validate(m, tau, std::move(p), label, opts);
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::bad_input, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        fail(errc::bad_input, path + ": " + e.what());
    }
}

// Canonical bytes: minified dump with sorted keys (nlohmann objects are
// key-sorted by construction).
inline std::string canonical_bytes(const json& j) { return j.dump(); }

// ---------------------------------------------------------------------------
// Certificate serialization

inline json certificate_to_json(const Certificate& c) {
    json j;
    j["kind"] = cert_kind_name(c.kind);
    j["holds"] = c.holds;
    j["note"] = c.note;
    switch (c.kind) {
        case CertKind::non_p_kahler:
            j["p"] = c.p;
            j["witness"] = c.witness;
            j["sign"] = c.witness_sign;
            j["sigma"] = c.sigma.to_string();
            break;
        case CertKind::ddbar_lemma:
            j["sub_checks"] = {{"conjugation", c.sub_conjugation},
                               {"decomposition", c.sub_decomposition},
                               {"frolicher_e1", c.sub_frolicher}};
            break;
        case CertKind::tau_bound:
            j["bound_lo"] = q_to_decimal(c.bound.lo, 40, false);
            j["bound_hi"] = q_to_decimal(c.bound.hi, 40, true);
            j["status"] = c.tau_status == TauVerdict::admissible_assumed ? "admissible_assumed"
                          : c.tau_status == TauVerdict::certified_admissible
                              ? "certified_admissible"
                              : "unknown";
            break;
        default:
            break;
    }
    return j;
}

inline Certificate certificate_from_json(const json& j) {
    Certificate c;
    std::string kind = j.value("kind", "");
    bool found = false;
    for (CertKind k : {CertKind::balanced, CertKind::canonical_trivial, CertKind::non_p_kahler,
                       CertKind::ddbar_lemma, CertKind::non_kahler, CertKind::tau_bound}) {
        if (kind == cert_kind_name(k)) {
            c.kind = k;
            found = true;
        }
    }
    if (!found) fail(errc::bad_input, "unknown certificate kind '" + kind + "'");
    c.holds = j.value("holds", false);
    c.note = j.value("note", "");
    if (c.kind == CertKind::non_p_kahler) {
        c.p = j.value("p", 0);
        c.witness = j.value("witness", std::vector<int>{});
        c.witness_sign = j.value("sign", 0);
    }
    if (c.kind == CertKind::ddbar_lemma && j.contains("sub_checks")) {
        c.sub_conjugation = j["sub_checks"].value("conjugation", false);
        c.sub_decomposition = j["sub_checks"].value("decomposition", false);
        c.sub_frolicher = j["sub_checks"].value("frolicher_e1", false);
    }
    if (c.kind == CertKind::tau_bound) {
        c.bound = QInterval(q_from_decimal(j.value("bound_lo", "0")),
                            q_from_decimal(j.value("bound_hi", "0")));
        std::string st = j.value("status", "");
        c.tau_status = st == "certified_admissible" ? TauVerdict::certified_admissible
                       : st == "admissible_assumed" ? TauVerdict::admissible_assumed
                                                    : TauVerdict::unknown;
    }
    return c;
}

// ---------------------------------------------------------------------------
// Analysis pipeline

struct AnalyzeOptions {
    int crosscheck_trials = 0;
    uint64_t seed = 20240801;
    long precision_cap = default_precision_cap_bits;
    bool include_timings = false;
    int jobs = 1;
};

struct AnalysisResult {
    json report;
    int exit_code = 0; // 0 ok, 3 resonance-unknown partial
};

inline AnalysisResult analyze(const NakamuraSpec& input_spec, const AnalyzeOptions& opts = {}) {
    auto t0 = std::chrono::steady_clock::now();
    // Re-validate into a fresh working spec: analysis state (interval
    // refinements, precision counters) then depends only on (matrix, tau,
    // P, label, seed, options), which makes reports byte-deterministic.
    ValidateOptions vopts;
    vopts.precision_cap = opts.precision_cap;
    NakamuraSpec spec = validate(input_spec.m, input_spec.tau, input_spec.p, input_spec.label, vopts);

    json rep;
    rep["schema_version"] = report_schema_version;
    rep["engine_version"] = engine_version;
    rep["label"] = spec.label;
    rep["seed"] = std::to_string(opts.seed);
    rep["spec"] = spec_to_json(spec);

    // eigenvalue echo with certified enclosures
    {
        json eig = json::array();
        for (const auto& e : spec.mu) {
            QInterval iv = e.refine_to(128);
            json one;
            one["poly"] = e.poly().to_string();
            one["lo"] = q_to_decimal(iv.lo, 40, false);
            one["hi"] = q_to_decimal(iv.hi, 40, true);
            eig.push_back(std::move(one));
        }
        rep["eigenvalues"] = std::move(eig);
        json lam = json::array();
        for (int i = 0; i < spec.n; ++i) {
            QInterval li = spec.cert->lambda_interval(i, 128);
            lam.push_back({{"lo", q_to_decimal(li.lo, 40, false)}, {"hi", q_to_decimal(li.hi, 40, true)}});
        }
        rep["lambda"] = std::move(lam);
    }

    if (spec.p) {
        LatticeReport lr = lattice_preservation_check(spec);
        json lat;
        lat["max_residual"] = q_to_decimal(lr.max_residual, 60, true);
        lat["rho_itau_exact"] = lr.rho_itau_exact;
        rep["lattice"] = std::move(lat);
    } else {
        rep["lattice"] = nullptr;
    }

    std::vector<Certificate> certs;
    certs.push_back(tau_admissible_bound(spec));
    TauVerdict tv = certs.back().tau_status;
    certs.push_back(check_balanced(spec));
    certs.push_back(check_canonical_trivial(spec));
    for (int p = 1; p <= spec.n - 1; ++p) certs.push_back(p_kahler_obstruction(spec, p));

    ZeroPattern pat = compute_zero_pattern(spec, 128, std::max(1, opts.jobs));
    {
        json zp = json::array();
        for (const auto& v : pat.zeros) {
            json vv = json::array();
            for (uint8_t e : v) vv.push_back(static_cast<int>(e));
            zp.push_back(std::move(vv));
        }
        rep["zero_pattern"] = std::move(zp);
    }

    int exit_code = 0;
    if (tv == TauVerdict::unknown) {
        rep["status"] = "resonance_unknown";
        rep["hodge"] = nullptr;
        rep["betti"] = nullptr;
        rep["crosscheck"] = nullptr;
        exit_code = 3;
    } else {
        rep["status"] = "ok";
        HodgeTable hodge = dolbeault_numbers(spec, pat);
        DeRhamData dr = de_rham(spec, pat);
        FrolicherReport fro = frolicher_e1(spec, pat);
        auto [ddbar, nk] = ddbar_verdict(spec, {hodge, dr, fro});
        certs.push_back(std::move(ddbar));
        certs.push_back(std::move(nk));

        rep["hodge"] = hodge.h;
        rep["betti"] = hodge.betti;
        json drj;
        drj["betti"] = dr.betti;
        drj["ker_dims"] = dr.ker_dims;
        drj["im_dims"] = dr.im_dims;
        rep["de_rham"] = std::move(drj);
        rep["frolicher"] = {{"degenerate", fro.degenerate},
                            {"generators_checked", fro.generators_checked}};

        if (opts.crosscheck_trials > 0) {
            CrosscheckReport cr =
                ce_rank_crosscheck(spec, pat, opts.crosscheck_trials, opts.seed, dr.betti);
            json cj;
            cj["trials"] = cr.trials;
            cj["seed"] = std::to_string(cr.seed);
            cj["resamples"] = cr.resamples;
            cj["agreed"] = cr.agreed;
            json samples = json::array();
            for (const auto& lam : cr.samples) {
                json one = json::array();
                for (const auto& q : lam)
                    one.push_back(q.get_num().get_str() + "/" + q.get_den().get_str());
                samples.push_back(std::move(one));
            }
            cj["lambda_samples"] = std::move(samples);
            cj["betti_per_trial"] = cr.betti_per_trial;
            rep["crosscheck"] = std::move(cj);
            if (!cr.agreed)
                fail(errc::symbolic_non_zero,
                     "rank cross-check disagreed with combinatorial Betti numbers");
        } else {
            rep["crosscheck"] = nullptr;
        }
    }

    json certs_json = json::array();
    for (const auto& c : certs) certs_json.push_back(certificate_to_json(c));
    rep["verdicts"] = std::move(certs_json);

    rep["stats"] = {{"certified_zero_tests", spec.cert->stats().zero_tests.load()},
                    {"max_refine_bits", spec.cert->stats().max_bits.load()},
                    {"precision_cap", spec.cert->precision_cap()}};

    if (opts.include_timings) {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      std::chrono::steady_clock::now() - t0)
                      .count();
        rep["timings_ms"] = {{"total", ms}};
    }

    return {std::move(rep), exit_code};
}

// ---------------------------------------------------------------------------
// Report verification: re-derive everything from the spec echo

struct VerifyResult {
    bool ok = true;
    std::vector<std::pair<std::string, bool>> reverified; // per certificate
    std::string message;
};

inline VerifyResult verify_report(const json& rep, const ValidateOptions& vopts = {}) {
    VerifyResult out;
    if (!rep.contains("spec")) {
        out.ok = false;
        out.message = "report carries no spec echo";
        return out;
    }
    NakamuraSpec spec = spec_from_json(rep["spec"], vopts);

    for (const auto& cj : rep.value("verdicts", json::array())) {
        Certificate c = certificate_from_json(cj);
        bool good = verify_certificate(c, spec);
        out.reverified.emplace_back(cert_kind_name(c.kind), good);
        if (!good) out.ok = false;
    }

    // zero pattern is re-checkable pointwise
    if (rep.contains("zero_pattern") && rep["zero_pattern"].is_array()) {
        ZeroPattern fresh = compute_zero_pattern(spec);
        std::set<std::vector<uint8_t>> stored;
        for (const auto& vv : rep["zero_pattern"]) {
            std::vector<uint8_t> v;
            for (const auto& e : vv) v.push_back(static_cast<uint8_t>(e.get<int>()));
            stored.insert(std::move(v));
        }
        bool same = stored == fresh.zeros;
        out.reverified.emplace_back("zero_pattern", same);
        if (!same) out.ok = false;
    }

    if (rep.value("status", "") == "ok" && rep.contains("hodge") && !rep["hodge"].is_null()) {
        HodgeTable hodge = dolbeault_numbers(spec, compute_zero_pattern(spec));
        bool same_h = rep["hodge"] == json(hodge.h) && rep["betti"] == json(hodge.betti);
        out.reverified.emplace_back("hodge_table", same_h);
        if (!same_h) out.ok = false;
    }

    out.message = out.ok ? "all certificates re-verified" : "re-verification FAILED";
    return out;
}

// ---------------------------------------------------------------------------
// Diamond rendering

inline std::string hodge_latex(const json& rep) {
    if (!rep.contains("hodge") || rep["hodge"].is_null())
        fail(errc::bad_input, "report has no Hodge table (resonance-unknown run?)");
    auto h = rep["hodge"].get<std::vector<std::vector<uint64_t>>>();
    int rows = static_cast<int>(h.size());
    std::ostringstream os;
    os << "\\begin{array}{" << std::string(rows, 'c') << "}\n";
    for (int p = 0; p < rows; ++p) {
        for (int q = 0; q < rows; ++q) {
            os << "h^{" << p << "," << q << "}=" << h[p][q];
            os << (q + 1 < rows ? " & " : " \\\\");
        }
        os << "\n";
    }
    os << "\\end{array}\n";
    return os.str();
}

inline std::string hodge_csv(const json& rep) {
    if (!rep.contains("hodge") || rep["hodge"].is_null())
        fail(errc::bad_input, "report has no Hodge table (resonance-unknown run?)");
    auto h = rep["hodge"].get<std::vector<std::vector<uint64_t>>>();
    std::ostringstream os;
    for (const auto& row : h) {
        for (size_t q = 0; q < row.size(); ++q) os << row[q] << (q + 1 < row.size() ? "," : "");
        os << "\n";
    }
    return os.str();
}

} // namespace nakamura
