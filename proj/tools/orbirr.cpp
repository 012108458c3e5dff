// orbirr: exact Euler characteristics of bundles on orbifolds via the
// chartwise fixed-point formula. Batch CLI over built-in and JSON scenes.
//
// Exit codes: 0 success, 1 verification mismatch, 2 input/schema error,
// 3 internal invariant violation.

#include "orbirr/orbirr.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

using namespace orbirr;
using orbirr::io::json;

struct CommonOptions {
    std::string builtin;
    std::string scene_path;
    bool as_json = false;
    bool sector_raw = false;
};

Scene load_scene(const CommonOptions& opt) {
    if (!opt.builtin.empty() && !opt.scene_path.empty())
        throw SchemaError("give either --builtin or --scene, not both");
    if (!opt.builtin.empty()) return find_builtin(opt.builtin);
    if (!opt.scene_path.empty()) return io::load_scene_file(opt.scene_path);
    throw SchemaError("no scene selected: use --builtin <name> or --scene <path>");
}

json pretty_branches(const QuasiPoly& chi) {
    json arr = json::array();
    for (unsigned r = 0; r < chi.period(); ++r) {
        json b;
        if (chi.period() > 1) b["residue"] = r;
        b["poly"] = chi.branches()[r].to_string();
        arr.push_back(std::move(b));
    }
    return arr;
}

void print_chi_block(const json& block, const std::string& label) {
    const auto& branches = block.at("pretty");
    if (branches.size() == 1) {
        std::cout << label << " = " << branches[0].at("poly").get<std::string>() << "\n";
    } else {
        std::cout << label << " (period " << block.at("chi").at("period").get<unsigned>() << "):\n";
        for (const auto& b : branches)
            std::cout << "  m = " << b.at("residue").get<unsigned>() << " (mod " << branches.size()
                      << "): " << b.at("poly").get<std::string>() << "\n";
    }
}

json chi_block(const QuasiPoly& chi, bool raw) {
    json block;
    block["chi"] = io::chi_to_json(chi);
    block["pretty"] = pretty_branches(chi);
    if (raw) block["raw"] = io::chi_to_json_raw(chi);
    return block;
}

int cmd_chi(const CommonOptions& opt, const std::string& m_flag, const std::string& q_flag) {
    const Scene scene = load_scene(opt);
    QuasiPoly chi = scene_total_chi(scene);

    json report;
    report["command"] = "chi";
    report["scene"] = scene.name;
    report["ambient_dim"] = scene.presentation.ambient_dim;
    report["generic_stab"] = scene.presentation.generic_stab;

    std::optional<long long> q_value;
    if (!q_flag.empty()) {
        if (q_flag.find('/') != std::string::npos) {
            const Rational rate = parse_rational(q_flag);
            chi = chi.substitute_q(rate);
            report["slope_substitution"] = to_string(rate);
        } else {
            q_value = std::stoll(q_flag);
        }
    }
    report.update(chi_block(chi, opt.sector_raw));

    if (!m_flag.empty() && m_flag != "symbolic") {
        const long long m = std::stoll(m_flag);
        const long long q = q_value.value_or(0);
        report["evaluation"] = {{"m", m}, {"q", q}, {"value", to_string(chi.evaluate_at(m, q))}};
    } else if (q_value) {
        report["evaluation_note"] = "integer --q given without --m; supply --m to evaluate";
    }

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "scene: " << report["scene"].get<std::string>() << "  (n = " << scene.presentation.ambient_dim
              << ", s = " << scene.presentation.generic_stab << ")\n";
    print_chi_block(report, "chi(m, q)");
    if (report.contains("evaluation")) {
        const auto& ev = report["evaluation"];
        std::cout << "chi at m=" << ev.at("m").get<long long>() << ", q=" << ev.at("q").get<long long>() << ": "
                  << ev.at("value").get<std::string>() << "\n";
    }
    if (opt.sector_raw) std::cout << "raw coefficients:\n" << report["raw"].dump(2) << "\n";
    return 0;
}

int cmd_breakdown(const CommonOptions& opt) {
    const Scene scene = load_scene(opt);
    validate(scene.presentation);

    json report;
    report["command"] = "breakdown";
    report["scene"] = scene.name;
    json rows = json::array();
    for (const auto& s : scene.presentation.sectors) {
        const QuasiPoly c = sector_contribution(s);
        json row;
        row["label"] = s.label;
        row["dim"] = s.dim;
        row["identity"] = s.is_identity();
        row["prefactor"] = to_string(s.prefactor);
        row["degree_m"] = c.degree_m();
        if (c.has_rational_coefficients()) {
            row["contribution"] = pretty_branches(c);
        } else {
            row["contribution_cyclotomic"] = true;
            if (opt.sector_raw) row["raw"] = io::chi_to_json_raw(c);
        }
        rows.push_back(std::move(row));
    }
    report["sectors"] = std::move(rows);
    report["identity_total"] = chi_block(scene_identity_chi(scene), false);
    report["twisted_total"] = chi_block(scene_twisted_chi(scene), false);
    report["total"] = chi_block(scene_total_chi(scene), false);
    const DegreeAudit audit = degree_bound_audit(scene.presentation);
    report["degree_audit"] = {{"pass", audit.pass},
                              {"ambient_dim", audit.ambient_dim},
                              {"total_degree", audit.total_degree},
                              {"twisted_degree", audit.twisted_degree}};

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "scene: " << scene.name << "\n";
    for (const auto& row : report["sectors"]) {
        std::cout << "  " << row["label"].get<std::string>() << "  dim " << row["dim"].get<int>() << "  prefactor "
                  << row["prefactor"].get<std::string>() << "  ";
        if (row.contains("contribution")) {
            const auto& br = row["contribution"];
            if (br.size() == 1) {
                std::cout << br[0]["poly"].get<std::string>();
            } else {
                std::cout << "[period " << br.size() << "]";
                for (const auto& b : br) std::cout << "  r" << b["residue"].get<unsigned>() << ": " << b["poly"].get<std::string>();
            }
        } else {
            std::cout << (opt.sector_raw ? "(cyclotomic; raw terms below)" : "(cyclotomic; rerun with --sector-raw)");
        }
        std::cout << "\n";
    }
    print_chi_block(report["identity_total"], "identity total");
    print_chi_block(report["twisted_total"], "twisted total");
    print_chi_block(report["total"], "total");
    const auto& audit_json = report["degree_audit"];
    std::cout << "degree audit: " << (audit_json["pass"].get<bool>() ? "pass" : "FAIL") << "  (deg_m total = "
              << audit_json["total_degree"].get<int>() << ", twisted = " << audit_json["twisted_degree"].get<int>()
              << ", n = " << audit_json["ambient_dim"].get<int>() << ")\n";
    if (opt.sector_raw)
        for (const auto& row : report["sectors"])
            if (row.contains("raw"))
                std::cout << row["label"].get<std::string>() << " raw:\n" << row["raw"].dump(2) << "\n";
    return audit_json["pass"].get<bool>() ? 0 : 3;
}

int cmd_asymptotics(const CommonOptions& opt) {
    const Scene scene = load_scene(opt);
    const AsymptoticProfile prof = invariance_verdict(scene);

    json report;
    report["command"] = "asymptotics";
    report["scene"] = scene.name;
    report["ambient_dim"] = scene.presentation.ambient_dim;
    report["generic_stab"] = prof.generic_stab;
    report["degree"] = prof.degree;
    report["leading"] = to_string(prof.leading);
    report["identity_leading"] = to_string(prof.identity_leading);
    report["coarse_normalized"] = to_string(prof.coarse_normalized);
    report["twisted_degree"] = prof.twisted_degree;
    report["identity_dominant"] = prof.identity_dominant;
    report["slope"] = to_string(slope(scene));

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "scene: " << scene.name << "\n"
              << "  n = " << report["ambient_dim"].get<int>() << ", s = " << prof.generic_stab << "\n"
              << "  leading term: m^" << prof.degree << " * " << report["leading"].get<std::string>() << "\n"
              << "  identity-sector leading: " << report["identity_leading"].get<std::string>() << "\n"
              << "  x s-normalized coarse leading: " << report["coarse_normalized"].get<std::string>() << "\n"
              << "  twisted max degree: " << prof.twisted_degree << "\n"
              << "  slope mu = " << report["slope"].get<std::string>() << "\n"
              << "  identity dominance: " << (prof.identity_dominant ? "holds" : "VIOLATED") << "\n";
    return prof.identity_dominant ? 0 : 3;
}

int cmd_threshold(const CommonOptions& opt, unsigned kmax) {
    const Scene scene = load_scene(opt);
    const ThresholdReport tr = threshold_report(scene, kmax);

    json report;
    report["command"] = "threshold";
    report["scene"] = tr.scene;
    report["ample_degree"] = to_string(tr.ample_degree);
    report["canonical_degree"] = to_string(tr.canonical_degree);
    report["coarse_curve_lambda"] = to_string(tr.coarse_curve_lambda);
    report["all_equal"] = tr.all_equal;
    json rows = json::array();
    for (const auto& row : tr.rows)
        rows.push_back({{"k", row.k},
                        {"lambda_full", to_string(row.lambda_full)},
                        {"lambda_identity", to_string(row.lambda_identity)},
                        {"equal", row.equal},
                        {"ggd_positive", row.ggd_positive}});
    report["rows"] = std::move(rows);

    if (opt.as_json) {
        std::cout << report.dump(2) << "\n";
        return 0;
    }
    std::cout << "scene: " << tr.scene << "\n"
              << "  deg K_orb = " << report["canonical_degree"].get<std::string>() << ", ample degree = "
              << report["ample_degree"].get<std::string>() << "\n"
              << "  k   lambda*(full)   lambda*(identity)   verdict\n";
    for (const auto& row : report["rows"])
        std::cout << "  " << row["k"].get<unsigned>() << "   " << row["lambda_full"].get<std::string>() << "   "
                  << row["lambda_identity"].get<std::string>() << "   "
                  << (row["equal"].get<bool>() ? "equal" : "DIFFERS")
                  << (row["ggd_positive"].get<bool>() ? "  (GGD-positive)" : "") << "\n";
    std::cout << "  smooth coarse-curve threshold (reported separately): "
              << report["coarse_curve_lambda"].get<std::string>() << "\n";
    return tr.all_equal ? 0 : 3;
}

struct Grid {
    std::map<std::string, long long> bound;
    long long get(const std::string& key, long long fallback) const {
        auto it = bound.find(key);
        return it == bound.end() ? fallback : it->second;
    }
};

Grid parse_grid(const std::string& spec) {
    Grid g;
    std::size_t pos = 0;
    while (pos < spec.size()) {
        std::size_t comma = spec.find(',', pos);
        if (comma == std::string::npos) comma = spec.size();
        std::string tok = spec.substr(pos, comma - pos);
        pos = comma + 1;
        if (tok.empty()) continue;
        const std::size_t le = tok.find("<=");
        if (le == std::string::npos) throw SchemaError("grid token must look like key<=value: '" + tok + "'");
        g.bound[tok.substr(0, le)] = std::stoll(tok.substr(le + 2));
    }
    return g;
}

int cmd_verify(const std::string& family, const std::string& grid_spec, bool as_json) {
    const Grid grid = parse_grid(grid_spec);
    std::vector<OracleReport> reports;
    auto want = [&](const char* name) { return family == name || family == "all"; };
    if (want("projective")) reports.push_back(cross_check_projective(static_cast<int>(grid.get("n", 4)), grid.get("k", 20)));
    if (want("hypersurface"))
        reports.push_back(cross_check_hypersurface(static_cast<int>(grid.get("n", 4)), grid.get("d", 5), -5, grid.get("m", 10)));
    if (want("cyclic")) reports.push_back(cross_check_cyclic(static_cast<unsigned>(grid.get("r", 6)), grid.get("k", 30)));
    if (want("curves")) reports.push_back(cross_check_curves(static_cast<int>(grid.get("g", 2)), -5, grid.get("c", 10)));
    if (want("jets")) {
        reports.push_back(cross_check_jet_ranks(static_cast<unsigned>(grid.get("k", 6)), grid.get("m", 60)));
        reports.push_back(cross_check_jet_chi(static_cast<unsigned>(grid.get("k", 4)), grid.get("m", 20)));
    }
    if (reports.empty())
        throw SchemaError("unknown family '" + family + "'; use projective|hypersurface|cyclic|curves|jets|all");

    json out = json::array();
    bool pass = true;
    for (const auto& rep : reports) {
        json r;
        r["family"] = rep.family;
        r["grid"] = rep.grid;
        r["checks"] = rep.checks;
        r["pass"] = rep.pass();
        json mism = json::array();
        for (const auto& mm : rep.mismatches)
            mism.push_back({{"parameters", mm.parameters}, {"engine", to_string(mm.engine)}, {"oracle", mm.oracle}});
        r["mismatches"] = std::move(mism);
        pass = pass && rep.pass();
        out.push_back(std::move(r));
    }
    if (as_json) {
        std::cout << json{{"command", "verify"}, {"pass", pass}, {"reports", out}}.dump(2) << "\n";
    } else {
        for (const auto& r : out) {
            std::cout << (r["pass"].get<bool>() ? "PASS" : "FAIL") << "  " << r["family"].get<std::string>() << "  ["
                      << r["grid"].get<std::string>() << "]  " << r["checks"].get<std::size_t>() << " checks\n";
            for (const auto& mm : r["mismatches"])
                std::cout << "  mismatch at " << mm["parameters"].get<std::string>() << ": engine "
                          << mm["engine"].get<std::string>() << " vs oracle " << mm["oracle"].get<long long>() << "\n";
        }
    }
    return pass ? 0 : 1;
}

int cmd_list_scenes(bool as_json) {
    json list = json::array();
    for (const auto& [key, scene] : builtin_scenes()) {
        list.push_back({{"id", key},
                        {"description", scene.name},
                        {"ambient_dim", scene.presentation.ambient_dim},
                        {"sectors", scene.presentation.sectors.size()},
                        {"curve", scene.curve.has_value()}});
    }
    if (as_json) {
        std::cout << json{{"command", "list-scenes"}, {"scenes", list}}.dump(2) << "\n";
        return 0;
    }
    for (const auto& s : list)
        std::cout << s["id"].get<std::string>() << "  (n=" << s["ambient_dim"].get<int>() << ", "
                  << s["sectors"].get<std::size_t>() << " sectors)  " << s["description"].get<std::string>() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"orbirr: exact orbifold Riemann-Roch via the chartwise fixed-point formula"};
    app.require_subcommand(1);

    CommonOptions opt;
    std::string m_flag, q_flag, family = "all", grid_spec;
    unsigned kmax = 4;

    auto add_scene_flags = [&](CLI::App* cmd) {
        cmd->add_option("--builtin", opt.builtin, "built-in scene id (see list-scenes)");
        cmd->add_option("--scene", opt.scene_path, "path to a JSON scene file");
        cmd->add_flag("--json", opt.as_json, "machine-readable report");
        cmd->add_flag("--sector-raw", opt.sector_raw, "expose cyclotomic intermediate terms");
    };

    CLI::App* chi = app.add_subcommand("chi", "total chi as an exact (quasi-)polynomial");
    add_scene_flags(chi);
    chi->add_option("--m", m_flag, "evaluate at integer m (default: symbolic)");
    chi->add_option("--q", q_flag, "integer q, or rational rate p/q to substitute q = rate*m");

    CLI::App* breakdown = app.add_subcommand("breakdown", "per-sector contributions and degree audit");
    add_scene_flags(breakdown);

    CLI::App* asym = app.add_subcommand("asymptotics", "leading coefficients and identity dominance");
    add_scene_flags(asym);

    CLI::App* threshold = app.add_subcommand("threshold", "GGD critical-slope table over the jet tower");
    add_scene_flags(threshold);
    threshold->add_option("--kmax", kmax, "largest jet order (default 4)");

    CLI::App* verify = app.add_subcommand("verify", "cross-check the engine against the counting oracles");
    verify->add_option("family", family, "projective|hypersurface|cyclic|curves|jets|all")->required();
    verify->add_option("--grid", grid_spec, "bounds like \"r<=6,k<=30\"");
    bool verify_json = false;
    verify->add_flag("--json", verify_json, "machine-readable report");

    CLI::App* list = app.add_subcommand("list-scenes", "list built-in scenes");
    bool list_json = false;
    list->add_flag("--json", list_json, "machine-readable report");

    try {
        app.parse(argc, argv);
        if (chi->parsed()) return cmd_chi(opt, m_flag, q_flag);
        if (breakdown->parsed()) return cmd_breakdown(opt);
        if (asym->parsed()) return cmd_asymptotics(opt);
        if (threshold->parsed()) return cmd_threshold(opt, kmax);
        if (verify->parsed()) return cmd_verify(family, grid_spec, verify_json);
        if (list->parsed()) return cmd_list_scenes(list_json);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const orbirr::SchemaError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const orbirr::InvariantError& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
