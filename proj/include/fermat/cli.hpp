#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fermat/serialize.hpp"

namespace fermat {
namespace cli {

struct FieldArgs {
    std::uint64_t q = 0;
    std::uint64_t p = 0;
    unsigned n = 1;

    Field make() const {
        if (q != 0) return make_field_q(q);
        if (p != 0) return make_field(p, n);
        throw InputError("specify the field with --q or --p/--n");
    }
};

inline void add_field_options(CLI::App* cmd, FieldArgs& args) {
    cmd->add_option("--q", args.q, "field size q = p^n (prime power)");
    cmd->add_option("--p", args.p, "field characteristic (prime)");
    cmd->add_option("--n", args.n, "extension degree (with --p)");
}

inline void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw InputError("cannot open output file " + out_path);
    out << text;
}

inline std::vector<PrimePair> read_pair_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open pair file " + path);
    std::vector<PrimePair> pairs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream ss(line);
        std::uint64_t p = 0, ell = 0;
        if (!(ss >> p >> ell)) continue;  // skip headers
        pairs.push_back({p, static_cast<std::uint32_t>(ell)});
    }
    return pairs;
}

inline int run(int argc, const char* const* argv) {
    CLI::App app{"diagonal Fermat curve point counts, moments, and scans"};
    app.require_subcommand(1);
    app.fallthrough();  // inheritable: --format/--out may follow the subcommand

    std::string format = "json";
    std::string out_path;
    app.add_option("--format", format, "output format: json or csv")->capture_default_str();
    app.add_option("--out", out_path, "write the artifact to this path instead of stdout");

    // field-info -----------------------------------------------------
    FieldArgs fi_field;
    auto* cmd_field = app.add_subcommand("field-info", "construct a field and print its parameters");
    add_field_options(cmd_field, fi_field);

    // count ----------------------------------------------------------
    FieldArgs count_field;
    std::uint32_t count_ell = 0;
    std::string count_A, count_B, count_C = "-1", count_method = "both";
    auto* cmd_count = app.add_subcommand("count", "count points on A x^ell + B y^ell + C z^ell = 0");
    add_field_options(cmd_count, count_field);
    cmd_count->add_option("--ell", count_ell, "curve exponent (prime)")->required();
    cmd_count->add_option("--A", count_A, "coefficient A")->required();
    cmd_count->add_option("--B", count_B, "coefficient B")->required();
    cmd_count->add_option("--C", count_C, "coefficient C")->capture_default_str();
    cmd_count->add_option("--method", count_method, "brute, charsum, or both")->capture_default_str();

    // moment ---------------------------------------------------------
    FieldArgs moment_field;
    std::uint32_t moment_ell = 0, moment_k = 1;
    std::string moment_method = "brute";
    auto* cmd_moment = app.add_subcommand("moment", "k-th moment of a_{q,ell} over coefficient pairs");
    add_field_options(cmd_moment, moment_field);
    cmd_moment->add_option("--ell", moment_ell)->required();
    cmd_moment->add_option("--k", moment_k)->required();
    cmd_moment->add_option("--method", moment_method, "brute, closed, or geometric")->capture_default_str();

    // fibre ----------------------------------------------------------
    FieldArgs fibre_field;
    std::uint32_t fibre_ell = 0, fibre_k = 1;
    bool fibre_full = false;
    auto* cmd_fibre = app.add_subcommand("fibre", "sum of N(A,B,C)^k over coefficient space");
    add_field_options(cmd_fibre, fibre_field);
    cmd_fibre->add_option("--ell", fibre_ell)->required();
    cmd_fibre->add_option("--k", fibre_k)->required();
    cmd_fibre->add_flag("--full", fibre_full, "include coefficient classes with ABC = 0");

    // scan -----------------------------------------------------------
    FieldArgs scan_field;
    std::uint32_t scan_ell = 0;
    auto* cmd_scan = app.add_subcommand("scan", "census of pointless coefficient pairs for one field");
    add_field_options(cmd_scan, scan_field);
    cmd_scan->add_option("--ell", scan_ell)->required();

    // qmax -----------------------------------------------------------
    std::uint32_t qmax_ell = 0;
    unsigned qmax_workers = 1;
    auto* cmd_qmax = app.add_subcommand("qmax", "largest q <= Hasse-Weil ceiling with a pointless curve");
    cmd_qmax->add_option("--ell", qmax_ell)->required();
    cmd_qmax->add_option("--workers", qmax_workers, "worker threads for the field sweep")->capture_default_str();

    // bound-check ----------------------------------------------------
    FieldArgs bc_field;
    std::uint32_t bc_ell = 0, bc_kmax = 8;
    unsigned bc_delta_grid = 0;
    auto* cmd_bc = app.add_subcommand("bound-check", "compare |moments| against the closed-form bound");
    add_field_options(cmd_bc, bc_field);
    cmd_bc->add_option("--ell", bc_ell);
    cmd_bc->add_option("--k-max", bc_kmax)->capture_default_str();
    cmd_bc->add_option("--delta-grid", bc_delta_grid,
                       "also tabulate the census exponent 2 - delta/(2+delta) on this many grid points");

    // sweep ----------------------------------------------------------
    SweepConfig sweep_config;
    auto* cmd_sweep = app.add_subcommand("sweep", "exponent fits over admissible (p, ell) pairs");
    cmd_sweep->add_option("--p-min", sweep_config.p_min)->capture_default_str();
    cmd_sweep->add_option("--p-max", sweep_config.p_max)->capture_default_str();
    cmd_sweep->add_option("--ell-min", sweep_config.ell_min)->capture_default_str();
    cmd_sweep->add_option("--ell-max", sweep_config.ell_max)->capture_default_str();
    cmd_sweep->add_option("--k-max", sweep_config.k_max)->capture_default_str();
    cmd_sweep->add_option("--pair-cap", sweep_config.pair_cap)->capture_default_str();
    cmd_sweep->add_option("--seed", sweep_config.seed)->capture_default_str();
    cmd_sweep->add_option("--workers", sweep_config.workers)->capture_default_str();

    // noclosed -------------------------------------------------------
    std::uint32_t nc_k = 3;
    std::string nc_pairs_a, nc_pairs_b;
    bool nc_overdetermined = false;
    auto* cmd_nc = app.add_subcommand("noclosed", "two-system interpolation test for a closed moment formula");
    cmd_nc->add_option("--k", nc_k)->capture_default_str();
    cmd_nc->add_option("--pairs-a", nc_pairs_a, "CSV file (columns p, ell) for the first pair set");
    cmd_nc->add_option("--pairs-b", nc_pairs_b, "CSV file (columns p, ell) for the second pair set");
    cmd_nc->add_flag("--overdetermined", nc_overdetermined, "also report the doubled-row least-squares residual");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);  // --help
        }
        app.exit(e);
        return 2;
    }

    try {
        if (format != "json" && format != "csv") throw InputError("--format must be json or csv");
        bool csv = format == "csv";

        if (cmd_field->parsed()) {
            Field field = fi_field.make();
            if (csv) {
                std::string mod;
                for (std::uint32_t c : field.modulus()) mod += (mod.empty() ? "" : ";") + std::to_string(c);
                emit("p,n,q,modulus,generator\n" + std::to_string(field.p()) + "," + std::to_string(field.n()) + "," +
                         std::to_string(field.q()) + "," + mod + "," + field.format(field.generator()) + "\n",
                     out_path);
            } else {
                emit(field_json(field).dump(2), out_path);
            }
        } else if (cmd_count->parsed()) {
            Field field = count_field.make();
            CurveId id = make_curve(field, count_ell, field.parse(count_A), field.parse(count_B),
                                    field.parse(count_C));
            Json out = Json::array();
            if (count_method == "brute" || count_method == "both") out.push_back(count_json(id, count_brute(id)));
            if (count_method == "charsum" || count_method == "both") out.push_back(count_json(id, a_charsum(id)));
            if (out.empty()) throw InputError("--method must be brute, charsum, or both");
            if (csv) {
                std::string text = "q,ell,A,B,C,N,a,method\n";
                for (const Json& row : out) {
                    text += std::to_string(row["q"].get<std::uint64_t>()) + "," + std::to_string(count_ell) + "," +
                            row["A"].get<std::string>() + "," + row["B"].get<std::string>() + "," +
                            row["C"].get<std::string>() + "," + std::to_string(row["N"].get<std::uint64_t>()) + "," +
                            std::to_string(row["a"].get<std::int64_t>()) + "," + row["method"].get<std::string>() +
                            "\n";
                }
                emit(text, out_path);
            } else {
                emit((out.size() == 1 ? out[0] : out).dump(2), out_path);
            }
        } else if (cmd_moment->parsed()) {
            if (moment_method != "brute" && moment_method != "closed" && moment_method != "geometric") {
                throw InputError("--method must be brute, closed, or geometric");
            }
            Field field = moment_field.make();
            MomentRecord record = moment_method == "closed"    ? moment_closed(field.q(), moment_ell, moment_k)
                                  : moment_method == "geometric" ? moment_geometric(field, moment_ell, moment_k)
                                                                 : moment_brute(field, moment_ell, moment_k);
            if (csv) {
                emit("q,ell,k,value,method\n" + std::to_string(record.q) + "," + std::to_string(record.ell) + "," +
                         std::to_string(record.k) + "," + to_string(record.value) + "," + to_string(record.method) +
                         "\n",
                     out_path);
            } else {
                emit(to_json(record).dump(2), out_path);
            }
        } else if (cmd_fibre->parsed()) {
            Field field = fibre_field.make();
            FibreCount fc = fibre_count(field, fibre_ell, fibre_k, !fibre_full);
            if (csv) {
                emit("q,ell,k,smooth_only,count\n" + std::to_string(fc.q) + "," + std::to_string(fc.ell) + "," +
                         std::to_string(fc.k) + "," + (fc.smooth_only ? "1" : "0") + "," + to_string(fc.count) + "\n",
                     out_path);
            } else {
                emit(to_json(fc).dump(2), out_path);
            }
        } else if (cmd_scan->parsed()) {
            Field field = scan_field.make();
            ScanReport report = pointless_pairs(field, scan_ell);
            if (csv) {
                emit(scan_csv_header() + scan_csv_row(report), out_path);
            } else {
                emit(to_json(report).dump(2), out_path);
            }
        } else if (cmd_qmax->parsed()) {
            QReport report = q_max(qmax_ell, qmax_workers);
            if (csv) {
                std::string text = scan_csv_header();
                for (const ScanReport& row : report.rows) text += scan_csv_row(row);
                emit(text, out_path);
            } else {
                emit(to_json(report).dump(2), out_path);
            }
        } else if (cmd_bc->parsed()) {
            Json out = Json::object();
            std::string csv_text;
            if (bc_ell != 0) {
                Field field = bc_field.make();
                ClassCountTable table(field, bc_ell);
                Json rows = Json::array();
                csv_text = "q,ell,k,moment,bound,within\n";
                for (std::uint32_t k = 1; k <= bc_kmax; ++k) {
                    MomentRecord m = moment_brute(table, k);
                    BigRat bound = moment_bound(field.q(), bc_ell, k);
                    bool within = moment_within_bound(field.q(), bc_ell, k, m.value);
                    rows.push_back(Json{{"k", k},
                                        {"moment", to_string(m.value)},
                                        {"bound", to_string(BigFloat(bound), 20)},
                                        {"within", within}});
                    csv_text += std::to_string(field.q()) + "," + std::to_string(bc_ell) + "," + std::to_string(k) +
                                "," + to_string(m.value) + "," + to_string(BigFloat(bound), 20) + "," +
                                (within ? "1" : "0") + "\n";
                }
                out["q"] = field.q();
                out["ell"] = bc_ell;
                out["rows"] = rows;
            }
            if (bc_delta_grid > 0) {
                Json grid = Json::array();
                std::string grid_csv = "delta,exponent\n";
                for (unsigned i = 0; i <= bc_delta_grid; ++i) {
                    double delta = 2.0 * i / bc_delta_grid;
                    double exponent = 2.0 - delta / (2.0 + delta);
                    grid.push_back(Json{{"delta", delta}, {"exponent", exponent}});
                    char buf[64];
                    std::snprintf(buf, sizeof(buf), "%.4f,%.6f\n", delta, exponent);
                    grid_csv += buf;
                }
                out["census_exponent"] = grid;
                csv_text += grid_csv;
            }
            if (out.empty()) throw InputError("bound-check needs --ell (with a field) or --delta-grid");
            emit(csv ? csv_text : out.dump(2), out_path);
        } else if (cmd_sweep->parsed()) {
            auto pairs = admissible_pairs(sweep_config);
            double cost = sweep_cost_estimate(pairs);
            if (cost > 5e6) {
                std::cerr << "sweep over " << pairs.size() << " pairs, estimated " << cost
                          << " field elements of work\n";
            }
            auto fits = sweep_and_fit(sweep_config);
            if (csv) {
                emit(sweep_csv(fits), out_path);
            } else {
                Json rows = Json::array();
                for (const ExponentFit& fit : fits) rows.push_back(to_json(fit));
                emit(rows.dump(2), out_path);
            }
        } else if (cmd_nc->parsed()) {
            std::vector<PrimePair> set1 = nc_pairs_a.empty() ? default_pair_set(nc_k, 0) : read_pair_csv(nc_pairs_a);
            std::vector<PrimePair> set2 = nc_pairs_b.empty() ? default_pair_set(nc_k, 1) : read_pair_csv(nc_pairs_b);
            FitVerdict verdict = consistency_test(nc_k, set1, set2);
            Json out = to_json(verdict, set1, set2);
            if (nc_overdetermined) {
                LeastSquaresFit ls = overdetermined_fit(nc_k, default_overdetermined_pairs(nc_k));
                out["overdetermined_residual"] = to_string(ls.rel_residual);
            }
            emit(out.dump(2), out_path);
        }
        return 0;
    } catch (const NumericError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace cli
}  // namespace fermat
