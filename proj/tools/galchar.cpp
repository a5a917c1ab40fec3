// galchar: d-Galois supercharacter theories of GL_n(F_q) from the command line.
//
// Subcommands: classes, chars, galois-classes, galois-irr, table, product,
// coproduct, cuspidals, decompose, verify, oracle, admissible-d.
// Exit codes: 0 success, 1 usage/invalid input, 2 capacity, 3 falsification.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "galchar/galois.hpp"
#include "galchar/json_io.hpp"

using namespace galchar;

namespace {

void emit(const Json& doc) { std::cout << doc.dump(2) << "\n"; }

std::string csv_field(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string orbit_label(const GaloisOrbit& o) {
    std::string out;
    for (const auto& m : o.members) {
        if (!out.empty()) out += " | ";
        out += param_to_string(m);
    }
    return out;
}

void require_json_format(const std::string& format) {
    if (format != "json")
        throw invalid_input_error("unsupported format '" + format + "' for this payload");
}

// (galois) character table document: rows = character orbits, columns = class
// orbits, entries = orbit-sum values
Json table_document(int n, std::int64_t q, std::int64_t d) {
    auto classes = galois_classes(n, q, d);
    auto chars = galois_irr_indices(n, q, d);
    Json jclasses = Json::array(), jchars = Json::array(), values = Json::array();
    for (const auto& o : classes) jclasses.push_back(to_json(o));
    for (const auto& o : chars) jchars.push_back(to_json(o));
    for (const auto& corbit : chars) {
        Json row = Json::array();
        for (const auto& block : classes)
            row.push_back(to_json(orbit_char_value(corbit, block.members.front(), q)));
        values.push_back(std::move(row));
    }
    return Json{{"n", n}, {"q", q}, {"d", d},
                {"classes", jclasses}, {"characters", jchars}, {"values", values}};
}

void emit_table_csv(int n, std::int64_t q, std::int64_t d) {
    auto classes = galois_classes(n, q, d);
    auto chars = galois_irr_indices(n, q, d);
    std::string header = csv_field("character");
    for (const auto& block : classes) header += "," + csv_field(orbit_label(block));
    std::cout << header << "\n";
    for (const auto& corbit : chars) {
        std::string row = csv_field(orbit_label(corbit));
        for (const auto& block : classes)
            row += "," + csv_field(cyc_to_string(orbit_char_value(corbit, block.members.front(), q)));
        std::cout << row << "\n";
    }
}

PartitionFn parse_theta_param(const std::string& text, std::int64_t q) {
    Json j = Json::parse(text, nullptr, false);
    if (j.is_discarded()) throw invalid_input_error("malformed JSON parameter: " + text);
    return param_from_json(j, Side::Theta, q);
}

Json read_input_document(const std::string& path) {
    Json doc;
    if (path == "-") {
        std::stringstream buf;
        buf << std::cin.rdbuf();
        doc = Json::parse(buf.str(), nullptr, false);
    } else {
        std::ifstream in(path);
        if (!in) throw invalid_input_error("cannot open input file: " + path);
        std::stringstream buf;
        buf << in.rdbuf();
        doc = Json::parse(buf.str(), nullptr, false);
    }
    if (doc.is_discarded()) throw invalid_input_error("malformed JSON input");
    return doc;
}

Json decompose_coefficients(const ClassFunction& cf, std::int64_t d) {
    Json out = Json::array();
    for (const auto& [orbit, c] : decompose_galois_character(cf, d))
        out.push_back(Json{{"orbit", to_json(orbit)}, {"coeff", to_json(c)}});
    return out;
}

std::string resolve_cache_dir(const std::string& flag_value) {
    if (!flag_value.empty()) return flag_value;
    const char* env = std::getenv("GALCHAR_CACHE_DIR");
    return env ? std::string(env) : std::string();
}

OracleTable oracle_table_cached(int n, std::int64_t q, const std::string& cache_dir) {
    std::filesystem::path file;
    if (!cache_dir.empty()) {
        file = std::filesystem::path(cache_dir) /
               ("oracle_n" + std::to_string(n) + "_q" + std::to_string(q) + ".json");
        if (std::filesystem::exists(file)) {
            std::ifstream in(file);
            std::stringstream buf;
            buf << in.rdbuf();
            Json doc = Json::parse(buf.str(), nullptr, false);
            if (!doc.is_discarded() && doc.contains("format_version") &&
                doc.at("format_version").get<int>() == kOracleFormatVersion)
                return oracle_table_from_json(doc);
        }
    }
    MatrixGroup G(n, q);
    OracleTable t = character_table(G);
    match_params(t, G);
    if (!cache_dir.empty()) {
        std::filesystem::create_directories(file.parent_path());
        std::ofstream out(file);
        out << to_json(t).dump(2) << "\n";
    }
    return t;
}

// oracle cross-check used by `verify --checks oracle`: table + parameter
// matching + power-map orbits against the parameter-side Galois theory
bool oracle_check(int n, std::int64_t q, std::int64_t d, const std::string& cache_dir) {
    OracleTable t = oracle_table_cached(n, q, cache_dir);
    PowerMapOrbits orb = power_map_orbits(t, d);
    auto as_sets = [](const std::vector<std::vector<std::size_t>>& blocks,
                      const std::vector<PartitionFn>& params) {
        std::set<std::set<PartitionFn>> out;
        for (const auto& block : blocks) {
            std::set<PartitionFn> s;
            for (std::size_t i : block) s.insert(params[i]);
            out.insert(std::move(s));
        }
        return out;
    };
    std::set<std::set<PartitionFn>> predicted_classes, predicted_chars;
    for (const auto& o : galois_classes(n, q, d))
        predicted_classes.insert(std::set<PartitionFn>(o.members.begin(), o.members.end()));
    for (const auto& o : galois_irr_indices(n, q, d))
        predicted_chars.insert(std::set<PartitionFn>(o.members.begin(), o.members.end()));
    return as_sets(orb.class_blocks, t.class_params) == predicted_classes &&
           as_sets(orb.char_blocks, t.char_params) == predicted_chars;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"d-Galois supercharacter theories of GL_n(F_q)"};
    app.require_subcommand(1);

    int n = 1, n_max = 1;
    std::int64_t q = 2, d = 1;
    std::string format = "json";
    std::string cache_dir_flag;
    std::string checks = "axioms,selfdual,positivity,oracle";
    std::string left_text, right_text, arg_text;
    std::string input_path = "-";
    std::uint64_t seed = 0; // all engines are deterministic; accepted for interface stability

    auto add_common = [&](CLI::App* sub, bool with_n, bool with_d) {
        if (with_n) sub->add_option("--n", n, "matrix size n")->required();
        sub->add_option("--q", q, "field size q (prime power)")->required();
        if (with_d) sub->add_option("--d", d, "Galois parameter d (default 1)");
        sub->add_option("--format", format, "output format: json (csv for tables only)");
        sub->add_option("--seed", seed, "seed accepted for reproducibility; engines are deterministic");
        sub->add_option("--cache-dir", cache_dir_flag,
                        "cache directory (or env GALCHAR_CACHE_DIR)");
    };

    auto* cmd_classes = app.add_subcommand("classes", "conjugacy class parameters of GL_n(F_q)");
    add_common(cmd_classes, true, false);
    auto* cmd_chars = app.add_subcommand("chars", "irreducible character parameters of GL_n(F_q)");
    add_common(cmd_chars, true, false);
    auto* cmd_gclasses = app.add_subcommand("galois-classes", "d-Galois class orbit blocks");
    add_common(cmd_gclasses, true, true);
    auto* cmd_girr = app.add_subcommand("galois-irr", "d-Galois irreducible orbit blocks");
    add_common(cmd_girr, true, true);
    auto* cmd_table = app.add_subcommand("table", "d-Galois character table");
    add_common(cmd_table, true, true);
    auto* cmd_product = app.add_subcommand("product", "product of two character labels in the Schur basis");
    add_common(cmd_product, false, false);
    cmd_product->add_option("--left", left_text, "left character parameter (JSON)")->required();
    cmd_product->add_option("--right", right_text, "right character parameter (JSON)")->required();
    auto* cmd_coproduct = app.add_subcommand("coproduct", "coproduct of a character label");
    add_common(cmd_coproduct, false, false);
    cmd_coproduct->add_option("--arg", arg_text, "character parameter (JSON)")->required();
    auto* cmd_cuspidals = app.add_subcommand("cuspidals", "d-Galois cuspidal basis elements");
    add_common(cmd_cuspidals, true, true);
    auto* cmd_decompose =
        app.add_subcommand("decompose", "decompose class functions over d-Galois irreducibles");
    cmd_decompose->add_option("input", input_path, "JSON input file, '-' for stdin");
    cmd_decompose->add_option("--format", format, "output format: json");
    auto* cmd_verify = app.add_subcommand("verify", "run verification checks");
    cmd_verify->add_option("--n-max", n_max, "maximum degree")->required();
    cmd_verify->add_option("--q", q, "field size q")->required();
    cmd_verify->add_option("--d", d, "Galois parameter d (default 1)");
    cmd_verify->add_option("--checks", checks, "comma list: axioms,selfdual,positivity,oracle");
    cmd_verify->add_option("--format", format, "output format: json");
    cmd_verify->add_option("--seed", seed, "seed accepted for reproducibility");
    cmd_verify->add_option("--cache-dir", cache_dir_flag, "cache directory");
    auto* cmd_oracle = app.add_subcommand("oracle", "brute-force character table of GL_n(F_q)");
    add_common(cmd_oracle, true, true);
    auto* cmd_admissible = app.add_subcommand("admissible-d", "admissible d values for the tower");
    cmd_admissible->add_option("--q", q, "field size q")->required();
    cmd_admissible->add_option("--n-max", n_max, "maximum degree")->required();
    cmd_admissible->add_option("--format", format, "output format: json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        std::cerr << Json{{"error", {{"type", "usage"}, {"message", e.what()}}}}.dump() << "\n";
        return 1;
    }

    try {
        if (*cmd_classes || *cmd_chars) {
            require_json_format(format);
            Side side = *cmd_classes ? Side::Phi : Side::Theta;
            Json out = Json::array();
            for (const auto& p : enumerate_params(n, q, side)) out.push_back(to_json(p));
            emit(out);
        } else if (*cmd_gclasses || *cmd_girr) {
            require_json_format(format);
            auto orbits = *cmd_gclasses ? galois_classes(n, q, d) : galois_irr_indices(n, q, d);
            Json out = Json::array();
            for (const auto& o : orbits) out.push_back(to_json(o));
            emit(out);
        } else if (*cmd_table) {
            if (format == "csv")
                emit_table_csv(n, q, d);
            else {
                require_json_format(format);
                emit(table_document(n, q, d));
            }
        } else if (*cmd_product) {
            require_json_format(format);
            PartitionFn a = parse_theta_param(left_text, q);
            PartitionFn b = parse_theta_param(right_text, q);
            SymElement prod =
                multiply(schur_in_power_sums(a), schur_in_power_sums(b), q);
            Json out = Json::array();
            for (const auto& gamma : enumerate_params(a.weight() + b.weight(), q, Side::Theta)) {
                CycNumber c = pairing(prod, schur_in_power_sums(gamma), q);
                if (!c.is_zero())
                    out.push_back(Json{{"param", to_json(gamma)}, {"coeff", to_json(c)}});
            }
            emit(out);
        } else if (*cmd_coproduct) {
            require_json_format(format);
            PartitionFn lam = parse_theta_param(arg_text, q);
            SymTensor delta = comultiply(schur_in_power_sums(lam), q);
            Json out = Json::array();
            int w = lam.weight();
            auto params_at = [&](int k) {
                if (k > 0) return enumerate_params(k, q, Side::Theta);
                PartitionFn unit;
                unit.side = Side::Theta;
                return std::vector<PartitionFn>{unit};
            };
            for (int k = 0; k <= w; ++k)
                for (const auto& mu : params_at(k))
                    for (const auto& nu : params_at(w - k)) {
                        SymElement smu = schur_in_power_sums(mu), snu = schur_in_power_sums(nu);
                        CycNumber c(0);
                        for (const auto& [lr, coeff] : delta.coeffs) {
                            SymElement l, r;
                            l.add(lr.first, CycNumber(1));
                            r.add(lr.second, CycNumber(1));
                            c += coeff * pairing(l, smu, q) * pairing(r, snu, q);
                        }
                        if (!c.is_zero())
                            out.push_back(Json{{"left", to_json(mu)},
                                               {"right", to_json(nu)},
                                               {"coeff", to_json(c)}});
                    }
            emit(out);
        } else if (*cmd_cuspidals) {
            require_json_format(format);
            Json out = Json::array();
            for (const auto& e : galois_cuspidals(n, q, d))
                out.push_back(Json{{"degree", e.degree},
                                   {"norm_square", e.norm_square},
                                   {"orbit", to_json(e.orbit)}});
            emit(out);
        } else if (*cmd_decompose) {
            require_json_format(format);
            Json doc = read_input_document(input_path);
            int dn = doc.at("n").get<int>();
            std::int64_t dq = doc.at("q").get<std::int64_t>();
            std::int64_t dd = doc.contains("d") ? doc.at("d").get<std::int64_t>() : 1;
            if (doc.contains("characters") && doc.contains("values")) {
                // table document: decompose every character row
                Json rows = Json::array();
                for (const auto& row : doc.at("values")) {
                    ClassFunction cf{dn, dq, {}};
                    std::size_t col = 0;
                    for (const auto& block : doc.at("classes")) {
                        CycNumber v = cyc_from_json(row.at(col++));
                        for (const auto& member : block)
                            cf.values.emplace(param_from_json(member, Side::Phi, dq), v);
                    }
                    rows.push_back(decompose_coefficients(cf, dd));
                }
                emit(Json{{"n", dn}, {"q", dq}, {"d", dd}, {"rows", rows}});
            } else {
                ClassFunction cf{dn, dq, {}};
                for (const auto& entry : doc.at("values"))
                    cf.values.emplace(param_from_json(entry.at("class"), Side::Phi, dq),
                                      cyc_from_json(entry.at("value")));
                emit(Json{{"n", dn}, {"q", dq}, {"d", dd},
                          {"coefficients", decompose_coefficients(cf, dd)}});
            }
        } else if (*cmd_verify) {
            require_json_format(format);
            std::string cache_dir = resolve_cache_dir(cache_dir_flag);
            std::set<std::string> wanted;
            std::stringstream ss(checks);
            for (std::string item; std::getline(ss, item, ',');)
                if (!item.empty()) wanted.insert(item);
            for (const auto& w : wanted)
                if (w != "axioms" && w != "selfdual" && w != "positivity" && w != "oracle")
                    throw invalid_input_error("unknown check: " + w);
            Json report{{"q", q}, {"d", d}, {"n_max", n_max}};
            Json jchecks = Json::object();
            bool all_pass = true;
            if (wanted.count("axioms")) {
                int violations = 0;
                Json cases = Json::array();
                for (int k = 1; k <= n_max; ++k) {
                    int v = sct_axioms_check(k, q, d);
                    violations += v;
                    cases.push_back(Json{{"n", k}, {"violations", v}});
                }
                jchecks["axioms"] = Json{{"status", violations == 0 ? "pass" : "fail"},
                                         {"violations", violations}, {"cases", cases}};
                all_pass = all_pass && violations == 0;
            }
            if (wanted.count("selfdual")) {
                int v = self_duality_check(n_max, q, d);
                jchecks["selfdual"] = Json{{"status", v == 0 ? "pass" : "fail"}, {"violations", v}};
                all_pass = all_pass && v == 0;
            }
            if (wanted.count("positivity")) {
                int v = positivity_check(n_max, q, d);
                jchecks["positivity"] =
                    Json{{"status", v == 0 ? "pass" : "fail"}, {"violations", v}};
                all_pass = all_pass && v == 0;
            }
            if (wanted.count("oracle")) {
                Json cases = Json::array();
                bool pass = true;
                for (int k = 1; k <= n_max; ++k) {
                    if (gl_order(k, q) > 10'000) {
                        cases.push_back(Json{{"n", k}, {"status", "skipped (capacity)"}});
                        continue;
                    }
                    bool ok = oracle_check(k, q, d, cache_dir);
                    pass = pass && ok;
                    cases.push_back(Json{{"n", k}, {"status", ok ? "pass" : "fail"}});
                }
                jchecks["oracle"] = Json{{"status", pass ? "pass" : "fail"}, {"cases", cases}};
                all_pass = all_pass && pass;
            }
            report["checks"] = jchecks;
            report["status"] = all_pass ? "pass" : "fail";
            emit(report);
            if (!all_pass) return 3;
        } else if (*cmd_oracle) {
            require_json_format(format);
            std::string cache_dir = resolve_cache_dir(cache_dir_flag);
            OracleTable t = oracle_table_cached(n, q, cache_dir);
            Json out{{"table", to_json(t)}};
            PowerMapOrbits orb = power_map_orbits(t, d);
            Json cblocks = Json::array(), hblocks = Json::array();
            for (const auto& b : orb.class_blocks) cblocks.push_back(b);
            for (const auto& b : orb.char_blocks) hblocks.push_back(b);
            out["orbits"] = Json{{"d", d}, {"class_blocks", cblocks}, {"char_blocks", hblocks}};
            emit(out);
        } else if (*cmd_admissible) {
            require_json_format(format);
            Json out = Json::array();
            for (const auto& v : admissible_d(q, n_max)) {
                if (v <= Int(INT64_MAX))
                    out.push_back(static_cast<std::int64_t>(v));
                else
                    out.push_back(v.str());
            }
            emit(out);
        }
    } catch (const capacity_error& e) {
        std::cerr << Json{{"error", {{"type", "capacity"}, {"message", e.what()}}}}.dump() << "\n";
        return 2;
    } catch (const falsification_error& e) {
        std::cerr << Json{{"error", {{"type", "falsification"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << Json{{"error", {{"type", "invalid-input"}, {"message", e.what()}}}}.dump()
                  << "\n";
        return 1;
    }
    return 0;
}
