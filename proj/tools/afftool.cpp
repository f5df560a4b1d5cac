#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>

#include "afftool/expr.hpp"
#include "afftool/verifier.hpp"

using namespace afftool;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolations = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;

struct ElementOpts {
    u64 p = 0;
    u64 d = 0;
    std::string h;
    std::string t = "0";
};

void add_element_opts(CLI::App* cmd, ElementOpts& o, bool need_h = true) {
    cmd->set_help_flag("--help", "print help");  // frees -h for the element option
    cmd->add_option("--p", o.p, "field characteristic (prime)")->required();
    cmd->add_option("--d", o.d, "dimension; inferred from --h when omitted");
    auto* hopt = cmd->add_option("--h", o.h, "linear part: J/S/I atoms, '+' direct sum, '*' tensor, matrix literals");
    if (need_h) hopt->required();
    cmd->add_option("--t", o.t, "translation: 0 | eN | comma list");
}

AffineMap build_element(const ElementOpts& o) {
    if (!is_prime_u64(o.p)) throw std::invalid_argument("--p must be prime");
    auto ast = parse_element(o.h, u32(o.p));
    Matrix h = eval_element(*ast, u32(o.p));
    if (o.d && h.rows != o.d)
        throw std::invalid_argument("dimension mismatch: --d=" + std::to_string(o.d) +
                                    " but expression evaluates to d=" + std::to_string(h.rows));
    Vec v = parse_vec(o.t, u32(o.p), h.rows);
    return make_affine(std::move(h), std::move(v));
}

u64 orbit_cap(u64 flag_value) {
    if (flag_value) return flag_value;
    if (const char* env = std::getenv("AFFTOOL_MAX_SPACE")) {
        u64 v = std::strtoull(env, nullptr, 10);
        if (v) return v;
    }
    return kOrbitSpaceCap;
}

json hit_json(const MatchHit& h) {
    json j;
    j["line"] = line_to_string(h.line);
    j["binding"] = binding_to_string(h.binding);
    return j;
}

Binding parse_binding(const std::string& text) {
    Binding b;
    std::size_t i = 0;
    auto list_of = [&](const std::string& val) {
        std::vector<u32> out;
        std::size_t k = 0;
        while (k < val.size()) {
            std::size_t e = val.find(',', k);
            if (e == std::string::npos) e = val.size();
            out.push_back(u32(std::stoul(val.substr(k, e - k))));
            k = e + 1;
        }
        return out;
    };
    while (i < text.size()) {
        std::size_t e = text.find(';', i);
        if (e == std::string::npos) e = text.size();
        std::string kv = text.substr(i, e - i);
        i = e + 1;
        if (kv.empty()) continue;
        std::size_t eq = kv.find('=');
        if (eq == std::string::npos) throw std::invalid_argument("bad binding item: " + kv);
        std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
        if (key == "i")
            b.i = std::stoull(val);
        else if (key == "dims")
            b.dims = list_of(val);
        else if (key == "a")
            b.a = u32(std::stoul(val));
        else if (key == "a1")
            b.a1 = u32(std::stoul(val));
        else if (key == "a2")
            b.a2 = u32(std::stoul(val));
        else if (key == "h") {
            auto id = parse_line_id(val);
            if (!id) throw std::invalid_argument("bad sub-line id: " + val);
            b.sub_line = *id;
        } else if (key == "h.dims")
            b.sub_dims = list_of(val);
        else if (key == "variant")
            b.variant = u32(std::stoul(val));
        else
            throw std::invalid_argument("unknown binding key: " + key);
    }
    return b;
}

std::string cycles_text(const std::vector<u64>& lengths) {
    std::string s;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(lengths[i]);
    }
    return s;
}

void emit(const std::string& out_file, const std::string& payload) {
    if (out_file.empty()) {
        std::cout << payload << "\n";
    } else {
        std::ofstream f(out_file);
        f << payload << "\n";
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"affine transformations of F_p^d: orders, cycles, classification tables, exhaustive verification"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format: text|json|tsv")->capture_default_str();

    // ---- order ----
    ElementOpts ord_opts;
    auto* cmd_order = app.add_subcommand("order", "order of g = t_v h");
    add_element_opts(cmd_order, ord_opts);

    // ---- cycles ----
    ElementOpts cyc_opts;
    u64 cyc_cap = 0;
    auto* cmd_cycles = app.add_subcommand("cycles", "cycle lengths of g on F_p^d");
    add_element_opts(cmd_cycles, cyc_opts);
    cmd_cycles->add_option("--max-space", cyc_cap, "override the orbit-space cap");

    // ---- classify ----
    ElementOpts cls_opts;
    u64 cls_cap = 0;
    auto* cmd_classify = app.add_subcommand("classify", "match g against the classification tables");
    add_element_opts(cmd_classify, cls_opts);
    cmd_classify->add_option("--max-space", cls_cap, "override the orbit-space cap");

    // ---- construct ----
    u64 con_p = 0, con_d = 0;
    std::string con_line, con_bind;
    auto* cmd_construct = app.add_subcommand("construct", "build the representative of a table line");
    cmd_construct->add_option("--p", con_p)->required();
    cmd_construct->add_option("--d", con_d)->required();
    cmd_construct->add_option("--line", con_line, "line id, e.g. T3.L12")->required();
    cmd_construct->add_option("--bind", con_bind, "binding, e.g. \"dims=2,2,3,5\" or \"i=3\"");

    // ---- catalog ----
    u64 cat_p = 0, cat_d = 0;
    std::string cat_kind = "orders", cat_out;
    auto* cmd_catalog = app.add_subcommand("catalog", "all lines and admissible bindings at (p, d)");
    cmd_catalog->add_option("--p", cat_p)->required();
    cmd_catalog->add_option("--d", cat_d)->required();
    cmd_catalog->add_option("--kind", cat_kind, "orders|cycles")->capture_default_str();
    cmd_catalog->add_option("--out", cat_out, "write to file instead of stdout");

    // ---- verify-orders / verify-cycles ----
    struct VerifyOpts {
        u64 p = 0, d = 0;
        u64 workers = 1;
        std::string shard = "0/1";
        std::string out;
        bool no_timing = false;
        u64 cap = 0;
    };
    VerifyOpts vo_orders, vo_cycles;
    auto add_verify_opts = [](CLI::App* cmd, VerifyOpts& vo, bool with_cap) {
        cmd->add_option("--p", vo.p, "cell characteristic; omit with --d to run the default grid");
        cmd->add_option("--d", vo.d, "cell dimension");
        cmd->add_option("--workers", vo.workers, "worker threads")->capture_default_str();
        cmd->add_option("--shard", vo.shard, "i/n class-range shard")->capture_default_str();
        cmd->add_option("--out", vo.out, "write the JSON report to a file");
        cmd->add_flag("--no-timing", vo.no_timing, "omit the timing field");
        if (with_cap) cmd->add_option("--max-space", vo.cap, "override the orbit-space cap");
    };
    auto* cmd_vorders = app.add_subcommand("verify-orders", "exhaustive large-order containment sweep");
    add_verify_opts(cmd_vorders, vo_orders, false);
    auto* cmd_vcycles = app.add_subcommand("verify-cycles", "exhaustive <=4-cycle containment sweep");
    add_verify_opts(cmd_vcycles, vo_cycles, true);

    // ---- properties ----
    u64 prop_p = 0, prop_d = 0, prop_samples = 1000, prop_seed = 42;
    auto* cmd_props = app.add_subcommand("properties", "order/cycle lemma suites on seeded samples");
    cmd_props->add_option("--p", prop_p)->required();
    cmd_props->add_option("--d", prop_d)->required();
    cmd_props->add_option("--samples", prop_samples)->capture_default_str();
    cmd_props->add_option("--seed", prop_seed)->capture_default_str();

    // ---- meo ----
    u64 meo_p = 0, meo_d = 0;
    auto* cmd_meo = app.add_subcommand("meo", "maximum element order over GL_d(p) and SL_d(p) class reps");
    cmd_meo->add_option("--p", meo_p)->required();
    cmd_meo->add_option("--d", meo_d)->required();

    // ---- report-merge ----
    std::vector<std::string> merge_files;
    std::string merge_out;
    bool merge_no_timing = false;
    auto* cmd_merge = app.add_subcommand("report-merge", "merge shard reports into one");
    cmd_merge->add_option("files", merge_files, "shard report files")->required();
    cmd_merge->add_option("--out", merge_out, "output file");
    cmd_merge->add_flag("--no-timing", merge_no_timing);

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();  // allow --format after the subcommand

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*cmd_order) {
            AffineMap g = build_element(ord_opts);
            AffineOrder ao = affine_order(g);
            if (format == "json") {
                json j;
                j["order"] = ao.order;
                j["k"] = ao.profile.k;
                j["delta"] = ao.profile.delta;
                j["k_p"] = ao.profile.k_p;
                j["a"] = ao.profile.a;
                j["c"] = ao.profile.c;
                j["t"] = ao.profile.t;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << ao.order << "\n";
            }
            return kExitOk;
        }
        if (*cmd_cycles) {
            AffineMap g = build_element(cyc_opts);
            CycleStructure cs = cycle_structure(g, orbit_cap(cyc_cap));
            if (format == "json") {
                json j;
                j["lengths"] = cs.lengths;
                j["count"] = cs.count;
                std::cout << j.dump(2) << "\n";
            } else if (format == "tsv") {
                for (u64 l : cs.lengths) std::cout << l << "\t";
                std::cout << "\n";
            } else {
                std::cout << cycles_text(cs.lengths) << "\n";
            }
            return kExitOk;
        }
        if (*cmd_classify) {
            AffineMap g = build_element(cls_opts);
            u64 cap = orbit_cap(cls_cap);
            AffineOrder ao = affine_order(g);
            MatchResult mo = match(g, TableKind::orders);
            json j;
            j["p"] = g.p();
            j["d"] = g.d();
            j["order"] = ao.order;
            j["delta"] = ao.profile.delta;
            j["threshold_met"] = mo.threshold_met;
            j["orders"] = json::array();
            for (const auto& h : mo.matched) j["orders"].push_back(hit_json(h));
            u64 space = ipow(u32(g.p()), g.d());
            if (space <= cap) {
                MatchResult mc = match(g, TableKind::cycles, cap);
                CycleStructure cs = cycle_structure(g, cap);
                j["cycle_lengths"] = cs.lengths;
                j["cycles"] = json::array();
                for (const auto& h : mc.matched) j["cycles"].push_back(hit_json(h));
                j["cycle_match"] = mc.cycle_match;
            }
            if (format == "json") {
                std::cout << j.dump(2) << "\n";
            } else {
                if (mo.matched.empty()) std::cout << "orders: no matching line\n";
                for (const auto& h : mo.matched)
                    std::cout << "orders: " << line_to_string(h.line)
                              << (binding_to_string(h.binding).empty()
                                      ? ""
                                      : " (" + binding_to_string(h.binding) + ")")
                              << "\n";
                if (j.contains("cycles"))
                    for (const auto& hj : j["cycles"])
                        std::cout << "cycles: " << hj["line"].get<std::string>()
                                  << (hj["binding"].get<std::string>().empty()
                                          ? ""
                                          : " (" + hj["binding"].get<std::string>() + ")")
                                  << "\n";
                std::cout << "order=" << ao.order << " threshold_met=" << (mo.threshold_met ? "true" : "false")
                          << "\n";
            }
            return kExitOk;
        }
        if (*cmd_construct) {
            auto id = parse_line_id(con_line);
            if (!id) throw std::invalid_argument("bad line id: " + con_line);
            Binding b = parse_binding(con_bind);
            // the line must be applicable at (p, d) with this binding
            TableKind kind = id->table >= 5 ? TableKind::cycles : TableKind::orders;
            bool admissible = false;
            for (const auto& e : catalog(u32(con_p), u32(con_d), kind))
                if (e.line == *id && e.binding == b) admissible = true;
            if (!admissible)
                throw std::invalid_argument("inadmissible binding for " + line_to_string(*id) +
                                            " at p=" + std::to_string(con_p) +
                                            " d=" + std::to_string(con_d));
            AffineMap g = instantiate(u32(con_p), u32(con_d), *id, b);
            AffineOrder ao = affine_order(g);
            json j;
            j["line"] = line_to_string(*id);
            j["binding"] = binding_to_string(b);
            j["h"] = matrix_to_string(g.h);
            j["v"] = vec_to_string(g.v);
            j["order"] = ao.order;
            j["formula_order"] = order_formula(u32(con_p), u32(con_d), *id, b);
            if (id->table >= 5) j["predicted_cycles"] = predicted_cycles(u32(con_p), u32(con_d), *id, b);
            if (format == "json") {
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "h=" << j["h"].get<std::string>() << " v=" << j["v"].get<std::string>()
                          << " order=" << ao.order << "\n";
            }
            return kExitOk;
        }
        if (*cmd_catalog) {
            TableKind kind = cat_kind == "cycles" ? TableKind::cycles : TableKind::orders;
            if (cat_kind != "cycles" && cat_kind != "orders")
                throw std::invalid_argument("--kind must be orders or cycles");
            auto entries = catalog(u32(cat_p), u32(cat_d), kind);
            if (format == "tsv") {
                std::string payload;
                for (const auto& e : entries) {
                    payload += line_to_string(e.line) + "\t" + binding_to_string(e.binding) + "\t" +
                               std::to_string(e.order) + "\t" + (e.delta ? "p|h|" : "|h|");
                    if (kind == TableKind::cycles) payload += "\t" + cycles_text(e.cycles);
                    payload += "\n";
                }
                if (!payload.empty()) payload.pop_back();
                emit(cat_out, payload);
            } else {
                json j;
                j["schema_version"] = 1;
                j["p"] = cat_p;
                j["d"] = cat_d;
                j["kind"] = cat_kind;
                j["entries"] = json::array();
                for (const auto& e : entries) {
                    json ej;
                    ej["line"] = line_to_string(e.line);
                    ej["binding"] = binding_to_string(e.binding);
                    ej["order"] = e.order;
                    ej["delta"] = e.delta;
                    if (kind == TableKind::cycles) ej["cycles"] = e.cycles;
                    j["entries"].push_back(ej);
                }
                emit(cat_out, j.dump(2));
            }
            return kExitOk;
        }
        auto parse_shard = [](const std::string& s) {
            auto slash = s.find('/');
            if (slash == std::string::npos) throw std::invalid_argument("--shard must be i/n");
            u32 i = u32(std::stoul(s.substr(0, slash)));
            u32 n = u32(std::stoul(s.substr(slash + 1)));
            if (n == 0 || i >= n) throw std::invalid_argument("--shard must satisfy 0 <= i < n");
            return std::pair<u32, u32>{i, n};
        };
        auto run_verify = [&](const VerifyOpts& vo, bool cycles_kind) {
            auto [si, sn] = parse_shard(vo.shard);
            std::vector<GridCell> cells;
            if (vo.p && vo.d) {
                cells.push_back({u32(vo.p), u32(vo.d)});
            } else if (!vo.p && !vo.d) {
                cells = cycles_kind ? default_cycles_grid() : default_orders_grid();
            } else {
                throw std::invalid_argument("give both --p and --d, or neither (default grid)");
            }
            bool any_violation = false;
            std::vector<std::string> payloads;
            for (auto cell : cells) {
                VerificationReport rep =
                    cycles_kind ? verify_cycles(cell.p, cell.d, si, sn, u32(vo.workers),
                                                orbit_cap(vo.cap))
                                : verify_orders(cell.p, cell.d, si, sn, u32(vo.workers));
                any_violation |= !rep.ok();
                if (format == "json" || !vo.out.empty()) {
                    payloads.push_back(report_to_json(rep, !vo.no_timing));
                } else {
                    std::cout << rep.kind << " p=" << rep.p << " d=" << rep.d
                              << " classes=" << rep.classes_checked
                              << " elements=" << rep.elements_checked
                              << " violations=" << rep.violations.size()
                              << " informative=" << rep.informative.size() << "\n";
                }
            }
            if (!payloads.empty()) {
                std::string joined;
                if (payloads.size() == 1) {
                    joined = payloads[0];
                } else {
                    joined = "[";
                    for (std::size_t k = 0; k < payloads.size(); ++k) {
                        if (k) joined += ",";
                        joined += "\n" + payloads[k];
                    }
                    joined += "\n]";
                }
                emit(vo.out, joined);
            }
            return any_violation ? kExitViolations : kExitOk;
        };
        if (*cmd_vorders) return run_verify(vo_orders, false);
        if (*cmd_vcycles) return run_verify(vo_cycles, true);
        if (*cmd_props) {
            LemmaReport rep = verify_lemmas(u32(prop_p), u32(prop_d), u32(prop_samples), prop_seed);
            if (format == "json") {
                std::cout << lemma_report_to_json(rep) << "\n";
            } else {
                for (const auto& c : rep.checks) {
                    std::cout << (c.failures ? "FAIL " : "pass ") << c.name << " (" << c.checks
                              << " checks)";
                    if (c.failures) std::cout << " witness: " << c.witness;
                    std::cout << "\n";
                }
            }
            return rep.ok() ? kExitOk : kExitViolations;
        }
        if (*cmd_meo) {
            MeoResult r = meo_scan(u32(meo_p), u32(meo_d));
            u64 want_gl = ipow(u32(meo_p), u32(meo_d)) - 1;
            u64 want_sl = want_gl / (meo_p - 1);
            if (format == "json") {
                json j;
                j["meo_gl"] = r.meo_gl;
                j["meo_sl"] = r.meo_sl;
                j["expected_gl"] = want_gl;
                j["expected_sl"] = want_sl;
                std::cout << j.dump(2) << "\n";
            } else {
                std::cout << "meo_gl=" << r.meo_gl << " meo_sl=" << r.meo_sl << "\n";
            }
            return (r.meo_gl == want_gl && r.meo_sl == want_sl) ? kExitOk : kExitViolations;
        }
        if (*cmd_merge) {
            std::vector<VerificationReport> parts;
            for (const auto& f : merge_files) {
                std::ifstream in(f);
                if (!in) throw std::invalid_argument("cannot read " + f);
                std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
                parts.push_back(report_from_json(text));
            }
            VerificationReport merged = merge_reports(std::move(parts));
            emit(merge_out, report_to_json(merged, !merge_no_timing));
            return merged.ok() ? kExitOk : kExitViolations;
        }
    } catch (const cap_exceeded& e) {
        std::cerr << "cap exceeded: " << e.what() << "\n";
        return kExitCap;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
