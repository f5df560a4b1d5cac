#include "afftool/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <random>
#include <set>
#include <thread>

#include <json.hpp>

namespace afftool {

using nlohmann::json;

namespace {

struct ClassSweep {
    std::vector<Violation> violations;
    std::vector<std::string> matched;
    u64 elements = 0;
    u64 non_examples = 0;
};

// witness check that the formula order of the representative is exact
void check_order_witness(const Matrix& h, u64 k, u64 class_index, std::vector<Violation>& out,
                         const std::string& inv_str) {
    bool ok = mat_pow(h, k).is_identity();
    if (ok)
        for (auto [q, m] : factor_u64(k)) {
            (void)m;
            if (mat_pow(h, k / q).is_identity()) ok = false;
        }
    if (!ok)
        out.push_back({"internal", class_index, inv_str, "", k, 0, "", "order witness failed"});
}

// enumerate translations u supported on the (x-1)-block coordinates
template <typename F>
void for_each_u(u32 p, u32 d, const std::vector<u32>& ucoords, F&& fn) {
    u64 n = 1;
    for (std::size_t i = 0; i < ucoords.size(); ++i) n *= p;
    Vec u(d, 0);
    for (u64 idx = 0; idx < n; ++idx) {
        u64 t = idx;
        for (u32 c : ucoords) {
            u[c] = u32(t % p);
            t /= p;
        }
        fn(const_cast<const Vec&>(u));
    }
}

template <typename PerClass>
void run_sharded(const std::vector<ClassInvariant>& classes, u32 shard_index, u32 shard_count,
                 u32 workers, std::vector<ClassSweep>& results, PerClass&& per_class) {
    std::vector<u64> owned;
    for (u64 i = 0; i < classes.size(); ++i)
        if (i % shard_count == shard_index) owned.push_back(i);
    results.assign(owned.size(), {});
    if (workers < 1) workers = 1;
    std::atomic<std::size_t> next{0};
    auto work = [&] {
        while (true) {
            std::size_t slot = next.fetch_add(1);
            if (slot >= owned.size()) break;
            results[slot] = per_class(owned[slot], classes[owned[slot]]);
        }
    };
    if (workers == 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (u32 w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
}

void finish_report(VerificationReport& rep, std::vector<ClassSweep>& results,
                   std::set<std::string>& lines) {
    for (auto& r : results) {
        rep.elements_checked += r.elements;
        rep.non_examples += r.non_examples;
        for (auto& v : r.violations) rep.violations.push_back(std::move(v));
        for (auto& l : r.matched) lines.insert(l);
    }
    rep.matched_lines.assign(lines.begin(), lines.end());
}

}  // namespace

VerificationReport verify_orders(u32 p, u32 d, u32 shard_index, u32 shard_count, u32 workers) {
    auto t0 = std::chrono::steady_clock::now();
    if (shard_count == 0 || shard_index >= shard_count) throw std::invalid_argument("bad shard spec");
    u64 space = ipow_checked(p, d);
    VerificationReport rep;
    rep.p = p;
    rep.d = d;
    rep.kind = "orders";
    rep.shard_index = shard_index;
    rep.shard_count = shard_count;
    auto classes = enumerate_class_invariants(p, d);
    CatalogIndex idx = CatalogIndex::build(p, d, TableKind::orders);

    auto per_class = [&](u64 ci, const ClassInvariant& inv) {
        ClassSweep r;
        std::string inv_str = invariant_to_string(inv);
        Shape sh = shape_of(inv);
        Matrix h = rep_matrix(inv);
        u64 k = order_from_invariant(inv);
        check_order_witness(h, k, ci, r.violations, inv_str);
        Matrix hk = geometric_sum(h, k);
        std::vector<u32> ucoords = rep_unipotent_coords(inv);
        for_each_u(p, d, ucoords, [&](const Vec& u) {
            ++r.elements;
            Vec w = vec_mat(u, hk);
            int delta = vec_is_zero(w) ? 0 : 1;
            u64 order = delta ? u64(p) * k : k;
            if (4 * order >= space) {
                MatchResult m = match_shape(idx, sh, delta, order, nullptr);
                if (m.matched.empty()) {
                    r.violations.push_back(
                        {"containment", ci, inv_str, vec_to_string(u), order, 0, "", ""});
                } else {
                    for (auto& hit : m.matched) r.matched.push_back(line_to_string(hit.line));
                }
            } else {
                ++r.non_examples;
            }
        });
        std::sort(r.matched.begin(), r.matched.end());
        r.matched.erase(std::unique(r.matched.begin(), r.matched.end()), r.matched.end());
        return r;
    };

    std::vector<ClassSweep> results;
    run_sharded(classes, shard_index, shard_count, workers, results, per_class);
    rep.classes_checked = results.size();
    std::set<std::string> lines;
    finish_report(rep, results, lines);

    // catalog pass (round trip + converse); carried by shard 0 only so that
    // merged shard reports equal the unsharded one
    if (shard_index == 0) {
        for (const auto& e : idx.entries) {
            AffineMap g = instantiate(p, d, e.line, e.binding);
            AffineOrder ao = affine_order(g);
            std::string ls = line_to_string(e.line), bs = binding_to_string(e.binding);
            if (ao.order != e.order || ao.profile.delta != e.delta) {
                rep.violations.push_back(
                    {"order_formula", u64(-1), "", "", ao.order, 0, ls, bs});
                continue;
            }
            Shape sh = shape_of(class_invariant(g.h));
            MatchResult m = match_shape(idx, sh, e.delta, e.order, nullptr);
            bool found = false;
            for (auto& hit : m.matched)
                if (hit.line == e.line) found = true;
            if (!found)
                rep.violations.push_back({"roundtrip", u64(-1), "", "", e.order, 0, ls, bs});
            if (4 * e.order < space) {
                if (p == 2)
                    rep.informative.push_back({ls, bs, e.order});
                else
                    rep.violations.push_back({"converse", u64(-1), "", "", e.order, 0, ls, bs});
            }
        }
    }
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

VerificationReport verify_cycles(u32 p, u32 d, u32 shard_index, u32 shard_count, u32 workers,
                                 u64 space_cap) {
    auto t0 = std::chrono::steady_clock::now();
    if (shard_count == 0 || shard_index >= shard_count) throw std::invalid_argument("bad shard spec");
    u64 space = ipow_checked(p, d, space_cap);
    VerificationReport rep;
    rep.p = p;
    rep.d = d;
    rep.kind = "cycles";
    rep.shard_index = shard_index;
    rep.shard_count = shard_count;
    auto classes = enumerate_class_invariants(p, d);
    CatalogIndex idx = CatalogIndex::build(p, d, TableKind::cycles);

    auto per_class = [&](u64 ci, const ClassInvariant& inv) {
        ClassSweep r;
        std::string inv_str = invariant_to_string(inv);
        Shape sh = shape_of(inv);
        Matrix h = rep_matrix(inv);
        u64 k = order_from_invariant(inv);
        Matrix hk = geometric_sum(h, k);
        std::vector<u32> ucoords = rep_unipotent_coords(inv);
        for_each_u(p, d, ucoords, [&](const Vec& u) {
            ++r.elements;
            int delta = vec_is_zero(vec_mat(u, hk)) ? 0 : 1;
            u64 order = delta ? u64(p) * k : k;
            AffineMap g = make_affine(h, u);
            CycleStructure cs = cycle_structure(g, space_cap);
            if (cs.total() != space || cs.lcm() != order) {
                r.violations.push_back({"internal", ci, inv_str, vec_to_string(u), order, cs.count,
                                        "", "cycle sum/lcm invariant failed"});
                return;
            }
            if (cs.count <= 4) {
                MatchResult m = match_shape(idx, sh, delta, order, &cs.lengths);
                if (m.matched.empty()) {
                    r.violations.push_back(
                        {"containment", ci, inv_str, vec_to_string(u), order, cs.count, "", ""});
                } else {
                    for (auto& hit : m.matched) r.matched.push_back(line_to_string(hit.line));
                }
            } else {
                ++r.non_examples;
            }
        });
        std::sort(r.matched.begin(), r.matched.end());
        r.matched.erase(std::unique(r.matched.begin(), r.matched.end()), r.matched.end());
        return r;
    };

    std::vector<ClassSweep> results;
    run_sharded(classes, shard_index, shard_count, workers, results, per_class);
    rep.classes_checked = results.size();
    std::set<std::string> lines;
    finish_report(rep, results, lines);

    if (shard_index == 0) {
        for (const auto& e : idx.entries) {
            AffineMap g = instantiate(p, d, e.line, e.binding);
            AffineOrder ao = affine_order(g);
            std::string ls = line_to_string(e.line), bs = binding_to_string(e.binding);
            if (ao.order != e.order || ao.profile.delta != e.delta) {
                rep.violations.push_back({"order_formula", u64(-1), "", "", ao.order, 0, ls, bs});
                continue;
            }
            CycleStructure cs = cycle_structure(g, space_cap);
            if (cs.lengths != e.cycles) {
                rep.violations.push_back({"cycle_formula", u64(-1), "", "", e.order, cs.count, ls, bs});
                continue;
            }
            Shape sh = shape_of(class_invariant(g.h));
            MatchResult m = match_shape(idx, sh, e.delta, e.order, &cs.lengths);
            bool found = false;
            for (auto& hit : m.matched)
                if (hit.line == e.line) found = true;
            if (!found) rep.violations.push_back({"roundtrip", u64(-1), "", "", e.order, cs.count, ls, bs});
        }
    }
    rep.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return rep;
}

namespace {

bool violation_less(const Violation& a, const Violation& b) {
    auto key = [](const Violation& v) {
        return std::tie(v.class_index, v.kind, v.class_invariant, v.v, v.line, v.binding, v.order);
    };
    return key(a) < key(b);
}

}  // namespace

VerificationReport merge_reports(std::vector<VerificationReport> parts) {
    if (parts.empty()) throw std::invalid_argument("nothing to merge");
    VerificationReport out;
    out.p = parts[0].p;
    out.d = parts[0].d;
    out.kind = parts[0].kind;
    out.shard_index = 0;
    out.shard_count = 1;
    std::set<std::string> lines;
    double ms = 0;
    for (auto& r : parts) {
        if (r.p != out.p || r.d != out.d || r.kind != out.kind)
            throw std::invalid_argument("merge of mismatched reports");
        out.classes_checked += r.classes_checked;
        out.elements_checked += r.elements_checked;
        out.non_examples += r.non_examples;
        for (auto& v : r.violations) out.violations.push_back(std::move(v));
        for (auto& i : r.informative) out.informative.push_back(std::move(i));
        for (auto& l : r.matched_lines) lines.insert(l);
        ms += r.wall_ms;
    }
    out.matched_lines.assign(lines.begin(), lines.end());
    std::sort(out.violations.begin(), out.violations.end(), violation_less);
    std::sort(out.informative.begin(), out.informative.end(), [](const auto& a, const auto& b) {
        return std::tie(a.line, a.binding) < std::tie(b.line, b.binding);
    });
    out.wall_ms = ms;
    return out;
}

static json violation_to_json(const Violation& v) {
    json j;
    j["kind"] = v.kind;
    if (v.class_index != u64(-1)) j["class_index"] = v.class_index;
    if (!v.class_invariant.empty()) j["class"] = v.class_invariant;
    if (!v.v.empty()) j["v"] = v.v;
    j["order"] = v.order;
    if (v.cycle_count) j["cycles"] = v.cycle_count;
    if (!v.line.empty()) j["line"] = v.line;
    if (!v.binding.empty()) j["binding"] = v.binding;
    return j;
}

std::string report_to_json(const VerificationReport& r, bool include_timing, int indent) {
    json j;
    j["schema_version"] = 1;
    j["kind"] = r.kind;
    j["p"] = r.p;
    j["d"] = r.d;
    j["shard"] = std::to_string(r.shard_index) + "/" + std::to_string(r.shard_count);
    j["classes_checked"] = r.classes_checked;
    j["elements_checked"] = r.elements_checked;
    j["non_examples"] = r.non_examples;
    j["violations"] = json::array();
    for (const auto& v : r.violations) j["violations"].push_back(violation_to_json(v));
    j["informative"] = json::array();
    for (const auto& e : r.informative)
        j["informative"].push_back({{"line", e.line}, {"binding", e.binding}, {"order", e.order}});
    j["matched_lines"] = r.matched_lines;
    if (include_timing) j["timing"] = {{"wall_ms", r.wall_ms}};
    return j.dump(indent);
}

VerificationReport report_from_json(const std::string& text) {
    json j = json::parse(text);
    VerificationReport r;
    r.kind = j.at("kind").get<std::string>();
    r.p = j.at("p").get<u32>();
    r.d = j.at("d").get<u32>();
    std::string shard = j.at("shard").get<std::string>();
    auto slash = shard.find('/');
    r.shard_index = u32(std::stoul(shard.substr(0, slash)));
    r.shard_count = u32(std::stoul(shard.substr(slash + 1)));
    r.classes_checked = j.at("classes_checked").get<u64>();
    r.elements_checked = j.at("elements_checked").get<u64>();
    r.non_examples = j.at("non_examples").get<u64>();
    for (const auto& vj : j.at("violations")) {
        Violation v;
        v.kind = vj.at("kind").get<std::string>();
        v.class_index = vj.contains("class_index") ? vj["class_index"].get<u64>() : u64(-1);
        if (vj.contains("class")) v.class_invariant = vj["class"].get<std::string>();
        if (vj.contains("v")) v.v = vj["v"].get<std::string>();
        v.order = vj.at("order").get<u64>();
        if (vj.contains("cycles")) v.cycle_count = vj["cycles"].get<u64>();
        if (vj.contains("line")) v.line = vj["line"].get<std::string>();
        if (vj.contains("binding")) v.binding = vj["binding"].get<std::string>();
        r.violations.push_back(std::move(v));
    }
    for (const auto& ij : j.at("informative"))
        r.informative.push_back({ij.at("line").get<std::string>(), ij.at("binding").get<std::string>(),
                                 ij.at("order").get<u64>()});
    for (const auto& l : j.at("matched_lines")) r.matched_lines.push_back(l.get<std::string>());
    if (j.contains("timing")) r.wall_ms = j["timing"].value("wall_ms", 0.0);
    return r;
}

// ---------------------------------------------------------------------------
// lemma suites

namespace {

struct LemmaRun {
    LemmaReport rep;

    LemmaCheck& entry(const std::string& name) {
        for (auto& c : rep.checks)
            if (c.name == name) return c;
        rep.checks.push_back({name, 0, 0, ""});
        return rep.checks.back();
    }

    void check(const std::string& name, bool ok, const std::string& witness) {
        LemmaCheck& c = entry(name);
        ++c.checks;
        if (!ok && c.failures++ == 0) c.witness = witness;
    }
};

Matrix random_invertible(std::mt19937_64& gen, u32 p, u32 d) {
    while (true) {
        Matrix m(p, d, d);
        for (auto& x : m.a) x = u32(gen() % p);
        if (mat_rank(m) == d) return m;
    }
}

Vec random_vec(std::mt19937_64& gen, u32 p, u32 d) {
    Vec v(d);
    for (auto& x : v) x = u32(gen() % p);
    return v;
}

// direct permutation-order oracle: lcm of orbit lengths
u64 walk_order(const AffineMap& g, u64 cap) { return cycle_structure(g, cap).lcm(); }

}  // namespace

LemmaReport verify_lemmas(u32 p, u32 d, u32 samples, u64 seed, bool inject_fault) {
    u64 space = ipow_checked(p, d, u64(1) << 16);
    LemmaRun run;
    run.rep.p = p;
    run.rep.d = d;
    run.rep.samples = samples;
    run.rep.seed = seed;
    std::mt19937_64 gen(seed * 1000003 + p * 101 + d);

    // Lemma: unipotent orders; both directions of the equality condition
    for (const auto& lambda : partitions_of(d)) {
        std::vector<Matrix> parts;
        for (u32 b : lambda) parts.push_back(jordan_block(p, b));
        Matrix u = direct_sum(p, parts);
        u64 o = order_of(u);
        u64 bound = ipow(p, ceil_log(p, d));
        bool eq_cond = false;
        for (u32 b : lambda)
            if (ceil_log(p, b) == ceil_log(p, d)) eq_cond = true;
        std::string w = "partition " + vec_to_string(lambda);
        run.check("unipotent_order_bound", o <= bound, w);
        run.check("unipotent_order_equality_iff", (o == bound) == eq_cond, w);
        run.check("unipotent_order_formula", o == ipow(p, ceil_log(p, lambda.front())), w);
    }

    // element stream: seeded random pairs plus all class reps x translations in U
    std::vector<AffineMap> elems;
    for (u32 s = 0; s < samples; ++s)
        elems.push_back(make_affine(random_invertible(gen, p, d), random_vec(gen, p, d)));
    for (const auto& inv : enumerate_class_invariants(p, d)) {
        Matrix h = rep_matrix(inv);
        std::vector<u32> uc = rep_unipotent_coords(inv);
        for_each_u(p, d, uc, [&](const Vec& u) { elems.push_back(make_affine(h, u)); });
    }

    for (const auto& g : elems) {
        std::string w = "h=" + matrix_to_string(g.h) + " v=" + vec_to_string(g.v);
        ClassInvariant inv = class_invariant(g.h);
        u64 k = order_from_invariant(inv);
        Matrix hk = geometric_sum(g.h, k);
        if (inject_fault) hk = mat_add(hk, Matrix::identity(p, d));  // harness sanity hook
        Vec vk = vec_mat(g.v, hk);

        // fixed-vector identity for v h(k)
        run.check("geom_sum_fixed_by_h", vec_mat(vk, g.h) == vk, w);

        // order is k or pk; doubled exactly when v h(k) != 0
        u64 oracle = walk_order(g, u64(1) << 16);
        u64 expect = vec_is_zero(vk) ? k : u64(p) * k;
        run.check("order_doubling_value", oracle == expect, w);

        AffineOrder ao = affine_order(g);
        run.check("order_matches_walk", ao.order == oracle, w);

        // doubling translation exists iff (x-1)-multiplicity in the minimal
        // polynomial equals the p-part of k, iff h(k) != 0
        {
            u64 kp = p_part(k, p);
            u64 mult = 0;
            for (const auto& b : inv.blocks)
                if (b.f.degree() == 1 && b.f.c[0] == fp_neg(p, 1)) mult = b.partition.front();
            bool exists = !geometric_sum(g.h, k).is_zero();
            run.check("doubling_exists_iff_minpoly", exists == (mult == kp), w);
            run.check("doubling_exists_api", order_doubling_exists(g.h) == exists, w);
        }

        // doubled order forces the largest (x-1) block to be exactly (k)_p
        if (ao.profile.delta == 1) {
            u64 mult = 0;
            for (const auto& b : inv.blocks)
                if (b.f.degree() == 1 && b.f.c[0] == fp_neg(p, 1)) mult = b.partition.front();
            run.check("doubled_block_is_p_part", mult == ao.profile.k_p, w);
        }

        // translation reduction: conjugates to t_u h with u in U, preserving
        // order and cycle structure; pointwise conjugacy on small spaces
        TranslationReduction red = reduce_translation(g);
        {
            PrimarySplit sp = primary_split(g.h);
            Matrix n = d ? mat_pow(mat_sub(g.h, Matrix::identity(p, d)), d) : Matrix::identity(p, 0);
            run.check("reduction_lands_in_U", d == 0 || vec_is_zero(vec_mat(red.reduced.v, n)), w);
            run.check("reduction_preserves_order", affine_order(red.reduced).order == ao.order, w);
            run.check("reduction_preserves_cycles",
                      cycle_structure(red.reduced, u64(1) << 16).lengths ==
                          cycle_structure(g, u64(1) << 16).lengths,
                      w);
            if (space <= (u64(1) << 10)) {
                bool ok = true;
                Vec x(d, 0);
                u64 n_all = space;
                for (u64 xi = 0; xi < n_all && ok; ++xi) {
                    u64 t = xi;
                    for (u32 c = 0; c < d; ++c) {
                        x[c] = u32(t % p);
                        t /= p;
                    }
                    // (x - w' + v) h + w' must equal (x + u) h
                    Vec lhs = vec_add(p, vec_mat(vec_add(p, vec_sub(p, x, red.conjugator), g.v), g.h),
                                      red.conjugator);
                    Vec rhs = red.reduced.apply(x);
                    ok = lhs == rhs;
                }
                run.check("reduction_pointwise_conjugacy", ok, w);
            }
        }

        // cycle structure invariants
        CycleStructure cs = cycle_structure(g, u64(1) << 16);
        run.check("cycle_sum_is_space", cs.total() == space, w);
        run.check("cycle_lcm_is_order", cs.lcm() == ao.order, w);

        // subspace cycle bounds on the reduced representative
        const AffineMap& gr = red.reduced;
        PrimarySplit sp = primary_split(gr.h);
        if (!sp.w_basis.empty()) {
            std::vector<std::vector<Vec>> w_subs;
            w_subs.push_back(sp.w_basis);
            for (const auto& b : inv.blocks) {
                if (b.f.degree() == 1 && b.f.c[0] == fp_neg(p, 1)) continue;
                w_subs.push_back(primary_component(gr.h, b.f));
            }
            u64 total = cs.count;
            for (std::size_t wi = 0; wi < w_subs.size(); ++wi) {
                SubspaceCycleBound scb = subspace_cycle_bound(gr, w_subs[wi]);
                run.check("subspace_product_bound", scb.cycles_on_sum >= scb.t * scb.r, w);
                run.check("w_cycles_at_least_two", scb.r >= 2, w);
                if (total <= 4) {
                    run.check("four_cycle_product_bound", scb.t * scb.r <= 4, w);
                    if (scb.t >= 2 && wi == 0) {
                        u64 w_cycles = scb.r;
                        run.check("four_cycle_transitive_singer",
                                  scb.t == 2 && w_cycles == 2, w);
                    }
                }
            }
        }

        // order/cycle profile of the restriction to U
        {
            const OrderProfile& pr = ao.profile;
            u64 gu_order = ipow(p, pr.c + u32(pr.u_delta));
            auto fixes_u = [&](u64 n) {
                auto [wn, mn] = affine_power(gr, n);
                if (!vec_is_zero(wn)) return false;
                for (const auto& bb : sp.u_basis)
                    if (vec_mat(bb, mn) != bb) return false;
                return true;
            };
            run.check("u_restriction_order",
                      fixes_u(gu_order) && (gu_order == 1 || !fixes_u(gu_order / p)), w);
            run.check("u_cycle_pigeonhole", ipow(p, pr.a) <= pr.t * gu_order, w);
            if (p_part(k, p) == ipow(p, pr.c))
                run.check("u_doubling_matches_global", pr.u_delta == pr.delta, w);
            bool single = u_single_cycle(gr);
            bool uni_single_block =
                inv.blocks.size() >= 1 && [&] {
                    for (const auto& b : inv.blocks)
                        if (b.f.degree() == 1 && b.f.c[0] == fp_neg(p, 1))
                            return b.partition == std::vector<u32>{pr.a};
                    return false;
                }();
            bool characterization =
                (pr.a == 0) ||
                (pr.u_delta == 1 && uni_single_block && (pr.a == 1 || (pr.a == 2 && p == 2)));
            run.check("u_single_cycle_iff", single == characterization, w);
            run.check("u_cycle_count", pr.t == orbit_count_on_subspace(gr, sp.u_basis), w);
        }

        // gfp-matrix invariants
        {
            Polynomial mp = min_poly_of(inv);
            Polynomial cp = char_poly(g.h);
            run.check("minpoly_divides_charpoly", poly_divmod(cp, mp).second.is_zero(), w);
            run.check("minpoly_annihilates", poly_at_matrix(mp, g.h).is_zero(), w);
            Matrix pmat = random_invertible(gen, p, d);
            Matrix conj = mat_mul(mat_mul(mat_inverse(pmat), g.h), pmat);
            run.check("invariant_conjugation_stable", class_invariant(conj) == inv, w);
        }
    }
    return run.rep;
}

std::string lemma_report_to_json(const LemmaReport& r, int indent) {
    json j;
    j["schema_version"] = 1;
    j["p"] = r.p;
    j["d"] = r.d;
    j["samples"] = r.samples;
    j["seed"] = r.seed;
    j["ok"] = r.ok();
    j["checks"] = json::array();
    for (const auto& c : r.checks) {
        json cj;
        cj["name"] = c.name;
        cj["checks"] = c.checks;
        cj["failures"] = c.failures;
        if (c.failures) cj["witness"] = c.witness;
        j["checks"].push_back(cj);
    }
    return j.dump(indent);
}

MeoResult meo_scan(u32 p, u32 d) {
    MeoResult r;
    for (const auto& inv : enumerate_class_invariants(p, d)) {
        u64 o = order_from_invariant(inv);
        r.meo_gl = std::max(r.meo_gl, o);
        if (det_from_invariant(inv) == 1) r.meo_sl = std::max(r.meo_sl, o);
    }
    return r;
}

std::vector<GridCell> default_orders_grid() {
    std::vector<GridCell> g;
    for (u32 d = 1; d <= 10; ++d) g.push_back({2, d});
    for (u32 d = 1; d <= 6; ++d) g.push_back({3, d});
    for (u32 d = 1; d <= 3; ++d) g.push_back({5, d});
    for (u32 d = 1; d <= 3; ++d) g.push_back({7, d});
    g.push_back({11, 2});
    g.push_back({13, 2});
    return g;
}

std::vector<GridCell> default_cycles_grid() {
    std::vector<GridCell> g;
    for (u32 d = 1; d <= 6; ++d) g.push_back({2, d});
    for (u32 d = 1; d <= 4; ++d) g.push_back({3, d});
    g.push_back({5, 2});
    g.push_back({7, 2});
    return g;
}

}  // namespace afftool
