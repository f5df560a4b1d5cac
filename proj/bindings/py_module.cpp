#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "afftool/expr.hpp"
#include "afftool/verifier.hpp"

namespace py = pybind11;
using namespace afftool;

namespace {

AffineMap element_from_text(u64 p, const std::string& h_expr, const std::string& t) {
    if (!is_prime_u64(p)) throw std::invalid_argument("p must be prime");
    auto ast = parse_element(h_expr, u32(p));
    Matrix h = eval_element(*ast, u32(p));
    Vec v = parse_vec(t, u32(p), h.rows);
    return make_affine(std::move(h), std::move(v));
}

py::dict match_to_dict(const MatchResult& m) {
    py::list hits;
    for (const auto& h : m.matched) {
        py::dict hd;
        hd["line"] = line_to_string(h.line);
        hd["binding"] = binding_to_string(h.binding);
        hits.append(hd);
    }
    py::dict out;
    out["matched"] = hits;
    out["threshold_met"] = m.threshold_met;
    out["cycle_match"] = m.cycle_match;
    return out;
}

}  // namespace

PYBIND11_MODULE(_afftool, m) {
    m.doc() = "affine transformations of F_p^d: orders, cycle structure, classification tables";

    m.def(
        "order",
        [](u64 p, const std::string& h, const std::string& t) {
            AffineMap g = element_from_text(p, h, t);
            AffineOrder ao = affine_order(g);
            py::dict out;
            out["order"] = ao.order;
            out["k"] = ao.profile.k;
            out["delta"] = ao.profile.delta;
            out["a"] = ao.profile.a;
            out["t"] = ao.profile.t;
            return out;
        },
        py::arg("p"), py::arg("h"), py::arg("t") = "0",
        "order of t_v h with its order profile");

    m.def(
        "cycles",
        [](u64 p, const std::string& h, const std::string& t) {
            AffineMap g = element_from_text(p, h, t);
            return cycle_structure(g).lengths;
        },
        py::arg("p"), py::arg("h"), py::arg("t") = "0",
        "ascending multiset of cycle lengths on F_p^d");

    m.def(
        "classify",
        [](u64 p, const std::string& h, const std::string& t, const std::string& kind) {
            AffineMap g = element_from_text(p, h, t);
            TableKind k = kind == "cycles" ? TableKind::cycles : TableKind::orders;
            return match_to_dict(match(g, k));
        },
        py::arg("p"), py::arg("h"), py::arg("t") = "0", py::arg("kind") = "orders",
        "lines of the classification tables realized by t_v h");

    m.def(
        "catalog",
        [](u64 p, u64 d, const std::string& kind) {
            TableKind k = kind == "cycles" ? TableKind::cycles : TableKind::orders;
            py::list out;
            for (const auto& e : catalog(u32(p), u32(d), k)) {
                py::dict ed;
                ed["line"] = line_to_string(e.line);
                ed["binding"] = binding_to_string(e.binding);
                ed["order"] = e.order;
                ed["delta"] = e.delta;
                if (k == TableKind::cycles) ed["cycles"] = e.cycles;
                out.append(ed);
            }
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("kind") = "orders");

    m.def(
        "construct",
        [](u64 p, u64 d, const std::string& line, const std::string& binding) {
            auto id = parse_line_id(line);
            if (!id) throw std::invalid_argument("bad line id: " + line);
            Binding b;
            // reuse the CLI binding grammar via a tiny parser here
            std::size_t i = 0;
            while (i < binding.size()) {
                std::size_t e = binding.find(';', i);
                if (e == std::string::npos) e = binding.size();
                std::string kv = binding.substr(i, e - i);
                i = e + 1;
                if (kv.empty()) continue;
                auto eq = kv.find('=');
                if (eq == std::string::npos) throw std::invalid_argument("bad binding: " + kv);
                std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
                auto nums = [&] {
                    std::vector<u32> out;
                    std::size_t k2 = 0;
                    while (k2 < val.size()) {
                        auto c = val.find(',', k2);
                        if (c == std::string::npos) c = val.size();
                        out.push_back(u32(std::stoul(val.substr(k2, c - k2))));
                        k2 = c + 1;
                    }
                    return out;
                };
                if (key == "i")
                    b.i = std::stoull(val);
                else if (key == "dims")
                    b.dims = nums();
                else if (key == "a")
                    b.a = u32(std::stoul(val));
                else if (key == "a1")
                    b.a1 = u32(std::stoul(val));
                else if (key == "a2")
                    b.a2 = u32(std::stoul(val));
                else if (key == "h")
                    b.sub_line = parse_line_id(val).value();
                else if (key == "h.dims")
                    b.sub_dims = nums();
                else if (key == "variant")
                    b.variant = u32(std::stoul(val));
                else
                    throw std::invalid_argument("unknown binding key: " + key);
            }
            AffineMap g = instantiate(u32(p), u32(d), *id, b);
            py::dict out;
            out["h"] = matrix_to_string(g.h);
            out["v"] = vec_to_string(g.v);
            out["order"] = affine_order(g).order;
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("line"), py::arg("binding") = "");

    m.def(
        "verify_orders",
        [](u64 p, u64 d, u64 workers) {
            VerificationReport r = verify_orders(u32(p), u32(d), 0, 1, u32(workers));
            py::dict out;
            out["violations"] = u64(r.violations.size());
            out["classes_checked"] = r.classes_checked;
            out["elements_checked"] = r.elements_checked;
            out["matched_lines"] = r.matched_lines;
            out["informative"] = u64(r.informative.size());
            out["json"] = report_to_json(r);
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("workers") = 1);

    m.def(
        "verify_cycles",
        [](u64 p, u64 d, u64 workers) {
            VerificationReport r = verify_cycles(u32(p), u32(d), 0, 1, u32(workers));
            py::dict out;
            out["violations"] = u64(r.violations.size());
            out["classes_checked"] = r.classes_checked;
            out["elements_checked"] = r.elements_checked;
            out["matched_lines"] = r.matched_lines;
            out["json"] = report_to_json(r);
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("workers") = 1);

    m.def(
        "meo",
        [](u64 p, u64 d) {
            MeoResult r = meo_scan(u32(p), u32(d));
            return py::make_tuple(r.meo_gl, r.meo_sl);
        },
        py::arg("p"), py::arg("d"));

    m.def(
        "properties",
        [](u64 p, u64 d, u64 samples, u64 seed) {
            LemmaReport r = verify_lemmas(u32(p), u32(d), u32(samples), seed);
            py::dict out;
            out["ok"] = r.ok();
            py::list checks;
            for (const auto& c : r.checks) {
                py::dict cd;
                cd["name"] = c.name;
                cd["checks"] = c.checks;
                cd["failures"] = c.failures;
                checks.append(cd);
            }
            out["checks"] = checks;
            return out;
        },
        py::arg("p"), py::arg("d"), py::arg("samples") = 200, py::arg("seed") = 42);
}
