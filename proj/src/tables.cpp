#include "afftool/tables.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace afftool {

std::string line_to_string(const LineId& id) {
    return "T" + std::to_string(id.table) + ".L" + std::to_string(id.line);
}

std::optional<LineId> parse_line_id(const std::string& s) {
    if (s.size() < 4 || (s[0] != 'T' && s[0] != 't')) return std::nullopt;
    std::size_t dot = s.find('.');
    if (dot == std::string::npos || dot + 2 > s.size()) return std::nullopt;
    if (s[dot + 1] != 'L' && s[dot + 1] != 'l') return std::nullopt;
    try {
        LineId id;
        id.table = std::stoi(s.substr(1, dot - 1));
        id.line = std::stoi(s.substr(dot + 2));
        if (id.table < 2 || id.table > 7 || id.line < 1) return std::nullopt;
        return id;
    } catch (...) {
        return std::nullopt;
    }
}

bool Binding::operator==(const Binding& o) const {
    return i == o.i && dims == o.dims && a == o.a && a1 == o.a1 && a2 == o.a2 &&
           sub_line == o.sub_line && sub_dims == o.sub_dims && variant == o.variant;
}

std::string binding_to_string(const Binding& b) {
    std::string s;
    auto app = [&](const std::string& t) {
        if (!s.empty()) s += ";";
        s += t;
    };
    if (b.i) app("i=" + std::to_string(b.i.value()));
    if (!b.dims.empty()) {
        std::string t = "dims=";
        for (std::size_t k = 0; k < b.dims.size(); ++k) {
            if (k) t += ",";
            t += std::to_string(b.dims[k]);
        }
        app(t);
    }
    if (b.a) app("a=" + std::to_string(b.a.value()));
    if (b.a1) app("a1=" + std::to_string(b.a1.value()));
    if (b.a2) app("a2=" + std::to_string(b.a2.value()));
    if (b.sub_line) {
        app("h=" + line_to_string(b.sub_line.value()));
        if (!b.sub_dims.empty()) {
            std::string t = "h.dims=";
            for (std::size_t k = 0; k < b.sub_dims.size(); ++k) {
                if (k) t += ",";
                t += std::to_string(b.sub_dims[k]);
            }
            app(t);
        }
    }
    if (b.variant) app("variant=" + std::to_string(b.variant.value()));
    return s;
}

// ---------------------------------------------------------------------------
// shapes

Shape shape_of(const ClassInvariant& inv) {
    Shape sh;
    sh.p = inv.p;
    sh.d = inv.d;
    for (const auto& b : inv.blocks) {
        if (b.f.degree() == 1 && b.f.c[0] == fp_neg(inv.p, 1)) {
            sh.uni = b.partition;
        } else {
            ShapeEntry e;
            e.deg = u32(b.f.degree());
            e.ord = multiplicative_order(b.f);
            e.parts = b.partition;
            sh.ent.push_back(std::move(e));
        }
    }
    std::sort(sh.ent.begin(), sh.ent.end(), [](const ShapeEntry& x, const ShapeEntry& y) {
        return x.deg != y.deg ? x.deg < y.deg : x.ord < y.ord;
    });
    return sh;
}

namespace {

bool all_ones(const std::vector<u32>& parts) {
    return std::all_of(parts.begin(), parts.end(), [](u32 x) { return x == 1; });
}

std::optional<std::vector<u32>> remove_part(const std::vector<u32>& parts, u32 x) {
    auto it = std::find(parts.begin(), parts.end(), x);
    if (it == parts.end()) return std::nullopt;
    std::vector<u32> rest(parts.begin(), it);
    rest.insert(rest.end(), std::next(it), parts.end());
    return rest;
}

// Dimension multiset when every remaining factor is a full-order Singer
// summand (irreducible, all partition parts 1, order p^deg - 1).
std::optional<std::vector<u32>> full_singer_dims(const std::vector<ShapeEntry>& ent, u32 p) {
    std::vector<u32> dims;
    for (const auto& e : ent) {
        if (!all_ones(e.parts)) return std::nullopt;
        if (e.ord != ipow_checked(p, e.deg) - 1) return std::nullopt;
        for (std::size_t k = 0; k < e.parts.size(); ++k) dims.push_back(e.deg);
    }
    std::sort(dims.begin(), dims.end());
    return dims;
}

// Whether (uni, ent) is exactly one power-of-Singer summand of dimension j
// and element order e. For e = 1 the summand is the identity on j
// dimensions, i.e. j parts of 1 in the (x-1) partition.
bool is_isotypic_power(const std::vector<u32>& uni, const std::vector<ShapeEntry>& ent, u32 j, u64 e) {
    if (e == 1) return ent.empty() && uni.size() == j && all_ones(uni);
    if (!uni.empty() || ent.size() != 1) return false;
    const ShapeEntry& s = ent[0];
    return all_ones(s.parts) && s.deg * u32(s.parts.size()) == j && s.ord == e;
}

std::vector<u32> sorted_desc(std::vector<u32> v) {
    std::sort(v.begin(), v.end(), std::greater<u32>());
    return v;
}

// Decomposition of a semisimple shape into power-of-Singer summands with the
// given dimension multiset. Summands are isotypic (one irreducible each with
// all partition parts 1); a summand of dimension x built from a factor of
// degree e consumes x/e of that factor's parts. Not all Singer cycles of a
// given dimension are conjugate, and proper powers can keep the full product
// order when a coprimality exception absorbs the dropped factor, so matching
// is by (degree, order) data only; the caller's order-formula gate rejects
// combinations whose element order falls short of the line's column.
bool singer_sum_shape(const Shape& sh, std::vector<u32> dims) {
    if (!all_ones(sh.uni)) return false;
    u64 weight = sh.uni.size();
    struct Unit {
        u32 deg;
        u32 left;
    };
    std::vector<Unit> units;
    if (!sh.uni.empty()) units.push_back({1, u32(sh.uni.size())});
    for (const auto& e : sh.ent) {
        if (!all_ones(e.parts)) return false;
        units.push_back({e.deg, u32(e.parts.size())});
        weight += u64(e.deg) * e.parts.size();
    }
    u64 want = 0;
    for (u32 x : dims) want += x;
    if (weight != want) return false;
    std::sort(dims.begin(), dims.end(), std::greater<u32>());
    auto rec = [&](auto&& self, std::size_t i) -> bool {
        if (i == dims.size()) {
            for (const auto& u : units)
                if (u.left) return false;
            return true;
        }
        for (auto& u : units) {
            if (u.deg > dims[i] || dims[i] % u.deg != 0) continue;
            u32 need = dims[i] / u.deg;
            if (u.left < need) continue;
            u.left -= need;
            if (self(self, i + 1)) return true;
            u.left += need;
        }
        return false;
    };
    return rec(rec, 0);
}

bool uni_is(const Shape& sh, std::vector<u32> want) {
    return sh.uni == sorted_desc(std::move(want));
}

u64 two_pow_minus1(u32 e) { return (u64(1) << e) - 1; }

}  // namespace

int line_delta(const LineId& id) {
    switch (id.table) {
        case 2:
            return id.line == 1 ? 0 : 1;
        case 3:
            return (id.line >= 5 && id.line <= 6) || id.line >= 14 ? 1 : 0;
        case 4:
            return (id.line == 3 || id.line >= 7) ? 1 : 0;
        case 5:
            return id.line >= 3 ? 1 : 0;
        case 6:
            return id.line >= 4 ? 1 : 0;
        case 7: {
            static const int dl[16] = {0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1};
            return dl[id.line];
        }
        default:
            throw std::invalid_argument("bad table id");
    }
}

u64 order_formula(u32 p, u32 d, const LineId& id, const Binding& b) {
    auto prod_2m1 = [&](const std::vector<u32>& dims) {
        u64 r = 1;
        for (u32 x : dims) r *= two_pow_minus1(x);
        return r;
    };
    const int L = id.line;
    switch (id.table) {
        case 2:
            if (L == 1) return (ipow(p, d) - 1) / b.i.value();
            if (L == 2) return (ipow(p, d) - p) / b.i.value();
            return p;
        case 3:
            switch (L) {
                case 1: return ipow(3, d - 1) - 1;
                case 2: return (ipow(3, b.dims[0]) - 1) * (ipow(3, b.dims[1]) - 1) / 2;
                case 3:
                case 4: return 3 * (ipow(3, d - 2) - 1);
                case 5: {
                    Binding sb;
                    sb.dims = b.sub_dims;
                    return 3 * order_formula(p, d - 1, b.sub_line.value(), sb);
                }
                case 6: return 9 * (ipow(3, d - 3) - 1);
                case 7:
                case 8: return prod_2m1(b.dims);
                case 9: return 6 * prod_2m1(b.dims);
                case 10: return 4 * prod_2m1(b.dims);
                case 11: return 2 * prod_2m1(b.dims);
                case 12: return prod_2m1(b.dims) / 3;
                case 13: return prod_2m1(b.dims) / 3;
                case 14: {
                    Binding sb;
                    sb.dims = b.sub_dims;
                    return 2 * order_formula(p, d - 1, b.sub_line.value(), sb);
                }
                case 15: {
                    Binding sb;
                    sb.dims = b.sub_dims;
                    return 4 * order_formula(p, d - 2, b.sub_line.value(), sb);
                }
                case 16: {
                    if (b.sub_line.value().table == 2) return 8 * (two_pow_minus1(d - 4));
                    Binding sb;
                    sb.dims = b.sub_dims;
                    return 8 * order_formula(p, d - 4, b.sub_line.value(), sb);
                }
                case 17: return 4 * two_pow_minus1(d - 2) / b.i.value();
                default: break;
            }
            break;
        case 4:
            switch (L) {
                case 1: return u64(p) * (p - 1) / b.i.value();
                case 2: return 24;
                case 3: return u64(p) * p;
                case 4: return d == 2 ? 2 : d == 3 ? 4 : d == 4 ? 4 : 8;
                case 5: return 2;
                case 6: return 4;
                case 7: return 8;
                case 8:
                case 9:
                case 10: return 4;
                case 11: return 2;
                default: break;
            }
            break;
        case 5:
            switch (L) {
                case 1: return (ipow(p, d) - 1) / b.i.value();
                case 2: return u64(p) * (p - 1);
                case 3: return p;
                case 4: return u64(p) * (ipow(p, d - 1) - 1) / b.i.value();
                default: break;
            }
            break;
        case 6:
            switch (L) {
                case 1: return two_pow_minus1(b.a1.value()) * two_pow_minus1(b.a2.value());
                case 2: return two_pow_minus1(d - 1);
                case 3: return 4 * two_pow_minus1(d - 3);
                case 4: return 2 * two_pow_minus1(d - 2);
                case 5: return 4 * two_pow_minus1(d - 2) / b.i.value();
                case 6: return 4 * two_pow_minus1(d - 3);
                case 7: return ipow(2, b.a.value()) * two_pow_minus1(b.a1.value()) * two_pow_minus1(b.a2.value());
                case 8: return 8 * two_pow_minus1(d - 4);
                default: break;
            }
            break;
        case 7: {
            static const u64 ords[16] = {0, 0, 3, 4, 2, 4, 4, 6, 8, 4, 2, 4, 9, 4, 8, 8};
            if (L == 1) return p;
            return ords[L];
        }
        default: break;
    }
    throw std::invalid_argument("order_formula: bad line " + line_to_string(id));
}

std::vector<u64> predicted_cycles(u32 p, u32 d, const LineId& id, const Binding& b) {
    std::vector<u64> cy;
    auto rep = [&](u64 len, u64 times) {
        for (u64 k = 0; k < times; ++k) cy.push_back(len);
    };
    const int L = id.line;
    switch (id.table) {
        case 5:
            if (L == 1) {
                cy.push_back(1);
                rep((ipow(p, d) - 1) / b.i.value(), b.i.value());
            } else if (L == 2) {
                cy = {1, p - 1, u64(p) * (p - 1)};
            } else if (L == 3) {
                cy = {p};
            } else {
                cy.push_back(p);
                rep(u64(p) * (ipow(p, d - 1) - 1) / b.i.value(), b.i.value());
            }
            break;
        case 6:
            switch (L) {
                case 1:
                    cy = {1, two_pow_minus1(b.a1.value()), two_pow_minus1(b.a2.value()),
                          two_pow_minus1(b.a1.value()) * two_pow_minus1(b.a2.value())};
                    break;
                case 2: cy = {1, 1, two_pow_minus1(d - 1), two_pow_minus1(d - 1)}; break;
                case 3: cy = {4, 4, (u64(1) << (d - 1)) - 4, (u64(1) << (d - 1)) - 4}; break;
                case 4: cy = {2, 2, (u64(1) << (d - 1)) - 2, (u64(1) << (d - 1)) - 2}; break;
                case 5:
                    cy.push_back(4);
                    rep(((u64(1) << d) - 4) / b.i.value(), b.i.value());
                    break;
                case 6: cy = {4, 4, (u64(1) << (d - 1)) - 4, (u64(1) << (d - 1)) - 4}; break;
                case 7: {
                    u64 pa = u64(1) << b.a.value();
                    cy = {pa, pa * two_pow_minus1(b.a1.value()), pa * two_pow_minus1(b.a2.value()),
                          pa * two_pow_minus1(b.a1.value()) * two_pow_minus1(b.a2.value())};
                    break;
                }
                case 8: cy = {8, 8, (u64(1) << (d - 1)) - 8, (u64(1) << (d - 1)) - 8}; break;
                default: throw std::invalid_argument("predicted_cycles: bad line");
            }
            break;
        case 7:
            switch (L) {
                case 1: rep(p, p); break;
                case 2: cy = {3, 3, 3}; break;
                case 3: cy = {4, 4}; break;
                case 4: cy = {2, 2, 2, 2}; break;
                case 5: cy = {1, 1, 2, 4}; break;
                case 6: cy = {4, 4, 4, 4}; break;
                case 7: cy = {1, 3, 6, 6}; break;
                case 8: cy = {8, 8, 8, 8}; break;
                case 9: cy = {4}; break;
                case 10: cy = {2, 2, 2, 2}; break;
                case 11: cy = {4, 4}; break;
                case 12: cy = {9, 9, 9}; break;
                case 13: cy = {4, 4, 4, 4}; break;
                case 14: cy = {8, 8}; break;
                case 15: cy = {8, 8, 8, 8}; break;
                default: throw std::invalid_argument("predicted_cycles: bad line");
            }
            break;
        default:
            throw std::invalid_argument("predicted_cycles: " + line_to_string(id) + " is an order line");
    }
    std::sort(cy.begin(), cy.end());
    return cy;
}

// ---------------------------------------------------------------------------
// shape predicates

bool shape_matches(const LineId& id, const Binding& b, const Shape& sh, u32 p, u32 d) {
    const int L = id.line;
    switch (id.table) {
        case 2:
            if (L == 1) return is_isotypic_power(sh.uni, sh.ent, d, (ipow(p, d) - 1) / b.i.value());
            if (L == 2) {
                auto rest = remove_part(sh.uni, 1);
                if (!rest) return false;
                return is_isotypic_power(*rest, sh.ent, d - 1, (ipow(p, d - 1) - 1) / b.i.value());
            }
            return d == 1 && uni_is(sh, {1}) && sh.ent.empty();
        case 3:
            switch (L) {
                case 1: {
                    if (!uni_is(sh, {1})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 1};
                }
                case 2:
                    // two Singer-power summands; the order-formula gate keeps
                    // only the combinations reaching the column's value
                    return singer_sum_shape(sh, b.dims);
                case 3: {
                    if (!sh.uni.empty() || sh.ent.size() != 2) return false;
                    u64 e = (ipow(3, d - 2) - 1) / b.i.value();
                    for (int t = 0; t < 2; ++t) {
                        const ShapeEntry& ten = sh.ent[t];
                        const ShapeEntry& sg = sh.ent[1 - t];
                        if (ten.deg == 1 && ten.ord == 2 && ten.parts == std::vector<u32>{2} &&
                            is_isotypic_power({}, {sg}, d - 2, e))
                            return true;
                    }
                    return false;
                }
                case 4: {
                    if (!uni_is(sh, {2})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 2};
                }
                case 5: {
                    auto rest = remove_part(sh.uni, 1);
                    if (!rest) return false;
                    Shape sub = sh;
                    sub.uni = *rest;
                    Binding sb;
                    sb.dims = b.sub_dims;
                    return shape_matches(b.sub_line.value(), sb, sub, p, d - 1);
                }
                case 6: {
                    if (!uni_is(sh, {3})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 3};
                }
                case 7:
                case 8:
                    return singer_sum_shape(sh, b.dims);
                case 9: {
                    if (!sh.uni.empty()) return false;
                    std::vector<ShapeEntry> rest;
                    bool seen = false;
                    for (const auto& e : sh.ent) {
                        if (!seen && e.deg == 2 && e.ord == 3 && e.parts == std::vector<u32>{2})
                            seen = true;
                        else
                            rest.push_back(e);
                    }
                    if (!seen) return false;
                    auto dims = full_singer_dims(rest, p);
                    return dims && *dims == b.dims;
                }
                case 10: {
                    if (!uni_is(sh, {3})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == b.dims;
                }
                case 11: {
                    if (!uni_is(sh, {2})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == b.dims;
                }
                case 12:
                case 13:
                    return singer_sum_shape(sh, b.dims);
                case 14:
                case 15: {
                    auto rest = remove_part(sh.uni, L == 14 ? 1 : 2);
                    if (!rest) return false;
                    Shape sub = sh;
                    sub.uni = *rest;
                    Binding sb;
                    sb.dims = b.sub_dims;
                    return shape_matches(b.sub_line.value(), sb, sub, p, d - (L == 14 ? 1 : 2));
                }
                case 16: {
                    auto rest = remove_part(sh.uni, 4);
                    if (!rest) return false;
                    Shape sub = sh;
                    sub.uni = *rest;
                    if (b.sub_line.value().table == 2) {
                        // h' a full Singer cycle; at d - 4 = 1 this is the
                        // identity summand s_1
                        return is_isotypic_power(sub.uni, sub.ent, d - 4, two_pow_minus1(d - 4));
                    }
                    Binding sb;
                    sb.dims = b.sub_dims;
                    return shape_matches(b.sub_line.value(), sb, sub, p, d - 4);
                }
                case 17: {
                    auto rest = remove_part(sh.uni, 2);
                    if (!rest) return false;
                    return is_isotypic_power(*rest, sh.ent, d - 2, two_pow_minus1(d - 2) / b.i.value());
                }
                default: break;
            }
            break;
        case 4:
            switch (L) {
                case 1: {
                    u64 e = u64(p - 1) / b.i.value();
                    if (e == 1) return uni_is(sh, {2}) && sh.ent.empty();
                    return sh.uni.empty() && sh.ent.size() == 1 && sh.ent[0].deg == 1 &&
                           sh.ent[0].ord == e && sh.ent[0].parts == std::vector<u32>{2};
                }
                case 2:
                    return sh.uni.empty() && sh.ent.size() == 1 && sh.ent[0].deg == 2 &&
                           sh.ent[0].ord == 8 && sh.ent[0].parts == std::vector<u32>{2};
                case 3: return sh.ent.empty() && uni_is(sh, {p});
                case 4: return sh.ent.empty() && uni_is(sh, {d});
                case 5:
                case 10: return sh.ent.empty() && uni_is(sh, {2, 1});
                case 6: return sh.ent.empty() && uni_is(sh, {3, 1});
                case 7: return sh.ent.empty() && uni_is(sh, {4});
                case 8: return sh.ent.empty() && uni_is(sh, {2, 2});
                case 9: return sh.ent.empty() && uni_is(sh, {2, 1, 1});
                case 11: return sh.ent.empty() && uni_is(sh, {1, 1, 1});
                default: break;
            }
            break;
        case 5:
            if (L == 1) return shape_matches({2, 1}, b, sh, p, d);
            if (L == 2) {
                u64 e = p - 1;
                if (e == 1) return uni_is(sh, {2}) && sh.ent.empty();
                return sh.uni.empty() && sh.ent.size() == 1 && sh.ent[0].deg == 1 &&
                       sh.ent[0].ord == e && sh.ent[0].parts == std::vector<u32>{2};
            }
            if (L == 3) return d == 1 && uni_is(sh, {1}) && sh.ent.empty();
            return shape_matches({2, 2}, b, sh, p, d);
        case 6:
            switch (L) {
                case 1: {
                    if (!sh.uni.empty()) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{b.a1.value(), b.a2.value()};
                }
                case 2: {
                    if (!uni_is(sh, {1})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 1};
                }
                case 3: {
                    if (!uni_is(sh, {3})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 3};
                }
                case 4: {
                    if (!uni_is(sh, {1, 1})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 2};
                }
                case 5: {
                    auto rest = remove_part(sh.uni, 2);
                    if (!rest) return false;
                    return is_isotypic_power(*rest, sh.ent, d - 2, two_pow_minus1(d - 2) / b.i.value());
                }
                case 6: {
                    if (!uni_is(sh, {2, 1})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 3};
                }
                case 7: {
                    std::vector<u32> want{b.a.value()};
                    if (!uni_is(sh, want)) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{b.a1.value(), b.a2.value()};
                }
                case 8: {
                    if (!uni_is(sh, {4})) return false;
                    auto dims = full_singer_dims(sh.ent, p);
                    return dims && *dims == std::vector<u32>{d - 4};
                }
                default: break;
            }
            break;
        case 7:
            switch (L) {
                case 1: return sh.ent.empty() && uni_is(sh, {1, 1});
                case 2:
                case 9: return sh.ent.empty() && uni_is(sh, {2});
                case 3:
                case 5: return sh.ent.empty() && uni_is(sh, {3});
                case 4:
                case 11: return sh.ent.empty() && uni_is(sh, {2, 1});
                case 6: return sh.ent.empty() && uni_is(sh, {3, 1});
                case 7:
                    return sh.uni.empty() && sh.ent.size() == 1 && sh.ent[0].deg == 2 &&
                           sh.ent[0].ord == 3 && sh.ent[0].parts == std::vector<u32>{2};
                case 8: return sh.ent.empty() && uni_is(sh, {5});
                case 10: return sh.ent.empty() && uni_is(sh, {1, 1, 1});
                case 12: return sh.ent.empty() && uni_is(sh, {3});
                case 13:
                    return sh.ent.empty() &&
                           (b.variant == 0u ? uni_is(sh, {2, 2}) : uni_is(sh, {2, 1, 1}));
                case 14: return sh.ent.empty() && uni_is(sh, {4});
                case 15: return sh.ent.empty() && uni_is(sh, {4, 1});
                default: break;
            }
            break;
        default: break;
    }
    throw std::invalid_argument("shape_matches: bad line " + line_to_string(id));
}

// ---------------------------------------------------------------------------
// binding enumeration

namespace {

// strictly ascending, pairwise coprime integers, each >= lo and coprime to
// every element of `avoid`, odd when `odd_only`, summing to `sum`
void coprime_sets(u32 sum, u32 lo, bool odd_only, const std::vector<u32>& avoid,
                  std::vector<u32>& cur, std::vector<std::vector<u32>>& out) {
    if (sum == 0) {
        out.push_back(cur);
        return;
    }
    for (u32 v = lo; v <= sum; ++v) {
        if (odd_only && v % 2 == 0) continue;
        bool ok = true;
        for (u32 x : cur)
            if (gcd_u64(x, v) != 1) ok = false;
        for (u32 x : avoid)
            if (gcd_u64(x, v) != 1) ok = false;
        if (!ok) continue;
        cur.push_back(v);
        coprime_sets(sum - v, v + 1, odd_only, avoid, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<u32>> coprime_sets(u32 sum, u32 lo, bool odd_only = false,
                                           const std::vector<u32>& avoid = {}) {
    std::vector<std::vector<u32>> out;
    std::vector<u32> cur;
    coprime_sets(sum, lo, odd_only, avoid, cur, out);
    return out;
}

void push_i_bindings(std::vector<CatalogEntry>& out, u32 p, u32 d, LineId id, u64 modulus,
                     std::initializer_list<u64> is, TableKind kind) {
    for (u64 i : is) {
        if (modulus % i != 0) continue;
        CatalogEntry e;
        e.line = id;
        e.binding.i = i;
        e.delta = line_delta(id);
        e.order = order_formula(p, d, id, e.binding);
        if (kind == TableKind::cycles) e.cycles = predicted_cycles(p, d, id, e.binding);
        out.push_back(std::move(e));
    }
}

void push_plain(std::vector<CatalogEntry>& out, u32 p, u32 d, LineId id, TableKind kind,
                Binding b = {}) {
    CatalogEntry e;
    e.line = id;
    e.binding = std::move(b);
    e.delta = line_delta(id);
    e.order = order_formula(p, d, id, e.binding);
    if (kind == TableKind::cycles) e.cycles = predicted_cycles(p, d, id, e.binding);
    out.push_back(std::move(e));
}

// sub-line bindings for the J_1/J_2/J_4 + h' delegation lines: the h' shapes
// of the p = 2 semisimple lines at dimension dd
std::vector<std::pair<LineId, std::vector<u32>>> semisimple_sub_bindings(u32 dd) {
    std::vector<std::pair<LineId, std::vector<u32>>> subs;
    if (dd >= 3) {  // T3.L7
        for (auto& s : coprime_sets(dd - 1, 2)) {
            if (s.empty()) continue;
            std::vector<u32> dims{1};
            dims.insert(dims.end(), s.begin(), s.end());
            subs.push_back({{3, 7}, dims});
        }
    }
    if (dd >= 5) {  // T3.L8
        for (auto& s : coprime_sets(dd, 2))
            if (s.size() >= 2) subs.push_back({{3, 8}, s});
    }
    if (dd >= 5) {  // T3.L12
        for (u32 a = 2; a + a <= dd; a += 2)
            for (u32 b2 = a; a + b2 <= dd; b2 += 2) {
                if (gcd_u64(a, b2) != 2) continue;
                for (auto& s : coprime_sets(dd - a - b2, 3, true, {a, b2})) {
                    std::vector<u32> dims{a, b2};
                    dims.insert(dims.end(), s.begin(), s.end());
                    subs.push_back({{3, 12}, dims});
                }
            }
    }
    if (dd >= 5) {  // T3.L13
        for (u32 d1 = 4; d1 < dd; d1 += 2)
            for (auto& s : coprime_sets(dd - d1, 2, false, {d1})) {
                if (s.empty()) continue;
                std::vector<u32> dims{d1};
                dims.insert(dims.end(), s.begin(), s.end());
                subs.push_back({{3, 13}, dims});
            }
    }
    return subs;
}

}  // namespace

std::vector<CatalogEntry> catalog(u32 p, u32 d, TableKind kind) {
    ipow_checked(p, d, kind == TableKind::orders ? kOrderSpaceCap : kOrbitSpaceCap);
    std::vector<CatalogEntry> out;
    if (kind == TableKind::orders) {
        // --- Table 2, arbitrary p ---
        if (d >= 1) push_i_bindings(out, p, d, {2, 1}, ipow(p, d) - 1, {1, 2, 3}, kind);
        if (d >= 2) push_i_bindings(out, p, d, {2, 2}, ipow(p, d - 1) - 1, {1, 2, 3}, kind);
        if (d == 1) push_plain(out, p, d, {2, 3}, kind);
        // --- Table 3, p = 3 block ---
        if (p == 3) {
            if (d >= 3) push_plain(out, p, d, {3, 1}, kind);
            if (d >= 3)
                for (u32 d1 = 1; d1 <= d / 2; ++d1) {
                    u32 d2 = d - d1;
                    if (gcd_u64(d1, d2) != 1) continue;
                    Binding b;
                    b.dims = {d1, d2};
                    push_plain(out, p, d, {3, 2}, kind, b);
                }
            if (d >= 4)
                for (u64 i : {u64(1), u64(2)}) {
                    if (i == 2 && d % 2 == 0) continue;  // d odd when i = 2
                    Binding b;
                    b.i = i;
                    push_plain(out, p, d, {3, 3}, kind, b);
                }
            if (d >= 4) push_plain(out, p, d, {3, 4}, kind);
            if (d >= 4) {
                {
                    Binding b;
                    b.sub_line = LineId{3, 1};
                    if (d - 1 >= 3) push_plain(out, p, d, {3, 5}, kind, b);
                }
                for (u32 d1 = 1; d1 <= (d - 1) / 2; ++d1) {
                    u32 d2 = d - 1 - d1;
                    if (gcd_u64(d1, d2) != 1) continue;
                    Binding b;
                    b.sub_line = LineId{3, 2};
                    b.sub_dims = {d1, d2};
                    push_plain(out, p, d, {3, 5}, kind, b);
                }
            }
            if (d >= 5) push_plain(out, p, d, {3, 6}, kind);
        }
        // --- Table 3, p = 2 block ---
        if (p == 2) {
            auto push_dims = [&](LineId id, std::vector<u32> dims) {
                Binding b;
                b.dims = std::move(dims);
                push_plain(out, p, d, id, kind, b);
            };
            if (d >= 3)
                for (auto& s : coprime_sets(d - 1, 2)) {
                    if (s.empty()) continue;
                    std::vector<u32> dims{1};
                    dims.insert(dims.end(), s.begin(), s.end());
                    push_dims({3, 7}, dims);
                }
            if (d >= 5)
                for (auto& s : coprime_sets(d, 2))
                    if (s.size() >= 2) push_dims({3, 8}, s);
            if (d >= 4)
                for (auto& s : coprime_sets(d - 4, 3, true)) push_dims({3, 9}, s);
            if (d >= 5)
                for (auto& s : coprime_sets(d - 3, 2))
                    if (!s.empty()) push_dims({3, 10}, s);
            if (d >= 4)
                for (auto& s : coprime_sets(d - 2, 2))
                    if (!s.empty()) push_dims({3, 11}, s);
            if (d >= 5)
                for (u32 a = 2; a + a <= d; a += 2)
                    for (u32 b2 = a; a + b2 <= d; b2 += 2) {
                        if (gcd_u64(a, b2) != 2) continue;
                        for (auto& s : coprime_sets(d - a - b2, 3, true, {a, b2})) {
                            std::vector<u32> dims{a, b2};
                            dims.insert(dims.end(), s.begin(), s.end());
                            push_dims({3, 12}, dims);
                        }
                    }
            if (d >= 5)
                for (u32 d1 = 4; d1 < d; d1 += 2)
                    for (auto& s : coprime_sets(d - d1, 2, false, {d1})) {
                        if (s.empty()) continue;
                        std::vector<u32> dims{d1};
                        dims.insert(dims.end(), s.begin(), s.end());
                        push_dims({3, 13}, dims);
                    }
            if (d >= 4)
                for (auto& [sl, sd] : semisimple_sub_bindings(d - 1)) {
                    Binding b;
                    b.sub_line = sl;
                    b.sub_dims = sd;
                    push_plain(out, p, d, {3, 14}, kind, b);
                }
            if (d >= 5)
                for (auto& [sl, sd] : semisimple_sub_bindings(d - 2)) {
                    Binding b;
                    b.sub_line = sl;
                    b.sub_dims = sd;
                    push_plain(out, p, d, {3, 15}, kind, b);
                }
            if (d >= 5) {
                {
                    // h' a full Singer cycle (table 2 line 1 with i = 1); the
                    // d - 4 = 1 case is the trivial s_1, which the four-cycle
                    // refinement of this line also uses
                    Binding b;
                    b.sub_line = LineId{2, 1};
                    push_plain(out, p, d, {3, 16}, kind, b);
                }
                for (auto& s : coprime_sets(d - 4, 2))
                    if (s.size() >= 2) {
                        Binding b;
                        b.sub_line = LineId{3, 8};
                        b.sub_dims = s;
                        push_plain(out, p, d, {3, 16}, kind, b);
                    }
            }
            if (d >= 4) push_i_bindings(out, p, d, {3, 17}, two_pow_minus1(d - 2), {1, 3}, kind);
        }
        // --- Table 4, sporadic ---
        if (p >= 3 && d == 2) push_i_bindings(out, p, d, {4, 1}, p - 1, {1, 2, 3}, kind);
        if (p == 3 && d == 4) push_plain(out, p, d, {4, 2}, kind);
        if ((p == 2 || p == 3) && d == p) push_plain(out, p, d, {4, 3}, kind);
        if (p == 2 && d >= 2 && d <= 5) push_plain(out, p, d, {4, 4}, kind);
        if (p == 2 && d == 3) push_plain(out, p, d, {4, 5}, kind);
        if (p == 2 && d == 4) push_plain(out, p, d, {4, 6}, kind);
        if (p == 2 && d == 4) push_plain(out, p, d, {4, 7}, kind);
        if (p == 2 && d == 4) push_plain(out, p, d, {4, 8}, kind);
        if (p == 2 && d == 4) push_plain(out, p, d, {4, 9}, kind);
        if (p == 2 && d == 3) push_plain(out, p, d, {4, 10}, kind);
        if (p == 2 && d == 3) push_plain(out, p, d, {4, 11}, kind);
    } else {
        // --- Table 5, arbitrary p ---
        if (d >= 1) push_i_bindings(out, p, d, {5, 1}, ipow(p, d) - 1, {1, 2, 3}, kind);
        if (d == 2) push_plain(out, p, d, {5, 2}, kind);
        if (d == 1) push_plain(out, p, d, {5, 3}, kind);
        if (d >= 2) push_i_bindings(out, p, d, {5, 4}, ipow(p, d - 1) - 1, {1, 2, 3}, kind);
        // --- Table 6, p = 2 families ---
        if (p == 2) {
            if (d >= 5)
                for (u32 a1 = 2; 2 * a1 < d; ++a1) {
                    u32 a2 = d - a1;
                    if (gcd_u64(a1, a2) != 1) continue;
                    Binding b;
                    b.a1 = a1;
                    b.a2 = a2;
                    push_plain(out, p, d, {6, 1}, kind, b);
                }
            if (d >= 3) push_plain(out, p, d, {6, 2}, kind);
            if (d >= 5) push_plain(out, p, d, {6, 3}, kind);
            if (d >= 4) push_plain(out, p, d, {6, 4}, kind);
            if (d >= 4) push_i_bindings(out, p, d, {6, 5}, two_pow_minus1(d - 2), {1, 3}, kind);
            if (d >= 5) push_plain(out, p, d, {6, 6}, kind);
            if (d >= 6)
                for (u32 a = 1; a <= 2; ++a)
                    for (u32 a1 = 2; a + 2 * a1 < d; ++a1) {
                        u32 a2 = d - a - a1;
                        if (a1 >= a2 || gcd_u64(a1, a2) != 1) continue;
                        Binding b;
                        b.a = a;
                        b.a1 = a1;
                        b.a2 = a2;
                        push_plain(out, p, d, {6, 7}, kind, b);
                    }
            if (d >= 6) push_plain(out, p, d, {6, 8}, kind);
        }
        // --- Table 7, sporadic ---
        auto at = [&](u32 pp, u32 dd) { return p == pp && d == dd; };
        if ((at(2, 2) || at(3, 2))) push_plain(out, p, d, {7, 1}, kind);
        if (at(3, 2)) push_plain(out, p, d, {7, 2}, kind);
        if (at(2, 3)) push_plain(out, p, d, {7, 3}, kind);
        if (at(2, 3)) push_plain(out, p, d, {7, 4}, kind);
        if (at(2, 3)) push_plain(out, p, d, {7, 5}, kind);
        if (at(2, 4)) push_plain(out, p, d, {7, 6}, kind);
        if (at(2, 4)) push_plain(out, p, d, {7, 7}, kind);
        if (at(2, 5)) push_plain(out, p, d, {7, 8}, kind);
        if (at(2, 2)) push_plain(out, p, d, {7, 9}, kind);
        if (at(2, 3)) push_plain(out, p, d, {7, 10}, kind);
        if (at(2, 3)) push_plain(out, p, d, {7, 11}, kind);
        if (at(3, 3)) push_plain(out, p, d, {7, 12}, kind);
        if (at(2, 4))
            for (u32 var : {0u, 1u}) {
                Binding b;
                b.variant = var;
                push_plain(out, p, d, {7, 13}, kind, b);
            }
        if (at(2, 4)) push_plain(out, p, d, {7, 14}, kind);
        if (at(2, 5)) push_plain(out, p, d, {7, 15}, kind);
    }
    return out;
}

// ---------------------------------------------------------------------------
// instantiation

namespace {

Matrix singer_sum(u32 p, const std::vector<u32>& dims) {
    std::vector<Matrix> parts;
    for (u32 j : dims) parts.push_back(singer(p, j, 1));
    return direct_sum(p, parts);
}

// h' of the p = 2 semisimple delegation lines
Matrix sub_matrix(u32 p, u32 dd, const LineId& sub, const std::vector<u32>& sub_dims) {
    if (sub.table == 2 && sub.line == 1) return singer(p, dd, 1);
    if (sub.table == 3 && sub.line == 1) {  // p = 3: J_1 + s_{dd-1}
        return direct_sum(p, {jordan_block(p, 1), singer(p, dd - 1, 1)});
    }
    if (sub.table == 3 && sub.line == 2) {
        return direct_sum(p, {singer(p, sub_dims[0], 1), singer(p, sub_dims[1], 1)});
    }
    if (sub.table == 3 && sub.line == 13) {
        std::vector<Matrix> parts{singer(p, sub_dims[0], 3)};
        for (std::size_t k = 1; k < sub_dims.size(); ++k) parts.push_back(singer(p, sub_dims[k], 1));
        return direct_sum(p, parts);
    }
    // T3.L7 / T3.L8 / T3.L12: plain Singer sums
    return singer_sum(p, sub_dims);
}

Vec basis_vec(u32 d, u32 idx1) {  // 1-based index
    Vec v(d, 0);
    v[idx1 - 1] = 1;
    return v;
}

}  // namespace

AffineMap instantiate(u32 p, u32 d, const LineId& id, const Binding& b) {
    const int L = id.line;
    Matrix h;
    int tvec = line_delta(id) ? 1 : 0;  // default: e_1 for doubled lines, 0 otherwise
    switch (id.table) {
        case 2:
            if (L == 1)
                h = singer(p, d, b.i.value());
            else if (L == 2)
                h = direct_sum(p, {jordan_block(p, 1), singer(p, d - 1, b.i.value())});
            else
                h = Matrix::identity(p, 1);
            break;
        case 3:
            switch (L) {
                case 1: h = direct_sum(p, {jordan_block(p, 1), singer(p, d - 1, 1)}); break;
                case 2: h = direct_sum(p, {singer(p, b.dims[0], 1), singer(p, b.dims[1], 1)}); break;
                case 3:
                    h = direct_sum(p, {kronecker(singer(p, 1, 1), jordan_block(p, 2)),
                                       singer(p, d - 2, b.i.value())});
                    break;
                case 4: h = direct_sum(p, {jordan_block(p, 2), singer(p, d - 2, 1)}); break;
                case 5:
                    h = direct_sum(p, {jordan_block(p, 1), sub_matrix(p, d - 1, b.sub_line.value(), b.sub_dims)});
                    break;
                case 6: h = direct_sum(p, {jordan_block(p, 3), singer(p, d - 3, 1)}); break;
                case 7:
                case 8: h = singer_sum(p, b.dims); break;
                case 9: {
                    std::vector<Matrix> parts{kronecker(singer(p, 2, 1), jordan_block(p, 2))};
                    for (u32 j : b.dims) parts.push_back(singer(p, j, 1));
                    h = direct_sum(p, parts);
                    break;
                }
                case 10: {
                    std::vector<Matrix> parts{jordan_block(p, 3)};
                    for (u32 j : b.dims) parts.push_back(singer(p, j, 1));
                    h = direct_sum(p, parts);
                    break;
                }
                case 11: {
                    std::vector<Matrix> parts{jordan_block(p, 2)};
                    for (u32 j : b.dims) parts.push_back(singer(p, j, 1));
                    h = direct_sum(p, parts);
                    break;
                }
                case 12: h = singer_sum(p, b.dims); break;
                case 13: {
                    std::vector<Matrix> parts{singer(p, b.dims[0], 3)};
                    for (std::size_t k = 1; k < b.dims.size(); ++k)
                        parts.push_back(singer(p, b.dims[k], 1));
                    h = direct_sum(p, parts);
                    break;
                }
                case 14:
                    h = direct_sum(p, {jordan_block(p, 1), sub_matrix(p, d - 1, b.sub_line.value(), b.sub_dims)});
                    break;
                case 15:
                    h = direct_sum(p, {jordan_block(p, 2), sub_matrix(p, d - 2, b.sub_line.value(), b.sub_dims)});
                    break;
                case 16:
                    h = direct_sum(p, {jordan_block(p, 4), sub_matrix(p, d - 4, b.sub_line.value(), b.sub_dims)});
                    break;
                case 17: h = direct_sum(p, {jordan_block(p, 2), singer(p, d - 2, b.i.value())}); break;
                default: throw std::invalid_argument("instantiate: bad line");
            }
            break;
        case 4:
            switch (L) {
                case 1: h = kronecker(singer(p, 1, b.i.value()), jordan_block(p, 2)); break;
                case 2: h = kronecker(singer(p, 2, 1), jordan_block(p, 2)); break;
                case 3: h = jordan_block(p, p); break;
                case 4: h = jordan_block(p, d); break;
                case 5:
                case 10: h = direct_sum(p, {jordan_block(p, 2), jordan_block(p, 1)}); break;
                case 6: h = direct_sum(p, {jordan_block(p, 3), jordan_block(p, 1)}); break;
                case 7: h = jordan_block(p, 4); break;
                case 8: h = direct_sum(p, {jordan_block(p, 2), jordan_block(p, 2)}); break;
                case 9:
                    h = direct_sum(p, {jordan_block(p, 2), jordan_block(p, 1), jordan_block(p, 1)});
                    break;
                case 11: h = Matrix::identity(p, 3); break;
                default: throw std::invalid_argument("instantiate: bad line");
            }
            break;
        case 5:
            if (L == 1)
                h = singer(p, d, b.i.value());
            else if (L == 2)
                h = kronecker(singer(p, 1, 1), jordan_block(p, 2));
            else if (L == 3)
                h = Matrix::identity(p, 1);
            else
                h = direct_sum(p, {jordan_block(p, 1), singer(p, d - 1, b.i.value())});
            break;
        case 6:
            switch (L) {
                case 1: h = direct_sum(p, {singer(p, b.a1.value(), 1), singer(p, b.a2.value(), 1)}); break;
                case 2: h = direct_sum(p, {jordan_block(p, 1), singer(p, d - 1, 1)}); break;
                case 3:
                    h = direct_sum(p, {jordan_block(p, 3), singer(p, d - 3, 1)});
                    tvec = 1;  // t_{e_1} with |g| = |h|
                    break;
                case 4:
                    h = direct_sum(p, {jordan_block(p, 1), jordan_block(p, 1), singer(p, d - 2, 1)});
                    break;
                case 5: h = direct_sum(p, {jordan_block(p, 2), singer(p, d - 2, b.i.value())}); break;
                case 6:
                    h = direct_sum(p, {jordan_block(p, 2), jordan_block(p, 1), singer(p, d - 3, 1)});
                    break;
                case 7:
                    h = direct_sum(p, {jordan_block(p, b.a.value()), singer(p, b.a1.value(), 1), singer(p, b.a2.value(), 1)});
                    break;
                case 8: h = direct_sum(p, {jordan_block(p, 4), singer(p, d - 4, 1)}); break;
                default: throw std::invalid_argument("instantiate: bad line");
            }
            break;
        case 7:
            switch (L) {
                case 1: h = Matrix::identity(p, 2); break;
                case 2:
                    h = jordan_block(p, 2);
                    tvec = 1;
                    break;
                case 3:
                    h = jordan_block(p, 3);
                    tvec = 1;
                    break;
                case 4:
                    h = direct_sum(p, {jordan_block(p, 2), jordan_block(p, 1)});
                    tvec = 3;  // t_{e_3}
                    break;
                case 5: h = jordan_block(p, 3); break;
                case 6:
                    h = direct_sum(p, {jordan_block(p, 3), jordan_block(p, 1)});
                    tvec = 1;
                    break;
                case 7: h = kronecker(singer(p, 2, 1), jordan_block(p, 2)); break;
                case 8:
                    h = jordan_block(p, 5);
                    tvec = 1;
                    break;
                case 9: h = jordan_block(p, 2); break;
                case 10: h = Matrix::identity(p, 3); break;
                case 11: h = direct_sum(p, {jordan_block(p, 2), jordan_block(p, 1)}); break;
                case 12: h = jordan_block(p, 3); break;
                case 13:
                    h = (b.variant.value() == 0)
                            ? direct_sum(p, {jordan_block(p, 2), jordan_block(p, 2)})
                            : direct_sum(p, {jordan_block(p, 2), jordan_block(p, 1), jordan_block(p, 1)});
                    break;
                case 14: h = jordan_block(p, 4); break;
                case 15: h = direct_sum(p, {jordan_block(p, 4), jordan_block(p, 1)}); break;
                default: throw std::invalid_argument("instantiate: bad line");
            }
            break;
        default:
            throw std::invalid_argument("instantiate: bad table");
    }
    if (h.rows != d) throw std::invalid_argument("instantiate: binding does not produce dimension d");
    Vec v = tvec ? basis_vec(d, u32(tvec)) : Vec(d, 0);
    return make_affine(std::move(h), std::move(v));
}

// ---------------------------------------------------------------------------
// matching

CatalogIndex CatalogIndex::build(u32 p, u32 d, TableKind kind) {
    CatalogIndex idx;
    idx.p = p;
    idx.d = d;
    idx.kind = kind;
    idx.entries = catalog(p, d, kind);
    return idx;
}

MatchResult match_shape(const CatalogIndex& idx, const Shape& sh, int delta, u64 order,
                        const std::vector<u64>* actual_cycles) {
    MatchResult res;
    u64 space = ipow(idx.p, idx.d);
    res.threshold_met = 4 * order >= space;
    for (const auto& e : idx.entries) {
        if (e.delta != delta || e.order != order) continue;
        if (idx.kind == TableKind::cycles) {
            if (!actual_cycles || e.cycles != *actual_cycles) continue;
        }
        if (shape_matches(e.line, e.binding, sh, idx.p, idx.d)) {
            res.matched.push_back({e.line, e.binding});
            if (idx.kind == TableKind::cycles) res.cycle_match = true;
        }
    }
    return res;
}

MatchResult match(const AffineMap& g, TableKind kind, u64 space_cap) {
    CatalogIndex idx = CatalogIndex::build(g.p(), g.d(), kind);
    Shape sh = shape_of(class_invariant(g.h));
    AffineOrder ao = affine_order(g);
    if (kind == TableKind::orders) return match_shape(idx, sh, ao.profile.delta, ao.order, nullptr);
    CycleStructure cs = cycle_structure(g, space_cap);
    return match_shape(idx, sh, ao.profile.delta, ao.order, &cs.lengths);
}

}  // namespace afftool
