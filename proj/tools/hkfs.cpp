#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "hkfs/hkfs.hpp"

using namespace hkfs;
using Json = nlohmann::ordered_json;

namespace {

// Rendering of exact values. Integers become JSON numbers when they fit, other rationals
// "num/den" strings; --decimal switches both to fixed-point strings.
struct Render {
    std::optional<unsigned> decimal;

    Json num(const Rational& r) const {
        if (decimal) return to_decimal(r, *decimal);
        if (is_integer(r)) return integer(r.get_num());
        return r.get_str();
    }
    Json integer(const Integer& z) const {
        if (z.fits_slong_p()) return z.get_si();
        return z.get_str();
    }
    Json poly(const Polynomial& p, const std::string& var) const {
        Json coeffs = Json::array();
        for (const auto& c : p.coefficients()) coeffs.push_back(num(c));
        return Json{{"text", p.to_string(var)}, {"coefficients", coeffs}};
    }
};

std::string cell(const Json& v) {
    if (v.is_string()) {
        std::string s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    if (v.is_object() && v.contains("text")) return cell(v["text"]);
    if (v.is_array() || v.is_object()) return cell(Json(v.dump()));
    return v.dump();
}

std::string plain(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_object() && v.contains("text")) return v["text"].get<std::string>();
    return v.dump();
}

void print_pretty(std::ostream& out, const Json& result) {
    for (const auto& [key, v] : result.items()) {
        if (v.is_array() && !v.empty() && v.front().is_object() && !v.front().contains("text")) {
            out << key << ":\n";
            std::vector<std::string> cols;
            for (const auto& [k, x] : v.front().items()) cols.push_back(k);
            std::vector<std::size_t> width(cols.size());
            for (std::size_t i = 0; i < cols.size(); ++i) width[i] = cols[i].size();
            for (const auto& row : v)
                for (std::size_t i = 0; i < cols.size(); ++i) width[i] = std::max(width[i], plain(row[cols[i]]).size());
            auto line = [&](auto get) {
                out << " ";
                for (std::size_t i = 0; i < cols.size(); ++i) {
                    std::string s = get(i);
                    out << " " << s << std::string(width[i] - s.size(), ' ');
                }
                out << "\n";
            };
            line([&](std::size_t i) { return cols[i]; });
            for (const auto& row : v) line([&](std::size_t i) { return plain(row[cols[i]]); });
        } else if (v.is_array()) {
            out << key << ": ";
            for (std::size_t i = 0; i < v.size(); ++i) out << (i ? ", " : "") << plain(v[i]);
            out << "\n";
        } else {
            out << key << ": " << plain(v) << "\n";
        }
    }
}

// A "rows" array becomes a table; otherwise key,value lines.
void print_csv(std::ostream& out, const Json& result) {
    if (result.contains("rows") && result["rows"].is_array() && !result["rows"].empty()) {
        const Json& rows = result["rows"];
        bool first = true;
        for (const auto& [k, x] : rows.front().items()) {
            out << (first ? "" : ",") << cell(Json(k));
            first = false;
        }
        out << "\n";
        for (const auto& row : rows) {
            first = true;
            for (const auto& [k, x] : row.items()) {
                out << (first ? "" : ",") << cell(x);
                first = false;
            }
            out << "\n";
        }
        return;
    }
    out << "key,value\n";
    for (const auto& [k, v] : result.items()) out << cell(Json(k)) << "," << cell(v) << "\n";
}

std::vector<long> parse_list(const std::string& s) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) throw HypothesisError("empty entry in list '" + s + "'");
        std::size_t pos = 0;
        long v = 0;
        try {
            v = std::stol(item, &pos);
        } catch (const std::exception&) {
            pos = 0;
        }
        if (pos != item.size()) throw HypothesisError("not an integer: '" + item + "'");
        out.push_back(v);
    }
    if (out.empty()) throw HypothesisError("empty list");
    return out;
}

struct Options {
    std::string degrees, poly, poly_file, primes, k_list, rules, only, format = "pretty";
    std::uint64_t p = 0, a = 0, bound = 0;
    unsigned e = 1, n = 0, d = 0, terms = 8;
    bool has_a = false;
    std::optional<unsigned> decimal;
};

struct Hyper {
    std::optional<DiagonalHypersurface> diag;
    std::optional<GenericPolynomial> generic;
    std::string text;
};

Hyper hypersurface(const Options& o) {
    int given = !o.degrees.empty() + !o.poly.empty() + !o.poly_file.empty();
    if (given != 1) throw HypothesisError("give exactly one of --degrees, --poly, --poly-file");
    Hyper h;
    if (!o.degrees.empty()) {
        h.diag.emplace(parse_list(o.degrees));
        h.text = h.diag->to_string();
        return h;
    }
    std::string text = o.poly;
    if (!o.poly_file.empty()) {
        std::ifstream in(o.poly_file);
        if (!in) throw HypothesisError("cannot open polynomial file '" + o.poly_file + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        text = buf.str();
    }
    h.generic.emplace(GenericPolynomial::parse(text));
    h.text = text;
    while (!h.text.empty() && std::isspace(static_cast<unsigned char>(h.text.back()))) h.text.pop_back();
    return h;
}

DiagonalHypersurface diagonal_only(const Options& o) {
    if (o.degrees.empty()) throw HypothesisError("this command needs --degrees");
    return DiagonalHypersurface(parse_list(o.degrees));
}

std::uint64_t need_prime(const Options& o) {
    if (o.p == 0) throw HypothesisError("--p is required");
    require_prime(o.p);
    return o.p;
}

Json piecewise(const Render& R, const PiecewisePolynomial& pp) {
    Json br = Json::array();
    for (const auto& b : pp.breakpoints()) br.push_back(R.num(b));
    Json rows = Json::array();
    for (std::size_t i = 0; i < pp.pieces().size(); ++i)
        rows.push_back(Json{{"from", R.num(pp.breakpoints()[i])},
                            {"to", R.num(pp.breakpoints()[i + 1])},
                            {"polynomial", pp.pieces()[i].to_string("t")}});
    return Json{{"breakpoints", br}, {"rows", rows}};
}

Json series_json(const Render& R, const RationalSeries& s, unsigned terms) {
    Json coeffs = Json::array();
    for (const auto& c : s.coefficients(terms)) coeffs.push_back(R.num(c));
    return Json{{"series", s.to_string()},
                {"numerator", s.numerator().to_string("z")},
                {"denominator", s.denominator().to_string("z")},
                {"coefficients", coeffs}};
}

void merge(Json& into, const Json& from) {
    for (const auto& [k, v] : from.items()) into[k] = v;
}

// ---------------------------------------------------------------------------
// Regression checks against known values.

struct Check {
    std::string name;
    std::string group;
    std::string anchor;
    std::string expected;
    std::function<std::string()> compute;
};

std::string fixture(const std::string& name) {
#ifdef HKFS_FIXTURE_DIR
    return std::string(HKFS_FIXTURE_DIR) + "/" + name;
#else
    return "fixtures/" + name;
#endif
}

std::vector<Check> known_checks() {
    auto str = [](const auto& x) { return x.get_str(); };
    std::vector<Check> c;
    c.push_back({"lambda1^2 at p=3", "ring", "lambda product rule", "L0 + L1 + L2",
                 [] { return gamma_mul(GammaElement::lambda(3, 1), GammaElement::lambda(3, 1)).to_string(); }});
    c.push_back({"lambda2*lambda5 at p=3", "ring", "lambda product rule", "L3",
                 [] { return gamma_mul(GammaElement::lambda(3, 2), GammaElement::lambda(3, 5)).to_string(); }});
    c.push_back({"theta(lambda1) at p=3", "ring", "theta on the lambda basis", "L5",
                 [] { return theta(GammaElement::lambda(3, 1)).to_string(); }});
    c.push_back({"D(2,2,3) at p=3", "hm", "folded coefficient formula", "4",
                 [str] { return str(d_number_hm({3, {2, 2, 3}})); }});
    c.push_back({"phi x^2+y^2+z^2 at 2/3", "phi", "normalized colength", "22/27",
                 [str] { return str(phi_diagonal(DiagonalHypersurface({2, 2, 2}), DyadicPoint(3, 2, 1))); }});
    c.push_back({"FS(1) x^3+y^3+z^3+w^3, p=5", "cubic", "F-signature function", "16",
                 [str] { return str(fs_value(DiagonalHypersurface({3, 3, 3, 3}), 5, 1)); }});
    c.push_back({"FS(1) x^3+y^3+z^3+w^3, p=7", "cubic", "F-signature function", "45",
                 [str] { return str(fs_value(DiagonalHypersurface({3, 3, 3, 3}), 7, 1)); }});
    c.push_back({"s for Fermat cubic, p=5", "cubic", "Fermat cubic F-signature", "15/124",
                 [str] { return str(fermat_fs_closed({5, 3, 4}).s); }});
    c.push_back({"s for Fermat cubic, p=7", "cubic", "Fermat cubic F-signature", "21/170",
                 [str] { return str(fermat_fs_closed({7, 3, 4}).s); }});
    c.push_back({"B for Fermat cubic, p=7", "cubic", "two-term closed form", "3",
                 [str] { return str(fermat_fs_closed({7, 3, 4}).B); }});
    c.push_back({"Fermat cubic weights, p=5", "cubic", "partial fractions of the series", "125:15/124 1:109/124",
                 [str] {
                     auto w = partial_fractions(fermat_cubic(5).series, {Rational(125), Rational(1)});
                     return str(w[0].reciprocal) + ":" + str(w[0].weight) + " " + str(w[1].reciprocal) + ":" +
                            str(w[1].weight);
                 }});
    c.push_back({"FS(2) quadric 3-fold, p=3", "quadric", "(p^{2e}+1)/2", "41",
                 [str] { return str(fs_value(DiagonalHypersurface({2, 2, 2}), 3, 2)); }});
    c.push_back({"FS constant for d=n=3, p=7", "fs-one", "d = n, p = 1 mod d", "1 1",
                 [str] {
                     auto v = fs_equal_one({7, 3, 3});
                     return str(v[0]) + " " + str(v[1]);
                 }});
    c.push_back({"limit phi of x^2+y^3", "limit", "limit function of a cusp",
                 "[0, 1/6]: 2*t; [1/6, 5/6]: -3/2*t^2 + 5/2*t - 1/24; [5/6, 1]: 1",
                 [] {
                     std::string s = limit_phi(DiagonalHypersurface({2, 3})).to_string();
                     for (std::size_t i; (i = s.find('\n')) != std::string::npos;) s.replace(i, 1, "; ");
                     return s;
                 }});
    c.push_back({"LCT of x^2+y^3", "limit", "log canonical threshold", "5/6",
                 [str] { return str(lct(DiagonalHypersurface({2, 3}))); }});
    c.push_back({"limit FS of x^3+y^3+z^3+w^3", "limit", "limit F-signature", "1/8",
                 [str] { return str(limit_fs(DiagonalHypersurface({3, 3, 3, 3}))); }});
    c.push_back({"limit FS of x^2+y^2+z^2", "limit", "1 - c_n", "1/2",
                 [str] { return str(limit_fs(DiagonalHypersurface({2, 2, 2}))); }});
    c.push_back({"B for (5,3,4)", "classify", "B/C classification table", "1",
                 [str] { return str(fermat_B({5, 3, 4})); }});
    c.push_back({"B for (13,7,8)", "classify", "B/C classification table", "0",
                 [str] { return str(fermat_B({13, 7, 8})); }});
    c.push_back({"class of d=21, p=419", "classify", "B/C classification table", "B=1",
                 [] { return to_string(bc_classify({419, 21, 22})); }});
    c.push_back({"class of d=4, p=7", "classify", "B/C classification table", "not F-pure",
                 [] { return to_string(fpure_classification({7, 4, 5})); }});
    c.push_back({"FSS for y^3-x^4+x^2y^2 twice", "nondiagonal", "non-diagonal example in char 3", "(1)/(-z + 1)",
                 [] { return fss_rule_file(load_rule_file(fixture("nondiagonal1.rules"))).to_string(); }});
    c.push_back({"s for y^3-x^4+x^2y^2+zw(z+w)", "nondiagonal", "27-pole weight", "21/727",
                 [str] { return str(pole_weight(fss_rule_file(load_rule_file(fixture("nondiagonal2.rules"))), 27)); }});
    c.push_back({"s for x^3+y^4+z^4+zw^3 in char 7", "nondiagonal", "343-pole weight", "182139/40118308",
                 [str] { return str(pole_weight(fss_rule_file(load_rule_file(fixture("char7.rules"))), 343)); }});
    c.push_back({"primes d^2-d-1, odd 3<d<10^6", "census", "prime census", "69625",
                 [] { return std::to_string(bunyakovsky_census(1000000)); }});
    return c;
}

int run_verify(const Options& o, const Render&, Json& result) {
    Json rows = Json::array();
    int failures = 0;
    for (const auto& chk : known_checks()) {
        if (!o.only.empty() && chk.group != o.only && chk.name.find(o.only) == std::string::npos) continue;
        std::string got;
        try {
            got = chk.compute();
        } catch (const std::exception& ex) {
            got = std::string("error: ") + ex.what();
        }
        bool ok = got == chk.expected;
        failures += !ok;
        rows.push_back(Json{{"check", chk.name}, {"group", chk.group}, {"anchor", chk.anchor},
                            {"expected", chk.expected}, {"computed", got}, {"status", ok ? "pass" : "FAIL"}});
    }
    if (rows.empty()) throw HypothesisError("no check matches --only '" + o.only + "'");
    result["rows"] = rows;
    result["failures"] = failures;
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Frobenius invariants of diagonal hypersurfaces: colength functions, Hilbert-Kunz and F-signature"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "json, csv or pretty")->check(CLI::IsMember({"json", "csv", "pretty"}));
        sub->add_option("--decimal", o.decimal, "render rationals with k decimal digits (round half even)");
    };
    auto hyper_opts = [&](CLI::App* sub) {
        sub->add_option("--degrees", o.degrees, "comma-separated exponents d_1,...,d_n");
        sub->add_option("--poly", o.poly, "polynomial such as 'y^3 - x^4 + x^2*y^2'");
        sub->add_option("--poly-file", o.poly_file, "file holding the polynomial");
    };
    auto fermat_opts = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "prime")->required();
        sub->add_option("--d", o.d, "degree")->required();
        sub->add_option("--n", o.n, "number of variables")->required();
    };

    struct Cmd {
        CLI::App* app;
        std::vector<std::string> anchors;
        std::function<int(Json&, const Render&)> run;
    };
    std::vector<Cmd> cmds;
    auto add = [&](const std::string& name, const std::string& help, std::vector<std::string> anchors,
                   std::function<int(Json&, const Render&)> run) {
        CLI::App* sub = app.add_subcommand(name, help);
        common(sub);
        cmds.push_back({sub, std::move(anchors), std::move(run)});
        return sub;
    };

    auto phi_like = [&](bool complement) {
        return [&, complement](Json& res, const Render& R) {
            Hyper h = hypersurface(o);
            const std::uint64_t p = need_prime(o);
            res["f"] = h.text;
            auto value = [&](std::uint64_t a) {
                DyadicPoint t(p, a, o.e);
                Rational v = h.diag ? phi_diagonal(*h.diag, t) : phi_generic(*h.generic, t);
                return complement ? Rational(1 - v) : v;
            };
            if (o.has_a) {
                res["t"] = R.num(DyadicPoint(p, o.a, o.e).value());
                res[complement ? "psi" : "phi"] = R.num(value(o.a));
                return 0;
            }
            Json rows = Json::array();
            const std::uint64_t q = upow(p, o.e);
            std::optional<PhiTable> table;
            if (h.diag) table = phi_table_diagonal(*h.diag, p, o.e);
            for (std::uint64_t a = 0; a <= q; ++a) {
                Rational v = table ? table->at(a) : value(a);
                if (table && complement) v = 1 - v;
                rows.push_back(Json{{"a", a}, {"t", R.num(DyadicPoint(p, a, o.e).value())},
                                    {complement ? "psi" : "phi", R.num(v)}});
            }
            res["rows"] = rows;
            return 0;
        };
    };

    for (auto [name, comp] : {std::pair{"phi", false}, std::pair{"psi", true}}) {
        auto* s = add(name, comp ? "psi = 1 - phi at a/p^e (all a when --a is omitted)"
                                 : "normalized colength phi at a/p^e (all a when --a is omitted)",
                      {"normalized colength function"}, phi_like(comp));
        hyper_opts(s);
        s->add_option("--p", o.p, "prime");
        s->add_option("--a", o.a, "numerator a, 0 <= a <= p^e");
        s->add_option("--e", o.e, "level e");
    }

    for (auto [name, is_hk] : {std::pair{"hk", true}, std::pair{"fs", false}}) {
        auto* s = add(name, is_hk ? "Hilbert-Kunz function value" : "F-signature function value",
                      {is_hk ? "Hilbert-Kunz function" : "F-signature function"}, [&, is_hk](Json& res, const Render& R) {
                          Hyper h = hypersurface(o);
                          const std::uint64_t p = need_prime(o);
                          require(o.e >= 1, "--e must be positive");
                          res["f"] = h.text;
                          res["p"] = p;
                          res["e"] = o.e;
                          Integer v;
                          if (h.diag) {
                              v = is_hk ? hk_value(*h.diag, p, o.e) : fs_value(*h.diag, p, o.e);
                          } else {
                              const std::uint64_t q = upow(p, o.e);
                              Rational phi = phi_generic(*h.generic, DyadicPoint(p, is_hk ? 1 : q - 1, o.e));
                              Rational x = (is_hk ? phi : Rational(1 - phi)) *
                                           ipow(p, static_cast<unsigned long>(h.generic->n()) * o.e);
                              ensure(is_integer(x), "non-integral colength");
                              v = x.get_num();
                          }
                          res[is_hk ? "hk" : "fs"] = R.integer(v);
                          return 0;
                      });
        hyper_opts(s);
        s->add_option("--p", o.p, "prime");
        s->add_option("--e", o.e, "level e >= 1");
    }

    {
        auto* s = add("fpt", "bracket [a/p^e, (a+1)/p^e] holding the F-pure threshold", {"F-pure threshold"},
                      [&](Json& res, const Render& R) {
                          Hyper h = hypersurface(o);
                          const std::uint64_t p = need_prime(o);
                          auto br = h.diag ? fpt_bracket(*h.diag, p, o.e) : fpt_bracket(*h.generic, p, o.e);
                          res["f"] = h.text;
                          res["lower"] = R.num(br.first.value());
                          res["upper"] = R.num(br.second.value());
                          return 0;
                      });
        hyper_opts(s);
        s->add_option("--p", o.p, "prime");
        s->add_option("--e", o.e, "level e >= 1");
    }

    {
        auto* s = add("limit-phi", "piecewise-polynomial limit of phi as p grows", {"limit colength function"},
                      [&](Json& res, const Render& R) {
                          DiagonalHypersurface f = diagonal_only(o);
                          res["f"] = f.to_string();
                          merge(res, piecewise(R, limit_phi(f)));
                          return 0;
                      });
        s->add_option("--degrees", o.degrees, "comma-separated exponents")->required();
    }
    for (auto [name, which] : {std::pair{"limit-hk", 0}, std::pair{"limit-fs", 1}, std::pair{"lct", 2}}) {
        const char* help[] = {"limit Hilbert-Kunz multiplicity", "limit F-signature", "log canonical threshold"};
        auto* s = add(name, help[which], {help[which]}, [&, which](Json& res, const Render& R) {
            DiagonalHypersurface f = diagonal_only(o);
            res["f"] = f.to_string();
            Rational v = which == 0 ? limit_hk(f) : which == 1 ? limit_fs(f) : lct(f);
            res[which == 0 ? "limit_hk" : which == 1 ? "limit_fs" : "lct"] = R.num(v);
            return 0;
        });
        s->add_option("--degrees", o.degrees, "comma-separated exponents")->required();
    }

    {
        auto* s = add("quadric", "limit function of x_1^2 + ... + x_n^2 via Euler polynomials",
                      {"Fermat quadric limit", "sec + tan coefficients"}, [&](Json& res, const Render& R) {
                          require(o.n >= 2, "--n must be at least 2");
                          res["n"] = o.n;
                          Rational c = sec_tan_coefficient(o.n);
                          res["c_n"] = R.num(c);
                          res["limit_hk"] = R.num(1 + c);
                          res["limit_fs"] = R.num(1 - c);
                          merge(res, piecewise(R, quadric_limit_phi(o.n)));
                          return 0;
                      });
        s->add_option("--n", o.n, "number of variables")->required();
    }

    {
        auto* s = add("d-number", "dim F_p[x]/(x_i^{k_i}, x_1 + ... + x_n) three ways", {"D-numbers"},
                      [&](Json& res, const Render& R) {
                          const std::uint64_t p = need_prime(o);
                          DNumberQuery q{p, parse_list(o.k_list)};
                          res["p"] = p;
                          res["k"] = q.k;
                          res["repring"] = R.integer(d_number_repring(p, q.k));
                          try {
                              res["folded_formula"] = R.integer(d_number_hm(q));
                          } catch (const HypothesisError& ex) {
                              res["folded_formula"] = std::string("n/a: ") + ex.what();
                          }
                          try {
                              res["oracle"] = R.integer(d_number_oracle(q));
                          } catch (const HypothesisError& ex) {
                              res["oracle"] = std::string("n/a: ") + ex.what();
                          }
                          return 0;
                      });
        s->add_option("--p", o.p, "prime")->required();
        s->add_option("--k", o.k_list, "comma-separated k_1,...,k_n")->required();
    }

    {
        auto* s = add("fs-closed", "two-term closed form of the Fermat F-signature function",
                      {"two-term closed form", "Fermat F-signature"}, [&](Json& res, const Render& R) {
                          ClosedFormFS cf = fermat_fs_closed({o.p, o.d, o.n});
                          res["s"] = R.num(cf.s);
                          res["B"] = R.integer(cf.B);
                          res["C"] = R.integer(cf.C);
                          res["formula"] = "FS(e) = " + cf.s.get_str() + "*" + std::to_string(o.p) + "^(" +
                                           std::to_string(o.n - 1) + "e) + " + Rational(1 - cf.s).get_str() + "*" +
                                           cf.B.get_str() + "^e  (e >= 1)";
                          merge(res, series_json(R, cf.series, o.terms));
                          if (o.d == 3 && o.n == 4) res["cubic_formula_agrees"] = fermat_cubic(o.p).s == cf.s;
                          return 0;
                      });
        fermat_opts(s);
        s->add_option("--terms", o.terms, "number of series coefficients to list");
    }

    {
        auto* s = add("fs-series", "F-signature generating series from shifting rules",
                      {"F-signature series", "r_n recursion"}, [&](Json& res, const Render& R) {
                          RationalSeries fss;
                          std::uint64_t p = 0;
                          unsigned n = 0;
                          if (!o.rules.empty()) {
                              RuleFile rf = load_rule_file(o.rules);
                              fss = fss_rule_file(rf);
                              p = rf.rules.p;
                              n = rf.rules.n;
                          } else {
                              if (!o.p || !o.d || !o.n) throw HypothesisError("give --rules or all of --p, --d, --n");
                              fss = fermat_fss_symbolic(o.p, o.d, o.n);
                              p = o.p;
                              n = o.n;
                          }
                          merge(res, series_json(R, fss, o.terms));
                          try {
                              res["s"] = R.num(pole_weight(fss, Rational(ipow(p, n - 1))));
                          } catch (const HypothesisError&) {
                              res["s"] = R.num(0);
                          }
                          return 0;
                      });
        s->add_option("--rules", o.rules, "rule file");
        s->add_option("--p", o.p, "prime (Fermat case)");
        s->add_option("--d", o.d, "degree (Fermat case)");
        s->add_option("--n", o.n, "number of variables (Fermat case)");
        s->add_option("--terms", o.terms, "number of series coefficients to list");
    }

    {
        auto* s = add("classify", "F-purity and B/C class of a Fermat hypersurface",
                      {"F-purity classification", "B/C classification table"}, [&](Json& res, const Render& R) {
                          FermatQuery q{o.p, o.d, o.n};
                          res["fpure"] = to_string(fpure_classification(q));
                          try {
                              res["B"] = R.integer(fermat_B(q));
                          } catch (const HypothesisError& ex) {
                              res["B"] = std::string("n/a: ") + ex.what();
                          }
                          try {
                              res["bc"] = to_string(bc_classify(q));
                          } catch (const HypothesisError& ex) {
                              res["bc"] = std::string("n/a: ") + ex.what();
                          }
                          return 0;
                      });
        fermat_opts(s);
    }

    {
        auto* s = add("census", "odd d with 3 < d < bound and d^2 - d - 1 prime", {"prime census"},
                      [&](Json& res, const Render&) {
                          res["bound"] = o.bound;
                          res["count"] = bunyakovsky_census(o.bound);
                          return 0;
                      });
        s->add_option("--bound", o.bound, "exclusive upper bound for d")->required();
    }

    {
        auto* s = add("convergence", "sup-norm distance to the limit on the grid a/p, per prime",
                      {"uniform convergence", "limit Hilbert-Kunz multiplicity", "limit F-signature"},
                      [&](Json& res, const Render& R) {
                          DiagonalHypersurface f = diagonal_only(o);
                          std::vector<std::uint64_t> primes;
                          for (long v : parse_list(o.primes)) {
                              require(v > 1, "primes must exceed 1");
                              primes.push_back(static_cast<std::uint64_t>(v));
                          }
                          ConvergenceReport rep = convergence_report(f, primes);
                          res["f"] = f.to_string();
                          res["limit_hk"] = R.num(rep.hk_limit);
                          res["limit_fs"] = R.num(rep.fs_limit);
                          res["lipschitz_bound"] = R.integer(rep.lipschitz_bound);
                          Json rows = Json::array();
                          for (const auto& row : rep.rows)
                              rows.push_back(Json{{"p", row.p}, {"sup_error", R.num(row.sup_error)},
                                                  {"p_times_sup", R.num(row.scaled_sup)}, {"q0", R.num(row.q0)},
                                                  {"q1", R.num(row.q1)}});
                          res["rows"] = rows;
                          res["sup_strictly_decreasing"] = rep.sup_strictly_decreasing;
                          res["p_times_sup_bounded"] = rep.scaled_sup_bounded;
                          res["q0_monotone"] = rep.q0_monotone;
                          res["q1_monotone"] = rep.q1_monotone;
                          return 0;
                      });
        s->add_option("--degrees", o.degrees, "comma-separated exponents")->required();
        s->add_option("--primes", o.primes, "comma-separated primes")->required();
    }

    {
        auto* s = add("verify-known", "run the regression table of known values", {"regression table"},
                      [&](Json& res, const Render& R) { return run_verify(o, R, res); });
        s->add_option("--only", o.only, "group or substring of check names");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    for (auto& cmd : cmds) {
        if (!cmd.app->parsed()) continue;
        o.has_a = cmd.app->get_option_no_throw("--a") && cmd.app->get_option("--a")->count() > 0;
        Render R{o.decimal};
        Json result = Json::object();
        int code = 0;
        try {
            code = cmd.run(result, R);
        } catch (const HypothesisError& ex) {
            std::cerr << "error: " << ex.what() << "\n";
            return 2;
        } catch (const InternalError& ex) {
            std::cerr << "internal error: " << ex.what() << "\n";
            return 1;
        } catch (const std::exception& ex) {
            std::cerr << "internal error: " << ex.what() << "\n";
            return 1;
        }
        Json request = Json::object();
        request["command"] = cmd.app->get_name();
        for (const CLI::Option* opt : cmd.app->get_options()) {
            if (opt->get_name() == "--help" || opt->count() == 0) continue;
            std::string key = opt->get_name();
            key.erase(0, key.find_first_not_of('-'));
            request[key] = opt->as<std::string>();
        }
        if (o.format == "json") {
            Json doc{{"request", request}, {"result", result}, {"anchors", cmd.anchors}};
            std::cout << doc.dump(2) << "\n";
        } else if (o.format == "csv") {
            print_csv(std::cout, result);
        } else {
            print_pretty(std::cout, result);
        }
        return code;
    }
    return 2;
}
