#ifndef QUADDEC_IO_HPP
#define QUADDEC_IO_HPP

#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "quaddec/approx.hpp"
#include "quaddec/boundary_eq.hpp"
#include "quaddec/circle.hpp"

namespace quaddec::io {

using nlohmann::json;

class parse_error : public qd_error {
public:
    explicit parse_error(const std::string& what) : qd_error(what) {}
};

// ---------------------------------------------------------------------------
// complex <-> [re, im]
// ---------------------------------------------------------------------------

inline json to_json(cplx v) { return json::array({v.real(), v.imag()}); }

inline cplx complex_from(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw parse_error(std::string(where) + ": expected [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

// ---------------------------------------------------------------------------
// polynomials and rational functions
// ---------------------------------------------------------------------------

inline json to_json(const ComplexPoly& p) {
    json coeffs = json::array();
    for (const cplx& c : p.coeffs()) coeffs.push_back(to_json(c));
    if (p.is_zero()) coeffs.push_back(to_json(cplx(0.0)));
    return json{{"coeffs", coeffs}};
}

inline ComplexPoly poly_from(const json& j, const char* where) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw parse_error(std::string(where) + ": expected {\"coeffs\": [[re,im],...]}");
    std::vector<cplx> c;
    for (const auto& e : j["coeffs"]) c.push_back(complex_from(e, where));
    return ComplexPoly(std::move(c));
}

inline json to_json(const RationalFunction& r) {
    return json{{"num", to_json(r.num())}, {"den", to_json(r.den())}};
}

inline RationalFunction rational_from(const json& j, const char* where) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw parse_error(std::string(where) + ": expected {\"num\":poly, \"den\":poly}");
    return RationalFunction(poly_from(j["num"], where), poly_from(j["den"], where));
}

inline json to_json(const BivariatePoly& p) {
    json rows = json::array();
    for (int i = 0; i <= std::max(p.deg_z(), 0); ++i) {
        json row = json::array();
        for (int j = 0; j <= std::max(p.deg_zbar(), 0); ++j) row.push_back(to_json(p.coeff(i, j)));
        rows.push_back(row);
    }
    return json{{"coeffs", rows}};
}

inline BivariatePoly bivariate_poly_from(const json& j, const char* where) {
    if (!j.is_object() || !j.contains("coeffs") || !j["coeffs"].is_array())
        throw parse_error(std::string(where) + ": expected {\"coeffs\": [[[re,im],...],...]}");
    std::vector<std::vector<cplx>> c;
    for (const auto& row : j["coeffs"]) {
        if (!row.is_array()) throw parse_error(std::string(where) + ": ragged coeffs");
        std::vector<cplx> r;
        for (const auto& e : row) r.push_back(complex_from(e, where));
        c.push_back(std::move(r));
    }
    return BivariatePoly(std::move(c));
}

inline json to_json(const BivariateRational& r) {
    return json{{"num", to_json(r.num)}, {"den", to_json(r.den)}};
}

inline BivariateRational bivariate_from(const json& j, const char* where) {
    if (!j.is_object() || !j.contains("num") || !j.contains("den"))
        throw parse_error(std::string(where) + ": expected bivariate {\"num\", \"den\"}");
    return BivariateRational(bivariate_poly_from(j["num"], where),
                             bivariate_poly_from(j["den"], where));
}

// ---------------------------------------------------------------------------
// domains, decompositions, kernel terms
// ---------------------------------------------------------------------------

inline json to_json_domain(const QuadratureDomain& q) {
    return json{{"map", to_json(q.map())}};
}

inline QuadratureDomain domain_from(const json& j, DomainOptions opt = {}) {
    if (!j.is_object() || !j.contains("map"))
        throw parse_error("domain: expected {\"map\": rational}");
    return QuadratureDomain(rational_from(j["map"], "domain.map"), opt);
}

inline json to_json(const circle::CircleDecomposition& d) {
    json out{{"form", circle::form_name(d.form)},
             {"r1", to_json(d.r1)},
             {"r2", to_json(d.r2)}};
    if (d.has_boundary_poles) out["boundary_poles"] = true;
    return out;
}

inline circle::Form circle_form_from(const std::string& s) {
    if (s == "poles_outside") return circle::Form::poles_outside;
    if (s == "poles_inside") return circle::Form::poles_inside;
    if (s == "holo_restriction") return circle::Form::holo_restriction;
    if (s == "antiholo_restriction") return circle::Form::antiholo_restriction;
    throw parse_error("unknown circle form: " + s);
}

inline json to_json(const decomp::KernelTerm& t) {
    return json{{"kind", decomp::kind_name(t.kind)},
                {"a", to_json(t.a)},
                {"m", t.m},
                {"coeff", to_json(t.coeff)}};
}

inline decomp::TermKind kind_from(const std::string& s) {
    if (s == "K") return decomp::TermKind::K;
    if (s == "Lambda") return decomp::TermKind::Lambda;
    if (s == "k_lower") return decomp::TermKind::k_lower;
    if (s == "lambda_lower") return decomp::TermKind::lambda_lower;
    throw parse_error("unknown kernel term kind: " + s);
}

inline decomp::KernelTerm kernel_term_from(const json& j) {
    if (!j.is_object() || !j.contains("kind") || !j.contains("a") || !j.contains("m") ||
        !j.contains("coeff"))
        throw parse_error("kernel term: expected {kind, a, m, coeff}");
    return {kind_from(j["kind"].get<std::string>()), complex_from(j["a"], "term.a"),
            j["m"].get<int>(), complex_from(j["coeff"], "term.coeff")};
}

inline json to_json(const decomp::Decomposition& d) {
    json k = json::array(), l = json::array();
    for (const auto& t : d.terms1) k.push_back(to_json(t));
    for (const auto& t : d.terms2) l.push_back(to_json(t));
    return json{{"form", decomp::form_name(d.form)},
                {"constant", to_json(d.constant)},
                {"k_terms", k},
                {"lambda_terms", l}};
}

inline decomp::Form decomp_form_from(const std::string& s) {
    if (s == "k_lambda") return decomp::Form::k_lambda;
    if (s == "k_kbar") return decomp::Form::k_kbar;
    if (s == "lambda_lambdabar") return decomp::Form::lambda_lambdabar;
    throw parse_error("unknown decomposition form: " + s);
}

inline json to_json(const ImplicitCurve& c) {
    json j = to_json(c.poly);
    j["var_order"] = "z,zbar";
    return j;
}

inline json to_json(const QuadratureData& qd) {
    json nodes = json::array();
    for (const auto& n : qd.nodes) {
        json ws = json::array();
        for (const cplx& w : n.weights) ws.push_back(to_json(w));
        nodes.push_back(json{{"node", to_json(n.node)}, {"weights", ws}});
    }
    return json{{"nodes", nodes}};
}

inline json to_json(const approx::ApproximationReport& rep) {
    return json{{"domain", to_json_domain(rep.domain)},
                {"sup_error", rep.sup_error},
                {"derivative_error", rep.derivative_error},
                {"kind", rep.kind == approx::Kind::area ? "area" : "area_and_arclength"}};
}

// ---------------------------------------------------------------------------
// CSV
// ---------------------------------------------------------------------------

// Round-trippable doubles: 17 significant digits.
inline std::string csv_num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header) : cols_(header.size()) {
        for (size_t i = 0; i < header.size(); ++i) {
            if (i) os_ << ",";
            os_ << header[i];
        }
        os_ << "\n";
    }
    void row(const std::vector<double>& vals) {
        if (vals.size() != cols_) throw domain_error("CsvWriter: column mismatch");
        for (size_t i = 0; i < vals.size(); ++i) {
            if (i) os_ << ",";
            os_ << csv_num(vals[i]);
        }
        os_ << "\n";
    }
    std::string str() const { return os_.str(); }

private:
    std::ostringstream os_;
    size_t cols_;
};

// theta, re(z), im(z), re(S), im(S), re(T), im(T)
inline std::string boundary_csv(const QuadratureDomain& q, int samples) {
    CsvWriter csv({"theta", "re_z", "im_z", "re_S", "im_S", "re_T", "im_T"});
    for (int k = 0; k < samples; ++k) {
        double theta = 2.0 * pi * k / samples;
        cplx z = q.boundary_point(theta);
        cplx S = q.schwarz_w()(std::polar(1.0, theta));
        cplx T = q.tangent(theta);
        csv.row({theta, z.real(), z.imag(), S.real(), S.imag(), T.real(), T.imag()});
    }
    return csv.str();
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw parse_error("JSON parse failure in " + path + ": " + e.what());
    }
    return j;
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw qd_error("cannot write file: " + path);
    out << content;
}

}  // namespace quaddec::io

#endif
