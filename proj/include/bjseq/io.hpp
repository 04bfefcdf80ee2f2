#pragma once

// JSON forms of scalars, sequences, verdicts, operators and sampler configs.
//   scalar:   "p/q" | number | {"re": .., "im": ..} | {"value": double, "tol": r} (approximate)
//   sequence: {"field": "real"|"complex", "prefix": [scalar...], "tail": [{"type": ...}]}

#include <cmath>
#include <fstream>
#include <json.hpp>

#include "campaign.hpp"
#include "dual.hpp"
#include "isometry.hpp"
#include "norm.hpp"
#include "oracle.hpp"
#include "sampling.hpp"

namespace bjseq {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

inline json number_or_inf(double v) {
    if (std::isfinite(v)) return v;
    return v > 0 ? "inf" : "-inf";
}

// ---------------------------------------------------------------------------
// Scalars.

namespace detail {

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_number_float()) {
        // Decimal literals are read as written (0.1 is 1/10), not as the nearest double.
        if (!std::isfinite(j.get<double>())) throw ValidationError("non-finite number");
        std::string text = j.dump();
        if (text.find_first_of("eE") != std::string::npos) return Rational(j.get<double>());
        return parse_rational(text);
    }
    throw ValidationError("expected a rational, got " + j.dump());
}

}  // namespace detail

inline json to_json(const Scalar& s) {
    if (s.is_exact()) {
        if (s.field() == Field::Real) return to_string(s.re());
        return json{{"re", to_string(s.re())}, {"im", to_string(s.im())}};
    }
    json v = s.field() == Field::Real ? json(s.center().real())
                                      : json{{"re", s.center().real()}, {"im", s.center().imag()}};
    return json{{"value", v}, {"tol", s.radius()}};
}

inline Scalar scalar_from_json(const json& j, Field f = Field::Real) {
    if (j.is_object()) {
        if (j.contains("value")) {
            double tol = j.value("tol", 0.0);
            const json& v = j["value"];
            if (v.is_object()) return Scalar::approx({v.at("re").get<double>(), v.at("im").get<double>()}, tol, Field::Complex).with_field(f);
            return Scalar::approx({v.get<double>(), 0.0}, tol, f);
        }
        Rational re = detail::rational_from_json(j.at("re"));
        Rational im = j.contains("im") ? detail::rational_from_json(j.at("im")) : Rational(0);
        return Scalar::complex(re, im).with_field(f);
    }
    return Scalar(detail::rational_from_json(j)).with_field(f);
}

// ---------------------------------------------------------------------------
// Sequences.

inline json to_json(const TailAtom& t) {
    switch (t.kind) {
        case TailAtom::Kind::Zero: return json{{"type", "zero"}};
        case TailAtom::Kind::Constant: return json{{"type", "constant"}, {"value", to_json(t.values[0])}};
        case TailAtom::Kind::Periodic: {
            json v = json::array();
            for (const auto& s : t.values) v.push_back(to_json(s));
            return json{{"type", "periodic"}, {"values", v}};
        }
        case TailAtom::Kind::Geometric: return json{{"type", "geometric"}, {"a", to_json(t.a)}, {"r", to_json(t.r)}};
    }
    return {};
}

inline json to_json(const SequenceRep& x) {
    json pre = json::array(), tail = json::array();
    for (const auto& s : x.prefix) pre.push_back(to_json(s));
    for (const auto& t : x.tail) tail.push_back(to_json(t));
    return json{{"field", to_string(x.field)}, {"prefix", pre}, {"tail", tail}};
}

/// Parses and canonicalizes.
inline SequenceRep sequence_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("sequence must be a JSON object");
    std::string fs = j.value("field", "real");
    if (fs != "real" && fs != "complex") throw ValidationError("field must be \"real\" or \"complex\"");
    Field f = fs == "real" ? Field::Real : Field::Complex;
    SequenceRep x(f, {}, {});
    if (j.contains("prefix"))
        for (const auto& e : j.at("prefix")) x.prefix.push_back(scalar_from_json(e, f));
    if (j.contains("tail")) {
        const json& tj = j.at("tail");
        std::vector<json> atoms = tj.is_array() ? tj.get<std::vector<json>>() : std::vector<json>{tj};
        for (const auto& a : atoms) {
            std::string type = a.at("type").get<std::string>();
            if (type == "zero") {
                x.tail.push_back(TailAtom::zero());
            } else if (type == "constant") {
                x.tail.push_back(TailAtom::constant(scalar_from_json(a.at("value"), f)));
            } else if (type == "periodic") {
                std::vector<Scalar> v;
                for (const auto& e : a.at("values")) v.push_back(scalar_from_json(e, f));
                if (v.empty()) throw ValidationError("periodic tail needs at least one value");
                x.tail.push_back(TailAtom::periodic(std::move(v)));
            } else if (type == "geometric") {
                x.tail.push_back(TailAtom::geometric(scalar_from_json(a.at("a"), f), scalar_from_json(a.at("r"), f)));
            } else {
                throw ValidationError("unknown tail type '" + type + "'");
            }
        }
    }
    if (x.tail.empty()) x.tail.push_back(TailAtom::zero());
    return canonicalize(std::move(x));
}

inline json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Results.

inline json to_json(const Verdict& v) {
    return json{{"verdict", to_string(v.outcome)}, {"margin", number_or_inf(v.margin)}, {"mode", to_string(v.mode)}};
}

inline json to_json(const Interval& i) { return json::array({i.lo, i.hi}); }

inline json to_json(const NormValue& n) {
    json j{{"enclosure", to_json(n.enclosure)}};
    switch (n.kind) {
        case NormValue::Kind::Exact: j["exact"] = to_string(n.value); break;
        case NormValue::Kind::ExactPower:
            j["power"] = to_string(n.power);
            j["exact_power"] = to_string(n.value);
            break;
        default: break;
    }
    return j;
}

inline json to_json(const AgreementStats& st, bool reproducers = true) {
    json j{{"space", st.space.name()},
           {"pairs", st.pairs},
           {"agree", st.agree},
           {"hard_disagree", st.hard_disagree},
           {"indeterminate", st.indeterminate},
           {"indeterminate_rate", st.indeterminate_rate()},
           {"predicate_holds", st.predicate_holds}};
    if (reproducers) {
        json d = json::array();
        for (const auto& r : st.disagreements)
            d.push_back({{"x", to_json(r.x)}, {"y", to_json(r.y)}, {"predicate", to_json(r.predicate)}, {"oracle", to_json(r.oracle)}});
        j["disagreements"] = d;
    }
    return j;
}

inline json to_json(const SoundnessStats& st) {
    json f = json::array();
    for (const auto& e : st.failures) {
        json others = json::array();
        for (const auto& y : e.others) others.push_back(to_json(y));
        f.push_back({{"check", e.check}, {"x", to_json(e.x)}, {"others", others}, {"detail", e.detail}});
    }
    return json{{"space", st.space.name()},
                {"points", st.points},
                {"left_symmetric", st.left_symmetric},
                {"right_symmetric", st.right_symmetric},
                {"smooth", st.smooth},
                {"partner_checks", st.partner_checks},
                {"witnesses", st.witnesses},
                {"undecided", st.undecided},
                {"failures", f}};
}

inline json to_json(const CampaignReport& r) {
    json a = json::array(), s = json::array();
    for (const auto& x : r.agreement) a.push_back(to_json(x));
    for (const auto& x : r.soundness) s.push_back(to_json(x));
    return json{{"agreement", a}, {"soundness", s}, {"hard_failures", r.hard_failures()}};
}

inline json to_json(const SupportFunctional& f) {
    json rep;
    if (auto* c = std::get_if<CoordinateFunctional>(&f.rep))
        rep = {{"type", "coordinate"}, {"index", c->index}, {"weight", to_json(c->weight)}};
    else if (auto* l = std::get_if<LimitFunctional>(&f.rep))
        rep = {{"type", "limit"}, {"weight", to_json(l->weight)}, {"start", l->start}, {"period", l->period}};
    else
        rep = {{"type", "sequence"}, {"sequence", to_json(std::get<SequenceRep>(f.rep))}};
    return json{{"space", f.space.name()}, {"dual_space", f.dual_space().name()}, {"representation", rep}};
}

// ---------------------------------------------------------------------------
// Operators.

inline json to_json(const SignedPermutation& t) {
    json perm = json::array(), w = json::array();
    for (const auto& [n, m] : t.perm()) perm.push_back({n, m});
    for (const auto& [n, c] : t.weights()) w.push_back({n, to_json(c)});
    return json{{"type", "signed_permutation"}, {"perm", perm}, {"weights", w}};
}

inline SignedPermutation signed_permutation_from_json(const json& j) {
    std::map<std::size_t, std::size_t> perm;
    std::map<std::size_t, Scalar> w;
    Field f = j.value("field", "real") == "complex" ? Field::Complex : Field::Real;
    if (j.contains("perm"))
        for (const auto& e : j.at("perm")) perm[e.at(0).get<std::size_t>()] = e.at(1).get<std::size_t>();
    if (j.contains("weights"))
        for (const auto& e : j.at("weights")) {
            Scalar c = scalar_from_json(e.at(1), e.at(1).is_object() && !e.at(1).contains("value") ? Field::Complex : f);
            w.emplace(e.at(0).get<std::size_t>(), c);
        }
    return {std::move(perm), std::move(w)};
}

inline json to_json(const FiniteMatrixOperator& m) {
    json rows = json::array();
    for (const auto& r : m.entries) {
        json row = json::array();
        for (const auto& e : r) row.push_back(to_json(e));
        rows.push_back(row);
    }
    return json{{"n", m.n}, {"entries", rows}};
}

inline FiniteMatrixOperator matrix_from_json(const json& j) {
    std::vector<std::vector<Scalar>> rows;
    bool complex = false;
    for (const auto& r : j.at("entries"))
        for (const auto& e : r)
            if (e.is_object() && (e.contains("im") || (e.contains("value") && e["value"].is_object()))) complex = true;
    Field f = complex ? Field::Complex : Field::Real;
    for (const auto& r : j.at("entries")) {
        std::vector<Scalar> row;
        for (const auto& e : r) row.push_back(scalar_from_json(e, f));
        rows.push_back(std::move(row));
    }
    FiniteMatrixOperator m(std::move(rows));
    if (j.contains("n") && j.at("n").get<std::size_t>() != m.n) throw ValidationError("matrix: n does not match entries");
    return m;
}

// ---------------------------------------------------------------------------
// Sampler configuration: a preset name plus overrides.

inline SamplerConfig sampler_from_json(const json& j) {
    SamplerConfig c = SamplerConfig::preset(j.value("preset", "default"));
    c.min_prefix = j.value("min_prefix", c.min_prefix);
    c.max_prefix = j.value("max_prefix", c.max_prefix);
    c.max_den = j.value("max_den", c.max_den);
    c.max_num = j.value("max_num", c.max_num);
    c.max_period = j.value("max_period", c.max_period);
    c.zero_prob = j.value("zero_prob", c.zero_prob);
    c.tie_prob = j.value("tie_prob", c.tie_prob);
    if (j.contains("weights")) {
        const json& w = j["weights"];
        c.w_zero = w.value("zero", c.w_zero);
        c.w_constant = w.value("constant", c.w_constant);
        c.w_periodic = w.value("periodic", c.w_periodic);
        c.w_geometric = w.value("geometric", c.w_geometric);
    }
    if (j.contains("field")) c.field = j["field"] == "complex" ? Field::Complex : Field::Real;
    if (c.max_den < 1 || c.max_num < 1 || c.min_prefix > c.max_prefix) throw ValidationError("bad sampler config");
    return c;
}

inline json to_json(const SamplerConfig& c) {
    return json{{"min_prefix", c.min_prefix},
                {"max_prefix", c.max_prefix},
                {"max_den", c.max_den},
                {"max_num", c.max_num},
                {"max_period", c.max_period},
                {"weights", {{"zero", c.w_zero}, {"constant", c.w_constant}, {"periodic", c.w_periodic}, {"geometric", c.w_geometric}}},
                {"zero_prob", c.zero_prob},
                {"tie_prob", c.tie_prob},
                {"field", to_string(c.field)}};
}

}  // namespace bjseq
