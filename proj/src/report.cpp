/*
   Copyright 2026 The r2reduce Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/
#include "r2/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace r2 {

using nlohmann::ordered_json;

Format parse_format(const std::string& name) {
    if (name == "human") return Format::Human;
    if (name == "json") return Format::Json;
    if (name == "csv") return Format::Csv;
    throw DomainError("unknown format '" + name + "'");
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", x);
    return buf;
}

namespace {

ordered_json complex_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

ordered_json triple_json(const Triple& T) { return ordered_json::array({T.n, T.m, T.nu}); }

std::vector<std::string> split_pattern(const std::string& pattern) {
    std::vector<std::string> out;
    std::istringstream in(pattern);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(item);
    return out;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string triple_text(const Rule& r) {
    if (!r.triple) return r.triple_condition;
    const Triple& T = *r.triple;
    return "(" + std::to_string(T.n) + "," + std::to_string(T.m) + "," + std::to_string(T.nu) + ")";
}

}  // namespace

ordered_json rule_to_json(const Rule& r) {
    ordered_json j;
    j["id"] = r.id;
    j["code"] = r.code;
    j["family"] = family_name(r.family);
    j["triple"] = r.triple ? triple_json(*r.triple) : ordered_json(nullptr);
    j["triple_condition"] = r.triple_condition;
    j["coefficient_pattern"] = split_pattern(r.coefficient_pattern);
    j["tilde"] = r.tilde;
    j["kernel"] = r.kernel_text;
    j["anchor"] = r.anchor;
    j["erratum"] = r.erratum;
    j["note"] = r.note;
    return j;
}

ordered_json quad_to_json(const QuadResult& r) {
    return {{"value", complex_json(r.value)},
            {"abs_error_estimate", r.abs_error_estimate},
            {"evaluations", r.evaluations},
            {"converged", r.converged}};
}

ordered_json record_to_json(const VerificationRecord& rec) {
    const Params& P = rec.params;
    ordered_json params = {{"n", P.triple.n}, {"m", P.triple.m}, {"nu", P.triple.nu}, {"a", P.a},
                           {"b", P.b},        {"c", P.c},        {"h", complex_json(P.h)},
                           {"j", P.j},        {"p", P.p},        {"q", P.q},
                           {"tilde", P.tilde}};
    ordered_json j;
    j["rule_id"] = rec.rule_id;
    j["case_index"] = rec.case_index;
    j["seed"] = rec.seed;
    j["params"] = params;
    j["f"] = {{"coeff", rec.f.coeff}, {"mu", rec.f.mu}, {"sigma", rec.f.sigma}};
    j["lhs"] = quad_to_json(rec.lhs);
    j["rhs"] = quad_to_json(rec.rhs);
    j["abs_diff"] = rec.abs_diff;
    j["rel_diff"] = std::isfinite(rec.rel_diff) ? ordered_json(rec.rel_diff) : ordered_json(nullptr);
    j["tol"] = {{"rel", rec.tol.rel}, {"abs", rec.tol.abs}, {"max_evaluations", rec.tol.max_evaluations}};
    j["pass"] = rec.pass;
    j["reason"] = rec.reason;
    return j;
}

SweepSummary summarize(const std::vector<VerificationRecord>& records) {
    SweepSummary s;
    for (const auto& r : records) {
        ++s.total;
        if (r.pass) {
            ++s.passed;
        } else {
            ++s.failed;
            if (r.reason.find("did not converge") != std::string::npos) ++s.not_converged;
        }
    }
    return s;
}

int sweep_exit_code(const SweepSummary& s) {
    if (s.not_converged > 0) return 3;
    return s.failed > 0 ? 1 : 0;
}

std::string summary_line(const SweepSummary& s, std::uint64_t seed) {
    std::ostringstream out;
    out << "summary: total=" << s.total << " passed=" << s.passed << " failed=" << s.failed
        << " not_converged=" << s.not_converged << " seed=" << seed;
    return out.str();
}

const char* const kRecordCsvHeader =
    "rule_id,case_index,seed,n,m,nu,a,b,c,h_re,h_im,j,p,q,tilde,f_coeff,f_mu,f_sigma,"
    "lhs_re,lhs_im,lhs_abs_error,lhs_evaluations,lhs_converged,"
    "rhs_re,rhs_im,rhs_abs_error,rhs_evaluations,rhs_converged,"
    "abs_diff,rel_diff,tol_rel,tol_abs,pass,reason";

std::string record_to_csv(const VerificationRecord& rec) {
    const Params& P = rec.params;
    auto num = format_number;
    std::ostringstream o;
    o << csv_quote(rec.rule_id) << ',' << rec.case_index << ',' << rec.seed << ',' << P.triple.n << ','
      << P.triple.m << ',' << P.triple.nu << ',' << num(P.a) << ',' << num(P.b) << ',' << num(P.c) << ','
      << num(P.h.real()) << ',' << num(P.h.imag()) << ',' << num(P.j) << ',' << num(P.p) << ',' << num(P.q) << ','
      << (P.tilde ? "true" : "false") << ',' << num(rec.f.coeff) << ',' << num(rec.f.mu) << ','
      << num(rec.f.sigma);
    for (const QuadResult* q : {&rec.lhs, &rec.rhs}) {
        o << ',' << num(q->value.real()) << ',' << num(q->value.imag()) << ',' << num(q->abs_error_estimate) << ','
          << q->evaluations << ',' << (q->converged ? "true" : "false");
    }
    o << ',' << num(rec.abs_diff) << ',' << num(rec.rel_diff) << ',' << num(rec.tol.rel) << ','
      << num(rec.tol.abs) << ',' << (rec.pass ? "true" : "false") << ',' << csv_quote(rec.reason);
    return o.str();
}

std::string render_rules(const std::vector<const Rule*>& rules, Format format) {
    std::ostringstream out;
    if (format == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const Rule* r : rules) arr.push_back(rule_to_json(*r));
        out << arr.dump(2) << '\n';
    } else if (format == Format::Csv) {
        out << "id,code,family,triple,coefficient_pattern,tilde,erratum,kernel,anchor\n";
        for (const Rule* r : rules) {
            out << csv_quote(r->id) << ',' << r->code << ',' << family_name(r->family) << ','
                << csv_quote(triple_text(*r)) << ',' << csv_quote(r->coefficient_pattern) << ','
                << (r->tilde ? "true" : "false") << ',' << (r->erratum ? "true" : "false") << ','
                << csv_quote(r->kernel_text) << ',' << csv_quote(r->anchor) << '\n';
        }
    } else {
        char line[256];
        for (const Rule* r : rules) {
            std::snprintf(line, sizeof line, "%-20s %-13s %-22s %s%s\n", r->id.c_str(), family_name(r->family).c_str(),
                          triple_text(*r).c_str(), r->anchor.c_str(), r->erratum ? "  [erratum]" : "");
            out << line;
        }
    }
    return out.str();
}

std::string render_sweep(const SweepConfig& config, const std::vector<VerificationRecord>& records, Format format) {
    const SweepSummary s = summarize(records);
    std::ostringstream out;
    if (format == Format::Json) {
        ordered_json doc;
        doc["seed"] = config.seed;
        doc["samples"] = config.samples;
        ordered_json ids = ordered_json::array();
        for (const Rule* r : config.rules) ids.push_back(r->id);
        doc["rules"] = ids;
        doc["tolerance"] = {{"check", {{"rel", config.tol.check.rel}, {"abs", config.tol.check.abs}}},
                            {"evaluator", {{"rel", config.tol.evaluator.rel}, {"abs", config.tol.evaluator.abs}}},
                            {"oracle", {{"rel", config.tol.oracle.rel}, {"abs", config.tol.oracle.abs}}}};
        doc["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed},
                          {"not_converged", s.not_converged}};
        ordered_json recs = ordered_json::array();
        for (const auto& r : records) recs.push_back(record_to_json(r));
        doc["records"] = recs;
        out << doc.dump(2) << '\n';
    } else if (format == Format::Csv) {
        out << kRecordCsvHeader << '\n';
        for (const auto& r : records) out << record_to_csv(r) << '\n';
    } else {
        for (const auto& r : records) {
            const Rule* rule = find_rule(r.rule_id);
            out << (r.pass ? "PASS " : "FAIL ") << r.rule_id << " #" << r.case_index << " seed=" << r.seed
                << " lhs=" << format_number(r.lhs.value.real());
            if (r.lhs.value.imag() != 0.0) out << (r.lhs.value.imag() < 0 ? "" : "+") << format_number(r.lhs.value.imag()) << "i";
            out << " rhs=" << format_number(r.rhs.value.real());
            if (r.rhs.value.imag() != 0.0) out << (r.rhs.value.imag() < 0 ? "" : "+") << format_number(r.rhs.value.imag()) << "i";
            out << " rel_diff=" << format_number(r.rel_diff);
            if (!r.reason.empty()) out << " (" << r.reason << ")";
            if (rule) out << "  -- " << rule->anchor;
            out << '\n';
        }
        out << summary_line(s, config.seed) << '\n';
    }
    return out.str();
}

}  // namespace r2
