#include "latsamp/problem.hpp"

#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

namespace latsamp {
namespace {

using Json = nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw SpecError(where + ": " + what);
}

Rat parse_rat(const Json& j, const std::string& where) {
    if (!j.is_string()) fail(where, "rationals must be strings \"p\" or \"p/q\", not numbers");
    try {
        return rat_from_string(j.get<std::string>());
    } catch (const std::exception& e) {
        fail(where, e.what());
    }
}

RatVec parse_rat_vec(const Json& j, std::size_t d, const std::string& where) {
    if (!j.is_array() || j.size() != d)
        fail(where, "expected an array of " + std::to_string(d) + " rational strings");
    RatVec v;
    for (std::size_t i = 0; i < d; ++i)
        v.push_back(parse_rat(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

Band parse_band(const Json& j, std::size_t d, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "empty band");
    std::vector<Box> boxes;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string bw = where + "[" + std::to_string(i) + "]";
        const Json& e = j[i];
        if (!e.is_object() || !e.contains("lower") || !e.contains("upper"))
            fail(bw, "box needs \"lower\" and \"upper\"");
        RatVec lo = parse_rat_vec(e["lower"], d, bw + ".lower");
        RatVec hi = parse_rat_vec(e["upper"], d, bw + ".upper");
        try {
            boxes.emplace_back(std::move(lo), std::move(hi));
        } catch (const std::exception& ex) {
            fail(bw, ex.what());
        }
    }
    Band b(d, std::move(boxes));
    if (b.empty()) fail(where, "empty band");
    return b;
}

LatticeSystem parse_system(const Json& j, std::size_t d, const std::string& where) {
    if (!j.is_array() || j.empty()) fail(where, "system needs at least one lattice");
    std::vector<ShiftedLattice> ls;
    for (std::size_t i = 0; i < j.size(); ++i) {
        std::string lw = where + "[" + std::to_string(i) + "]";
        const Json& e = j[i];
        if (!e.is_object() || !e.contains("matrix")) fail(lw, "lattice needs \"matrix\"");
        const Json& mj = e["matrix"];
        if (!mj.is_array() || mj.size() != d) fail(lw + ".matrix", "expected d rows");
        RatMat m(d);
        for (std::size_t r = 0; r < d; ++r) {
            RatVec row = parse_rat_vec(mj[r], d, lw + ".matrix[" + std::to_string(r) + "]");
            for (std::size_t c = 0; c < d; ++c) m.at(r, c) = row[c];
        }
        ShiftVector shift(d, ShiftValue::from_rat(Rat(0)));
        if (e.contains("shift") && e.contains("shift_numeric"))
            fail(lw, "give either \"shift\" or \"shift_numeric\", not both");
        if (e.contains("shift")) {
            RatVec s = parse_rat_vec(e["shift"], d, lw + ".shift");
            shift = shift_from_rat_vec(s);
        } else if (e.contains("shift_numeric")) {
            const Json& sj = e["shift_numeric"];
            if (!sj.is_array() || sj.size() != d)
                fail(lw + ".shift_numeric", "expected an array of d numbers");
            for (std::size_t c = 0; c < d; ++c) {
                if (!sj[c].is_number()) fail(lw + ".shift_numeric", "expected numbers");
                shift[c] = ShiftValue::from_double(sj[c].get<double>());
            }
        }
        try {
            ls.emplace_back(std::move(m), std::move(shift));
        } catch (const std::exception& ex) {
            fail(lw + ".matrix", ex.what());
        }
    }
    return LatticeSystem(std::move(ls));
}

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

Json rat_vec_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& r : v) a.push_back(rat_to_string(r));
    return a;
}

Json shift_vec_json(const ShiftVector& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s.str());
    return a;
}

std::string question_name(Question q) {
    return q == Question::Tight ? "tight" : "orthogonal";
}

}  // namespace

ProblemSpec parse_spec_json(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const std::exception& e) {
        fail("spec", std::string("not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("spec", "top level must be an object");
    if (!j.contains("dimension") || !j["dimension"].is_number_unsigned())
        fail("dimension", "required positive integer");
    std::size_t d = j["dimension"].get<std::size_t>();
    if (d == 0) fail("dimension", "must be >= 1");

    ProblemSpec spec;
    spec.dimension = d;

    if (!j.contains("question") || !j["question"].is_string())
        fail("question", "required: \"tight\" or \"orthogonal\"");
    std::string q = j["question"].get<std::string>();
    if (q == "tight")
        spec.question = Question::Tight;
    else if (q == "orthogonal")
        spec.question = Question::Orthogonal;
    else
        fail("question", "must be \"tight\" or \"orthogonal\", got \"" + q + "\"");

    if (!j.contains("band_e")) fail("band_e", "required");
    spec.band_e = parse_band(j["band_e"], d, "band_e");
    if (j.contains("band_f")) spec.band_f = parse_band(j["band_f"], d, "band_f");

    if (!j.contains("system_a")) fail("system_a", "required");
    spec.system_a = parse_system(j["system_a"], d, "system_a");
    if (j.contains("system_b")) spec.system_b = parse_system(j["system_b"], d, "system_b");

    if (spec.question == Question::Orthogonal) {
        if (!spec.band_f) fail("band_f", "required for orthogonality questions");
        if (!spec.system_b) fail("system_b", "required for orthogonality questions");
        if (spec.system_b->size() != spec.system_a.size())
            fail("system_b", "must have the same length as system_a");
    }

    if (j.contains("oracle")) {
        const Json& o = j["oracle"];
        if (!o.is_object()) fail("oracle", "must be an object");
        if (o.contains("radius")) spec.oracle.radius = o["radius"].get<long>();
        if (o.contains("trials")) spec.oracle.trials = o["trials"].get<int>();
        if (o.contains("seed")) spec.oracle.seed = o["seed"].get<std::uint64_t>();
        if (o.contains("tolerance")) spec.oracle.tolerance = o["tolerance"].get<double>();
    }
    return spec;
}

ProblemSpec parse_spec(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SpecError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec_json(ss.str());
}

std::string spec_to_json(const ProblemSpec& spec) {
    Json j;
    j["dimension"] = spec.dimension;
    j["question"] = question_name(spec.question);
    auto band_json = [](const Band& b) {
        Json a = Json::array();
        for (const auto& box : b.boxes())
            a.push_back({{"lower", rat_vec_json(box.lower)}, {"upper", rat_vec_json(box.upper)}});
        return a;
    };
    auto system_json = [](const LatticeSystem& s) {
        Json a = Json::array();
        for (const auto& l : s.lattices) {
            Json rows = Json::array();
            for (std::size_t r = 0; r < l.dim(); ++r) {
                Json row = Json::array();
                for (std::size_t c = 0; c < l.dim(); ++c)
                    row.push_back(rat_to_string(l.matrix.at(r, c)));
                rows.push_back(row);
            }
            Json lj{{"matrix", rows}};
            if (shift_is_exact(l.beta)) {
                Json sv = Json::array();
                for (const auto& s2 : l.beta) sv.push_back(rat_to_string(s2.rat()));
                lj["shift"] = sv;
            } else {
                Json sv = Json::array();
                for (const auto& s2 : l.beta) sv.push_back(s2.approx());
                lj["shift_numeric"] = sv;
            }
            a.push_back(lj);
        }
        return a;
    };
    j["band_e"] = band_json(spec.band_e);
    if (spec.band_f) j["band_f"] = band_json(*spec.band_f);
    j["system_a"] = system_json(spec.system_a);
    if (spec.system_b) j["system_b"] = system_json(*spec.system_b);
    j["oracle"] = {{"radius", spec.oracle.radius},
                   {"trials", spec.oracle.trials},
                   {"seed", spec.oracle.seed},
                   {"tolerance", spec.oracle.tolerance}};
    return j.dump(2);
}

Report run(const ProblemSpec& spec, const RunFlags& flags) {
    Report rep;
    rep.question = spec.question;
    rep.config = spec.oracle;
    if (flags.radius) rep.config.radius = *flags.radius;
    if (flags.trials) rep.config.trials = *flags.trials;
    if (flags.seed) rep.config.seed = *flags.seed;
    if (flags.tol) rep.config.tolerance = *flags.tol;

    if (spec.question == Question::Tight) {
        TightnessVerdict v = spec.system_a.unshifted()
                                 ? check_tight_unshifted(spec.band_e, spec.system_a)
                                 : check_tight_shifted(spec.band_e, spec.system_a);
        rep.property_holds = v.tight;
        rep.mode = v.mode;
        rep.constant = v.constant;
        rep.per_lattice = v.per_lattice;
        if (v.witness) {
            rep.witness_lattice = v.witness->lattice_index;
            rep.witness_alpha = v.witness->alpha;
            rep.witness_shift = v.witness->integer_shift;
            if (v.witness->failing_sum) rep.witness_sum = v.witness->failing_sum->str();
            rep.witness_overlap_measure = measure(v.witness->overlap);
        }
        if (flags.verify) {
            rep.verified = true;
            TightnessReport orc = verify_tight(spec.band_e, spec.system_a, rep.config);
            rep.oracle_deviation = orc.max_relative_deviation;
            rep.oracle_spread = orc.spread;
            bool oracle_tight = orc.max_relative_deviation <= rep.config.tolerance;
            rep.oracle_agrees = (oracle_tight == v.tight);
        }
        return rep;
    }

    const Band& E = spec.band_e;
    const Band& F = *spec.band_f;
    const LatticeSystem& A = spec.system_a;
    const LatticeSystem& B = *spec.system_b;

    OrthogonalityVerdict v;
    if (A.unshifted() && B.unshifted()) {
        v = check_orthogonal_unshifted(E, F, A, B);
    } else {
        bool shared = true;
        for (std::size_t j = 0; j < A.size(); ++j)
            if (!(A.lattices[j].matrix == B.lattices[j].matrix)) {
                shared = false;
                break;
            }
        if (shared)
            v = check_orthogonal_shifted_shared(E, F, A, B);
        else if (A.shared_matrix() && B.shared_matrix())
            v = check_orthogonal_shifted_pair(E, F, A, B);
        else
            throw UnsupportedSystemError(
                "mixed per-index matrices with shifts: no criterion in paper");
    }
    rep.property_holds = v.orthogonal;
    rep.mode = v.mode;
    rep.per_lattice_orthogonal = v.per_lattice;
    if (v.witness) {
        rep.witness_lattice = v.witness->lattice_index;
        rep.witness_alpha = v.witness->alpha;
        rep.witness_shift = v.witness->integer_shift;
        rep.witness_group = v.witness->group_key;
        if (v.witness->failing_sum) rep.witness_sum = v.witness->failing_sum->str();
        if (v.witness->overlap) rep.witness_overlap_measure = measure(*v.witness->overlap);
    }
    if (flags.verify) {
        rep.verified = true;
        OrthogonalityReport orc = verify_orthogonal(E, F, A, B, rep.config);
        rep.oracle_magnitude = orc.max_magnitude;
        bool oracle_orth = orc.max_magnitude <= rep.config.tolerance;
        rep.oracle_agrees = (oracle_orth == v.orthogonal);
    }
    return rep;
}

std::string report_to_text(const Report& r) {
    std::ostringstream os;
    os << "question: " << question_name(r.question) << "\n";
    os << "verdict: " << (r.property_holds ? "holds" : "fails") << "\n";
    os << "mode: " << (r.mode == VerdictMode::Exact ? "exact" : "numeric") << "\n";
    if (r.constant) os << "K: " << rat_to_string(*r.constant) << "\n";
    for (const auto& [j, kj] : r.per_lattice)
        os << "  lattice " << (j + 1) << ": K_j = " << rat_to_string(kj) << "\n";
    for (const auto& [j, ok] : r.per_lattice_orthogonal)
        os << "  lattice pair " << (j + 1) << ": " << (ok ? "orthogonal" : "overlapping")
           << "\n";
    if (!r.property_holds) {
        os << "witness:\n";
        if (r.witness_lattice) os << "  j: " << (*r.witness_lattice + 1) << "\n";
        if (r.witness_alpha) {
            os << "  alpha:";
            for (const auto& c : *r.witness_alpha) os << " " << rat_to_string(c);
            os << "\n";
        }
        if (r.witness_shift) {
            os << "  integer shift:";
            for (const auto& c : *r.witness_shift) os << " " << rat_to_string(c);
            os << "\n";
        }
        if (r.witness_group) {
            os << "  q:";
            for (const auto& c : *r.witness_group) os << " " << c.str();
            os << "\n";
        }
        if (r.witness_sum) os << "  sum: " << *r.witness_sum << "\n";
        if (r.witness_overlap_measure)
            os << "  overlap measure: " << rat_to_string(*r.witness_overlap_measure) << "\n";
    }
    if (r.verified) {
        os << "oracle:\n";
        if (r.oracle_deviation)
            os << "  max relative deviation: " << fmt_double(*r.oracle_deviation) << "\n";
        if (r.oracle_spread) os << "  spread: " << fmt_double(*r.oracle_spread) << "\n";
        if (r.oracle_magnitude)
            os << "  max normalized magnitude: " << fmt_double(*r.oracle_magnitude) << "\n";
        os << "  agreement: " << (r.oracle_agrees ? "yes" : "NO") << "\n";
        os << "  config: R=" << r.config.radius << " trials=" << r.config.trials
           << " seed=" << r.config.seed << " tol=" << fmt_double(r.config.tolerance) << "\n";
    }
    return os.str();
}

std::string report_to_json(const Report& r) {
    Json j;
    j["question"] = question_name(r.question);
    j["verdict"] = r.property_holds;
    j["mode"] = r.mode == VerdictMode::Exact ? "exact" : "numeric";
    if (r.constant) j["K"] = rat_to_string(*r.constant);
    if (!r.per_lattice.empty()) {
        Json a = Json::array();
        for (const auto& [jj, kj] : r.per_lattice)
            a.push_back({{"j", jj + 1}, {"K_j", rat_to_string(kj)}});
        j["per_lattice"] = a;
    }
    if (!r.per_lattice_orthogonal.empty()) {
        Json a = Json::array();
        for (const auto& [jj, ok] : r.per_lattice_orthogonal)
            a.push_back({{"j", jj + 1}, {"orthogonal", ok}});
        j["per_lattice"] = a;
    }
    if (!r.property_holds) {
        Json w = Json::object();
        if (r.witness_lattice) w["j"] = *r.witness_lattice + 1;
        if (r.witness_alpha) w["alpha"] = rat_vec_json(*r.witness_alpha);
        if (r.witness_shift) w["k"] = rat_vec_json(*r.witness_shift);
        if (r.witness_group) w["q"] = shift_vec_json(*r.witness_group);
        if (r.witness_sum) w["sum"] = *r.witness_sum;
        if (r.witness_overlap_measure)
            w["overlap_measure"] = rat_to_string(*r.witness_overlap_measure);
        j["witness"] = w;
    }
    if (r.verified) {
        Json o = Json::object();
        if (r.oracle_deviation) o["deviation"] = fmt_double(*r.oracle_deviation);
        if (r.oracle_spread) o["spread"] = fmt_double(*r.oracle_spread);
        if (r.oracle_magnitude) o["magnitude"] = fmt_double(*r.oracle_magnitude);
        o["agreement"] = r.oracle_agrees;
        j["oracle"] = o;
    }
    j["config"] = {{"radius", r.config.radius},
                   {"trials", r.config.trials},
                   {"seed", r.config.seed},
                   {"tolerance", r.config.tolerance}};
    return j.dump(2) + "\n";
}

int exit_code(const Report& r) {
    if (r.verified && !r.oracle_agrees) return 3;
    return r.property_holds ? 0 : 1;
}

}  // namespace latsamp
