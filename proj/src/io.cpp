#include "nnlab/io.hpp"

#include <fstream>
#include <sstream>

namespace nnlab {

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "mode=" << (exact ? "exact" : "float") << ";exact_cap=" << exact_cap
       << ";tower_bit_cap=" << tower_bit_cap << ";rho=" << checkpoint_rho << ";seed=" << seed
       << ";version=" << kVersion;
    return os.str();
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

json make_manifest(const RunConfig& config) {
    std::ostringstream hash;
    hash << std::hex << fnv1a64(config.canonical());
    return json{{"config_hash", hash.str()},
                {"version", kVersion},
                {"seed", config.seed},
                {"mode", config.exact ? "exact" : "float"}};
}

json word_to_json(const Word& w) {
    json arr = json::array();
    for (Digit d : w) arr.push_back(d);
    return arr;
}

Word word_from_json(const json& j) {
    const json* arr = &j;
    if (j.is_object()) {
        if (!j.contains("word")) throw UsageError("word JSON: expected an array or {\"word\":[...]}");
        arr = &j.at("word");
    }
    if (!arr->is_array()) throw UsageError("word JSON: expected an array of integers");
    std::vector<Digit> ds;
    ds.reserve(arr->size());
    for (const auto& v : *arr) {
        if (!v.is_number_unsigned() && !v.is_number_integer())
            throw UsageError("word JSON: digits must be integers");
        long long x = v.get<long long>();
        if (x < 1) throw UsageError("word JSON: digits must be >= 1");
        ds.push_back(static_cast<Digit>(x));
    }
    return Word(std::move(ds));
}

namespace {

json block_to_json(const Block& b) {
    json arr = json::array();
    for (Digit d : b.digits()) arr.push_back(d);
    return arr;
}

Block block_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw UsageError("block JSON: expected a nonempty array");
    std::vector<Digit> ds;
    for (const auto& v : j) {
        long long x = v.get<long long>();
        if (x < 1) throw UsageError("block JSON: digits must be >= 1");
        ds.push_back(static_cast<Digit>(x));
    }
    return Block(std::move(ds));
}

Rat rat_from_strings(const json& num, const json& den) {
    if (!num.is_string() || !den.is_string())
        throw UsageError("entry JSON: num/den must be decimal strings");
    try {
        BigInt n(num.get<std::string>());
        BigInt d(den.get<std::string>());
        if (d == 0) throw UsageError("entry JSON: zero denominator");
        return make_rat(n, d);
    } catch (const std::invalid_argument&) {
        throw UsageError("entry JSON: bad integer string");
    }
}

}  // namespace

json freq_to_json(const FreqVector& fv) {
    json entries = json::array();
    for (const auto& [b, v] : fv.entries) {
        entries.push_back(json{{"block", block_to_json(b)},
                               {"num", v.get_num().get_str()},
                               {"den", v.get_den().get_str()}});
    }
    return json{{"k", fv.k}, {"n", fv.n}, {"entries", entries}};
}

FreqVector freq_from_json(const json& j) {
    FreqVector fv;
    fv.k = j.at("k").get<std::size_t>();
    fv.n = j.at("n").get<std::uint64_t>();
    for (const auto& e : j.at("entries"))
        fv.entries.emplace(block_from_json(e.at("block")),
                           rat_from_strings(e.at("num"), e.at("den")));
    return fv;
}

json simplex_to_json(const SimplexVector& q) {
    json entries = json::array();
    for (const auto& [b, v] : q.entries) {
        entries.push_back(json{{"block", block_to_json(b)},
                               {"num", v.get_num().get_str()},
                               {"den", v.get_den().get_str()}});
    }
    return json{{"k", q.k}, {"N", q.N}, {"entries", entries}};
}

SimplexVector simplex_from_json(const json& j) {
    std::size_t k = j.at("k").get<std::size_t>();
    Digit N = j.at("N").get<Digit>();
    std::map<Block, Rat> entries;
    for (const auto& e : j.at("entries")) {
        Block b = block_from_json(e.at("block"));
        entries[b] += rat_from_strings(e.at("num"), e.at("den"));
    }
    return validate(k, N, entries);
}

json stage_to_json(const Stage& s) {
    json out{{"q", simplex_to_json(s.q)}, {"m", s.m}, {"i", s.i}, {"h", s.h}, {"k", s.k}};
    if (s.window_cap) out["window_cap"] = *s.window_cap;
    return out;
}

Stage stage_from_json(const json& j) {
    Stage s{.q = simplex_from_json(j.at("q"))};
    s.m = j.at("m").get<unsigned>();
    s.i = j.at("i").get<std::uint64_t>();
    s.h = j.at("h").get<std::uint64_t>();
    s.k = j.at("k").get<std::size_t>();
    if (s.k != s.q.k) throw UsageError("stage JSON: k disagrees with q.k");
    if (s.m < 1 || s.h < 1 || s.i < 1) throw UsageError("stage JSON: m, i, h must be >= 1");
    if (j.contains("window_cap")) s.window_cap = j.at("window_cap").get<std::uint64_t>();
    return s;
}

json schedule_to_json(const Schedule& s) {
    json stages = json::array();
    for (const auto& st : s.stages) stages.push_back(stage_to_json(st));
    return json{{"max_length", s.max_length}, {"stages", stages}};
}

Schedule schedule_from_json(const json& j) {
    Schedule s;
    s.max_length = j.at("max_length").get<std::uint64_t>();
    for (const auto& st : j.at("stages")) s.stages.push_back(stage_from_json(st));
    return s;
}

json witness_to_json(const Witness& w) {
    return json{{"stage", w.stage_index},
                {"j", w.j},
                {"window_end", w.window_end},
                {"truncated", w.truncated},
                {"from_lemma", w.from_lemma},
                {"exact", w.exact},
                {"passed", w.passed},
                {"skipped", w.skipped},
                {"sup_num", w.sup_dist.get_num().get_str()},
                {"sup_den", w.sup_dist.get_den().get_str()},
                {"note", w.note}};
}

json witnesses_to_json(const std::vector<Witness>& ws) {
    json arr = json::array();
    for (const auto& w : ws) arr.push_back(witness_to_json(w));
    return arr;
}

json lift_report_to_json(const LiftReport& r) {
    return json{{"conclusive", r.conclusive},
                {"premise_ok", r.premise_ok},
                {"conclusion_ok", r.conclusion_ok},
                {"premise_window", json::array({r.premise_lo, r.premise_hi})},
                {"window", json::array({r.lo, r.hi})},
                {"premise_max_num", r.premise_max.get_num().get_str()},
                {"premise_max_den", r.premise_max.get_den().get_str()},
                {"max_num", r.conclusion_max.get_num().get_str()},
                {"max_den", r.conclusion_max.get_den().get_str()},
                {"exact", r.exact},
                {"note", r.note}};
}

void write_analyze_csv(const OscillationReport& report, std::ostream& os,
                       const std::string& manifest_comment) {
    if (!manifest_comment.empty()) os << "# " << manifest_comment << "\n";
    os << "block,r,n0,n1,lo_num,lo_den,hi_num,hi_den,per,shortfall\n";
    for (const auto& row : report.rows) {
        os << '"' << row.block.to_text() << '"' << ',' << row.r << ',' << row.n0 << ',' << row.n1
           << ',' << row.lo.get_num().get_str() << ',' << row.lo.get_den().get_str() << ','
           << row.hi.get_num().get_str() << ',' << row.hi.get_den().get_str() << ',' << row.per
           << ',' << row.shortfall.get_d() << "\n";
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw UsageError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out << content;
}

}  // namespace nnlab
