#include "filtrate/cli.hpp"

#include "filtrate/coeff.hpp"
#include "filtrate/emap.hpp"
#include "filtrate/error.hpp"
#include "filtrate/filtration.hpp"
#include "filtrate/massey.hpp"
#include "filtrate/series.hpp"
#include "filtrate/words.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace filtrate::cli {

using nlohmann::json;

namespace {

const char* kGrammarHelp = R"help(Word grammar:
  word := term ("*" term)* ; term := atom ("^" signed-int)? ;
  atom := generator | "[" word "," word "]" | "(" word ")" ;
  generator := "x" positive-int. Whitespace insignificant. Empty word spelled "e".
  Commutators follow [u,v] = u^-1 v^-1 u v.

E-map spec grammar:
  "trivial" | "const:<a>" | "gcdseq:<a1>,<a2>,..." | "zass:<p>,<t>" | "file:<path>"
  (file: JSON table [{"n": n, "values": [e(n,1), ..., e(n,n)]}, ...] rows)

Ring spec grammar:
  "Z" | "Z/<m>" with m >= 1 decimal.

Exit codes: 0 success, 2 parse or validation error, 3 precondition violation,
4 internal invariant breach (membership routes disagree).)help";

// ---------------------------------------------------------------------------
// Parameter access

const json& require(const json& params, const char* key) {
    if (!params.contains(key) || params[key].is_null())
        throw ParseError(std::string("missing parameter \"") + key + "\"");
    return params[key];
}

std::string get_string(const json& params, const char* key) {
    const json& v = require(params, key);
    if (!v.is_string())
        throw ParseError(std::string("parameter \"") + key + "\" must be a string");
    return v.get<std::string>();
}

std::optional<std::string> opt_string(const json& params, const char* key) {
    if (!params.contains(key) || params[key].is_null())
        return std::nullopt;
    return get_string(params, key);
}

long get_int(const json& params, const char* key) {
    const json& v = require(params, key);
    if (v.is_number_integer())
        return v.get<long>();
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        try {
            std::size_t used = 0;
            const long r = std::stol(s, &used);
            if (used == s.size())
                return r;
        } catch (const std::exception&) {
        }
    }
    throw ParseError(std::string("parameter \"") + key + "\" must be an integer");
}

long opt_int(const json& params, const char* key, long fallback) {
    if (!params.contains(key) || params[key].is_null())
        return fallback;
    return get_int(params, key);
}

bool opt_bool(const json& params, const char* key, bool fallback) {
    if (!params.contains(key) || params[key].is_null())
        return fallback;
    if (!params[key].is_boolean())
        throw ParseError(std::string("parameter \"") + key + "\" must be a boolean");
    return params[key].get<bool>();
}

int positive(long v, const char* what) {
    if (v < 1 || v > 1'000'000)
        throw ParseError(std::string(what) + " must be a positive integer");
    return static_cast<int>(v);
}

/// Largest generator index mentioned in the texts ("x<k>"), at least 1.
int infer_alphabet(const std::vector<std::string>& texts) {
    int best = 1;
    for (const auto& t : texts)
        for (std::size_t k = 0; k < t.size(); ++k) {
            if (t[k] != 'x')
                continue;
            int v = 0;
            std::size_t m = k + 1;
            while (m < t.size() && std::isdigit(static_cast<unsigned char>(t[m])) && v < 1000)
                v = v * 10 + (t[m++] - '0');
            best = std::max(best, v);
        }
    return best;
}

int alphabet_param(const json& params, const std::vector<std::string>& texts) {
    if (params.contains("alphabet") && !params["alphabet"].is_null())
        return positive(get_int(params, "alphabet"), "alphabet");
    return infer_alphabet(texts);
}

Route parse_route(const std::string& s) {
    if (s == "series")
        return Route::Series;
    if (s == "kernels")
        return Route::Kernels;
    if (s == "both")
        return Route::Both;
    throw ParseError("route must be series, kernels or both");
}

json witness_json(const std::optional<Witness>& w) {
    if (!w)
        return nullptr;
    return json{{"degree", w->degree},
                {"word", to_string(w->word)},
                {"coefficient", w->coefficient.get_str()}};
}

json series_json(const TruncSeries& s) {
    json terms = json::array();
    for (const auto& [w, c] : s.terms())
        terms.push_back(json{{"word", to_string(w)}, {"coeff", c.get_str()}});
    return json{{"ring", s.ring().to_string()}, {"cap", s.cap()}, {"terms", terms}};
}

json matrix_json(const std::vector<std::vector<Integer>>& rows) {
    json out = json::array();
    for (const auto& row : rows) {
        json r = json::array();
        for (const auto& v : row)
            r.push_back(v.get_str());
        out.push_back(std::move(r));
    }
    return out;
}

json audit_json(const AuditResult& a) {
    json j{{"ok", a.ok}, {"violation", nullptr}};
    if (a.violation) {
        const auto& v = *a.violation;
        json vj{{"n", v.n}, {"i", v.i}, {"detail", v.detail}};
        if (v.k != 0)
            vj["k"] = v.k;
        if (v.prime != 0)
            vj["prime"] = v.prime;
        j["violation"] = vj;
    }
    return j;
}

// ---------------------------------------------------------------------------
// Commands

JobResult run_member(const JobSpec& job, json report) {
    const json& p = job.parameters;
    const auto word_text = get_string(p, "word");
    const int alphabet = alphabet_param(p, {word_text});
    const GroupWord g = parse_word(word_text, alphabet);
    const EMap e = parse_emap(get_string(p, "emap"));
    const int level = positive(get_int(p, "level"), "level");
    const Route route = parse_route(opt_string(p, "route").value_or("both"));
    const FiltrationSpec spec(e, level, route);

    report["word"] = to_string(g);
    report["alphabet"] = alphabet;
    report["emap"] = e.to_string();
    report["level"] = level;
    report["route"] = opt_string(p, "route").value_or("both");

    std::optional<Membership> series;
    std::optional<Membership> kernels;
    if (route != Route::Kernels)
        series = member_series(g, spec);
    if (route != Route::Series)
        kernels = member_kernels(g, spec);

    const Membership& primary = series ? *series : *kernels;
    report["member"] = primary.member;
    report["witness"] = witness_json(primary.witness);
    if (series && kernels) {
        const bool agree = series->member == kernels->member;
        report["route_agreement"] = agree;
        if (!agree) {
            report["kernel_witness"] = witness_json(kernels->witness);
            report["error"] = "membership routes disagree on " + to_string(g);
            return {kRouteDisagreement, std::move(report)};
        }
    } else {
        report["route_agreement"] = nullptr;
    }
    return {kOk, std::move(report)};
}

JobResult run_magnus(const JobSpec& job, json report) {
    const json& p = job.parameters;
    const auto word_text = get_string(p, "word");
    const int alphabet = alphabet_param(p, {word_text});
    const GroupWord g = parse_word(word_text, alphabet);
    const Ring ring = parse_ring(opt_string(p, "ring").value_or("Z"));
    const int cap = positive(get_int(p, "cap"), "cap");
    report["word"] = to_string(g);
    report["alphabet"] = alphabet;
    report.update(series_json(magnus(g, ring, cap)));
    return {kOk, std::move(report)};
}

JobResult run_rep(const JobSpec& job, json report) {
    const json& p = job.parameters;
    const auto word_text = get_string(p, "word");
    const auto mono_text = get_string(p, "monomial");
    const int alphabet = alphabet_param(p, {word_text, mono_text});
    const GroupWord g = parse_word(word_text, alphabet);
    const Monomial w = parse_monomial(mono_text, alphabet);
    if (w.empty())
        throw ParseError("monomial must be non-empty");
    const Ring ring = parse_ring(opt_string(p, "ring").value_or("Z"));
    const UniMatrix m = phi(w, g, ring);
    report["word"] = to_string(g);
    report["monomial"] = to_string(w);
    report["ring"] = ring.to_string();
    report["size"] = m.size();
    report["matrix"] = matrix_json(m.rows());
    return {kOk, std::move(report)};
}

std::vector<Integer> integer_list(const std::string& text) {
    std::vector<Integer> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty() || !std::all_of(item.begin(), item.end(), [](unsigned char c) {
                return std::isdigit(c) != 0;
            }))
            throw ParseError("expected comma-separated non-negative integers in \"" + text + "\"");
        out.emplace_back(item, 10);
    }
    if (out.empty())
        throw ParseError("empty integer list");
    return out;
}

JobResult run_sample(const JobSpec& job, json report) {
    const json& p = job.parameters;
    const auto scheme = get_string(p, "scheme");
    const int level = positive(get_int(p, "level"), "level");
    SampleBudget budget;
    budget.count = static_cast<std::size_t>(opt_int(p, "count", 30));
    budget.alphabet_size = positive(opt_int(p, "alphabet", 2), "alphabet");
    budget.max_word_length = static_cast<int>(opt_int(p, "max_length", 6));
    budget.fan_out = positive(opt_int(p, "fan_out", 2), "fan_out");
    if (budget.max_word_length < 0 || budget.count > 1'000'000)
        throw ParseError("invalid sampling budget");

    std::vector<GroupWord> words;
    if (scheme.rfind("afilt:", 0) == 0) {
        words = sample_recursive(AFiltration{integer_list(scheme.substr(6))}, level, budget,
                                 job.seed);
    } else if (scheme.rfind("zass:", 0) == 0) {
        const auto v = integer_list(scheme.substr(5));
        if (v.size() != 2 || !v[0].fits_ulong_p() || !v[1].fits_ulong_p() ||
            !is_prime(v[0].get_ui()) || v[1] < 1)
            throw ParseError("zass scheme takes <prime p>,<t >= 1>");
        words = sample_recursive(QZassenhaus{v[0].get_ui(), v[1].get_ui()}, level, budget,
                                 job.seed);
    } else if (scheme.rfind("product:", 0) == 0) {
        words = product_sampler(parse_emap(scheme.substr(8)), level, budget, job.seed);
    } else {
        throw ParseError("scheme must be afilt:<a1,...> | zass:<p>,<t> | product:<emap>");
    }
    report["scheme"] = scheme;
    report["level"] = level;
    report["alphabet"] = budget.alphabet_size;
    report["count"] = words.size();
    json list = json::array();
    for (const auto& w : words)
        list.push_back(to_string(w));
    report["words"] = std::move(list);
    return {kOk, std::move(report)};
}

JobResult run_emap_check(const JobSpec& job, json report) {
    const json& p = job.parameters;
    const EMap e = parse_emap(get_string(p, "emap"));
    const int n_max = positive(opt_int(p, "nmax", 8), "nmax");
    report["emap"] = e.to_string();
    report["n_max"] = n_max;
    const AuditResult descending = check_descending(e, n_max);
    report["descending"] = audit_json(descending);
    if (descending) {
        report["binomial"] = audit_json(check_binomial(e, n_max));
        report["condition_iii"] = audit_json(check_condition_iii(e, n_max));
    } else {
        report["binomial"] = nullptr;
        report["condition_iii"] = nullptr;
    }
    json rows = json::array();
    for (int n : e.levels(n_max)) {
        json values = json::array();
        for (int i = 1; i <= n; ++i)
            values.push_back(e(n, i).get_str());
        rows.push_back(json{{"n", n}, {"values", values}});
    }
    report["values"] = std::move(rows);
    return {kOk, std::move(report)};
}

JobResult run_massey(const JobSpec& job, json report) {
    const json& p = job.parameters;
    const int m = positive(get_int(p, "alphabet"), "alphabet");
    const int n = positive(get_int(p, "level"), "level");
    if (n < 2)
        throw PreconditionError("massey needs level >= 2");
    const PairingMatrix pm = pairing_matrix(m, n);
    const std::size_t rank = integer_rank(pm.entries);
    const Integer l = necklace(static_cast<unsigned long>(m), static_cast<unsigned long>(n));
    report["alphabet"] = m;
    report["level"] = n;
    report["rank"] = std::to_string(rank);
    report["necklace"] = l.get_str();
    report["match"] = Integer(static_cast<unsigned long>(rank)) == l;
    report["rows"] = pm.row_labels.size();
    report["cols"] = pm.column_labels.size();
    if (opt_bool(p, "emit_matrix", false)) {
        json rows = json::array();
        json brackets = json::array();
        for (std::size_t k = 0; k < pm.row_labels.size(); ++k) {
            rows.push_back(to_string(pm.row_labels[k]));
            brackets.push_back(basic_commutator(pm.row_lyndon[k]).to_string());
        }
        json cols = json::array();
        for (const auto& w : pm.column_labels)
            cols.push_back(to_string(w));
        report["matrix"] = json{{"row_labels", rows},
                                {"row_brackets", brackets},
                                {"column_labels", cols},
                                {"entries", matrix_json(pm.entries)}};
    }
    return {kOk, std::move(report)};
}

int write_report(const JobResult& r, const std::string& path, std::ostream& out) {
    const std::string text = r.report.dump(2) + "\n";
    if (path.empty()) {
        out << text;
        return r.exit_code;
    }
    std::ofstream file(path);
    if (!file)
        return kParseError;
    file << text;
    return r.exit_code;
}

} // namespace

Command parse_command(const std::string& name) {
    if (name == "member")
        return Command::Member;
    if (name == "magnus")
        return Command::Magnus;
    if (name == "rep")
        return Command::Rep;
    if (name == "sample")
        return Command::Sample;
    if (name == "emap-check")
        return Command::EmapCheck;
    if (name == "massey")
        return Command::Massey;
    throw ParseError("unknown command \"" + name + "\"");
}

std::string command_name(Command c) {
    switch (c) {
    case Command::Member:
        return "member";
    case Command::Magnus:
        return "magnus";
    case Command::Rep:
        return "rep";
    case Command::Sample:
        return "sample";
    case Command::EmapCheck:
        return "emap-check";
    case Command::Massey:
        return "massey";
    }
    return "?";
}

JobSpec job_from_json(const json& entry) {
    if (!entry.is_object())
        throw ParseError("each job must be a JSON object");
    JobSpec job;
    job.command = parse_command(get_string(entry, "command"));
    if (entry.contains("seed")) {
        const long s = get_int(entry, "seed");
        if (s < 0)
            throw ParseError("seed must be non-negative");
        job.seed = static_cast<std::uint64_t>(s);
    }
    if (entry.contains("output"))
        job.output = get_string(entry, "output");
    if (entry.contains("parameters")) {
        if (!entry["parameters"].is_object())
            throw ParseError("\"parameters\" must be an object");
        job.parameters = entry["parameters"];
    } else {
        job.parameters = entry;
        for (const char* key : {"command", "seed", "output"})
            job.parameters.erase(key);
    }
    return job;
}

JobResult run(const JobSpec& job) {
    json report{{"command", command_name(job.command)},
                {"version", kVersion},
                {"seed", job.seed}};
    try {
        switch (job.command) {
        case Command::Member:
            return run_member(job, report);
        case Command::Magnus:
            return run_magnus(job, report);
        case Command::Rep:
            return run_rep(job, report);
        case Command::Sample:
            return run_sample(job, report);
        case Command::EmapCheck:
            return run_emap_check(job, report);
        case Command::Massey:
            return run_massey(job, report);
        }
    } catch (const ParseError& ex) {
        report["error"] = ex.what();
        if (ex.position() != ParseError::npos)
            report["position"] = ex.position();
        return {kParseError, std::move(report)};
    } catch (const PreconditionError& ex) {
        report["error"] = ex.what();
        return {kPrecondition, std::move(report)};
    } catch (const InvariantError& ex) {
        report["error"] = ex.what();
        return {kRouteDisagreement, std::move(report)};
    } catch (const json::exception& ex) {
        report["error"] = ex.what();
        return {kParseError, std::move(report)};
    }
    return {kParseError, std::move(report)};
}

std::vector<JobResult> run_batch(const std::vector<JobSpec>& jobs) {
    std::vector<std::future<JobResult>> pending;
    pending.reserve(jobs.size());
    for (const auto& job : jobs)
        pending.push_back(std::async(std::launch::async, [&job] { return run(job); }));
    std::vector<JobResult> out;
    out.reserve(jobs.size());
    for (auto& f : pending)
        out.push_back(f.get());
    return out;
}

// ---------------------------------------------------------------------------
// Command line

namespace {

void put(json& params, const char* key, long v, bool given) {
    if (given)
        params[key] = v;
}

JobResult run_batch_file(const std::string& path, std::ostream& out) {
    std::ifstream in(path);
    if (!in)
        return {kParseError, json{{"error", "cannot read job file " + path}}};
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& ex) {
        return {kParseError, json{{"error", std::string("job file: ") + ex.what()}}};
    }
    const json& list = doc.is_object() && doc.contains("jobs") ? doc["jobs"] : doc;
    if (!list.is_array())
        return {kParseError, json{{"error", "job file must be an array or {\"jobs\": [...]}"}}};
    std::vector<JobSpec> jobs;
    try {
        for (const auto& entry : list)
            jobs.push_back(job_from_json(entry));
    } catch (const ParseError& ex) {
        return {kParseError, json{{"error", ex.what()}}};
    }
    const auto results = run_batch(jobs);
    json reports = json::array();
    int worst = kOk;
    for (std::size_t k = 0; k < results.size(); ++k) {
        json r = results[k].report;
        r["exit_code"] = results[k].exit_code;
        if (!jobs[k].output.empty())
            write_report(results[k], jobs[k].output, out);
        reports.push_back(std::move(r));
        worst = std::max(worst, results[k].exit_code);
    }
    return {worst, json{{"version", kVersion}, {"jobs", reports}}};
}

} // namespace

int main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"filtrate: filtrations of free groups by powers of the lower central series"};
    app.footer(kGrammarHelp);
    app.require_subcommand(1);

    std::string word, emap, ring = "Z", route = "both", monomial, scheme, jobs_path, output;
    long level = 0, alphabet = 0, cap = 0, count = 30, max_length = 6, fan_out = 2, nmax = 8;
    std::uint64_t seed = 1;
    bool emit_matrix = false;

    auto* member = app.add_subcommand("member", "decide filtration membership");
    member->add_option("--word", word, "group word")->required();
    member->add_option("--emap", emap, "e-map spec")->required();
    member->add_option("--level", level, "filtration level n")->required();
    auto* member_alpha = member->add_option("--alphabet", alphabet, "alphabet size");
    member->add_option("--route", route, "series|kernels|both")->capture_default_str();

    auto* magnus_cmd = app.add_subcommand("magnus", "print a truncated Magnus expansion");
    magnus_cmd->add_option("--word", word, "group word")->required();
    magnus_cmd->add_option("--cap", cap, "degree cap")->required();
    magnus_cmd->add_option("--ring", ring, "coefficient ring")->capture_default_str();
    auto* magnus_alpha = magnus_cmd->add_option("--alphabet", alphabet, "alphabet size");

    auto* rep = app.add_subcommand("rep", "unipotent matrix phi_w(g)");
    rep->add_option("--word", word, "group word")->required();
    rep->add_option("--monomial", monomial, "monomial w, e.g. x1x2")->required();
    rep->add_option("--ring", ring, "coefficient ring")->capture_default_str();
    auto* rep_alpha = rep->add_option("--alphabet", alphabet, "alphabet size");

    auto* sample = app.add_subcommand("sample", "sample elements of a recursive filtration");
    sample->add_option("--scheme", scheme, "afilt:<a1,...> | zass:<p>,<t> | product:<emap>")
        ->required();
    sample->add_option("--level", level, "filtration level n")->required();
    sample->add_option("--seed", seed, "random seed")->capture_default_str();
    sample->add_option("--count", count, "number of samples")->capture_default_str();
    auto* sample_alpha = sample->add_option("--alphabet", alphabet, "alphabet size (default 2)");
    sample->add_option("--max-length", max_length, "length of leaf words")->capture_default_str();
    sample->add_option("--fan-out", fan_out, "factors per level")->capture_default_str();

    auto* audit = app.add_subcommand("emap-check", "audit an e-map");
    audit->add_option("--emap", emap, "e-map spec")->required();
    audit->add_option("--nmax", nmax, "largest n audited")->capture_default_str();

    auto* massey = app.add_subcommand("massey", "Massey pairing rank versus necklace count");
    massey->add_option("--alphabet", alphabet, "alphabet size")->required();
    massey->add_option("--level", level, "level n >= 2")->required();
    massey->add_flag("--emit-matrix", emit_matrix, "include the pairing matrix");

    auto* batch = app.add_subcommand("batch", "run a JSON job file");
    batch->add_option("--jobs", jobs_path, "job file")->required();
    batch->add_option("--output", output, "write the combined report here");

    std::vector<const char*> argv;
    argv.push_back("filtrate");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& ex) {
        return app.exit(ex, out, err);
    } catch (const CLI::CallForAllHelp& ex) {
        return app.exit(ex, out, err);
    } catch (const CLI::ParseError& ex) {
        app.exit(ex, out, err);
        return kParseError;
    }

    if (batch->parsed()) {
        const JobResult r = run_batch_file(jobs_path, out);
        if (r.report.contains("error") && !r.report.contains("jobs")) {
            err << r.report.dump() << "\n";
            return r.exit_code;
        }
        const int written = write_report(r, output, out);
        return written == kParseError && !output.empty() ? kParseError : r.exit_code;
    }

    JobSpec job;
    json& p = job.parameters;
    if (member->parsed()) {
        job.command = Command::Member;
        p = json{{"word", word}, {"emap", emap}, {"level", level}, {"route", route}};
        put(p, "alphabet", alphabet, member_alpha->count() > 0);
    } else if (magnus_cmd->parsed()) {
        job.command = Command::Magnus;
        p = json{{"word", word}, {"cap", cap}, {"ring", ring}};
        put(p, "alphabet", alphabet, magnus_alpha->count() > 0);
    } else if (rep->parsed()) {
        job.command = Command::Rep;
        p = json{{"word", word}, {"monomial", monomial}, {"ring", ring}};
        put(p, "alphabet", alphabet, rep_alpha->count() > 0);
    } else if (sample->parsed()) {
        job.command = Command::Sample;
        job.seed = seed;
        p = json{{"scheme", scheme},
                 {"level", level},
                 {"count", count},
                 {"max_length", max_length},
                 {"fan_out", fan_out}};
        put(p, "alphabet", alphabet, sample_alpha->count() > 0);
    } else if (audit->parsed()) {
        job.command = Command::EmapCheck;
        p = json{{"emap", emap}, {"nmax", nmax}};
    } else if (massey->parsed()) {
        job.command = Command::Massey;
        p = json{{"alphabet", alphabet}, {"level", level}, {"emit_matrix", emit_matrix}};
    }

    const JobResult r = run(job);
    if (r.exit_code != kOk && r.report.contains("error"))
        err << "filtrate: " << r.report["error"].get<std::string>() << "\n";
    if (r.exit_code == kParseError || r.exit_code == kPrecondition) {
        out << r.report.dump(2) << "\n";
        return r.exit_code;
    }
    return write_report(r, "", out);
}

} // namespace filtrate::cli
