// fieldrank command line: synthetic corpus generation, staged analysis
// (ingest / disambiguate / hca / topsci / rank / correlate), the bias
// simulation, and the end-to-end pipeline.
//
// Exit codes: 0 success, 2 input error, 3 validation error, 4 internal
// invariant failure.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fieldrank/fieldrank.hpp"

namespace fs = std::filesystem;
using namespace fieldrank;

namespace {

std::vector<double> parse_thresholds(const std::string& csv) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= csv.size()) {
        auto comma = csv.find(',', pos);
        std::string tok = trim(csv.substr(pos, comma == std::string::npos ? std::string::npos
                                                                          : comma - pos));
        if (!tok.empty()) {
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw input_error("bad threshold value: " + tok);
            }
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw input_error("no thresholds given");
    return out;
}

struct CommonFlags {
    std::string window = "2006:2010";
    int min_tenure = 3;
    std::string thresholds = "1,5";
    std::string mode = "both";
    double theta = 0.1;
    double tau = 0.5;
    std::string out_dir;
    std::string format = "csv";
    int threads = 0;  // 0: hardware default

    AnalysisWindow parsed_window() const {
        AnalysisWindow w = parse_window(window);
        w.min_tenure_years = min_tenure;
        w.validate();
        return w;
    }
    int resolved_threads() const { return threads > 0 ? threads : default_thread_count(); }
};

void add_common(CLI::App* cmd, CommonFlags& flags, bool with_analysis_knobs = true) {
    cmd->add_option("--window", flags.window, "Analysis window START:END")
        ->capture_default_str();
    cmd->add_option("--min-tenure", flags.min_tenure, "Minimum tenure years in window")
        ->capture_default_str();
    if (with_analysis_knobs) {
        cmd->add_option("--thresholds", flags.thresholds, "HCA percentile thresholds, comma list")
            ->capture_default_str();
        cmd->add_option("--mode", flags.mode, "Counting mode: full|fractional|both")
            ->capture_default_str();
        cmd->add_option("--theta", flags.theta, "Fractional TS threshold")
            ->capture_default_str();
        cmd->add_option("--tau", flags.tau, "Field eligibility publishing share")
            ->capture_default_str();
    }
    cmd->add_option("--out", flags.out_dir, "Output directory");
    cmd->add_option("--format", flags.format, "Report format: csv|json|markdown")
        ->capture_default_str();
    cmd->add_option("--threads", flags.threads, "Worker threads (0 = hardware)");
}

SynthConfig synth_from_flags(const std::string& config_path, std::uint64_t seed,
                             bool seed_given) {
    SynthConfig config =
        config_path.empty() ? default_synth_config() : load_synth_config(config_path);
    if (seed_given) config.seed = seed;
    return config;
}

void write_text(const std::string& path, const std::string& bytes) {
    auto out = open_output(path);
    out << bytes;
}

Corpus load_corpus_files(const std::string& roster_path, const std::string& pubs_path,
                         const std::string& taxonomy_path, const AnalysisWindow& window,
                         int* excluded = nullptr, int* out_of_window = nullptr) {
    Corpus corpus;
    corpus.window = window;
    corpus.taxonomy = load_taxonomy(taxonomy_path);
    auto roster = load_roster(roster_path, window, corpus.taxonomy);
    auto pubs = load_publications(pubs_path, window);
    corpus.roster = std::move(roster.roster);
    corpus.publications = std::move(pubs.publications);
    if (excluded) *excluded = roster.excluded_by_tenure;
    if (out_of_window) *out_of_window = pubs.out_of_window;
    return corpus;
}

int cmd_generate(const std::string& config_path, std::uint64_t seed, bool seed_given,
                 const CommonFlags& flags) {
    if (flags.out_dir.empty()) throw input_error("generate: --out DIR is required");
    SynthConfig config = synth_from_flags(config_path, seed, seed_given);
    config.window = flags.parsed_window();
    SynthResult synth = generate_corpus(config);

    fs::create_directories(flags.out_dir);
    fs::path dir(flags.out_dir);
    {
        auto out = open_output((dir / "roster.csv").string());
        write_roster(out, synth.corpus.roster);
    }
    {
        auto out = open_output((dir / "publications.jsonl").string());
        write_publications(out, synth.corpus.publications);
    }
    {
        auto out = open_output((dir / "taxonomy.csv").string());
        write_taxonomy(out, synth.corpus.taxonomy);
    }
    {
        auto out = open_output((dir / "truth_links.csv").string());
        write_links(out, synth.truth);
    }
    {
        auto out = open_output((dir / "synth_config.txt").string());
        write_synth_config(out, config);
    }
    std::cout << "generated " << synth.corpus.roster.size() << " researchers, "
              << synth.corpus.publications.size() << " publications, " << synth.truth.size()
              << " truth links -> " << flags.out_dir << "\n";
    return exit_ok;
}

int cmd_ingest(const std::string& roster_path, const std::string& pubs_path,
               const std::string& taxonomy_path, const CommonFlags& flags) {
    int excluded = 0, out_of_window = 0;
    Corpus corpus = load_corpus_files(roster_path, pubs_path, taxonomy_path,
                                      flags.parsed_window(), &excluded, &out_of_window);
    nlohmann::ordered_json summary;
    summary["researchers"] = corpus.roster.size();
    summary["roster_excluded_by_tenure"] = excluded;
    summary["publications"] = corpus.publications.size();
    summary["publications_out_of_window"] = out_of_window;
    summary["taxonomy_fields"] = corpus.taxonomy.field_count();
    std::string text = summary.dump(2) + "\n";
    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        write_text((fs::path(flags.out_dir) / "ingest.json").string(), text);
    }
    std::cout << text;
    return exit_ok;
}

int cmd_disambiguate(const std::string& roster_path, const std::string& pubs_path,
                     const std::string& taxonomy_path, const std::string& truth_path,
                     const CommonFlags& flags) {
    Corpus corpus =
        load_corpus_files(roster_path, pubs_path, taxonomy_path, flags.parsed_window());
    DisambigDiagnostics diag;
    std::vector<AuthorshipLink> links = resolve_links(corpus, &diag);

    nlohmann::ordered_json report;
    report["links"] = links.size();
    report["bylines_with_candidates"] = diag.bylines_with_candidates;
    report["unambiguous"] = diag.unambiguous;
    report["resolved_affiliation"] = diag.resolved_affiliation;
    report["resolved_category"] = diag.resolved_category;
    report["dropped_ambiguous"] = diag.dropped_ambiguous;
    report["dropped_duplicate"] = diag.dropped_duplicate;
    if (!truth_path.empty()) {
        ResolutionMetrics metrics = score_links(links, load_links(truth_path));
        report["metrics"] = {{"true_positives", metrics.true_positives},
                             {"false_positives", metrics.false_positives},
                             {"false_negatives", metrics.false_negatives},
                             {"precision", metrics.precision},
                             {"recall", metrics.recall},
                             {"f_measure", metrics.f_measure}};
    }
    std::string text = report.dump(2) + "\n";
    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        auto out = open_output((fs::path(flags.out_dir) / "links.csv").string());
        write_links(out, links);
        write_text((fs::path(flags.out_dir) / "disambig_diagnostics.json").string(), text);
    }
    std::cout << text;
    return exit_ok;
}

int cmd_hca(const std::string& pubs_path, const CommonFlags& flags) {
    if (flags.out_dir.empty()) throw input_error("hca: --out DIR is required");
    AnalysisWindow window = flags.parsed_window();
    auto pubs = load_publications(pubs_path, window);
    std::vector<double> thresholds = parse_thresholds(flags.thresholds);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    StrataIndex strata = build_strata(pubs.publications);
    PercentileIndex percentiles =
        compute_percentiles(pubs.publications, strata, flags.resolved_threads());
    std::vector<HcaSet> sets;
    for (double p : thresholds) sets.push_back(hca_set(pubs.publications, percentiles, p));

    Corpus shell;
    shell.publications = std::move(pubs.publications);
    fs::create_directories(flags.out_dir);
    write_text((fs::path(flags.out_dir) / "percentiles.csv").string(),
               render_percentile_dump(shell, strata, percentiles, thresholds, sets));
    for (std::size_t t = 0; t < thresholds.size(); ++t)
        std::cout << "HCA(" << format_threshold(thresholds[t]) << "%): " << sets[t].members.size()
                  << " of " << shell.publications.size() << " publications\n";
    return exit_ok;
}

int cmd_topsci(const std::string& roster_path, const std::string& pubs_path,
               const std::string& taxonomy_path, const std::string& links_path,
               const CommonFlags& flags) {
    if (flags.out_dir.empty()) throw input_error("topsci: --out DIR is required");
    Corpus corpus =
        load_corpus_files(roster_path, pubs_path, taxonomy_path, flags.parsed_window());
    corpus.links = links_path.empty() ? resolve_links(corpus) : load_links(links_path);
    CorpusIndex index(corpus);
    std::vector<double> thresholds = parse_thresholds(flags.thresholds);
    std::sort(thresholds.begin(), thresholds.end());
    thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());

    StrataIndex strata = build_strata(corpus.publications);
    PercentileIndex percentiles =
        compute_percentiles(corpus.publications, strata, flags.resolved_threads());
    std::vector<HcaSet> sets;
    for (double p : thresholds) sets.push_back(hca_set(corpus.publications, percentiles, p));

    fs::create_directories(flags.out_dir);
    write_text((fs::path(flags.out_dir) / "researchers.csv").string(),
               render_researcher_dump(corpus, index, thresholds, sets, flags.theta));
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
        TopScientistSet full = top_scientists_full(corpus, index, sets[t]);
        TopScientistSet frac = top_scientists_fractional(corpus, index, sets[t], flags.theta);
        std::cout << "p=" << format_threshold(thresholds[t]) << "%: " << full.members.size()
                  << " full-count TS, " << frac.members.size() << " fractional TS (theta "
                  << flags.theta << ")\n";
    }
    return exit_ok;
}

RunConfig run_config_from_flags(const CommonFlags& flags) {
    RunConfig config;
    config.window = flags.parsed_window();
    config.thresholds = parse_thresholds(flags.thresholds);
    config.mode = parse_mode(flags.mode);
    config.theta = flags.theta;
    config.tau = flags.tau;
    config.threads = flags.resolved_threads();
    config.format = flags.format;
    config.out_dir = flags.out_dir;
    return config;
}

int cmd_rank(const std::string& roster_path, const std::string& pubs_path,
             const std::string& taxonomy_path, std::size_t top_n, const CommonFlags& flags) {
    if (flags.out_dir.empty()) throw input_error("rank: --out DIR is required");
    RunConfig config = run_config_from_flags(flags);
    config.roster_path = roster_path;
    config.publications_path = pubs_path;
    config.taxonomy_path = taxonomy_path;
    config.top_n = top_n;
    PipelineResult result = run_pipeline(std::move(config));
    std::cout << "eligible fields: " << result.eligible_fields.size() << "\n";
    for (const auto& path : result.written_files) std::cout << "wrote " << path << "\n";
    return exit_ok;
}

int cmd_correlate(const std::string& a_path, const std::string& b_path,
                  const CommonFlags& flags) {
    // Inputs are fields_*.csv tables; incidence is recomputed exactly from
    // the ts_count / research_staff columns.
    auto read_ranking = [](const std::string& path) {
        auto in = open_input(path);
        CsvReader reader(in);
        std::vector<std::string> row;
        if (!reader.next(row)) throw input_error(path + ": empty file");
        auto col = [&](const std::string& name) {
            for (std::size_t i = 0; i < row.size(); ++i)
                if (row[i] == name) return i;
            throw input_error(path + ": missing column " + name);
        };
        std::size_t code_col = col("field_code");
        std::size_t staff_col = col("research_staff");
        std::size_t ts_col = col("ts_count");
        std::map<std::string, double> out;
        while (reader.next(row)) {
            double staff = std::stod(row[staff_col]);
            double ts = std::stod(row[ts_col]);
            if (staff <= 0) continue;
            out[row[code_col]] = ts / staff;
        }
        return out;
    };
    RankCorrelation rc = rank_correlation(read_ranking(a_path), read_ranking(b_path));
    nlohmann::ordered_json doc;
    doc["spearman_rho"] = rc.rho;
    doc["n_fields"] = rc.n;
    std::string text = doc.dump(2) + "\n";
    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        write_text((fs::path(flags.out_dir) / "correlation.json").string(), text);
    }
    std::cout << text;
    return exit_ok;
}

int cmd_bias_sim(const std::string& config_path, std::uint64_t seed, bool seed_given,
                 int replications, double threshold_p, const CommonFlags& flags) {
    SynthConfig config = config_path.empty() ? default_bias_config(seed_given ? seed : 1)
                                             : load_synth_config(config_path);
    if (seed_given) config.seed = seed;
    BiasReport report = run_bias_experiment(config, replications, threshold_p, flags.theta);

    nlohmann::ordered_json doc;
    doc["replications"] = report.replications;
    doc["threshold_p"] = report.threshold_p;
    doc["theta"] = report.theta;
    doc["incidence_gap_full"] = report.incidence_gap_full;
    doc["incidence_gap_fractional"] = report.incidence_gap_fractional;
    doc["share_fractional_smaller"] = report.share_fractional_smaller;
    doc["positive_full"] = report.positive_full;
    doc["negative_full"] = report.negative_full;
    doc["sign_test_p"] = report.sign_test_p;
    doc["seeds_fnv1a64"] = [&] {
        std::string all;
        for (auto s : report.seeds) all += std::to_string(s) + ",";
        return fnv1a64_hex(all);
    }();
    std::string text = doc.dump(2) + "\n";
    if (!flags.out_dir.empty()) {
        fs::create_directories(flags.out_dir);
        write_text((fs::path(flags.out_dir) / "bias_report.json").string(), text);
    }
    std::cout << text;
    return exit_ok;
}

int cmd_pipeline(const std::string& roster_path, const std::string& pubs_path,
                 const std::string& taxonomy_path, const std::string& synth_path,
                 bool synth_default, std::uint64_t seed, bool seed_given, std::size_t top_n,
                 bool percentile_dump, bool researcher_dump, const CommonFlags& flags) {
    if (flags.out_dir.empty()) throw input_error("pipeline: --out DIR is required");
    RunConfig config = run_config_from_flags(flags);
    config.top_n = top_n;
    config.percentile_dump = percentile_dump;
    config.researcher_dump = researcher_dump;
    if (!synth_path.empty() || synth_default) {
        config.synth = synth_from_flags(synth_path, seed, seed_given);
    } else {
        config.roster_path = roster_path;
        config.publications_path = pubs_path;
        config.taxonomy_path = taxonomy_path;
    }
    PipelineResult result = run_pipeline(std::move(config));
    std::cout << "researchers: " << result.corpus.roster.size()
              << ", publications: " << result.corpus.publications.size()
              << ", links: " << result.corpus.links.size() << "\n";
    for (std::size_t t = 0; t < result.thresholds.size(); ++t)
        std::cout << "HCA(" << format_threshold(result.thresholds[t])
                  << "%): " << result.hca_sets[t].members.size() << "\n";
    for (const auto& path : result.written_files) std::cout << "wrote " << path << "\n";
    return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fieldrank: national research-field strength assessment from highly-cited "
                 "articles"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string roster_path, pubs_path, taxonomy_path, links_path, truth_path;
    std::string synth_config_path, ranking_a, ranking_b;
    std::uint64_t seed = 1;
    bool synth_default = false;
    std::size_t top_n = 20;
    int replications = 200;
    double bias_threshold = 1.0;
    bool percentile_dump = false, researcher_dump = false;

    auto* generate = app.add_subcommand("generate", "Generate a synthetic corpus with truth");
    generate->add_option("--config", synth_config_path, "Synth config file");
    auto* gen_seed = generate->add_option("--seed", seed, "Master seed");
    add_common(generate, flags, false);

    auto* ingest = app.add_subcommand("ingest", "Validate roster/publications/taxonomy inputs");
    ingest->add_option("--roster", roster_path, "Roster CSV")->required();
    ingest->add_option("--publications", pubs_path, "Publications JSONL")->required();
    ingest->add_option("--taxonomy", taxonomy_path, "Taxonomy CSV")->required();
    add_common(ingest, flags, false);

    auto* disambiguate = app.add_subcommand("disambiguate", "Resolve bylines to roster links");
    disambiguate->add_option("--roster", roster_path, "Roster CSV")->required();
    disambiguate->add_option("--publications", pubs_path, "Publications JSONL")->required();
    disambiguate->add_option("--taxonomy", taxonomy_path, "Taxonomy CSV")->required();
    disambiguate->add_option("--truth", truth_path, "Truth links CSV (scores the resolution)");
    add_common(disambiguate, flags, false);

    auto* hca = app.add_subcommand("hca", "Compute stratum percentiles and HCA flags");
    hca->add_option("--publications", pubs_path, "Publications JSONL")->required();
    add_common(hca, flags);

    auto* topsci = app.add_subcommand("topsci", "Identify top scientists per threshold");
    topsci->add_option("--roster", roster_path, "Roster CSV")->required();
    topsci->add_option("--publications", pubs_path, "Publications JSONL")->required();
    topsci->add_option("--taxonomy", taxonomy_path, "Taxonomy CSV")->required();
    topsci->add_option("--links", links_path, "Resolved links CSV (else resolves in-process)");
    add_common(topsci, flags);

    auto* rank = app.add_subcommand("rank", "Produce the field/discipline report bundle");
    rank->add_option("--roster", roster_path, "Roster CSV")->required();
    rank->add_option("--publications", pubs_path, "Publications JSONL")->required();
    rank->add_option("--taxonomy", taxonomy_path, "Taxonomy CSV")->required();
    rank->add_option("--top-n", top_n, "Rows in the top table")->capture_default_str();
    add_common(rank, flags);

    auto* correlate = app.add_subcommand("correlate", "Spearman rho between two field tables");
    correlate->add_option("--a", ranking_a, "First fields_*.csv")->required();
    correlate->add_option("--b", ranking_b, "Second fields_*.csv")->required();
    add_common(correlate, flags, false);

    auto* bias = app.add_subcommand("bias-sim", "Publication-intensity bias experiment");
    bias->add_option("--config", synth_config_path, "Two-field synth config");
    auto* bias_seed = bias->add_option("--seed", seed, "Master seed");
    bias->add_option("--replications", replications, "Replications")->capture_default_str();
    bias->add_option("--threshold", bias_threshold, "HCA threshold")->capture_default_str();
    add_common(bias, flags);

    auto* pipeline = app.add_subcommand("pipeline", "Run the full analysis end to end");
    pipeline->add_option("--roster", roster_path, "Roster CSV");
    pipeline->add_option("--publications", pubs_path, "Publications JSONL");
    pipeline->add_option("--taxonomy", taxonomy_path, "Taxonomy CSV");
    pipeline->add_option("--synth", synth_config_path, "Synth config as input source");
    pipeline->add_flag("--synth-default", synth_default, "Use the built-in synth preset");
    auto* pipe_seed = pipeline->add_option("--seed", seed, "Synth seed override");
    pipeline->add_option("--top-n", top_n, "Rows in the top table")->capture_default_str();
    pipeline->add_flag("--percentile-dump", percentile_dump, "Write percentiles.csv");
    pipeline->add_flag("--researcher-dump", researcher_dump, "Write researchers.csv");
    add_common(pipeline, flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : exit_input_error;
    }

    try {
        if (generate->parsed())
            return cmd_generate(synth_config_path, seed, gen_seed->count() > 0, flags);
        if (ingest->parsed()) return cmd_ingest(roster_path, pubs_path, taxonomy_path, flags);
        if (disambiguate->parsed())
            return cmd_disambiguate(roster_path, pubs_path, taxonomy_path, truth_path, flags);
        if (hca->parsed()) return cmd_hca(pubs_path, flags);
        if (topsci->parsed())
            return cmd_topsci(roster_path, pubs_path, taxonomy_path, links_path, flags);
        if (rank->parsed())
            return cmd_rank(roster_path, pubs_path, taxonomy_path, top_n, flags);
        if (correlate->parsed()) return cmd_correlate(ranking_a, ranking_b, flags);
        if (bias->parsed())
            return cmd_bias_sim(synth_config_path, seed, bias_seed->count() > 0, replications,
                                bias_threshold, flags);
        if (pipeline->parsed())
            return cmd_pipeline(roster_path, pubs_path, taxonomy_path, synth_config_path,
                                synth_default, seed, pipe_seed->count() > 0, top_n,
                                percentile_dump, researcher_dump, flags);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_input_error;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_validation_error;
    } catch (const internal_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal_error;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_internal_error;
    }
    return exit_ok;
}
