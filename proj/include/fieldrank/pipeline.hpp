#pragma once

// End-to-end driver: ingest (files or synth) -> disambiguate -> strata and
// percentiles -> HCA sets per threshold -> TS sets per mode -> analytics ->
// rendered report bundle with provenance. Analytic stages are pure; the only
// randomness sits behind the synth source's seed.

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fieldrank/analytics.hpp"
#include "fieldrank/disambig.hpp"
#include "fieldrank/hca.hpp"
#include "fieldrank/io.hpp"
#include "fieldrank/parallel.hpp"
#include "fieldrank/reports.hpp"
#include "fieldrank/scoring.hpp"
#include "fieldrank/summary.hpp"
#include "fieldrank/synth_config.hpp"

namespace fieldrank {

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline std::string fnv1a64_hex(std::string_view bytes) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(bytes)));
    return buf;
}

inline std::string read_file(const std::string& path) {
    auto in = open_input(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

enum class PipelineMode { full, fractional, both };

inline PipelineMode parse_mode(const std::string& token) {
    if (token == "full") return PipelineMode::full;
    if (token == "fractional") return PipelineMode::fractional;
    if (token == "both") return PipelineMode::both;
    throw input_error("unknown counting mode '" + token + "' (valid: full, fractional, both)");
}

struct RunConfig {
    AnalysisWindow window{2006, 2010, 3};
    std::vector<double> thresholds{1.0, 5.0};
    PipelineMode mode = PipelineMode::both;
    double theta = 0.1;
    double tau = 0.5;
    std::size_t top_n = 20;
    int threads = 1;
    std::string format = "csv";

    // Input source: either the three files or a synth config.
    std::string roster_path;
    std::string publications_path;
    std::string taxonomy_path;
    std::optional<SynthConfig> synth;

    std::string out_dir;  // empty: keep reports in memory only
    bool percentile_dump = false;
    bool researcher_dump = false;

    // Sorted unique thresholds; [5,1] and [1,5] are the same run.
    void canonicalize() {
        std::sort(thresholds.begin(), thresholds.end());
        thresholds.erase(std::unique(thresholds.begin(), thresholds.end()), thresholds.end());
    }

    void validate() const {
        window.validate();
        if (thresholds.empty()) throw validation_error("run config: no HCA thresholds");
        for (double p : thresholds) validate_threshold(p);
        validate_theta(theta);
        if (!(tau >= 0.0 && tau <= 1.0))
            throw validation_error("run config: tau must lie in [0,1], got " +
                                   std::to_string(tau));
        if (top_n < 1) throw validation_error("run config: top_n must be >= 1");
        if (!synth && (roster_path.empty() || publications_path.empty() || taxonomy_path.empty()))
            throw input_error("run config: need roster, publications and taxonomy paths (or a "
                              "synth source)");
    }
};

struct ModeOutputs {
    CountingMode mode = CountingMode::full;
    double threshold_p = 0.0;
    TopScientistSet ts;
    std::vector<DisciplineStats> disciplines;
    std::vector<FieldStats> fields;  // eligible fields, percentile-ranked when >= 2
};

struct PipelineResult {
    Corpus corpus;
    int roster_excluded_by_tenure = 0;
    int publications_out_of_window = 0;
    DisambigDiagnostics disambig;
    int degenerate_strata = 0;
    std::vector<double> thresholds;
    std::vector<HcaSet> hca_sets;          // aligned with thresholds
    std::vector<ModeOutputs> outputs;      // per (mode, threshold)
    SummaryReport summary;
    std::set<std::string> eligible_fields;
    std::vector<std::string> zero_staff_fields;
    nlohmann::ordered_json correlations;
    std::map<std::string, std::string> rendered;  // file name -> bytes
    std::vector<std::string> written_files;
};

namespace detail {

template <typename Fn>
auto stage(const char* name, Fn&& fn) {
    try {
        return fn();
    } catch (const input_error& e) {
        throw input_error(std::string(name) + ": " + e.what());
    } catch (const validation_error& e) {
        throw validation_error(std::string(name) + ": " + e.what());
    } catch (const internal_error& e) {
        throw internal_error(std::string(name) + ": " + e.what());
    }
}

inline void self_check(const PipelineResult& result, double theta) {
    // HCA monotonicity across the sorted thresholds.
    for (std::size_t i = 0; i + 1 < result.hca_sets.size(); ++i) {
        for (const auto& id : result.hca_sets[i].members)
            if (!result.hca_sets[i + 1].members.count(id))
                throw internal_error("self-check: HCA set at p=" +
                                     format_threshold(result.thresholds[i]) +
                                     " not contained in p=" +
                                     format_threshold(result.thresholds[i + 1]));
    }
    // Fractional members are full members at the same threshold.
    for (const auto& frac : result.outputs) {
        if (frac.mode != CountingMode::fractional) continue;
        for (const auto& full : result.outputs) {
            if (full.mode != CountingMode::full || full.threshold_p != frac.threshold_p)
                continue;
            for (const auto& id : frac.ts.members)
                if (!full.ts.members.count(id))
                    throw internal_error("self-check: fractional TS not within full TS at p=" +
                                         format_threshold(frac.threshold_p));
        }
    }
    (void)theta;
}

}  // namespace detail

inline std::string render_percentile_dump(const Corpus& corpus, const StrataIndex& strata,
                                          const PercentileIndex& percentiles,
                                          const std::vector<double>& thresholds,
                                          const std::vector<HcaSet>& hca_sets) {
    // One inversion pass: (stratum, member percentile) pairs per publication,
    // so the dump stays linear in total stratum membership.
    std::vector<std::vector<std::pair<std::uint32_t, double>>> by_pub(
        corpus.publications.size());
    for (std::size_t s = 0; s < strata.strata.size(); ++s) {
        const auto& members = strata.strata[s].members;
        const auto& pcts = percentiles.per_stratum[s];
        for (std::size_t i = 0; i < members.size(); ++i)
            by_pub[members[i]].emplace_back(static_cast<std::uint32_t>(s), pcts[i]);
    }

    std::ostringstream out;
    std::vector<std::string> header = {"publication_id", "category",  "year",
                                       "citations",      "percentile", "effective_percentile"};
    for (double p : thresholds) header.push_back("is_hca_" + threshold_stem(p));
    csv_write_row(out, header);
    for (std::size_t i = 0; i < corpus.publications.size(); ++i) {
        const auto& pub = corpus.publications[i];
        for (const auto& category : pub.subject_categories) {
            auto key = strata.by_key.find({pub.year, category});
            if (key == strata.by_key.end())
                throw internal_error("percentile dump: no stratum for " + pub.publication_id +
                                     " category " + category);
            double pct = 0.0;
            bool found = false;
            for (const auto& [stratum_idx, value] : by_pub[i]) {
                if (stratum_idx == key->second) {
                    pct = value;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw internal_error("percentile dump: membership missing for " +
                                     pub.publication_id);
            std::vector<std::string> row = {pub.publication_id,
                                            category,
                                            std::to_string(pub.year),
                                            std::to_string(pub.citation_count),
                                            format_double(pct),
                                            format_double(percentiles.effective[i])};
            for (std::size_t t = 0; t < hca_sets.size(); ++t)
                row.push_back(hca_sets[t].contains(i) ? "1" : "0");
            csv_write_row(out, row);
        }
    }
    return out.str();
}

inline std::string render_researcher_dump(const Corpus& corpus, const CorpusIndex& index,
                                          const std::vector<double>& thresholds,
                                          const std::vector<HcaSet>& hca_sets, double theta) {
    std::ostringstream out;
    std::vector<std::string> header = {"researcher_id", "field_code"};
    for (double p : thresholds) header.push_back("hca_count_" + threshold_stem(p));
    for (double p : thresholds) header.push_back("fractional_output_" + threshold_stem(p));
    for (double p : thresholds) {
        header.push_back("is_ts_full_" + threshold_stem(p));
        header.push_back("is_ts_frac_" + threshold_stem(p));
    }
    csv_write_row(out, header);

    std::vector<std::unordered_map<std::string, std::int64_t>> counts(thresholds.size());
    std::vector<std::unordered_map<std::string, double>> fractions(thresholds.size());
    for (std::size_t t = 0; t < thresholds.size(); ++t) {
        std::unordered_set<std::string> seen_pair;
        for (const auto& link : corpus.links) {
            std::size_t pub_idx = index.publication_index(link.publication_id);
            if (!hca_sets[t].contains(pub_idx)) continue;
            if (!seen_pair.insert(link.researcher_id + '\x1f' + link.publication_id).second)
                continue;
            ++counts[t][link.researcher_id];
        }
        fractions[t] = fractional_outputs(corpus, index, hca_sets[t]);
    }

    std::vector<const Researcher*> ordered;
    ordered.reserve(corpus.roster.size());
    for (const auto& r : corpus.roster) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(), [](const Researcher* a, const Researcher* b) {
        return a->researcher_id < b->researcher_id;
    });

    for (const auto* r : ordered) {
        std::vector<std::string> row = {r->researcher_id, r->field_code};
        std::vector<double> frac_values(thresholds.size(), 0.0);
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            auto it = counts[t].find(r->researcher_id);
            row.push_back(std::to_string(it == counts[t].end() ? 0 : it->second));
        }
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            auto it = fractions[t].find(r->researcher_id);
            frac_values[t] = it == fractions[t].end() ? 0.0 : it->second;
            row.push_back(format_double(frac_values[t]));
        }
        for (std::size_t t = 0; t < thresholds.size(); ++t) {
            auto it = counts[t].find(r->researcher_id);
            bool is_full = it != counts[t].end() && it->second > 0;
            row.push_back(is_full ? "1" : "0");
            row.push_back(frac_values[t] >= theta ? "1" : "0");
        }
        csv_write_row(out, row);
    }
    return out.str();
}

inline PipelineResult run_pipeline(RunConfig config) {
    config.canonicalize();
    config.validate();

    PipelineResult result;
    result.thresholds = config.thresholds;
    nlohmann::ordered_json inputs = nlohmann::ordered_json::object();

    detail::stage("ingest", [&] {
        if (config.synth) {
            SynthConfig synth_config = *config.synth;
            synth_config.window = config.window;
            SynthResult synth = generate_corpus(synth_config);
            result.corpus = std::move(synth.corpus);
            std::ostringstream cfg;
            write_synth_config(cfg, synth_config);
            inputs["synth_config"] = {{"seed", synth_config.seed},
                                      {"fnv1a64", fnv1a64_hex(cfg.str())}};
        } else {
            FieldTaxonomy taxonomy = load_taxonomy(config.taxonomy_path);
            auto roster = load_roster(config.roster_path, config.window, taxonomy);
            auto pubs = load_publications(config.publications_path, config.window);
            result.corpus.window = config.window;
            result.corpus.taxonomy = std::move(taxonomy);
            result.corpus.roster = std::move(roster.roster);
            result.corpus.publications = std::move(pubs.publications);
            result.roster_excluded_by_tenure = roster.excluded_by_tenure;
            result.publications_out_of_window = pubs.out_of_window;
            auto digest = [&](const std::string& path) {
                return nlohmann::ordered_json{
                    {"file", std::filesystem::path(path).filename().string()},
                    {"fnv1a64", fnv1a64_hex(read_file(path))}};
            };
            inputs["roster"] = digest(config.roster_path);
            inputs["publications"] = digest(config.publications_path);
            inputs["taxonomy"] = digest(config.taxonomy_path);
        }
        return 0;
    });

    CorpusIndex index(result.corpus);

    detail::stage("disambiguate", [&] {
        result.corpus.links = resolve_links(result.corpus, &result.disambig);
        return 0;
    });

    StrataIndex strata;
    PercentileIndex percentiles;
    detail::stage("percentiles", [&] {
        strata = build_strata(result.corpus.publications);
        percentiles = compute_percentiles(result.corpus.publications, strata, config.threads);
        result.degenerate_strata = percentiles.degenerate_strata;
        return 0;
    });

    detail::stage("hca", [&] {
        for (double p : config.thresholds)
            result.hca_sets.push_back(hca_set(result.corpus.publications, percentiles, p));
        return 0;
    });

    detail::stage("topsci", [&] {
        std::vector<CountingMode> modes;
        if (config.mode != PipelineMode::fractional) modes.push_back(CountingMode::full);
        if (config.mode != PipelineMode::full) modes.push_back(CountingMode::fractional);
        for (std::size_t t = 0; t < config.thresholds.size(); ++t) {
            for (CountingMode m : modes) {
                ModeOutputs out;
                out.mode = m;
                out.threshold_p = config.thresholds[t];
                out.ts = m == CountingMode::full
                             ? top_scientists_full(result.corpus, index, result.hca_sets[t])
                             : top_scientists_fractional(result.corpus, index,
                                                         result.hca_sets[t], config.theta);
                result.outputs.push_back(std::move(out));
            }
        }
        return 0;
    });

    detail::stage("analytics", [&] {
        FieldEligibility eligibility = field_eligibility(result.corpus, config.tau);
        result.eligible_fields = eligibility.eligible;
        result.zero_staff_fields = eligibility.zero_staff_fields;
        for (auto& out : result.outputs) {
            out.disciplines = discipline_rollup(result.corpus, out.ts);
            out.fields = field_stats_all(result.corpus, out.ts, &result.eligible_fields);
            if (out.fields.size() >= 2) percentile_rank(out.fields);
        }
        std::vector<const HcaSet*> hca_ptrs;
        for (const auto& h : result.hca_sets) hca_ptrs.push_back(&h);
        result.summary = corpus_summary(result.corpus, index, hca_ptrs);

        result.correlations = nlohmann::ordered_json::array();
        for (CountingMode m : {CountingMode::full, CountingMode::fractional}) {
            std::vector<const ModeOutputs*> per_mode;
            for (const auto& out : result.outputs)
                if (out.mode == m) per_mode.push_back(&out);
            for (std::size_t i = 0; i + 1 < per_mode.size(); ++i) {
                for (std::size_t j = i + 1; j < per_mode.size(); ++j) {
                    if (per_mode[i]->fields.size() < 2) continue;
                    RankCorrelation rc =
                        rank_correlation(incidence_vector(per_mode[i]->fields),
                                         incidence_vector(per_mode[j]->fields));
                    result.correlations.push_back(
                        {{"mode", mode_token(m)},
                         {"threshold_a", per_mode[i]->threshold_p},
                         {"threshold_b", per_mode[j]->threshold_p},
                         {"spearman_rho", rc.rho},
                         {"n_fields", rc.n}});
                }
            }
        }
        return 0;
    });

    detail::stage("self-check", [&] {
        detail::self_check(result, config.theta);
        return 0;
    });

    detail::stage("render", [&] {
        const std::string ext = format_extension(config.format);
        auto add = [&](const Table& t) {
            result.rendered[t.name + ext] = render_table(t, config.format);
        };
        add(summary_table(result.summary, config.format == "markdown"));
        for (const auto& out : result.outputs) {
            add(discipline_table(out.disciplines, result.corpus.taxonomy, out.mode,
                                 out.threshold_p));
            add(field_table(out.fields, result.corpus.taxonomy, out.mode, out.threshold_p,
                            out.fields.size() >= 2));
            add(zero_ts_table(zero_ts_report(out.fields), result.corpus.taxonomy, out.mode,
                              out.threshold_p));
            add(top_table_render(top_table(out.fields, config.top_n), result.corpus.taxonomy,
                                 out.mode, out.threshold_p, config.top_n));
        }
        result.rendered["correlation.json"] = result.correlations.dump(2) + "\n";

        nlohmann::ordered_json diag;
        diag["roster_excluded_by_tenure"] = result.roster_excluded_by_tenure;
        diag["publications_out_of_window"] = result.publications_out_of_window;
        diag["bylines_with_candidates"] = result.disambig.bylines_with_candidates;
        diag["unambiguous"] = result.disambig.unambiguous;
        diag["resolved_affiliation"] = result.disambig.resolved_affiliation;
        diag["resolved_category"] = result.disambig.resolved_category;
        diag["dropped_ambiguous"] = result.disambig.dropped_ambiguous;
        diag["dropped_duplicate"] = result.disambig.dropped_duplicate;
        diag["degenerate_strata"] = result.degenerate_strata;
        diag["eligible_fields"] = result.eligible_fields.size();
        diag["zero_staff_fields"] = result.zero_staff_fields;
        result.rendered["diagnostics.json"] = diag.dump(2) + "\n";

        if (config.percentile_dump)
            result.rendered["percentiles.csv"] = render_percentile_dump(
                result.corpus, strata, percentiles, config.thresholds, result.hca_sets);
        if (config.researcher_dump)
            result.rendered["researchers.csv"] = render_researcher_dump(
                result.corpus, index, config.thresholds, result.hca_sets, config.theta);

        nlohmann::ordered_json prov;
        prov["tool"] = "fieldrank";
        prov["version"] = "0.1.0";
        prov["window"] = {{"start_year", config.window.start_year},
                          {"end_year", config.window.end_year},
                          {"min_tenure_years", config.window.min_tenure_years}};
        prov["thresholds"] = config.thresholds;
        prov["mode"] = config.mode == PipelineMode::both
                           ? "both"
                           : (config.mode == PipelineMode::full ? "full" : "fractional");
        prov["theta"] = config.theta;
        prov["tau"] = config.tau;
        prov["top_n"] = config.top_n;
        prov["threads"] = config.threads;
        prov["format"] = config.format;
        prov["inputs"] = inputs;
        result.rendered["provenance.json"] = prov.dump(2) + "\n";
        return 0;
    });

    if (!config.out_dir.empty()) {
        detail::stage("write", [&] {
            namespace fs = std::filesystem;
            fs::create_directories(config.out_dir);
            fs::path marker = fs::path(config.out_dir) / "RUN.partial";
            {
                auto m = open_output(marker.string());
                m << "run in progress\n";
            }
            for (const auto& [name, bytes] : result.rendered) {
                fs::path path = fs::path(config.out_dir) / name;
                auto out = open_output(path.string());
                out << bytes;
                if (!out) throw input_error("short write: " + path.string());
                result.written_files.push_back(path.string());
            }
            fs::remove(marker);
            return 0;
        });
    }

    return result;
}

}  // namespace fieldrank
