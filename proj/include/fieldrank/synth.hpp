#pragma once

// Seeded synthetic world-corpus generator with planted ground truth. Every
// researcher (national roster member or world-context author) carries a
// latent quality; publication counts, co-author lists, citation counts, and
// byline renderings are all drawn from per-entity counter-derived streams, so
// a seed pins the corpus bytes exactly.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fieldrank/rng.hpp"
#include "fieldrank/text.hpp"
#include "fieldrank/types.hpp"

namespace fieldrank {

struct FieldSpec {
    std::string field_code;
    std::string field_name;
    std::string discipline_code;
    std::string discipline_name;
    std::string category;  // subject category backing this field's strata
    int national_staff = 100;
    double world_staff_multiplier = 3.0;  // world authors per national, same field
    double publication_intensity = 2.0;   // expected publications per researcher per window
    double coauthor_mean = 4.0;           // mean byline length (shifted geometric)
    double grand_experiment_rate = 0.0;   // share of publications with huge bylines
    int grand_experiment_size = 300;
    double quality_mu = 0.0;  // latent quality ~ lognormal(mu, sigma)
    double quality_sigma = 0.75;
    // Log-scale shift applied to national researchers only: the planted
    // national standing of this field against its world stratum.
    double national_quality_boost = 0.0;
    double multi_category_rate = 0.15;  // chance of also listing a neighbor category
};

struct NameVariantRates {
    double initials_only = 0.75;          // byline carries initials, not full given names
    double drop_secondary_initial = 0.3;  // keep only the first initial
    double diacritic_loss = 0.5;          // accented surnames rendered as plain ASCII
    double diacritic_surname = 0.15;      // share of surnames carrying an accent at all
    double compound_surname = 0.08;       // two-token surnames
    double compound_join = 0.25;          // compound surnames rendered joined ("DeRosa")
    double homonym = 0.03;                // researcher planted as a homonym of another
};

struct CitationModel {
    double base_mu = 1.0;  // log-location at latent quality 1
    double sigma = 1.2;    // log-spread; the heavy tail
};

struct SynthConfig {
    std::uint64_t seed = 1;
    AnalysisWindow window{2006, 2010, 3};
    std::vector<FieldSpec> fields;
    CitationModel citation_model;
    NameVariantRates name_variants;
    double affiliation_present_rate = 0.9;  // each author institution listed at this rate
    int national_institutions = 20;

    void validate() const {
        window.validate();
        if (fields.empty()) throw validation_error("synth config: no fields defined");
        std::unordered_set<std::string> codes;
        auto check_rate = [](double v, const char* name) {
            if (!(v >= 0.0 && v <= 1.0))
                throw validation_error(std::string("synth config: rate ") + name +
                                       " outside [0,1]: " + std::to_string(v));
        };
        for (const auto& f : fields) {
            if (f.field_code.empty()) throw validation_error("synth config: empty field code");
            if (!codes.insert(f.field_code).second)
                throw validation_error("synth config: duplicate field code " + f.field_code);
            if (f.national_staff < 1)
                throw validation_error("synth config: field " + f.field_code +
                                       " national_staff must be >= 1");
            if (!(f.publication_intensity > 0.0))
                throw validation_error("synth config: field " + f.field_code +
                                       " publication_intensity must be > 0");
            if (f.world_staff_multiplier < 0.0)
                throw validation_error("synth config: field " + f.field_code +
                                       " world_staff_multiplier must be >= 0");
            if (f.coauthor_mean < 1.0)
                throw validation_error("synth config: field " + f.field_code +
                                       " coauthor_mean must be >= 1");
            check_rate(f.grand_experiment_rate, "grand_experiment_rate");
            check_rate(f.multi_category_rate, "multi_category_rate");
            if (!(f.quality_sigma >= 0.0))
                throw validation_error("synth config: field " + f.field_code +
                                       " quality_sigma must be >= 0");
        }
        check_rate(name_variants.initials_only, "initials_only");
        check_rate(name_variants.drop_secondary_initial, "drop_secondary_initial");
        check_rate(name_variants.diacritic_loss, "diacritic_loss");
        check_rate(name_variants.diacritic_surname, "diacritic_surname");
        check_rate(name_variants.compound_surname, "compound_surname");
        check_rate(name_variants.compound_join, "compound_join");
        check_rate(name_variants.homonym, "homonym");
        check_rate(affiliation_present_rate, "affiliation_present_rate");
        if (national_institutions < 1)
            throw validation_error("synth config: national_institutions must be >= 1");
        if (!(citation_model.sigma >= 0.0))
            throw validation_error("synth config: citation sigma must be >= 0");
    }
};

struct SynthResult {
    Corpus corpus;                      // roster + publications + taxonomy; links left empty
    std::vector<AuthorshipLink> truth;  // planted byline attributions
    std::vector<double> publication_quality;  // mean author quality, by publication index
    std::unordered_map<std::string, double> researcher_quality;  // national researchers
    int planted_homonyms = 0;  // researchers sharing (surname, first initial) by construction
};

namespace synth_detail {

struct Person {
    std::string id;
    std::string surname;  // display form, may carry a diacritic
    std::vector<std::string> given;
    std::string institution_id;
    double quality = 1.0;
    bool national = false;
    int field_index = 0;
};

inline const std::vector<std::string>& given_name_pool() {
    static const std::vector<std::string> pool = {
        "Marco",   "Maria",    "Luca",     "Giulia",  "Andrea",   "Francesca", "Alessandro",
        "Chiara",  "Matteo",   "Sara",     "Davide",  "Elena",    "Simone",    "Laura",
        "Stefano", "Anna",     "Paolo",    "Elisa",   "Giorgio",  "Martina",   "Fabio",
        "Silvia",  "Riccardo", "Paola",    "Antonio", "Valentina", "Giuseppe", "Federica",
        "Giovanni", "Roberta", "Nicola",   "Cristina", "Pietro",  "Serena",    "Tommaso",
        "Ilaria",  "Emanuele", "Monica",   "Claudio", "Beatrice", "Dario",     "Lucia"};
    return pool;
}

inline std::string make_surname(Rng& rng) {
    static const char* onsets[] = {"B",  "C",  "D",  "F",  "G",  "L",  "M",  "N",  "P",
                                   "R",  "S",  "T",  "V",  "Z",  "Br", "Cr", "Fr", "Gr",
                                   "Tr", "Bl", "Fl", "Sc", "Sp", "St"};
    static const char* vowels[] = {"a", "e", "i", "o", "u"};
    static const char* middles[] = {"b",  "c",  "d",  "l",  "m",  "n",  "r",  "s",
                                    "t",  "v",  "z",  "cc", "ll", "nn", "rr", "ss",
                                    "tt", "mb", "nd", "nt", "rn", "sc"};
    static const char* endings[] = {"", "", "ni", "si", "tti", "lli", "ro", "no", "na", "ne"};
    std::string s = onsets[rng.next_below(std::size(onsets))];
    s += vowels[rng.next_below(std::size(vowels))];
    s += middles[rng.next_below(std::size(middles))];
    s += vowels[rng.next_below(std::size(vowels))];
    if (rng.bernoulli(0.4)) {
        s += middles[rng.next_below(std::size(middles))];
        s += vowels[rng.next_below(std::size(vowels))];
    }
    s += endings[rng.next_below(std::size(endings))];
    return s;
}

// Replace one interior vowel with its accented form.
inline std::string add_diacritic(const std::string& surname, Rng& rng) {
    static const std::map<char, const char*> accents = {
        {'a', "à"}, {'e', "è"}, {'i', "ì"}, {'o', "ò"}, {'u', "ù"}};
    std::vector<std::size_t> positions;
    for (std::size_t i = 1; i < surname.size(); ++i)
        if (accents.count(surname[i])) positions.push_back(i);
    if (positions.empty()) return surname;
    std::size_t pos = positions[rng.next_below(positions.size())];
    std::string out = surname.substr(0, pos);
    out += accents.at(surname[pos]);
    out += surname.substr(pos + 1);
    return out;
}

inline bool has_non_ascii(const std::string& s) {
    for (char c : s)
        if (static_cast<unsigned char>(c) >= 0x80) return true;
    return false;
}

// Lowercase accented letters -> ASCII base, case preserved elsewhere.
inline std::string strip_accents_display(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        unsigned char b = static_cast<unsigned char>(s[i]);
        if (b < 0x80) {
            out += static_cast<char>(b);
            ++i;
            continue;
        }
        char32_t cp = detail::decode_utf8(s, i);
        std::string_view mapped = detail::strip_diacritic(cp);
        if (!mapped.empty())
            out.append(mapped);
        else
            detail::append_codepoint(out, cp);
    }
    return out;
}

inline std::string pad3(std::size_t n) {
    std::string s = std::to_string(n);
    while (s.size() < 3) s.insert(s.begin(), '0');
    return s;
}

struct Institution {
    std::string id;
    std::string display;
};

inline std::vector<Institution> make_national_institutions(int count) {
    static const char* cities[] = {"Rome",    "Milan",  "Turin",   "Bologna", "Naples",
                                   "Padua",   "Pisa",   "Florence", "Genoa",  "Trieste",
                                   "Pavia",   "Verona", "Siena",   "Parma",   "Bari",
                                   "Catania", "Perugia", "Ferrara", "Salerno", "Trento"};
    std::vector<Institution> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::string city = cities[i % std::size(cities)];
        if (i >= static_cast<int>(std::size(cities))) city += " " + std::to_string(i / 20 + 2);
        out.push_back({"IT-UNI-" + pad3(i + 1), "University of " + city});
    }
    return out;
}

inline std::vector<Institution> make_world_institutions(int count) {
    static const char* cities[] = {"London", "Paris",  "Berlin", "Madrid", "Boston",
                                   "Tokyo",  "Zurich", "Vienna", "Leiden", "Uppsala",
                                   "Prague", "Oslo",   "Dublin", "Gent",   "Lyon"};
    std::vector<Institution> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::string city = cities[i % std::size(cities)];
        if (i >= static_cast<int>(std::size(cities))) city += " " + std::to_string(i / 15 + 2);
        out.push_back({"WD-UNI-" + pad3(i + 1), city + " Institute of Science"});
    }
    return out;
}

inline std::string render_byline(const Person& p, Rng& rng, const NameVariantRates& rates) {
    // A fixed four draws per byline: the publication stream stays aligned
    // whatever the rates or the name's shape, so variant settings can never
    // leak into corpus structure.
    const bool lose_diacritic = rng.bernoulli(rates.diacritic_loss);
    const bool join_compound = rng.bernoulli(rates.compound_join);
    const bool initials_only = rng.bernoulli(rates.initials_only);
    const bool drop_secondary = rng.bernoulli(rates.drop_secondary_initial);

    std::string surname = p.surname;
    if (has_non_ascii(surname) && lose_diacritic) surname = strip_accents_display(surname);
    if (surname.find(' ') != std::string::npos && join_compound) {
        std::string joined;
        for (char c : surname)
            if (c != ' ') joined += c;
        surname = joined;
    }
    std::string given_part;
    if (initials_only) {
        std::size_t keep = p.given.size();
        if (keep > 1 && drop_secondary) keep = 1;
        for (std::size_t i = 0; i < keep; ++i) {
            given_part += p.given[i][0];
            given_part += '.';
        }
    } else {
        for (std::size_t i = 0; i < p.given.size(); ++i) {
            if (i) given_part += ' ';
            given_part += p.given[i];
        }
    }
    return surname + ", " + given_part;
}

}  // namespace synth_detail

inline SynthResult generate_corpus(const SynthConfig& config) {
    using namespace synth_detail;
    config.validate();

    SynthResult result;
    result.corpus.window = config.window;
    const Rng master(config.seed);

    for (const auto& f : config.fields)
        result.corpus.taxonomy.add(
            f.field_code, f.field_name.empty() ? "Field " + f.field_code : f.field_name,
            f.discipline_code.empty() ? "UDA-" + f.field_code : f.discipline_code,
            f.discipline_name);

    // Institutions.
    int world_total = 0;
    for (const auto& f : config.fields)
        world_total += static_cast<int>(std::llround(f.national_staff * f.world_staff_multiplier));
    auto national_inst = make_national_institutions(config.national_institutions);
    auto world_inst = make_world_institutions(std::max(10, world_total / 50));
    std::unordered_map<std::string, std::string> inst_display;
    for (const auto& inst : national_inst) inst_display.emplace(inst.id, inst.display);
    for (const auto& inst : world_inst) inst_display.emplace(inst.id, inst.display);

    // People, in fixed creation order: per field, nationals then world authors.
    // Names come from one sequential stream (global surname uniqueness except
    // planted homonyms); everything downstream uses counter-derived streams.
    std::vector<Person> persons;
    std::vector<std::vector<std::uint32_t>> field_pool(config.fields.size());
    // Homonym partners come from the same (national/world) side: a planted
    // collision whose partner is invisible to the resolver would be
    // unwinnable by construction, not a filtering challenge.
    std::vector<std::uint32_t> side_pool[2];
    Rng name_rng = master.derive(0x11);
    std::unordered_set<std::string> used_surnames;
    const auto& givens = given_name_pool();

    auto create_person = [&](int field_index, bool national, int ordinal_in_field) {
        Person p;
        p.national = national;
        p.field_index = field_index;
        const auto& f = config.fields[field_index];
        p.id = (national ? "R-" : "W-") + f.field_code + "-" + std::to_string(ordinal_in_field);
        const auto& partners = side_pool[national ? 1 : 0];
        bool homonym = !partners.empty() && name_rng.bernoulli(config.name_variants.homonym);
        if (homonym) {
            const Person& partner = persons[partners[name_rng.next_below(partners.size())]];
            p.surname = partner.surname;
            char initial = partner.given[0][0];
            std::vector<std::size_t> same_initial;
            for (std::size_t i = 0; i < givens.size(); ++i)
                if (givens[i][0] == initial) same_initial.push_back(i);
            p.given.push_back(givens[same_initial[name_rng.next_below(same_initial.size())]]);
            ++result.planted_homonyms;
        } else {
            std::string s;
            do {
                s = make_surname(name_rng);
                if (name_rng.bernoulli(config.name_variants.compound_surname)) {
                    static const char* prefixes[] = {"De", "Di", "Del", "La", "Lo"};
                    s = std::string(prefixes[name_rng.next_below(std::size(prefixes))]) + " " + s;
                }
            } while (!used_surnames.insert(fold_name(s)).second);
            if (name_rng.bernoulli(config.name_variants.diacritic_surname))
                s = add_diacritic(s, name_rng);
            p.surname = s;
            p.given.push_back(givens[name_rng.next_below(givens.size())]);
        }
        if (name_rng.bernoulli(0.35)) {
            std::string second;
            do {
                second = givens[name_rng.next_below(givens.size())];
            } while (second == p.given[0]);
            p.given.push_back(second);
        }
        if (national)
            p.institution_id = national_inst[name_rng.next_below(national_inst.size())].id;
        else
            p.institution_id = world_inst[name_rng.next_below(world_inst.size())].id;
        Rng quality_rng = master.derive(0x20000000ULL + persons.size());
        double mu = f.quality_mu + (national ? f.national_quality_boost : 0.0);
        p.quality = sample_lognormal(quality_rng, mu, f.quality_sigma);
        field_pool[field_index].push_back(static_cast<std::uint32_t>(persons.size()));
        side_pool[national ? 1 : 0].push_back(static_cast<std::uint32_t>(persons.size()));
        persons.push_back(std::move(p));
    };

    for (std::size_t fi = 0; fi < config.fields.size(); ++fi) {
        const auto& f = config.fields[fi];
        for (int k = 0; k < f.national_staff; ++k)
            create_person(static_cast<int>(fi), true, k);
        int world_staff = static_cast<int>(std::llround(f.national_staff * f.world_staff_multiplier));
        for (int k = 0; k < world_staff; ++k)
            create_person(static_cast<int>(fi), false, k);
    }

    // Roster: national researchers, tenured for the whole window.
    for (const auto& p : persons) {
        if (!p.national) continue;
        Researcher r;
        r.researcher_id = p.id;
        r.surname = p.surname;
        r.given_name_tokens = p.given;
        r.field_code = config.fields[p.field_index].field_code;
        r.discipline_code = result.corpus.taxonomy.discipline_of(r.field_code);
        r.institution_id = p.institution_id;
        r.tenure_years_in_window = config.window.span();
        result.corpus.roster.push_back(std::move(r));
        result.researcher_quality.emplace(p.id, p.quality);
    }

    // Publications: one counter-derived stream per owning researcher.
    const int year_span = config.window.span();
    std::vector<std::uint32_t> scratch_pool;
    for (std::size_t pi = 0; pi < persons.size(); ++pi) {
        const Person& owner = persons[pi];
        const auto& f = config.fields[owner.field_index];
        const auto& pool = field_pool[owner.field_index];
        Rng rng = master.derive(0x40000000ULL + pi);
        int n_pubs = sample_poisson(rng, f.publication_intensity);
        for (int j = 0; j < n_pubs; ++j) {
            Publication pub;
            pub.publication_id = "P-" + owner.id + "-" + std::to_string(j);
            pub.year = config.window.start_year + static_cast<int>(rng.next_below(year_span));

            // Byline size.
            std::size_t byline = 1;
            if (f.grand_experiment_rate > 0.0 && rng.bernoulli(f.grand_experiment_rate)) {
                byline = static_cast<std::size_t>(f.grand_experiment_size / 2 +
                                                  rng.next_below(f.grand_experiment_size + 1));
                byline = std::max<std::size_t>(byline, 2);
            } else if (f.coauthor_mean > 1.0) {
                byline = 1 + sample_geometric(rng, 1.0 / f.coauthor_mean);
            }
            byline = std::min(byline, pool.size());

            // Owner plus distinct co-authors from the field pool.
            std::vector<std::uint32_t> authors{static_cast<std::uint32_t>(pi)};
            if (byline > 1) {
                if (byline > pool.size() / 4) {
                    scratch_pool = pool;
                    for (std::size_t k = 0; k < byline - 1; ++k) {
                        std::size_t pick = k + rng.next_below(scratch_pool.size() - k);
                        std::swap(scratch_pool[k], scratch_pool[pick]);
                    }
                    for (std::size_t k = 0; authors.size() < byline; ++k) {
                        if (scratch_pool[k] != pi) authors.push_back(scratch_pool[k]);
                    }
                } else {
                    while (authors.size() < byline) {
                        std::uint32_t pick = pool[rng.next_below(pool.size())];
                        if (pick == pi) continue;
                        if (std::find(authors.begin(), authors.end(), pick) != authors.end())
                            continue;
                        authors.push_back(pick);
                    }
                }
                // Owner lands at a random byline position.
                for (std::size_t k = authors.size() - 1; k > 0; --k)
                    std::swap(authors[k], authors[rng.next_below(k + 1)]);
            }

            pub.subject_categories.push_back(f.category.empty() ? "cat-" + f.field_code
                                                                : f.category);
            if (config.fields.size() > 1 && rng.bernoulli(f.multi_category_rate)) {
                const auto& neighbor =
                    config.fields[(owner.field_index + 1) % config.fields.size()];
                std::string cat2 =
                    neighbor.category.empty() ? "cat-" + neighbor.field_code : neighbor.category;
                if (cat2 != pub.subject_categories[0]) pub.subject_categories.push_back(cat2);
            }

            double quality_sum = 0.0;
            for (auto a : authors) quality_sum += persons[a].quality;
            double mean_quality = quality_sum / static_cast<double>(authors.size());
            double raw = sample_lognormal(rng, config.citation_model.base_mu + std::log(mean_quality),
                                          config.citation_model.sigma);
            pub.citation_count = static_cast<std::int64_t>(std::floor(raw));

            pub.author_strings.reserve(authors.size());
            std::vector<std::string> affil_order;
            std::unordered_set<std::string> affil_seen;
            for (std::size_t k = 0; k < authors.size(); ++k) {
                const Person& a = persons[authors[k]];
                pub.author_strings.push_back(render_byline(a, rng, config.name_variants));
                if (affil_seen.insert(a.institution_id).second &&
                    rng.bernoulli(config.affiliation_present_rate)) {
                    affil_order.push_back(a.institution_id);
                }
                if (a.national) {
                    result.truth.push_back({pub.publication_id, a.id, static_cast<int>(k),
                                            static_cast<int>(authors.size())});
                }
            }
            pub.author_count_total = static_cast<int>(pub.author_strings.size());
            for (const auto& inst_id : affil_order)
                pub.affiliation_strings.push_back("Department of " + f.field_code + ", " +
                                                  inst_display.at(inst_id) + " (" + inst_id +
                                                  ")");

            result.publication_quality.push_back(mean_quality);
            result.corpus.publications.push_back(std::move(pub));
        }
    }

    return result;
}

}  // namespace fieldrank
