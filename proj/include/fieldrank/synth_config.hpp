#pragma once

// Text config mirroring SynthConfig: `key = value` lines, `#` comments,
// [citations] / [names] sections and one [field CODE] section per field.

#include <fstream>
#include <sstream>
#include <string>

#include "fieldrank/synth.hpp"

namespace fieldrank {

namespace synth_detail {

inline double parse_double(const std::string& value, const std::string& at) {
    try {
        std::size_t pos = 0;
        double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw input_error(at + ": not a number: " + value);
    }
}

inline long long parse_int(const std::string& value, const std::string& at) {
    try {
        std::size_t pos = 0;
        long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw input_error(at + ": not an integer: " + value);
    }
}

}  // namespace synth_detail

inline AnalysisWindow parse_window(const std::string& value) {
    auto colon = value.find(':');
    if (colon == std::string::npos)
        throw input_error("window must be START:END, got " + value);
    AnalysisWindow w;
    w.start_year = static_cast<int>(synth_detail::parse_int(value.substr(0, colon), "window"));
    w.end_year = static_cast<int>(synth_detail::parse_int(value.substr(colon + 1), "window"));
    return w;
}

inline SynthConfig parse_synth_config(std::istream& in, const std::string& origin = "config") {
    using synth_detail::parse_double;
    using synth_detail::parse_int;

    SynthConfig config;
    config.fields.clear();
    std::string section;     // "", "citations", "names", or "field"
    FieldSpec* field = nullptr;

    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string at = origin + " line " + std::to_string(lineno);
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']') throw input_error(at + ": unterminated section header");
            std::string name = trim(t.substr(1, t.size() - 2));
            if (name == "citations" || name == "names") {
                section = name;
                field = nullptr;
            } else if (name.rfind("field ", 0) == 0) {
                section = "field";
                config.fields.emplace_back();
                field = &config.fields.back();
                field->field_code = trim(name.substr(6));
                if (field->field_code.empty())
                    throw input_error(at + ": [field ...] needs a code");
            } else {
                throw input_error(at + ": unknown section [" + name + "]");
            }
            continue;
        }
        auto eq = t.find('=');
        if (eq == std::string::npos) throw input_error(at + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        std::string value = trim(t.substr(eq + 1));

        if (section.empty()) {
            if (key == "seed")
                config.seed = static_cast<std::uint64_t>(parse_int(value, at));
            else if (key == "window")
                config.window = parse_window(value);
            else if (key == "min_tenure_years")
                config.window.min_tenure_years = static_cast<int>(parse_int(value, at));
            else if (key == "national_institutions")
                config.national_institutions = static_cast<int>(parse_int(value, at));
            else if (key == "affiliation_present_rate")
                config.affiliation_present_rate = parse_double(value, at);
            else
                throw input_error(at + ": unknown key " + key);
        } else if (section == "citations") {
            if (key == "base_mu")
                config.citation_model.base_mu = parse_double(value, at);
            else if (key == "sigma")
                config.citation_model.sigma = parse_double(value, at);
            else
                throw input_error(at + ": unknown key " + key);
        } else if (section == "names") {
            auto& nv = config.name_variants;
            if (key == "initials_only") nv.initials_only = parse_double(value, at);
            else if (key == "drop_secondary_initial") nv.drop_secondary_initial = parse_double(value, at);
            else if (key == "diacritic_loss") nv.diacritic_loss = parse_double(value, at);
            else if (key == "diacritic_surname") nv.diacritic_surname = parse_double(value, at);
            else if (key == "compound_surname") nv.compound_surname = parse_double(value, at);
            else if (key == "compound_join") nv.compound_join = parse_double(value, at);
            else if (key == "homonym") nv.homonym = parse_double(value, at);
            else throw input_error(at + ": unknown key " + key);
        } else {  // field
            if (key == "name") field->field_name = value;
            else if (key == "discipline") field->discipline_code = value;
            else if (key == "discipline_name") field->discipline_name = value;
            else if (key == "category") field->category = value;
            else if (key == "national_staff") field->national_staff = static_cast<int>(parse_int(value, at));
            else if (key == "world_staff_multiplier") field->world_staff_multiplier = parse_double(value, at);
            else if (key == "publication_intensity") field->publication_intensity = parse_double(value, at);
            else if (key == "coauthor_mean") field->coauthor_mean = parse_double(value, at);
            else if (key == "grand_experiment_rate") field->grand_experiment_rate = parse_double(value, at);
            else if (key == "grand_experiment_size") field->grand_experiment_size = static_cast<int>(parse_int(value, at));
            else if (key == "quality_mu") field->quality_mu = parse_double(value, at);
            else if (key == "quality_sigma") field->quality_sigma = parse_double(value, at);
            else if (key == "national_quality_boost") field->national_quality_boost = parse_double(value, at);
            else if (key == "multi_category_rate") field->multi_category_rate = parse_double(value, at);
            else throw input_error(at + ": unknown key " + key);
        }
    }
    config.validate();
    return config;
}

inline SynthConfig load_synth_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    return parse_synth_config(in, path);
}

inline void write_synth_config(std::ostream& out, const SynthConfig& config) {
    out << "seed = " << config.seed << '\n';
    out << "window = " << config.window.start_year << ':' << config.window.end_year << '\n';
    out << "min_tenure_years = " << config.window.min_tenure_years << '\n';
    out << "national_institutions = " << config.national_institutions << '\n';
    out << "affiliation_present_rate = " << config.affiliation_present_rate << '\n';
    out << "\n[citations]\n";
    out << "base_mu = " << config.citation_model.base_mu << '\n';
    out << "sigma = " << config.citation_model.sigma << '\n';
    out << "\n[names]\n";
    const auto& nv = config.name_variants;
    out << "initials_only = " << nv.initials_only << '\n';
    out << "drop_secondary_initial = " << nv.drop_secondary_initial << '\n';
    out << "diacritic_loss = " << nv.diacritic_loss << '\n';
    out << "diacritic_surname = " << nv.diacritic_surname << '\n';
    out << "compound_surname = " << nv.compound_surname << '\n';
    out << "compound_join = " << nv.compound_join << '\n';
    out << "homonym = " << nv.homonym << '\n';
    for (const auto& f : config.fields) {
        out << "\n[field " << f.field_code << "]\n";
        if (!f.field_name.empty()) out << "name = " << f.field_name << '\n';
        if (!f.discipline_code.empty()) out << "discipline = " << f.discipline_code << '\n';
        if (!f.discipline_name.empty()) out << "discipline_name = " << f.discipline_name << '\n';
        if (!f.category.empty()) out << "category = " << f.category << '\n';
        out << "national_staff = " << f.national_staff << '\n';
        out << "world_staff_multiplier = " << f.world_staff_multiplier << '\n';
        out << "publication_intensity = " << f.publication_intensity << '\n';
        out << "coauthor_mean = " << f.coauthor_mean << '\n';
        out << "grand_experiment_rate = " << f.grand_experiment_rate << '\n';
        out << "grand_experiment_size = " << f.grand_experiment_size << '\n';
        out << "quality_mu = " << f.quality_mu << '\n';
        out << "quality_sigma = " << f.quality_sigma << '\n';
        out << "national_quality_boost = " << f.national_quality_boost << '\n';
        out << "multi_category_rate = " << f.multi_category_rate << '\n';
    }
}

// Six-field preset exercising the full variant space: mixed intensities,
// co-authorship levels, one field with occasional grand experiments.
inline SynthConfig default_synth_config(std::uint64_t seed = 1) {
    SynthConfig config;
    config.seed = seed;
    auto field = [](std::string code, std::string uda, int staff, double mult, double lambda,
                    double coauth, double qmu, double qsigma, double boost) {
        FieldSpec f;
        f.field_code = std::move(code);
        f.discipline_code = std::move(uda);
        f.discipline_name = "Discipline " + f.discipline_code.substr(4);
        f.category = "cat-" + f.field_code;
        f.national_staff = staff;
        f.world_staff_multiplier = mult;
        f.publication_intensity = lambda;
        f.coauthor_mean = coauth;
        f.quality_mu = qmu;
        f.quality_sigma = qsigma;
        f.national_quality_boost = boost;
        return f;
    };
    config.fields = {
        field("FLD-A", "UDA-1", 150, 3.0, 2.2, 3.5, 0.00, 0.70, 0.55),
        field("FLD-B", "UDA-1", 120, 3.0, 1.8, 4.0, 0.10, 0.70, 0.20),
        field("FLD-C", "UDA-2", 100, 2.5, 2.6, 3.0, -0.10, 0.80, 0.80),
        field("FLD-D", "UDA-2", 90, 3.5, 1.5, 5.0, 0.20, 0.60, 0.00),
        field("FLD-E", "UDA-3", 130, 3.0, 2.0, 3.5, 0.00, 0.75, 0.40),
        field("FLD-F", "UDA-3", 110, 2.0, 2.4, 4.5, -0.05, 0.70, 0.65),
    };
    config.fields[4].grand_experiment_rate = 0.01;
    config.fields[4].grand_experiment_size = 200;
    return config;
}

}  // namespace fieldrank
