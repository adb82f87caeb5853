#include "intent/report.hpp"

#include "intent/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

namespace intent {

namespace {

std::string question_text(const Question &q) {
    std::string kind;
    switch (q.kind) {
    case QuestionKind::occur: kind = "occur"; break;
    case QuestionKind::when: kind = "when"; break;
    case QuestionKind::who: kind = "who"; break;
    case QuestionKind::where: kind = "where"; break;
    }
    std::string out = kind + " " + q.term.str();
    if (q.story_step) out += " " + std::to_string(*q.story_step);
    return out;
}

std::vector<std::pair<int, std::string>> occurrence_atoms(const Domain &dom, const Model &m) {
    std::vector<std::pair<int, std::string>> out;
    for (std::size_t i = 0; i < m.occurrences.size(); ++i)
        for (ActionId a : m.occurrences[i])
            out.emplace_back(static_cast<int>(i), dom.actions[a].term.str());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::string human_report(const Domain &dom, const RunReport &report) {
    std::ostringstream out;
    out << "narrative: " << report.story_steps << " story step"
        << (report.story_steps == 1 ? "" : "s") << ", " << report.answers.size() << " question"
        << (report.answers.size() == 1 ? "" : "s") << "\n";
    out << "models: " << report.result.models.size() << " (horizon " << report.cfg.horizon
        << ")\n";
    if (report.result.models.empty() && !report.result.diagnostic.empty())
        out << "no model: " << report.result.diagnostic << "\n";

    for (std::size_t k = 0; k < report.result.models.size(); ++k) {
        const Model &m = report.result.models[k];
        out << "\nmodel " << (k + 1) << "\n";
        out << "  map:";
        for (std::size_t s = 0; s < m.mapping.size(); ++s)
            out << " " << s << "->" << m.mapping[s];
        out << "\n";
        if (!m.activity_choices.empty()) {
            out << "  activities:";
            for (const auto &[ag, act] : m.activity_choices)
                out << " " << dom.instance_names[dom.agents[ag]] << "="
                    << dom.activities[act].term.str();
            out << "\n";
        }
        if (!m.abduced.empty()) {
            out << "  abduced:";
            for (const auto &[step, a] : m.abduced)
                out << " " << dom.actions[a].term.str() << "@" << step;
            out << "\n";
        }
        out << "  occurrences:\n";
        for (const auto &[step, atom] : occurrence_atoms(dom, m))
            out << "    " << step << "\t" << atom << "\n";
    }

    if (!report.answers.empty()) {
        out << "\nanswers:\n";
        for (const Answer &a : report.answers) {
            out << "  " << question_text(a.question) << " -> " << a.aggregate << "\n";
            if (report.result.models.size() > 1) {
                out << "    per model:";
                for (const std::string &v : a.per_model) out << " [" << v << "]";
                out << "\n";
            }
        }
    }
    out << "\nwall time: " << report.wall_ms << " ms\n";
    return out.str();
}

std::string json_report(const Domain &dom, const RunReport &report) {
    nlohmann::ordered_json j;
    j["schema"] = 1;
    j["horizon"] = report.cfg.horizon;
    j["storySteps"] = report.story_steps;
    j["modelCount"] = report.result.models.size();
    if (report.result.models.empty()) j["diagnostic"] = report.result.diagnostic;
    j["models"] = nlohmann::ordered_json::array();
    for (std::size_t k = 0; k < report.result.models.size(); ++k) {
        const Model &m = report.result.models[k];
        nlohmann::ordered_json jm;
        jm["id"] = k + 1;
        jm["map"] = nlohmann::ordered_json::array();
        for (std::size_t s = 0; s < m.mapping.size(); ++s)
            jm["map"].push_back({static_cast<int>(s), m.mapping[s]});
        jm["occurrences"] = nlohmann::ordered_json::array();
        for (const auto &[step, atom] : occurrence_atoms(dom, m))
            jm["occurrences"].push_back({step, atom});
        jm["abduced"] = nlohmann::ordered_json::array();
        for (const auto &[step, a] : m.abduced)
            jm["abduced"].push_back({step, dom.actions[a].term.str()});
        jm["activities"] = nlohmann::ordered_json::array();
        {
            auto choices = m.activity_choices;
            std::sort(choices.begin(), choices.end());
            for (const auto &[ag, act] : choices)
                jm["activities"].push_back({dom.instance_names[dom.agents[ag]],
                                            dom.activities[act].term.str()});
        }
        j["models"].push_back(std::move(jm));
    }
    j["answers"] = nlohmann::ordered_json::array();
    for (const Answer &a : report.answers) {
        nlohmann::ordered_json ja;
        ja["question"] = question_text(a.question);
        ja["perModel"] = a.per_model;
        ja["aggregate"] = a.aggregate;
        j["answers"].push_back(std::move(ja));
    }
    return j.dump(2) + "\n";
}

std::vector<GoldenModel> parse_golden(const std::string &text) {
    std::vector<GoldenModel> models;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
            line.pop_back();
        std::size_t start = 0;
        while (start < line.size() && std::isspace(static_cast<unsigned char>(line[start])))
            ++start;
        line = line.substr(start);
        if (line.empty()) continue;

        if (line.rfind("model", 0) == 0) {
            models.emplace_back();
            continue;
        }
        if (models.empty()) models.emplace_back(); // headerless single-model files
        if (line.rfind("map(", 0) == 0 && line.back() == ')') {
            std::string body = line.substr(4, line.size() - 5);
            auto comma = body.find(',');
            if (comma == std::string::npos)
                throw ParseError("malformed map atom", line_no, 1);
            models.back().map.emplace_back(std::stoi(body.substr(0, comma)),
                                           std::stoi(body.substr(comma + 1)));
            continue;
        }
        if (line.rfind("occurs(", 0) == 0 && line.back() == ')') {
            std::string body = line.substr(7, line.size() - 8);
            // The step is the argument after the last top-level comma.
            int depth = 0;
            std::size_t split = std::string::npos;
            for (std::size_t i = 0; i < body.size(); ++i) {
                if (body[i] == '(') ++depth;
                if (body[i] == ')') --depth;
                if (body[i] == ',' && depth == 0) split = i;
            }
            if (split == std::string::npos)
                throw ParseError("malformed occurs atom", line_no, 1);
            models.back().occurs.emplace_back(std::stoi(body.substr(split + 1)),
                                              body.substr(0, split));
            continue;
        }
        throw ParseError("unrecognized golden line '" + line + "'", line_no, 1);
    }
    for (GoldenModel &m : models) {
        std::sort(m.map.begin(), m.map.end());
        std::sort(m.occurs.begin(), m.occurs.end(),
                  [](const auto &a, const auto &b) {
                      return std::tie(a.first, a.second) < std::tie(b.first, b.second);
                  });
    }
    return models;
}

std::string format_golden(const Domain &dom, const std::vector<Model> &models) {
    std::ostringstream out;
    for (std::size_t k = 0; k < models.size(); ++k) {
        out << "model " << (k + 1) << "\n";
        for (std::size_t s = 0; s < models[k].mapping.size(); ++s)
            out << "map(" << s << "," << models[k].mapping[s] << ")\n";
        for (const auto &[step, atom] : occurrence_atoms(dom, models[k]))
            out << "occurs(" << atom << "," << step << ")\n";
    }
    return out.str();
}

std::optional<std::string> golden_diff(const Domain &dom, const std::vector<Model> &models,
                                       const std::vector<GoldenModel> &golden) {
    if (models.size() != golden.size())
        return "model count mismatch: got " + std::to_string(models.size()) + ", golden has " +
               std::to_string(golden.size());
    for (std::size_t k = 0; k < models.size(); ++k) {
        std::vector<std::pair<int, int>> map;
        for (std::size_t s = 0; s < models[k].mapping.size(); ++s)
            map.emplace_back(static_cast<int>(s), models[k].mapping[s]);
        if (map != golden[k].map) return "model " + std::to_string(k + 1) + ": map differs";
        auto atoms = occurrence_atoms(dom, models[k]);
        std::vector<std::pair<int, std::string>> want;
        for (const auto &[step, atom] : golden[k].occurs) want.emplace_back(step, atom);
        if (atoms != want) {
            std::map<std::pair<int, std::string>, int> delta;
            for (const auto &a : atoms) ++delta[a];
            for (const auto &w : want) --delta[w];
            std::ostringstream out;
            out << "model " << (k + 1) << ": occurrence atoms differ;";
            for (const auto &[atom, count] : delta) {
                if (count > 0)
                    out << " extra occurs(" << atom.second << "," << atom.first << ")";
                if (count < 0)
                    out << " missing occurs(" << atom.second << "," << atom.first << ")";
            }
            return out.str();
        }
    }
    return std::nullopt;
}

} // namespace intent
