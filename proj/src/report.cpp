#include "ahmd/report.hpp"

#include <chrono>
#include <sstream>

#include "ahmd/nerve.hpp"

namespace ahmd {

namespace {

template <class T>
std::vector<std::pair<std::string, const T*>> select(const std::map<std::string, T>& items, const std::string& name,
                                                     const char* what)
{
    std::vector<std::pair<std::string, const T*>> out;
    if (!name.empty()) {
        auto it = items.find(name);
        require(it != items.end(), std::string("unknown ") + what + " '" + name + "'");
        out.emplace_back(it->first, &it->second);
        return out;
    }
    require(!items.empty(), std::string("the description has no ") + what + "s");
    for (const auto& [key, value] : items)
        out.emplace_back(key, &value);
    return out;
}

int truncation(const SystemDescription& d, const RunConfig& c)
{
    const int last = d.system.stage_count() - 1;
    const int j = c.stage.value_or(last);
    require(j >= 0 && j <= last, "--stage " + std::to_string(j) + " out of range (last stage is " +
                                     std::to_string(last) + ")");
    return j;
}

Json certificate_json(const RefinementCertificate& cert)
{
    Json sizes = Json::array();
    for (const auto& u : cert.cover.elements())
        sizes.push_back(u.size());
    return Json{{"level", cert.level},
                {"achieved_order", cert.achieved_order},
                {"witness", cert.witness},
                {"element_sizes", sizes}};
}

Json capacity_json(const CapacityReport<Rational>& r)
{
    Json stages = Json::array();
    for (const auto& s : r.stages) {
        Json values = Json::array();
        for (const auto& v : s.values)
            values.push_back(rational_json(v));
        stages.push_back(Json{{"stage", s.stage}, {"max", rational_json(s.max)}, {"values", values}});
    }
    return Json{{"limit", rational_json(r.limit)},
                {"limit_value", r.limit.to_double()},
                {"monotone", r.monotone},
                {"stages", stages}};
}

Json capacity_json(const CapacityReport<double>& r)
{
    Json stages = Json::array();
    for (const auto& s : r.stages)
        stages.push_back(Json{{"stage", s.stage}, {"max", s.max}, {"values", s.values}});
    return Json{{"limit", r.limit}, {"monotone", r.monotone}, {"stages", stages}};
}

Json estimate_json(const MeanDimEstimate& est, const std::string& command, const std::string& name,
                   std::vector<CsvRow>& rows)
{
    Json stages = Json::array();
    for (const auto& s : est.stages) {
        Json blocks = Json::array();
        for (const auto& b : s.blocks) {
            blocks.push_back(Json{{"block", b.block},
                                  {"value", b.value},
                                  {"size", b.size},
                                  {"ratio", rational_json(b.ratio)},
                                  {"exact", b.exact},
                                  {"nodes", b.nodes},
                                  {"cover_elements", b.cover_elements}});
            rows.push_back({command, name, s.stage, b.block, b.ratio.str(), b.exact});
        }
        stages.push_back(Json{{"stage", s.stage},
                              {"max_ratio", rational_json(s.max_ratio)},
                              {"max_ratio_value", s.max_ratio.to_double()},
                              {"exact", s.exact},
                              {"blocks", blocks}});
    }
    return Json{{"base_stage", est.base_stage},
                {"level", est.level},
                {"all_exact", est.all_exact},
                {"non_increasing", est.non_increasing},
                {"stages", stages}};
}

Json dim_cover(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    Json out = Json::array();
    for (const auto& [name, nc] : select(d.covers, c.cover, "cover")) {
        Json blocks = Json::array();
        for (std::size_t l = 0; l < nc->blocks.size(); ++l) {
            const Cover& a = nc->blocks[l];
            const auto r = refinement_dimension(a, c.level, c.budget);
            const auto greedy = greedy_refinement(a, c.level);
            ensure(certificate_valid(r.certificate, a), "dim-cover: invalid certificate");
            blocks.push_back(Json{{"block", l},
                                  {"ord", ord(a)},
                                  {"value", r.value},
                                  {"exact", r.exact},
                                  {"budget_exhausted", !r.exact},
                                  {"nodes", r.nodes},
                                  {"greedy_order", greedy.achieved_order},
                                  {"certificate", certificate_json(r.certificate)}});
            rows.push_back({"dim-cover", name, nc->stage, static_cast<int>(l), std::to_string(r.value), r.exact});
        }
        out.push_back(Json{{"cover", name}, {"stage", nc->stage}, {"level", c.level}, {"blocks", blocks}});
    }
    return out;
}

Json mean_dim(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    const int last = truncation(d, c);
    Json out = Json::array();
    for (const auto& [name, nc] : select(d.covers, c.cover, "cover")) {
        require(nc->stage <= last, "cover '" + name + "' lives past the truncation stage");
        const auto est = mean_dimension_sequence(d.system, nc->stage, nc->blocks, last, c.level, c.budget);
        Json entry{{"cover", name}, {"truncation", last}};
        entry.update(estimate_json(est, "mean-dim", name, rows));
        out.push_back(entry);
    }
    return out;
}

Json ocap(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    const int last = truncation(d, c);
    Json out = Json::array();
    const bool want_closed = !d.closed_sets.empty() && c.trace.empty();
    const bool want_trace = !d.traces.empty() && c.closed_set.empty();
    require(want_closed || want_trace, "ocap needs a closed set or a trace in the description");
    if (want_closed)
        for (const auto& [name, e] : select(d.closed_sets, c.closed_set, "closed set")) {
            require(e->stage <= last, "closed set '" + name + "' lives past the truncation stage");
            const auto r = ocap_closed_set(d.system, e->stage, e->block, e->set, last);
            Json entry{{"closed_set", name}, {"stage", e->stage}, {"block", e->block}, {"truncation", last}};
            entry.update(capacity_json(r));
            out.push_back(entry);
            for (const auto& s : r.stages)
                for (std::size_t k = 0; k < s.values.size(); ++k)
                    rows.push_back({"ocap", name, s.stage, static_cast<int>(k), s.values[k].str(), true});
        }
    if (want_trace)
        for (const auto& [name, t] : select(d.traces, c.trace, "trace")) {
            require(t->stage <= last, "trace '" + name + "' lives past the truncation stage");
            for (const auto& td : t->blocks) {
                const auto r = ocap_element(d.system, t->stage, td.block, td, last);
                Json entry{{"trace", name}, {"stage", t->stage}, {"block", td.block}, {"truncation", last}};
                entry.update(capacity_json(r));
                out.push_back(entry);
                for (const auto& s : r.stages)
                    for (std::size_t k = 0; k < s.values.size(); ++k) {
                        std::ostringstream v;
                        v.precision(17);
                        v << s.values[k];
                        rows.push_back({"ocap", name, s.stage, static_cast<int>(k), v.str(), true});
                    }
            }
        }
    return out;
}

Json svt(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    const int last = truncation(d, c);
    Json out = Json::array();
    for (const auto& [name, t] : select(d.traces, c.trace, "trace")) {
        require(t->stage <= last, "trace '" + name + "' lives past the truncation stage");
        const auto r = svt_probe(d.system, t->stage, t->blocks, last, c.epsilon);
        Json entry{{"trace", name}, {"stage", t->stage}, {"epsilon", c.epsilon}, {"values", r.values}};
        entry["satisfied_by_stage"] = r.satisfied_by_stage ? Json(*r.satisfied_by_stage) : Json(nullptr);
        out.push_back(entry);
        for (std::size_t n = 0; n < r.values.size(); ++n) {
            std::ostringstream v;
            v.precision(17);
            v << r.values[n];
            rows.push_back({"svt", name, t->stage + static_cast<int>(n), -1, v.str(), true});
        }
    }
    return out;
}

Json sbp(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    const int last = truncation(d, c);
    Json out = Json::array();
    for (const auto& [name, u] : select(d.open_sets, c.open_set, "open set")) {
        require(u->stage <= last, "open set '" + name + "' lives past the truncation stage");
        const auto r = sbp_probe(d.system, u->stage, u->block, u->set, u->center, last, c.epsilon, c.level);
        Json candidates = Json::array();
        for (const auto& cand : r.candidates) {
            candidates.push_back(Json{{"radius", cand.radius},
                                      {"simplices", cand.set.size()},
                                      {"value", rational_json(cand.value)},
                                      {"value_double", cand.value.to_double()}});
            rows.push_back({"sbp", name, last, cand.radius, cand.value.str(), r.exact});
        }
        Json entry{{"open_set", name},   {"stage", u->stage},  {"block", u->block}, {"truncation", last},
                   {"level", r.level},   {"epsilon", c.epsilon}, {"exact", r.exact}, {"found", r.found}};
        entry["best_radius"] = r.best ? Json(r.candidates[*r.best].radius) : Json(nullptr);
        entry["best_value"] = r.best ? rational_json(r.candidates[*r.best].value) : Json(nullptr);
        entry["candidates"] = candidates;
        out.push_back(entry);
    }
    return out;
}

Json sbrp(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    const int last = truncation(d, c);
    const int j = c.target_stage.value_or(last);
    require(j >= 0 && j < d.system.stage_count(), "--target-stage out of range");
    Json out = Json::array();
    for (const auto& [name, nc] : select(d.covers, c.cover, "cover")) {
        require(nc->stage <= j, "cover '" + name + "' lives past the target stage");
        for (std::size_t l = 0; l < nc->blocks.size(); ++l)
            for (int k = 0; k < static_cast<int>(d.system.stage(j).size()); ++k) {
                if (c.target_block && *c.target_block != k)
                    continue;
                const auto r = sbrp_probe(d.system, nc->stage, static_cast<int>(l), nc->blocks[l], c.epsilon, j, k,
                                          c.radius, c.level, c.budget);
                Json entry{{"cover", name},
                           {"stage", nc->stage},
                           {"block", l},
                           {"target_stage", j},
                           {"target_block", k},
                           {"level", r.level},
                           {"radius", r.radius},
                           {"epsilon", c.epsilon},
                           {"feasible", r.feasible},
                           {"found", r.found},
                           {"exhaustive", r.exhaustive},
                           {"nodes", r.nodes}};
                entry["value"] = r.feasible ? rational_json(r.value) : Json(nullptr);
                if (r.refinement) {
                    Json sizes = Json::array();
                    for (const auto& v : *r.refinement)
                        sizes.push_back(v.size());
                    entry["refinement_element_sizes"] = sizes;
                }
                out.push_back(entry);
                if (r.feasible)
                    rows.push_back({"sbrp", name, j, k, r.value.str(), r.exhaustive});
            }
    }
    return out;
}

Json cuntz_dim(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    const int last = truncation(d, c);
    Json out = Json::array();
    for (const auto& [name, nc] : select(d.covers, c.cover, "cover")) {
        require(nc->stage < last, "cover '" + name + "' needs a later truncation stage for cuntz-dim");
        const auto seq =
            cuntz_mean_dimension_sequence(d.system, nc->stage, nc->blocks, last, c.level, c.budget, d.pairings);
        Json stages = Json::array();
        for (const auto& s : seq) {
            Json blocks = Json::array();
            for (std::size_t k = 0; k < s.blocks.size(); ++k) {
                blocks.push_back(rational_json(s.blocks[k]));
                rows.push_back({"cuntz-dim", name, s.stage, static_cast<int>(k), s.blocks[k].str(), s.exact});
            }
            stages.push_back(Json{{"stage", s.stage},
                                  {"value", rational_json(s.value)},
                                  {"value_double", s.value.to_double()},
                                  {"exact", s.exact},
                                  {"blocks", blocks}});
        }
        out.push_back(Json{{"cover", name},
                           {"base_stage", nc->stage},
                           {"truncation", last},
                           {"level", c.level},
                           {"pairings", std::max<std::size_t>(d.pairings.size(), 1)},
                           {"stages", stages},
                           {"half_last_value", rational_json(seq.back().value * Rational(1, 2))}});
    }
    return out;
}

Json var_dim(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    const int last = truncation(d, c);
    Json out = Json::array();
    for (const auto& [name, f] : select(d.families, c.family, "family")) {
        require(f->stage <= last, "family '" + name + "' lives past the truncation stage");
        const auto est =
            variation_mean_dimension_sequence(d.system, f->stage, f->blocks, c.epsilon, last, c.level, c.budget);
        Json entry{{"family", name}, {"epsilon", c.epsilon}, {"truncation", last}};
        entry.update(estimate_json(est, "var-dim", name, rows));
        out.push_back(entry);
    }
    return out;
}

Json nerve_cmd(const SystemDescription& d, const RunConfig& c, std::vector<CsvRow>& rows)
{
    Json out = Json::array();
    for (const auto& [name, nc] : select(d.covers, c.cover, "cover")) {
        Json blocks = Json::array();
        for (std::size_t l = 0; l < nc->blocks.size(); ++l) {
            const Cover& a = nc->blocks[l];
            const NerveComplex n = nerve(a);
            Json facets = Json::array();
            for (SimplexId f : n.nerve.maximal())
                facets.push_back(n.nerve.simplex(f));
            const auto r = refinement_dimension(a, c.level, c.budget);
            const NerveComplex refined = nerve(r.certificate.cover);
            const PartitionOfUnity p = subordinate_partition(a, c.level);
            blocks.push_back(Json{{"block", l},
                                  {"nerve_vertices", n.nerve.vertex_count()},
                                  {"nerve_dimension", n.dimension},
                                  {"ord", ord(a)},
                                  {"nerve_facets", facets},
                                  {"refined_nerve_dimension", refined.dimension},
                                  {"refinement_exact", r.exact},
                                  {"partition_level", c.level},
                                  {"partition_anchors", p.anchors}});
            rows.push_back({"nerve", name, nc->stage, static_cast<int>(l), std::to_string(refined.dimension), r.exact});
        }
        out.push_back(Json{{"cover", name}, {"stage", nc->stage}, {"blocks", blocks}});
    }
    return out;
}

using Handler = Json (*)(const SystemDescription&, const RunConfig&, std::vector<CsvRow>&);

const std::vector<std::pair<std::string, Handler>>& handlers()
{
    static const std::vector<std::pair<std::string, Handler>> table{
        {"dim-cover", dim_cover}, {"mean-dim", mean_dim}, {"ocap", ocap},         {"svt", svt},
        {"sbp", sbp},             {"sbrp", sbrp},         {"cuntz-dim", cuntz_dim}, {"var-dim", var_dim},
        {"nerve", nerve_cmd}};
    return table;
}

}  // namespace

const std::vector<std::string>& commands()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : handlers())
            out.push_back(name);
        out.push_back("report-all");
        return out;
    }();
    return names;
}

Report run(const std::string& command, const SystemDescription& desc, const RunConfig& config)
{
    const auto started = std::chrono::steady_clock::now();
    Report report;
    Json sizes = Json::array();
    for (const auto& stage : desc.system.stages()) {
        Json row = Json::array();
        for (const auto& b : stage)
            row.push_back(b.size);
        sizes.push_back(row);
    }
    report.json["command"] = command;
    report.json["config"] = config_json(config);
    report.json["system"] = Json{{"stage_count", desc.system.stage_count()}, {"sizes", sizes}};

    if (command == "report-all") {
        Json results = Json::object();
        for (const auto& [name, fn] : handlers()) {
            std::vector<CsvRow> rows;
            try {
                results[name] = fn(desc, config, rows);
                report.rows.insert(report.rows.end(), rows.begin(), rows.end());
            } catch (const ValidationError& e) {
                results[name] = Json{{"skipped", e.what()}};
            }
        }
        report.json["results"] = results;
    } else {
        Handler handler = nullptr;
        for (const auto& [name, fn] : handlers())
            if (name == command)
                handler = fn;
        require(handler != nullptr, "unknown command '" + command + "'");
        report.json["results"] = handler(desc, config, report.rows);
    }

    if (config.timing) {
        const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - started;
        report.json["wall_time_seconds"] = elapsed.count();
    }
    return report;
}

std::string to_csv(const std::vector<CsvRow>& rows)
{
    std::ostringstream out;
    out << "stage,block,value,exact,command,name\n";
    for (const auto& r : rows)
        out << r.stage << ',' << r.block << ',' << r.value << ',' << (r.exact ? "true" : "false") << ',' << r.command
            << ',' << r.name << '\n';
    return out.str();
}

}  // namespace ahmd
