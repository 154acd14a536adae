#include "ahmd/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace ahmd {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& message)
{
    throw ValidationError(path + ": " + message);
}

template <class Fn>
auto at_path(const std::string& path, Fn&& fn) -> decltype(fn())
{
    try {
        return fn();
    } catch (const SubdivisionRequired&) {
        throw;
    } catch (const ValidationError& e) {
        throw ValidationError(path + ": " + e.what());
    } catch (const Json::exception& e) {
        throw ValidationError(path + ": " + e.what());
    }
}

const Json& field(const Json& j, const char* key, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end())
        fail(path, std::string("missing key '") + key + "'");
    return *it;
}

int as_int(const Json& j, const std::string& path)
{
    if (!j.is_number_integer())
        fail(path, "expected an integer");
    return j.get<int>();
}

double as_double(const Json& j, const std::string& path)
{
    if (!j.is_number())
        fail(path, "expected a number");
    return j.get<double>();
}

std::string as_string(const Json& j, const std::string& path)
{
    if (!j.is_string())
        fail(path, "expected a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& path)
{
    if (!j.is_array())
        fail(path, "expected an array");
    return j;
}

std::vector<int> int_list(const Json& j, const std::string& path)
{
    std::vector<int> out;
    for (std::size_t n = 0; n < as_array(j, path).size(); ++n)
        out.push_back(as_int(j[n], path + "[" + std::to_string(n) + "]"));
    return out;
}

std::vector<double> double_list(const Json& j, const std::string& path)
{
    std::vector<double> out;
    for (std::size_t n = 0; n < as_array(j, path).size(); ++n)
        out.push_back(as_double(j[n], path + "[" + std::to_string(n) + "]"));
    return out;
}

std::vector<Simplex> simplex_list(const Json& j, const std::string& path)
{
    std::vector<Simplex> out;
    for (std::size_t n = 0; n < as_array(j, path).size(); ++n)
        out.push_back(int_list(j[n], path + "[" + std::to_string(n) + "]"));
    return out;
}

SimplexSet simplex_set(const Complex& c, const Json& j, const std::string& path)
{
    SimplexSet s = c.none();
    const auto list = simplex_list(j, path);
    for (std::size_t n = 0; n < list.size(); ++n) {
        Simplex sorted = list[n];
        std::sort(sorted.begin(), sorted.end());
        const auto id = c.find(sorted);
        if (!id)
            fail(path + "[" + std::to_string(n) + "]", "not a simplex of the block space");
        s.set(*id);
    }
    return s;
}

OpenSet parse_open_set(const Complex& c, const Json& j, const std::string& path)
{
    if (!j.is_object())
        fail(path, "expected an object with 'star', 'simplices' or 'all'");
    if (j.contains("all"))
        return OpenSet::whole(c);
    if (j.contains("star")) {
        const auto vs = int_list(j["star"], path + ".star");
        return at_path(path + ".star", [&] { return open_star(c, vs); });
    }
    if (j.contains("simplices")) {
        SimplexSet s = simplex_set(c, j["simplices"], path + ".simplices");
        return at_path(path, [&] { return OpenSet(c, std::move(s)); });
    }
    fail(path, "expected 'star', 'simplices' or 'all'");
}

ClosedSet parse_closed_set(const Complex& c, const Json& j, const std::string& path)
{
    if (j.contains("vertices")) {
        SimplexSet s = c.none();
        for (int v : int_list(j["vertices"], path + ".vertices")) {
            if (v < 0 || v >= c.vertex_count())
                fail(path + ".vertices", "vertex " + std::to_string(v) + " out of range");
            s.set(v);
        }
        return ClosedSet(c, std::move(s));
    }
    SimplexSet s = simplex_set(c, field(j, "simplices", path), path + ".simplices");
    return at_path(path, [&] { return ClosedSet(c, std::move(s)); });
}

ProjectionClass parse_projection(const Json& j, const std::string& path)
{
    ProjectionClass p;
    if (j.contains("label"))
        p.label = as_string(j["label"], path + ".label");
    if (j.contains("rank"))
        p.rank = as_int(j["rank"], path + ".rank");
    if (p.rank < 1)
        fail(path + ".rank", "rank must be positive");
    return p;
}

Json projection_json(const ProjectionClass& p) { return Json{{"label", p.label}, {"rank", p.rank}}; }

int stage_index(const SystemDescription& d, const Json& j, const std::string& path)
{
    const int s = as_int(field(j, "stage", path), path + ".stage");
    if (s < 0 || s >= d.system.stage_count())
        fail(path + ".stage", "stage " + std::to_string(s) + " out of range");
    return s;
}

int block_index(const SystemDescription& d, int stage, const Json& j, const std::string& path)
{
    const int b = j.contains("block") ? as_int(j["block"], path + ".block") : 0;
    if (b < 0 || b >= static_cast<int>(d.system.stage(stage).size()))
        fail(path + ".block", "block " + std::to_string(b) + " out of range");
    return b;
}

void parse_config(RunConfig& c, const Json& j, const std::string& path)
{
    if (j.contains("level"))
        c.level = as_int(j["level"], path + ".level");
    if (j.contains("budget")) {
        if (!j["budget"].is_number_unsigned())
            fail(path + ".budget", "expected a positive integer");
        c.budget = j["budget"].get<std::uint64_t>();
    }
    if (j.contains("stage"))
        c.stage = as_int(j["stage"], path + ".stage");
    if (j.contains("epsilon"))
        c.epsilon = as_double(j["epsilon"], path + ".epsilon");
    if (j.contains("radius"))
        c.radius = as_int(j["radius"], path + ".radius");
    if (j.contains("target_stage"))
        c.target_stage = as_int(j["target_stage"], path + ".target_stage");
    if (j.contains("target_block"))
        c.target_block = as_int(j["target_block"], path + ".target_block");
    for (auto [key, slot] : {std::pair{"cover", &c.cover}, {"closed_set", &c.closed_set}, {"open_set", &c.open_set},
                             {"trace", &c.trace}, {"family", &c.family}})
        if (j.contains(key))
            *slot = as_string(j[key], path + "." + key);
    if (c.level < 0)
        fail(path + ".level", "level must be non-negative");
    if (c.budget == 0)
        fail(path + ".budget", "budget must be positive");
    if (!(c.epsilon > 0.0))
        fail(path + ".epsilon", "epsilon must be positive");
    if (c.radius < 0)
        fail(path + ".radius", "radius must be non-negative");
}

void apply_generator(SystemDescription& d, const Json& g, const std::string& path)
{
    if (!g.is_object() || g.size() != 1)
        fail(path, "expected exactly one generator");
    if (g.contains("goodearl")) {
        const Json& s = g["goodearl"];
        const std::string p = path + ".goodearl";
        const auto m = int_list(field(s, "m", p), p + ".m");
        const int resolution = s.contains("resolution") ? as_int(s["resolution"], p + ".resolution") : 4;
        const auto points =
            s.contains("points") ? int_list(s["points"], p + ".points") : std::vector<int>(m.size(), 0);
        d.system = at_path(p, [&] { return build_goodearl(m, points, resolution); });
    } else if (g.contains("ah_model")) {
        const Json& s = g["ah_model"];
        const std::string p = path + ".ah_model";
        const int n = as_int(field(s, "cycle", p), p + ".cycle");
        const int shift = s.contains("shift") ? as_int(s["shift"], p + ".shift") : 1;
        const int stages = as_int(field(s, "stages", p), p + ".stages");
        d.system = at_path(p, [&] {
            const Complex x = Complex::cycle(n);
            std::vector<Vertex> image(n);
            for (int v = 0; v < n; ++v)
                image[v] = ((v + shift) % n + n) % n;
            return build_ah_model(SimplicialMap(x, x, image), stages);
        });
    } else {
        fail(path, "unknown generator '" + g.begin().key() + "'");
    }
    d.complexes["X"] = d.system.block(0, 0).space;
    for (const auto& stage : d.system.stages())
        d.block_spaces.emplace_back(stage.size(), "X");
}

void parse_structure(SystemDescription& d, const Json& j)
{
    const Json& cx = field(j, "complexes", "$");
    if (!cx.is_object())
        fail("complexes", "expected an object");
    for (auto it = cx.begin(); it != cx.end(); ++it) {
        const std::string p = "complexes." + it.key();
        const Json& c = it.value();
        const int n = as_int(field(c, "vertex_count", p), p + ".vertex_count");
        if (c.contains("facets"))
            d.complexes[it.key()] =
                at_path(p, [&] { return Complex::from_facets(n, simplex_list(c["facets"], p + ".facets")); });
        else
            d.complexes[it.key()] = at_path(p, [&] {
                return Complex::from_simplices(n, simplex_list(field(c, "simplices", p), p + ".simplices"));
            });
    }

    const Json& st = as_array(field(j, "stages", "$"), "stages");
    if (st.empty())
        fail("stages", "system needs at least one stage");
    std::vector<std::vector<Block>> stages;
    for (std::size_t i = 0; i < st.size(); ++i) {
        const std::string p = "stages[" + std::to_string(i) + "]";
        std::vector<Block> blocks;
        std::vector<std::string> names;
        for (std::size_t l = 0; l < as_array(st[i], p).size(); ++l) {
            const std::string q = p + "[" + std::to_string(l) + "]";
            const std::string name = as_string(field(st[i][l], "space", q), q + ".space");
            auto found = d.complexes.find(name);
            if (found == d.complexes.end())
                fail(q + ".space", "unknown complex '" + name + "'");
            blocks.push_back({found->second, as_int(field(st[i][l], "size", q), q + ".size")});
            names.push_back(name);
        }
        stages.push_back(std::move(blocks));
        d.block_spaces.push_back(std::move(names));
    }

    std::vector<DiagonalMap> maps;
    const Json& mp = j.contains("maps") ? as_array(j["maps"], "maps") : Json::array();
    if (mp.size() + 1 != stages.size())
        fail("maps", "need exactly one connecting map between consecutive stages");
    for (std::size_t i = 0; i < mp.size(); ++i) {
        const std::string p = "maps[" + std::to_string(i) + "]";
        const Json& legs = as_array(field(mp[i], "legs", p), p + ".legs");
        if (legs.size() != stages[i + 1].size())
            fail(p + ".legs", "need one leg list per block of stage " + std::to_string(i + 1));
        DiagonalMap m;
        for (std::size_t k = 0; k < legs.size(); ++k) {
            std::vector<Leg> list;
            for (std::size_t t = 0; t < as_array(legs[k], p).size(); ++t) {
                const std::string q = p + ".legs[" + std::to_string(k) + "][" + std::to_string(t) + "]";
                const Json& leg = legs[k][t];
                const int source = as_int(field(leg, "source", q), q + ".source");
                if (source < 0 || source >= static_cast<int>(stages[i].size()))
                    fail(q + ".source", "source block out of range");
                const auto image = int_list(field(leg, "vertex_image", q), q + ".vertex_image");
                SimplicialMap f = at_path(q, [&] {
                    return SimplicialMap(stages[i + 1][k].space, stages[i][source].space, image);
                });
                const ProjectionClass pc =
                    leg.contains("projection") ? parse_projection(leg["projection"], q + ".projection") : ProjectionClass{};
                list.push_back({source, std::move(f), pc});
            }
            m.legs.push_back(std::move(list));
        }
        maps.push_back(std::move(m));
    }
    d.system = AHSystem(std::move(stages), std::move(maps));
}

}  // namespace

SystemDescription parse_description(const Json& j)
{
    if (!j.is_object())
        fail("$", "description must be a JSON object");
    SystemDescription d;
    if (j.contains("generator")) {
        for (const char* key : {"complexes", "stages", "maps"})
            if (j.contains(key))
                fail(key, "not allowed together with a generator");
        apply_generator(d, j["generator"], "generator");
    } else {
        parse_structure(d, j);
    }

    if (j.contains("covers"))
        for (auto it = j["covers"].begin(); it != j["covers"].end(); ++it) {
            const std::string p = "covers." + it.key();
            NamedCover nc;
            nc.stage = stage_index(d, it.value(), p);
            const Json& blocks = as_array(field(it.value(), "blocks", p), p + ".blocks");
            if (blocks.size() != d.system.stage(nc.stage).size())
                fail(p + ".blocks", "need one cover per block of stage " + std::to_string(nc.stage));
            for (std::size_t l = 0; l < blocks.size(); ++l) {
                const std::string q = p + ".blocks[" + std::to_string(l) + "]";
                const Complex& c = d.system.block(nc.stage, static_cast<int>(l)).space;
                std::vector<OpenSet> elements;
                for (std::size_t e = 0; e < as_array(blocks[l], q).size(); ++e)
                    elements.push_back(parse_open_set(c, blocks[l][e], q + "[" + std::to_string(e) + "]"));
                nc.blocks.push_back(at_path(q, [&] { return Cover(c, std::move(elements)); }));
            }
            d.covers[it.key()] = std::move(nc);
        }

    if (j.contains("traces"))
        for (auto it = j["traces"].begin(); it != j["traces"].end(); ++it) {
            const std::string p = "traces." + it.key();
            NamedTrace t;
            t.stage = stage_index(d, it.value(), p);
            const Json& blocks = as_array(field(it.value(), "blocks", p), p + ".blocks");
            for (std::size_t n = 0; n < blocks.size(); ++n) {
                const std::string q = p + ".blocks[" + std::to_string(n) + "]";
                const int b = block_index(d, t.stage, blocks[n], q);
                const Complex& c = d.system.block(t.stage, b).space;
                auto values = double_list(field(blocks[n], "values", q), q + ".values");
                if (static_cast<int>(values.size()) != c.vertex_count())
                    fail(q + ".values", "need one value per vertex");
                for (double v : values)
                    if (v < 0.0)
                        fail(q + ".values", "trace profiles must be nonnegative");
                t.blocks.push_back({b, PLFunction(c, std::move(values))});
            }
            d.traces[it.key()] = std::move(t);
        }

    if (j.contains("closed_sets"))
        for (auto it = j["closed_sets"].begin(); it != j["closed_sets"].end(); ++it) {
            const std::string p = "closed_sets." + it.key();
            NamedClosedSet e;
            e.stage = stage_index(d, it.value(), p);
            e.block = block_index(d, e.stage, it.value(), p);
            e.set = parse_closed_set(d.system.block(e.stage, e.block).space, it.value(), p);
            d.closed_sets[it.key()] = std::move(e);
        }

    if (j.contains("open_sets"))
        for (auto it = j["open_sets"].begin(); it != j["open_sets"].end(); ++it) {
            const std::string p = "open_sets." + it.key();
            NamedOpenSet u;
            u.stage = stage_index(d, it.value(), p);
            u.block = block_index(d, u.stage, it.value(), p);
            const Complex& c = d.system.block(u.stage, u.block).space;
            u.set = parse_open_set(c, it.value(), p);
            Simplex center = int_list(field(it.value(), "center", p), p + ".center");
            std::sort(center.begin(), center.end());
            const auto id = c.find(center);
            if (!id)
                fail(p + ".center", "not a simplex of the block space");
            if (!u.set.contains(*id))
                fail(p + ".center", "center must lie in the open set");
            u.center = *id;
            d.open_sets[it.key()] = std::move(u);
        }

    if (j.contains("families"))
        for (auto it = j["families"].begin(); it != j["families"].end(); ++it) {
            const std::string p = "families." + it.key();
            NamedFamily f;
            f.stage = stage_index(d, it.value(), p);
            const Json& blocks = as_array(field(it.value(), "blocks", p), p + ".blocks");
            if (blocks.size() != d.system.stage(f.stage).size())
                fail(p + ".blocks", "need one family per block of stage " + std::to_string(f.stage));
            std::size_t count = 0;
            for (std::size_t l = 0; l < blocks.size(); ++l) {
                const std::string q = p + ".blocks[" + std::to_string(l) + "]";
                const Complex& c = d.system.block(f.stage, static_cast<int>(l)).space;
                const Json& members = as_array(field(blocks[l], "members", q), q + ".members");
                if (l == 0)
                    count = members.size();
                else if (members.size() != count)
                    fail(q + ".members", "every block needs the same number of members");
                std::vector<Member> ms;
                for (std::size_t m = 0; m < members.size(); ++m) {
                    const std::string r = q + ".members[" + std::to_string(m) + "]";
                    Member entries;
                    for (std::size_t e = 0; e < as_array(members[m], r).size(); ++e) {
                        auto values = double_list(members[m][e], r + "[" + std::to_string(e) + "]");
                        if (static_cast<int>(values.size()) != c.vertex_count())
                            fail(r + "[" + std::to_string(e) + "]", "need one value per vertex");
                        entries.emplace_back(c, std::move(values));
                    }
                    ms.push_back(std::move(entries));
                }
                f.blocks.push_back(at_path(q, [&] { return FunctionFamily(c, std::move(ms)); }));
            }
            d.families[it.key()] = std::move(f);
        }

    if (j.contains("pairings"))
        for (std::size_t n = 0; n < as_array(j["pairings"], "pairings").size(); ++n) {
            const std::string p = "pairings[" + std::to_string(n) + "]";
            Pairing pairing;
            const Json& maps = as_array(j["pairings"][n], p);
            for (std::size_t m = 0; m < maps.size(); ++m) {
                std::vector<std::vector<ProjectionClass>> per_block;
                for (std::size_t k = 0; k < as_array(maps[m], p).size(); ++k) {
                    std::vector<ProjectionClass> legs;
                    for (std::size_t t = 0; t < as_array(maps[m][k], p).size(); ++t)
                        legs.push_back(parse_projection(maps[m][k][t], p + "[" + std::to_string(m) + "][" +
                                                                          std::to_string(k) + "][" +
                                                                          std::to_string(t) + "]"));
                    per_block.push_back(std::move(legs));
                }
                pairing.push_back(std::move(per_block));
            }
            at_path(p, [&] { return with_pairing(d.system, pairing); });
            d.pairings.push_back(std::move(pairing));
        }

    if (j.contains("config"))
        parse_config(d.config, j["config"], "config");
    return d;
}

SystemDescription load_description(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ValidationError("cannot open system description '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    Json j;
    try {
        j = Json::parse(buffer.str());
    } catch (const Json::parse_error& e) {
        throw ValidationError(path + ": parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    return parse_description(j);
}

Json simplices_json(const Complex& c, const SimplexSet& s)
{
    Json out = Json::array();
    s.for_each([&](SimplexId id) { out.push_back(c.simplex(id)); });
    return out;
}

Json rational_json(const Rational& r) { return r.str(); }

Json config_json(const RunConfig& c)
{
    Json j;
    j["level"] = c.level;
    j["budget"] = c.budget;
    if (c.stage)
        j["stage"] = *c.stage;
    j["epsilon"] = c.epsilon;
    j["radius"] = c.radius;
    if (c.target_stage)
        j["target_stage"] = *c.target_stage;
    if (c.target_block)
        j["target_block"] = *c.target_block;
    for (auto [key, value] : {std::pair{"cover", &c.cover}, {"closed_set", &c.closed_set}, {"open_set", &c.open_set},
                              {"trace", &c.trace}, {"family", &c.family}})
        if (!value->empty())
            j[key] = *value;
    return j;
}

Json to_json(const SystemDescription& d)
{
    Json j;
    Json cx = Json::object();
    for (const auto& [name, c] : d.complexes) {
        Json facets = Json::array();
        for (SimplexId f : c.maximal())
            facets.push_back(c.simplex(f));
        cx[name] = Json{{"vertex_count", c.vertex_count()}, {"facets", facets}};
    }
    j["complexes"] = cx;

    Json stages = Json::array();
    for (int i = 0; i < d.system.stage_count(); ++i) {
        Json blocks = Json::array();
        for (std::size_t l = 0; l < d.system.stage(i).size(); ++l)
            blocks.push_back(Json{{"space", d.block_spaces[i][l]}, {"size", d.system.stage(i)[l].size}});
        stages.push_back(blocks);
    }
    j["stages"] = stages;

    Json maps = Json::array();
    for (const auto& m : d.system.maps()) {
        Json legs = Json::array();
        for (const auto& list : m.legs) {
            Json row = Json::array();
            for (const auto& leg : list)
                row.push_back(Json{{"source", leg.source},
                                   {"vertex_image", leg.map.vertex_image()},
                                   {"projection", projection_json(leg.projection)}});
            legs.push_back(row);
        }
        maps.push_back(Json{{"legs", legs}});
    }
    j["maps"] = maps;

    Json covers = Json::object();
    for (const auto& [name, nc] : d.covers) {
        Json blocks = Json::array();
        for (const auto& c : nc.blocks) {
            Json elements = Json::array();
            for (const auto& u : c.elements())
                elements.push_back(Json{{"simplices", simplices_json(c.complex(), u.members())}});
            blocks.push_back(elements);
        }
        covers[name] = Json{{"stage", nc.stage}, {"blocks", blocks}};
    }
    j["covers"] = covers;

    Json traces = Json::object();
    for (const auto& [name, t] : d.traces) {
        Json blocks = Json::array();
        for (const auto& b : t.blocks)
            blocks.push_back(Json{{"block", b.block}, {"values", b.profile.values()}});
        traces[name] = Json{{"stage", t.stage}, {"blocks", blocks}};
    }
    j["traces"] = traces;

    Json closed = Json::object();
    for (const auto& [name, e] : d.closed_sets)
        closed[name] = Json{{"stage", e.stage},
                            {"block", e.block},
                            {"simplices", simplices_json(e.set.complex(), e.set.members())}};
    j["closed_sets"] = closed;

    Json open = Json::object();
    for (const auto& [name, u] : d.open_sets)
        open[name] = Json{{"stage", u.stage},
                          {"block", u.block},
                          {"simplices", simplices_json(u.set.complex(), u.set.members())},
                          {"center", u.set.complex().simplex(u.center)}};
    j["open_sets"] = open;

    Json families = Json::object();
    for (const auto& [name, f] : d.families) {
        Json blocks = Json::array();
        for (const auto& fam : f.blocks) {
            Json members = Json::array();
            for (const auto& m : fam.members()) {
                Json entries = Json::array();
                for (const auto& e : m)
                    entries.push_back(e.values());
                members.push_back(entries);
            }
            blocks.push_back(Json{{"members", members}});
        }
        families[name] = Json{{"stage", f.stage}, {"blocks", blocks}};
    }
    j["families"] = families;

    Json pairings = Json::array();
    for (const auto& p : d.pairings) {
        Json maps_json = Json::array();
        for (const auto& per_block : p) {
            Json blocks = Json::array();
            for (const auto& legs : per_block) {
                Json row = Json::array();
                for (const auto& pc : legs)
                    row.push_back(projection_json(pc));
                blocks.push_back(row);
            }
            maps_json.push_back(blocks);
        }
        pairings.push_back(maps_json);
    }
    j["pairings"] = pairings;
    j["config"] = config_json(d.config);
    return j;
}

bool operator==(const NamedTrace& a, const NamedTrace& b)
{
    if (a.stage != b.stage || a.blocks.size() != b.blocks.size())
        return false;
    for (std::size_t n = 0; n < a.blocks.size(); ++n)
        if (a.blocks[n].block != b.blocks[n].block || !(a.blocks[n].profile == b.blocks[n].profile))
            return false;
    return true;
}

bool operator==(const NamedFamily& a, const NamedFamily& b)
{
    if (a.stage != b.stage || a.blocks.size() != b.blocks.size())
        return false;
    for (std::size_t n = 0; n < a.blocks.size(); ++n)
        if (!(a.blocks[n].complex() == b.blocks[n].complex()) || a.blocks[n].members() != b.blocks[n].members())
            return false;
    return true;
}

bool operator==(const SystemDescription& a, const SystemDescription& b)
{
    return a.complexes == b.complexes && a.block_spaces == b.block_spaces && a.system == b.system &&
           a.covers == b.covers && a.traces == b.traces && a.closed_sets == b.closed_sets &&
           a.open_sets == b.open_sets && a.families == b.families && a.pairings == b.pairings &&
           a.config == b.config;
}

Json goodearl_description(const std::vector<int>& m, const std::vector<int>& points, int resolution)
{
    build_goodearl(m, points, resolution);
    const int n = resolution + 1;
    // a vertex that no constant leg targets, as close to the middle as possible
    int z = -1;
    for (int offset = 0; offset <= n && z < 0; ++offset)
        for (int candidate : {n / 2 + offset, n / 2 - offset})
            if (z < 0 && candidate >= 0 && candidate < n &&
                std::find(points.begin(), points.end(), candidate) == points.end())
                z = candidate;
    require(z >= 0, "goodearl: every vertex is a constant target; no free vertex for the examples");

    Json j;
    j["generator"] = Json{{"goodearl", Json{{"m", m}, {"points", points}, {"resolution", resolution}}}};
    Json stars = Json::array();
    for (int v = 0; v < n; ++v)
        stars.push_back(Json{{"star", {v}}});
    std::vector<int> left;
    std::vector<int> right;
    for (int v = 0; v < n; ++v)
        (v <= z ? left : right).push_back(v);
    right.insert(right.begin(), z);
    Json halves = Json::array({Json{{"star", left}}, Json{{"star", right}}});
    j["covers"] = Json{{"halves", Json{{"stage", 0}, {"blocks", Json::array({halves})}}},
                       {"stars", Json{{"stage", 0}, {"blocks", Json::array({stars})}}}};
    std::vector<double> hat(n, 0.0);
    hat[z] = 1.0;
    j["traces"] = Json{{"hat", Json{{"stage", 0}, {"blocks", Json::array({Json{{"block", 0}, {"values", hat}}})}}}};
    const int reach = std::max(z, n - 1 - z);
    std::vector<double> tent(n);
    for (int v = 0; v < n; ++v)
        tent[v] = 1.0 - static_cast<double>(std::abs(v - z)) / reach;
    j["closed_sets"] = Json{{"z", Json{{"stage", 0}, {"block", 0}, {"vertices", {z}}}}};
    j["open_sets"] = Json{{"u", Json{{"stage", 0}, {"block", 0}, {"star", {z}}, {"center", {z}}}}};
    j["families"] =
        Json{{"tent", Json{{"stage", 0}, {"blocks", Json::array({Json{{"members", Json::array({Json::array({tent})})}}})}}}};
    j["config"] = Json{{"level", 1}, {"epsilon", 0.6}, {"radius", 1}};
    return j;
}

}  // namespace ahmd
