#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ahmd/report.hpp"

namespace {

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    ahmd::require(static_cast<bool>(out), "cannot open '" + path + "' for writing");
    out << text;
}

void emit(const std::string& text, const std::string& path)
{
    if (path.empty())
        std::cout << text;
    else
        write_file(path, text);
}

struct Overrides {
    std::optional<int> level;
    std::optional<std::uint64_t> budget;
    std::optional<int> stage;
    std::optional<double> epsilon;
    std::optional<int> radius;
    std::optional<int> target_stage;
    std::optional<int> target_block;
    std::string cover;
    std::string closed_set;
    std::string open_set;
    std::string trace;
    std::string family;
    bool timing = false;

    ahmd::RunConfig apply(ahmd::RunConfig c) const
    {
        if (level)
            c.level = *level;
        if (budget)
            c.budget = *budget;
        if (stage)
            c.stage = stage;
        if (epsilon)
            c.epsilon = *epsilon;
        if (radius)
            c.radius = *radius;
        if (target_stage)
            c.target_stage = target_stage;
        if (target_block)
            c.target_block = target_block;
        for (auto [field, value] : {std::pair{&c.cover, &cover}, {&c.closed_set, &closed_set},
                                    {&c.open_set, &open_set}, {&c.trace, &trace}, {&c.family, &family}})
            if (!value->empty())
                *field = *value;
        c.timing = c.timing || timing;
        return c;
    }
};

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Mean dimension and capacity computations on finite diagonal systems"};
    app.require_subcommand(1);

    Overrides o;
    std::string system;
    std::string out;
    std::string csv;
    std::string command;

    const std::map<std::string, std::string> about{
        {"dim-cover", "Refinement dimension of each named cover"},
        {"mean-dim", "Finite-stage mean dimension sequence of a cover"},
        {"ocap", "Orbit capacities of closed sets and traces"},
        {"svt", "Variation of trace data along the stages"},
        {"sbp", "Small boundary probe around an open set"},
        {"sbrp", "Small boundary refinement probe for a cover"},
        {"cuntz-dim", "Branched-cover mean dimension sequence"},
        {"var-dim", "Variation mean dimension of a function family"},
        {"nerve", "Nerve and partition of unity of a cover"},
        {"report-all", "Every command with the description's defaults"},
    };
    for (const auto& name : ahmd::commands()) {
        CLI::App* sub = app.add_subcommand(name, about.count(name) ? about.at(name) : "");
        sub->add_option("--system", system, "System description JSON")->required()->check(CLI::ExistingFile);
        sub->add_option("--cover", o.cover, "Cover name (default: every cover)");
        sub->add_option("--level", o.level, "Subdivision level")->check(CLI::Range(0, 8));
        sub->add_option("--budget", o.budget, "Search budget in nodes")->check(CLI::PositiveNumber);
        sub->add_option("--stage", o.stage, "Truncation stage J (default: last)")->check(CLI::NonNegativeNumber);
        sub->add_option("--epsilon", o.epsilon, "Tolerance")->check(CLI::PositiveNumber);
        sub->add_option("--radius", o.radius, "Neighbourhood radius")->check(CLI::NonNegativeNumber);
        sub->add_option("--target-stage", o.target_stage, "Target stage for sbrp");
        sub->add_option("--target-block", o.target_block, "Target block for sbrp");
        sub->add_option("--closed-set", o.closed_set, "Closed set name for ocap");
        sub->add_option("--open-set", o.open_set, "Open set name for sbp");
        sub->add_option("--trace", o.trace, "Trace name for ocap and svt");
        sub->add_option("--family", o.family, "Family name for var-dim");
        sub->add_option("--out", out, "Write the JSON report here instead of stdout");
        sub->add_option("--csv", csv, "Also write the rows as CSV");
        sub->add_flag("--timing", o.timing, "Record wall time in the report");
        sub->callback([&command, name] { command = name; });
    }

    std::vector<int> m;
    std::vector<int> points;
    int resolution = 4;
    CLI::App* gen = app.add_subcommand("goodearl", "Write a Goodearl-type system description");
    gen->add_option("--m", m, "Leg counts per connecting map")->required()->check(CLI::PositiveNumber);
    gen->add_option("--points", points, "Constant-leg target vertex per map (default: vertex 0)");
    gen->add_option("--resolution", resolution, "Edges of the base path")->check(CLI::PositiveNumber);
    gen->add_option("--out", out, "Output file (default: stdout)");
    gen->callback([&command] { command = "goodearl"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (command == "goodearl") {
            if (points.empty())
                points.assign(m.size(), 0);
            emit(ahmd::goodearl_description(m, points, resolution).dump(2) + "\n", out);
            return 0;
        }
        const ahmd::SystemDescription desc = ahmd::load_description(system);
        const ahmd::RunConfig config = o.apply(desc.config);
        const ahmd::Report report = ahmd::run(command, desc, config);
        emit(report.json.dump(2) + "\n", out);
        if (!csv.empty())
            write_file(csv, ahmd::to_csv(report.rows));
        return 0;
    } catch (const ahmd::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const ahmd::InvariantViolation& e) {
        std::cerr << "invariant violation: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
