#include "hyperext/commands.hpp"

#include <istream>
#include <ostream>

#include "hyperext/decomposition.hpp"
#include "hyperext/extension.hpp"
#include "hyperext/format.hpp"
#include "hyperext/verify.hpp"

namespace hyperext {

namespace {

using nlohmann::json;

double round12(double v) { return std::stod(format_number(v)); }

// Runs body, mapping configuration errors to kExitUsage and domain errors to kExitFailure.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        cfg.validate();
        const VerificationReport report = run_verification(cfg);
        out << report.to_json(cfg.report_timing).dump(2) << '\n';
        if (report.all_passed()) return static_cast<int>(kExitPass);
        for (const auto& id : report.failing_ids()) err << "failed: " << id << '\n';
        return static_cast<int>(kExitFailure);
    });
}

int cmd_extend(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!cfg.boundary_map) throw ConfigError("extend needs a boundary_map");
        cfg.validate();
        const BoundaryMap h = build_boundary_map(*cfg.boundary_map, cfg.k(), cfg.dim);
        const auto grid = ball_grid(cfg.k(), cfg.dim, cfg.sampling.radius, cfg.sampling.grid_per_axis);
        out << extension_field_csv(extension_field(h, cfg.extension(), grid, cfg.sampling.threads), cfg.dim);
        return static_cast<int>(kExitPass);
    });
}

int cmd_probe(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        if (!cfg.boundary_map) throw ConfigError("probe needs a boundary_map");
        cfg.validate();
        const BoundaryMap h = build_boundary_map(*cfg.boundary_map, cfg.k(), cfg.dim);
        const auto rows = continuity_modulus(h, cfg.extension(), cfg.probe.radius, cfg.probe.eps_grid,
                                             cfg.probe.centers, cfg.probe.directions, cfg.sampling.seed,
                                             cfg.sampling.threads);
        out << "eps,omega,delta\n";
        for (const auto& r : rows)
            out << format_number(r.eps) << ',' << format_number(r.omega) << ',' << format_number(r.delta) << '\n';
        return static_cast<int>(kExitPass);
    });
}

int cmd_color(std::istream& edges, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const Graph g = Graph::read_edge_list(edges);
        out << coloring_json(greedy_color(g)) << '\n';
        return static_cast<int>(kExitPass);
    });
}

int cmd_net(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        cfg.validate();
        const Net net = greedy_net(cfg.k(), cfg.dim, cfg.net.radius, cfg.net.a, cfg.sampling.seed,
                                   cfg.net.sample_size, cfg.sampling.threads);
        json points = json::array();
        for (const auto& p : net.points) {
            const Vec3& c = p.coords();
            json row = {round12(c.x), round12(c.y)};
            if (net.dim == 3) row.push_back(round12(c.z));
            points.push_back(std::move(row));
        }
        const json j = {{"dim", net.dim},        {"lambda", round12(net.k.lambda())},
                        {"radius", round12(net.region_radius)},
                        {"a", round12(net.a)},   {"b", round12(net.b)},
                        {"sample_size", net.sample_size},
                        {"count", net.points.size()},
                        {"points", std::move(points)}};
        out << j.dump(2) << '\n';
        return static_cast<int>(kExitPass);
    });
}

}  // namespace hyperext
