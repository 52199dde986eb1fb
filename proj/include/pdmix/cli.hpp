#pragma once

// Batch driver behind the pdmix command-line tool.

#include "pdmix/analysis.hpp"
#include "pdmix/vtk.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace pdmix {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct RunConfig {
    int example = 1;
    InterfaceMode interface_mode = InterfaceMode::derived;
    int max_level_inv = 32;
    std::optional<double> beta_override;
    std::optional<std::string> csv_path;
    std::optional<std::string> relative_csv_path;
    std::optional<std::string> fields_dir;
    bool diagnostics = false;
    Measure measure = Measure::cell_mean;
};

/// Largest level for the dense well-posedness diagnostics.
inline constexpr int diagnostics_max_level = 4;

inline void validate(const RunConfig& c)
{
    if (c.example < 1 || c.example > 4) throw ConfigError("example must be 1, 2, 3 or 4");
    if (c.interface_mode == InterfaceMode::constant_projection && c.example != 4) {
        throw ConfigError("interface mode constant_projection requires example 4");
    }
    if (c.interface_mode == InterfaceMode::paper_literal && c.example != 2 && c.example != 3) {
        throw ConfigError("interface mode paper_literal requires example 2 or 3");
    }
    bool ok = false;
    for (int l : {1, 2, 4, 8, 16, 32, 64}) ok = ok || l == c.max_level_inv;
    if (!ok) throw ConfigError("max level must be one of 1, 2, 4, 8, 16, 32, 64");
    if (c.beta_override && !(*c.beta_override > 0.0)) throw ConfigError("beta must be positive");
    if (c.fields_dir && !std::filesystem::is_directory(*c.fields_dir)) {
        throw ConfigError("fields directory does not exist: " + *c.fields_dir);
    }
}

namespace detail {
inline void write_file(const std::string& path, const std::string& text)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open " + path);
    os << text;
    if (!os) throw std::runtime_error("write failed: " + path);
}
} // namespace detail

/// Runs the study described by cfg. The convergence table goes to out;
/// files are written only where requested. Throws on any error.
inline void run(const RunConfig& cfg, std::ostream& out)
{
    validate(cfg);
    const ManufacturedCase c = example_by_number(cfg.example, cfg.interface_mode, cfg.beta_override.value_or(1.0));

    if (cfg.diagnostics) {
        out << "# well-posedness diagnostics (inf_sup, coercivity_on_kernel, min_eig_C)\n";
        for (int l = 1; l <= std::min(cfg.max_level_inv, diagnostics_max_level); l *= 2) {
            const BipartiteMesh m = build_cartesian_mesh(l);
            const DofLayout d = build_dof_layout(m);
            const auto w = check_wellposedness(assemble_system(m, d, c), m);
            out << "# h_inv=" << l << ' ' << detail::fmt6(w.inf_sup) << ' ' << detail::fmt6(w.coercivity) << ' '
                << detail::fmt6(w.c_min_eig) << '\n';
        }
    }

    LevelHook hook;
    if (cfg.fields_dir) {
        hook = [dir = *cfg.fields_dir](const BipartiteMesh& m, const SolutionFields& s) { write_field_dumps(m, s, dir); };
    }
    const ConvergenceReport rep = convergence_study(c, dyadic_levels(cfg.max_level_inv), hook);

    std::ostringstream table;
    write_csv(rep, table, cfg.measure);
    out << "# " << c.name << ", interface " << to_string(c.mode) << ", measure " << to_string(cfg.measure) << '\n'
        << table.str();
    if (cfg.csv_path) detail::write_file(*cfg.csv_path, table.str());

    std::ostringstream rel;
    write_relative_csv(rep, rel, cfg.measure);
    if (cfg.interface_mode == InterfaceMode::constant_projection) out << "# relative errors (%)\n" << rel.str();
    if (cfg.relative_csv_path) detail::write_file(*cfg.relative_csv_path, rel.str());
}

} // namespace pdmix
