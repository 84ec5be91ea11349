#pragma once

#include <optional>
#include <vector>

#include "magcouple/core/types.hpp"

namespace magcouple {

// A mode whose frequency is either fixed (spec.omega) or follows the Kittel
// relation of `material` at each applied field.
struct TemplateMode {
    ModeSpec spec;
    std::optional<KittelMaterial> material;

    bool is_magnon() const noexcept { return material.has_value(); }
};

/// Field-independent description of a hybrid system. Instantiating it at a
/// field yields a HybridSystem with every magnon frequency filled in.
struct SystemTemplate {
    std::vector<TemplateMode> modes;
    std::vector<Coupling> couplings;

    std::size_t size() const noexcept { return modes.size(); }

    /// Index of the first fixed-frequency mode; throws InvalidSystem if none.
    std::size_t resonator_index() const;
    /// Indices of Kittel modes in template order.
    std::vector<std::size_t> magnon_indices() const;

    /// Coupling value between a and b (0 if absent).
    double coupling(std::size_t a, std::size_t b) const;
    /// Sets (or inserts) the coupling between a and b.
    void set_coupling(std::size_t a, std::size_t b, double g);

    void validate() const;
};

/// [magnon1, resonator, magnon2] with g(0,1) = g1 and g(1,2) = g2.
SystemTemplate canonical_template(ModeSpec magnon1, KittelMaterial material1, ModeSpec resonator,
                                  ModeSpec magnon2, KittelMaterial material2, double g1, double g2);

/// Magnon frequencies from the Kittel relation at field h; fixed modes untouched.
HybridSystem instantiate(const SystemTemplate& tmpl, double h);

}  // namespace magcouple
