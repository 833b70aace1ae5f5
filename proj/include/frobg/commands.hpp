#pragma once

// Report-producing drivers behind the command-line tool.

#include "frobg/catalog.hpp"
#include "frobg/lgmodels.hpp"
#include "frobg/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace frobg {

/// wdvv, getzler, bo7, bo8, bo9, gamma, caustic-residues
const std::vector<std::string>& known_checks();

struct VerifyOptions {
    std::vector<std::string> checks;  // empty = all
    std::size_t points = 100;
    std::uint64_t seed = 0;
    Real tol = Real("1e-9");
};

/// Throws UnknownCheck.
VerificationReport cmd_verify(const ModelEntry& entry, const VerifyOptions& opt);

struct CausticOptions {
    std::optional<std::size_t> ray;  // 0-based coordinate of the probe ray
    std::uint64_t seed = 0;
};

/// Collision-exponent fits and residues at every caustic of the entry.
VerificationReport cmd_caustic(const ModelEntry& entry, const CausticOptions& opt);

struct LgOptions {
    int k = 1;
    int m = 1;
    std::vector<Complex> coeffs;  // a_1..a_{k+m}; empty = seeded random
    bool sweep = false;
    std::size_t paths = 20;
    std::uint64_t seed = 0;
};

VerificationReport cmd_lg(const LgOptions& opt);

struct SymmetryOptions {
    std::optional<std::size_t> legendre;  // 0-based kappa
    bool inversion = false;
    std::size_t points = 20;
    std::uint64_t seed = 0;
    Real tol = Real("1e-8");
};

VerificationReport cmd_symmetry(const ModelEntry& entry, const SymmetryOptions& opt);

nlohmann::ordered_json cmd_list_json();
std::string cmd_list_text();

/// Residue and exponent checks used by both verify and caustic.
std::vector<CheckResult> caustic_checks(const ModelEntry& entry, std::uint64_t seed, bool exponents,
                                        std::optional<std::size_t> ray = std::nullopt);

}  // namespace frobg
