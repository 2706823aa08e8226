#pragma once

#include "weylith/algebra/module.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace weylith {

enum class SheafKind { Twist, Veronese, Omega, Quotient, Presentation };

/// A coherent sheaf on P(W) described by a graded S-module whose sheafification it is.
///
/// Variants:
///   twist d            O(d), module S(d)
///   veronese d, twist  pushforward of O_{P^1}(twist) along the degree-d rational normal
///                      curve in P^d (needs dimW = d + 1), module of sections
///                      H^0(O_{P^1}(d k + twist)) with w_t acting as x^t y^{d-t}
///   omega a            Omega^a(a), module ker(^a W (x) S -> ^{a-1} W (x) S(1))
///   quotient gens      S / (gens)
///   presentation       coker of a homogeneous matrix with declared row/column degrees
struct SheafSpec {
    SheafKind kind = SheafKind::Twist;
    int twist = 0;
    int degree = 1;
    int a = 0;
    std::vector<std::string> generators;
    std::vector<std::vector<std::string>> matrix;  // rows x columns
    std::vector<int> row_degrees;
    std::vector<int> column_degrees;

    std::optional<int> regularity;
    std::optional<int> support_dim;

    static SheafSpec make_twist(int d);
    static SheafSpec make_veronese(int d, int twist = 0);
    static SheafSpec make_omega(int a);
};

/// "twist:D", "omega:A", "veronese:D" or "veronese:D,TWIST"; a leading '{' is parsed as JSON.
SheafSpec parse_sheaf_spec(const std::string& text);

nlohmann::json sheaf_to_json(const SheafSpec& spec);
SheafSpec sheaf_from_json(const nlohmann::json& j);

/// Validates variant parameters against the ambient space; throws InvalidInput.
void validate_sheaf(const SheafSpec& spec, const AmbientSpace& ambient);

/// User-supplied regularity, or a safe closed-form value for the builtin variants.
/// Throws InvalidInput for quotient/presentation specs without one.
int effective_regularity(const SheafSpec& spec, const AmbientSpace& ambient);

/// The module of `spec` realized on internal degrees [lo, hi].
DegreewiseSModule realize(const SheafSpec& spec, const AmbientSpace& ambient, int lo, int hi);

/// Matrix of the Koszul map ^a W (x) S_k -> ^{a-1} W (x) S_{k+1}; basis (I, mu) at
/// rank(I) * |S_k| + index(mu).
MatQ koszul_differential(const AmbientSpace& ambient, int a, int k);

/// Module whose sheafification is Omega^a(a): the degreewise kernel of the Koszul map.
DegreewiseSModule koszul_kernel_module(const AmbientSpace& ambient, int a, int lo, int hi);

}  // namespace weylith
