#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>

#include "lrkit/schema.hpp"

namespace lrk {

/// Named definitions loaded from workspace files, layered over builtins.
///
/// A workspace file is {"algebroids": {...}, "cochains": {...},
/// "connections": {...}, "operators": {...}} with one schema object per
/// name.  A cochain or connection may name its algebroid under the key
/// "algebroid"; it is then checked by `check`.  A file holding a single
/// algebroid object is registered under the file's stem.
///
/// Builtin algebroids: tangent:N, weyl (= tangent:1), heis, sl2, abelian:N
/// (also abelianN), so3-poisson, atiyah:M:N.
/// Builtin cochains: zero (2-cochain), sympl and e1e2 (w(e1, e2) = 1),
/// rho0 (1-cochain rho(e1) = -x2).
/// Builtin connections: trivial, connA (rank 1, A_1 = -x2).
class Workspace {
public:
    void load_file(const std::string& path);
    /// `stem` names a lone algebroid object.
    void load_json(const schema::json& j, const std::string& stem = "algebroid");

    /// Builtin or defined name, or an inline JSON object.
    LieRinehartAlgebra algebroid(std::string_view spec) const;
    bool is_algebroid(std::string_view spec) const;

    /// Name, inline JSON, or text lines "w(d1,d2) = value" (';' separated).
    /// `degree` is used for the zero text "0" and checked otherwise.
    Cochain cochain(std::string_view spec, const LieRinehartAlgebra& a,
                    std::optional<std::size_t> degree = {}) const;
    Connection connection(std::string_view spec, const LieRinehartAlgebra& a) const;
    /// Name, inline JSON, or a single Weyl expression (a 1x1 operator).
    OperatorElement op(std::string_view spec, std::size_t nvars) const;

    /// Largest xK / dK index appearing in an operator spec (at least 1).
    std::size_t infer_nvars(std::string_view spec) const;

    const std::map<std::string, schema::json>& algebroids() const { return algebroids_; }
    const std::map<std::string, schema::json>& cochains() const { return cochains_; }
    const std::map<std::string, schema::json>& connections() const { return connections_; }
    const std::map<std::string, schema::json>& operators() const { return operators_; }

private:
    std::map<std::string, schema::json> algebroids_;
    std::map<std::string, schema::json> cochains_;
    std::map<std::string, schema::json> connections_;
    std::map<std::string, schema::json> operators_;
};

std::optional<LieRinehartAlgebra> builtin_algebroid(std::string_view name);

}  // namespace lrk
