#ifndef CURVETOP_PLS_GRAPH_HPP
#define CURVETOP_PLS_GRAPH_HPP

#include "curvetop/algnum.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace curvetop {

enum class VertexKind { Regular, XCritical, RealSingular, ApparentLift, SweepRegular };

const char* vertex_kind_name(VertexKind k);
std::optional<VertexKind> vertex_kind_from_name(const std::string& s);

struct PLSVertex {
    int id = -1;
    VertexKind kind = VertexKind::Regular;
    std::vector<RealAlgebraicNumber> coords; // 2 or 3 entries
    std::vector<double> approx;              // filled on export with error <= 2^-30
};

struct CertificateTrail {
    std::optional<bool> plane_generic;
    std::optional<bool> pseudo_generic;
    std::optional<bool> space_generic;
    std::vector<std::string> shears;
    std::vector<std::string> notes; // e.g. "input replaced by squarefree part"
};

struct PLSGraph {
    int dimension = 2;
    std::vector<PLSVertex> vertices;
    std::vector<std::pair<int, int>> edges; // unordered pairs, stored with first < second
    CertificateTrail certificates;

    void add_edge(int a, int b);
    const PLSVertex* find_vertex(int id) const;
};

struct ComponentStats {
    int components = 0;
    int cycle_rank = 0;
    std::map<int, int> degree_histogram; // degree -> vertex count
};

ComponentStats component_stats(const PLSGraph& g);

/// Deterministic JSON per the fixed schema; refines coordinates so the
/// printed approximations carry certified error <= 2^-30.
std::string export_json(const PLSGraph& g);
/// ASCII OBJ: "v x y z" records (z = 0 for 2D) and "l i j" records.
std::string export_obj(const PLSGraph& g);

/// Parse a graph previously written by export_json.
PLSGraph import_json(const std::string& text);

} // namespace curvetop

#endif
