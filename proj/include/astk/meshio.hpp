#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "astk/spline.hpp"
#include "astk/tmesh.hpp"

namespace astk {

/// On-disk mesh description. Rationals are parsed and written exactly
/// ("p/q" or plain integers); no floating point is involved.
struct MeshFile {
  IndexDomain domain;
  std::vector<LineSpan> h_lines;
  std::vector<LineSpan> v_lines;
  GlobalKnots knots;

  TMesh build_mesh() const { return TMesh::build(domain, h_lines, v_lines); }
};

/// Throws Error(MalformedMeshFile) with line:column on parse failures.
MeshFile parse_mesh_file(std::istream& in, const std::string& name = "<stream>");
MeshFile load_mesh_file(const std::string& path);

std::string write_mesh_file(const MeshFile& mesh,
                            const std::vector<std::string>& comments = {});
MeshFile mesh_file_from(const TMesh& mesh, const GlobalKnots& knots);

/// Control net rows "i j x y z" (anchor index coordinates plus a 3D point).
struct ControlNet {
  std::vector<IndexPoint> anchors;
  Eigen::MatrixXd points;  // one row per anchor, three columns
};

ControlNet parse_control_net(std::istream& in, const std::string& name = "<stream>");
ControlNet load_control_net(const std::string& path);
std::string write_control_net(const ControlNet& net);

}  // namespace astk
