#pragma once

#include <map>
#include <vector>

#include "astk/spline.hpp"
#include "astk/tmesh.hpp"

namespace astk {

/// Coefficients c >= 0 for the opened spans, keyed by axis and by the
/// zero-span ordinal in index order. Unset slots default to 1.
struct PerturbCoeffs {
  std::map<std::pair<Axis, int>, Rational> values;

  Rational get(Axis axis, int slot) const {
    auto it = values.find({axis, slot});
    Rational c = it == values.end() ? Rational(1) : it->second;
    if (c < 0) fail(ErrorCode::NegativeCoefficient, "perturbation coefficient below zero");
    return c;
  }
  bool all_strict() const {
    for (const auto& [k, v] : values)
      if (v <= 0) return false;
    return true;
  }
};

/// Expanded knot vectors: one index per (line, segment) pair, zero spans
/// opened to c * delta. hpi/vpi map perturbed indices onto original ones.
struct PerturbedKnots {
  GlobalKnots knots;  // over the expanded index domain
  std::vector<int> hpi;  // hpi[i - knots.m_lo] = original column index
  std::vector<int> vpi;  // vpi[j - knots.n_lo] = original row index
  int slots_xi = 0;      // zero-span slots opened per axis
  int slots_eta = 0;
  Rational delta;

  int hpi_at(int i) const { return hpi[static_cast<std::size_t>(i - knots.m_lo)]; }
  int vpi_at(int j) const { return vpi[static_cast<std::size_t>(j - knots.n_lo)]; }
};

struct PerturbedMesh {
  struct Origin {
    IndexPoint original;
    int col_segment = 0;  // ordinal of the vertical segment carrying the vertex
    int row_segment = 0;
  };
  TMesh mesh;
  std::map<IndexPoint, Origin> provenance;  // perturbed vertex -> origin

  IndexPoint original_of(const IndexPoint& p) const;
};

struct PerturbResult {
  PerturbedKnots knots;
  PerturbedMesh mesh;
};

/// Builds T[delta]: multi-segment lines split into parallel lines one
/// repeated index apart and zero knot spans opened to c * delta.
PerturbResult perturb(const TMesh& mesh, const GlobalKnots& knots, const Rational& delta,
                      const PerturbCoeffs& coeffs = {});

/// T1[delta, T2]: strictly perturb t2, then drop the images of edges and
/// vertices of t2 \ t1. Throws NotASubmesh.
struct RelativePerturbResult {
  PerturbResult fine;  // T2[delta]
  TMesh coarse_mesh;   // T1[delta, T2], over the same expanded domain
};

RelativePerturbResult relative_perturb(const TMesh& t1, const TMesh& t2,
                                       const GlobalKnots& knots2, const Rational& delta,
                                       const PerturbCoeffs& coeffs = {});

/// Sup-deviation of each perturbed blending function from its image under
/// the index map, per delta, over a fixed sample grid; plus the exact
/// index-vector commutation check hpi(hv(A)[delta]) == hv(pi(A)).
struct DeviationTable {
  std::vector<Rational> deltas;
  std::vector<IndexPoint> anchors;                // anchors of the source mesh
  std::vector<std::vector<double>> deviations;    // deviations[d][a]
  std::vector<double> max_deviation;              // per delta
  bool commutation_ok = true;
};

DeviationTable convergence_experiment(const TMesh& mesh, const GlobalKnots& knots,
                                      const std::vector<Rational>& deltas,
                                      const PerturbCoeffs& coeffs = {});

}  // namespace astk
