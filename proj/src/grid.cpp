#include "deflag/grid.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "deflag/errors.hpp"

namespace deflag {

StaggeredGrid::StaggeredGrid(std::size_t n_cells, double x_left, double x_right,
                             BoundaryKind boundary)
    : n_cells_(n_cells), x_left_(x_left), x_right_(x_right), boundary_(boundary) {
  if (n_cells < 3) {
    throw ConfigError("grid needs at least 3 cells, got " + std::to_string(n_cells));
  }
  if (!(x_right > x_left) || !std::isfinite(x_left) || !std::isfinite(x_right)) {
    throw ConfigError("grid needs finite x_right > x_left");
  }
  const double h = (x_right - x_left) / static_cast<double>(n_cells);
  cell_volumes_.assign(n_cells, h);
  cell_centers_.resize(n_cells);
  for (std::size_t k = 0; k < n_cells; ++k) {
    cell_centers_[k] = x_left + (static_cast<double>(k) + 0.5) * h;
  }
  const std::size_t n_faces = periodic() ? n_cells : n_cells + 1;
  face_positions_.resize(n_faces);
  dual_volumes_.resize(n_faces);
  for (std::size_t f = 0; f < n_faces; ++f) {
    face_positions_[f] = x_left + static_cast<double>(f) * h;
  }
  if (!periodic()) face_positions_.back() = x_right;
  for (std::size_t f = 0; f < n_faces; ++f) {
    const std::size_t l = left_cell(f);
    const std::size_t r = right_cell(f);
    double v = 0.0;
    if (l != no_cell) v += 0.5 * cell_volumes_[l];
    if (r != no_cell) v += 0.5 * cell_volumes_[r];
    dual_volumes_[f] = v;
  }
}

bool StaggeredGrid::is_boundary_face(std::size_t face) const {
  return !periodic() && (face == 0 || face == n_cells_);
}

std::size_t StaggeredGrid::left_face(std::size_t cell) const { return cell; }

std::size_t StaggeredGrid::right_face(std::size_t cell) const {
  return periodic() ? (cell + 1) % n_cells_ : cell + 1;
}

std::size_t StaggeredGrid::left_cell(std::size_t face) const {
  if (periodic()) return (face + n_cells_ - 1) % n_cells_;
  return face == 0 ? no_cell : face - 1;
}

std::size_t StaggeredGrid::right_cell(std::size_t face) const {
  if (periodic()) return face;
  return face == n_cells_ ? no_cell : face;
}

std::size_t StaggeredGrid::opposite_face(std::size_t cell, std::size_t face) const {
  const std::size_t l = left_face(cell);
  const std::size_t r = right_face(cell);
  if (face == l) return r;
  if (face == r) return l;
  throw std::logic_error("face " + std::to_string(face) + " does not bound cell " +
                         std::to_string(cell));
}

std::size_t StaggeredGrid::neighbor(std::size_t cell, std::size_t face) const {
  if (face == right_face(cell)) return right_cell(face);
  if (face == left_face(cell)) return left_cell(face);
  throw std::logic_error("face " + std::to_string(face) + " does not bound cell " +
                         std::to_string(cell));
}

double StaggeredGrid::outward_normal(std::size_t cell, std::size_t face) const {
  if (face == right_face(cell)) return 1.0;
  if (face == left_face(cell)) return -1.0;
  throw std::logic_error("face " + std::to_string(face) + " does not bound cell " +
                         std::to_string(cell));
}

StaggeredGrid build_uniform_grid(std::size_t n_cells, double x_left, double x_right,
                                 BoundaryKind boundary) {
  return StaggeredGrid(n_cells, x_left, x_right, boundary);
}

std::size_t opposite_face(const StaggeredGrid& grid, std::size_t cell, std::size_t face) {
  return grid.opposite_face(cell, face);
}

}  // namespace deflag
