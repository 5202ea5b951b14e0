#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace deflag {

/// Marker returned for a missing neighbour across a wall.
inline constexpr std::size_t no_cell = std::numeric_limits<std::size_t>::max();

enum class BoundaryKind { wall, periodic };

/// Uniform one-dimensional MAC mesh.
///
/// Scalars live on cells 0..N-1, the velocity on faces. With walls there are
/// N+1 faces and face f separates cells f-1 and f; faces 0 and N are boundary
/// faces. In periodic mode there are N faces and face 0 separates cells N-1
/// and 0. The grid carries no fields.
class StaggeredGrid {
 public:
  StaggeredGrid(std::size_t n_cells, double x_left, double x_right,
                BoundaryKind boundary = BoundaryKind::wall);

  std::size_t n_cells() const noexcept { return n_cells_; }
  std::size_t n_faces() const noexcept { return face_positions_.size(); }
  double x_left() const noexcept { return x_left_; }
  double x_right() const noexcept { return x_right_; }
  double length() const noexcept { return x_right_ - x_left_; }
  double spacing() const noexcept { return cell_volumes_.front(); }
  BoundaryKind boundary() const noexcept { return boundary_; }
  bool periodic() const noexcept { return boundary_ == BoundaryKind::periodic; }

  double cell_volume(std::size_t cell) const { return cell_volumes_[cell]; }
  double dual_volume(std::size_t face) const { return dual_volumes_[face]; }
  double cell_center(std::size_t cell) const { return cell_centers_[cell]; }
  double face_position(std::size_t face) const { return face_positions_[face]; }
  bool is_boundary_face(std::size_t face) const;

  const std::vector<double>& cell_volumes() const noexcept { return cell_volumes_; }
  const std::vector<double>& dual_volumes() const noexcept { return dual_volumes_; }
  const std::vector<double>& cell_centers() const noexcept { return cell_centers_; }
  const std::vector<double>& face_positions() const noexcept { return face_positions_; }

  std::size_t left_face(std::size_t cell) const;
  std::size_t right_face(std::size_t cell) const;
  /// Cell on the left of a face; no_cell at the left wall.
  std::size_t left_cell(std::size_t face) const;
  /// Cell on the right of a face; no_cell at the right wall.
  std::size_t right_cell(std::size_t face) const;
  /// The other face of `cell`. Throws std::logic_error if `face` does not bound `cell`.
  std::size_t opposite_face(std::size_t cell, std::size_t face) const;
  /// Cell across `face` seen from `cell`; no_cell at a wall.
  std::size_t neighbor(std::size_t cell, std::size_t face) const;
  /// +1 if `face` is the right face of `cell`, -1 if it is the left one.
  double outward_normal(std::size_t cell, std::size_t face) const;

 private:
  std::size_t n_cells_;
  double x_left_;
  double x_right_;
  BoundaryKind boundary_;
  std::vector<double> cell_volumes_;
  std::vector<double> dual_volumes_;
  std::vector<double> cell_centers_;
  std::vector<double> face_positions_;
};

/// Uniform grid with wall boundaries. Requires n_cells >= 3 and x_right > x_left.
StaggeredGrid build_uniform_grid(std::size_t n_cells, double x_left, double x_right,
                                 BoundaryKind boundary = BoundaryKind::wall);

/// Free-function form of StaggeredGrid::opposite_face.
std::size_t opposite_face(const StaggeredGrid& grid, std::size_t cell, std::size_t face);

}  // namespace deflag
