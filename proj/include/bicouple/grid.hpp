#ifndef BICOUPLE_GRID_HPP
#define BICOUPLE_GRID_HPP

#include <functional>
#include <vector>

namespace bicouple {

enum class GridKind { Nodal, FiniteVolume };

// Uniform mesh on [0,1] split at x = 1/2 into two sub-domains of m cells/nodes each.
//
// Nodal layout: nodes x_j = j*dx for j = 0..N with a double node at x_m = 1/2
// (separate left value u_m and right value v_m). FiniteVolume layout: cells
// sigma_j = [(j-1)dx, j*dx] with centers x_j = (j - 1/2)*dx for j = 1..N; the
// interface coincides with the face between cells m and m+1.
struct Grid {
  int m = 0;
  GridKind kind = GridKind::Nodal;

  int n_total() const { return 2 * m; }
  double dx() const { return 1.0 / (2 * m); }

  // Nodal coordinate of node j (0..N).
  double node_coord(int j) const { return j * dx(); }
  // Center of cell j (1..N).
  double cell_center(int j) const { return (j - 0.5) * dx(); }

  friend bool operator==(const Grid&, const Grid&) = default;
};

// Throws std::invalid_argument for m < 2 ("mesh too coarse for stencil"):
// every interior stencil needs a neighbor on both sides.
Grid build_grid(int m, GridKind kind);

// Discrete fields of one time level. Nodal: u holds u_0..u_m and v holds
// v_m..v_N (so u.size() == v.size() == m+1, with both interface values stored).
// FiniteVolume: u holds u_1..u_m and v holds v_{m+1}..v_N (size m each).
struct BiDomainState {
  std::vector<double> u;
  std::vector<double> v;
  double t = 0.0;
};

// Zero-initialized state with the layout required by the grid.
BiDomainState make_state(const Grid& grid);

// True when the array lengths match the grid's layout exactly.
bool state_matches(const Grid& grid, const BiDomainState& state);

using ScalarFunc = std::function<double(double)>;

// Samples initial data. Nodal: point evaluation at the nodes, with
// u_m = f_left(1/2) and v_m = f_right(1/2) at the double node. FiniteVolume:
// midpoint evaluation at the cell centers (midpoint-rule cell averages).
// Sets t = 0.
BiDomainState discretize_initial(const Grid& grid, const ScalarFunc& f_left,
                                 const ScalarFunc& f_right);

// FiniteVolume only: exact integral cell averages (F(right) - F(left))/dx from
// antiderivatives of the initial data. Throws on a nodal grid.
BiDomainState discretize_initial_averages(const Grid& grid,
                                          const ScalarFunc& antiderivative_left,
                                          const ScalarFunc& antiderivative_right);

}  // namespace bicouple

#endif
