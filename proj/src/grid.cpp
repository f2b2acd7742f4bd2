#include "bicouple/grid.hpp"

#include <stdexcept>

namespace bicouple {

Grid build_grid(int m, GridKind kind) {
  if (m < 2) throw std::invalid_argument("build_grid: mesh too coarse for stencil (need m >= 2)");
  return Grid{m, kind};
}

BiDomainState make_state(const Grid& grid) {
  BiDomainState s;
  const std::size_t n = grid.kind == GridKind::Nodal ? grid.m + 1 : grid.m;
  s.u.assign(n, 0.0);
  s.v.assign(n, 0.0);
  return s;
}

bool state_matches(const Grid& grid, const BiDomainState& state) {
  const std::size_t n = grid.kind == GridKind::Nodal ? grid.m + 1 : grid.m;
  return state.u.size() == n && state.v.size() == n;
}

BiDomainState discretize_initial(const Grid& grid, const ScalarFunc& f_left,
                                 const ScalarFunc& f_right) {
  BiDomainState s = make_state(grid);
  const int m = grid.m;
  if (grid.kind == GridKind::Nodal) {
    for (int j = 0; j <= m; ++j) s.u[j] = f_left(grid.node_coord(j));
    for (int j = 0; j <= m; ++j) s.v[j] = f_right(grid.node_coord(m + j));
  } else {
    for (int j = 0; j < m; ++j) s.u[j] = f_left(grid.cell_center(j + 1));
    for (int j = 0; j < m; ++j) s.v[j] = f_right(grid.cell_center(m + 1 + j));
  }
  return s;
}

BiDomainState discretize_initial_averages(const Grid& grid,
                                          const ScalarFunc& antiderivative_left,
                                          const ScalarFunc& antiderivative_right) {
  if (grid.kind != GridKind::FiniteVolume)
    throw std::invalid_argument("discretize_initial_averages: exact cell averages are a finite-volume option");
  BiDomainState s = make_state(grid);
  const int m = grid.m;
  const double dx = grid.dx();
  for (int j = 0; j < m; ++j) {
    const double a = (j)*dx, b = (j + 1) * dx;
    s.u[j] = (antiderivative_left(b) - antiderivative_left(a)) / dx;
  }
  for (int j = 0; j < m; ++j) {
    const double a = (m + j) * dx, b = (m + j + 1) * dx;
    s.v[j] = (antiderivative_right(b) - antiderivative_right(a)) / dx;
  }
  return s;
}

}  // namespace bicouple
