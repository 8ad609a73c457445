use crate::error::MhdError;
use crate::state::{cons_to_prim, idx, prim_to_cons, AugPair, ConsState, GasModel, PrimState};

use super::grid::Grid2D;

/// Number of evolved quantities per cell: eight conservative variables, `A`, `B`.
pub const NVAR: usize = 10;
pub const SLOT_A: usize = 8;
pub const SLOT_B: usize = 9;

pub type CellVec = [f64; NVAR];

/// Cell averages `(U_bar, A_bar, B_bar)` over the grid, row-major with `j`
/// (the x index) fastest.
#[derive(Clone, Debug, PartialEq)]
pub struct AugField {
    pub grid: Grid2D,
    pub cells: Vec<CellVec>,
}

pub fn pack(u: &ConsState, ab: AugPair) -> CellVec {
    let mut c = [0.0; NVAR];
    c[..8].copy_from_slice(&u.0);
    c[SLOT_A] = ab.a;
    c[SLOT_B] = ab.b;
    c
}

#[inline]
pub fn cons_of(c: &CellVec) -> ConsState {
    let mut u = [0.0; 8];
    u.copy_from_slice(&c[..8]);
    ConsState(u)
}

impl AugField {
    pub fn zeros(grid: Grid2D) -> Self {
        Self {
            grid,
            cells: vec![[0.0; NVAR]; grid.num_cells()],
        }
    }

    /// Samples primitive values and derivative variables at cell centres.
    pub fn from_fn(
        grid: Grid2D,
        gas: &GasModel,
        f: impl Fn(f64, f64) -> (PrimState, AugPair),
    ) -> Result<Self, MhdError> {
        let mut cells = Vec::with_capacity(grid.num_cells());
        for k in 0..grid.ny {
            for j in 0..grid.nx {
                let (v, ab) = f(grid.x_center(j), grid.y_center(k));
                let u = prim_to_cons(&v, gas).map_err(|e| e.at(j as isize, k as isize, "initial data"))?;
                cells.push(pack(&u, ab));
            }
        }
        Ok(Self { grid, cells })
    }

    #[inline]
    pub fn index(&self, j: usize, k: usize) -> usize {
        k * self.grid.nx + j
    }

    pub fn cons(&self, j: usize, k: usize) -> ConsState {
        cons_of(&self.cells[self.index(j, k)])
    }

    pub fn prim(&self, j: usize, k: usize, gas: &GasModel) -> Result<PrimState, MhdError> {
        cons_to_prim(&self.cons(j, k), gas)
    }

    pub fn aug(&self, j: usize, k: usize) -> AugPair {
        let c = &self.cells[self.index(j, k)];
        AugPair {
            a: c[SLOT_A],
            b: c[SLOT_B],
        }
    }

    pub fn as_flat(&self) -> &[f64] {
        self.cells.as_flattened()
    }

    pub fn from_flat(grid: Grid2D, flat: &[f64]) -> Self {
        assert_eq!(flat.len(), grid.num_cells() * NVAR);
        let cells = flat
            .chunks_exact(NVAR)
            .map(|c| {
                let mut v = [0.0; NVAR];
                v.copy_from_slice(c);
                v
            })
            .collect();
        Self { grid, cells }
    }

    /// `sum rho dx dy`.
    pub fn total_mass(&self) -> f64 {
        self.cells.iter().map(|c| c[idx::RHO]).sum::<f64>() * self.grid.cell_area()
    }

    pub fn max_abs_b(&self) -> f64 {
        self.cells
            .iter()
            .map(|c| {
                let b = &c[idx::B1..=idx::B3];
                (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt()
            })
            .fold(0.0, f64::max)
    }

    /// Minimum density and pressure over the grid.
    pub fn min_rho_p(&self, gas: &GasModel) -> (f64, f64) {
        let mut min_rho = f64::INFINITY;
        let mut min_p = f64::INFINITY;
        for c in &self.cells {
            let u = cons_of(c);
            min_rho = min_rho.min(u.rho());
            min_p = min_p.min(gas.pressure(&u));
        }
        (min_rho, min_p)
    }

    pub fn all_finite(&self) -> bool {
        self.as_flat().iter().all(|x| x.is_finite())
    }
}
