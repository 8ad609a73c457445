//! Semi-discrete right-hand side: ghost filling, reconstruction, slope
//! correction, global fluxes and flux differences.

use rayon::prelude::*;

use crate::eigen::{eigensystem_cons_prim, eigensystem_prim_unchecked, eigenvalues_prim};
use crate::error::MhdError;
use crate::flux::{cu_aux_flux, lcd_flux, local_speeds, pccu_flux, SpectralBounds};
use crate::nonconservative::{cell_q, global_flux_faces, integrate_globals, interface_q};
use crate::reconstruction::{
    cell_divergence, divergence_correction, reconstruct_interface, reconstruct_interface_componentwise,
    reconstruct_scalar, CorrectionInput,
};
use crate::state::{
    aux_flux_x, aux_flux_y, cons_to_prim, flux_prim, idx, pidx, prim_to_cons, AugPair, ConsState, Direction, PrimState,
    Vec8,
};

use super::boundary::{fill_ghosts, GHOST};
use super::field::{cons_of, CellVec, NVAR, SLOT_A, SLOT_B};
use super::grid::Grid2D;
use super::{Scheme, FLOOR};

/// By-products of one right-hand-side evaluation.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct RhsInfo {
    /// Largest `max(s+, -s-)` over x- and y-interfaces.
    pub max_speed_x: f64,
    pub max_speed_y: f64,
    /// `sum |div b| dx dy` and `max |div b|` of the point values used.
    pub div_l1: f64,
    pub div_linf: f64,
}

fn floored(v: PrimState) -> PrimState {
    let mut w = v.0;
    w[pidx::RHO] = w[pidx::RHO].max(FLOOR);
    w[pidx::P] = w[pidx::P].max(FLOOR);
    PrimState(w)
}

/// Padded cell data and reconstructed point values shared by both sweeps.
struct Reconstruction {
    nxp: usize,
    cells: Vec<CellVec>,
    prim: Vec<PrimState>,
    east: Vec<PrimState>,
    west: Vec<PrimState>,
    north: Vec<PrimState>,
    south: Vec<PrimState>,
    /// Discrete divergence of the interior cells.
    div: Vec<f64>,
}

impl Reconstruction {
    #[inline]
    fn at(&self, jp: usize, kp: usize) -> usize {
        kp * self.nxp + jp
    }
}

/// Signed interior coordinates of a padded index.
fn coords(p: usize, nxp: usize) -> (isize, isize) {
    ((p % nxp) as isize - GHOST as isize, (p / nxp) as isize - GHOST as isize)
}

fn interface_prim(a: &CellVec, b: &CellVec, scheme: &Scheme) -> Result<PrimState, MhdError> {
    let mid = cons_of(a).midpoint(&cons_of(b));
    let v = cons_to_prim(&mid, &scheme.gas)?;
    if scheme.floor {
        return Ok(floored(v));
    }
    v.check_admissible()?;
    Ok(v)
}

fn reconstruct(cells: &[CellVec], grid: &Grid2D, scheme: &Scheme) -> Result<Reconstruction, MhdError> {
    let (nx, ny) = (grid.nx, grid.ny);
    let nxp = nx + 2 * GHOST;
    let nyp = ny + 2 * GHOST;
    let padded = fill_ghosts(cells, nx, ny, &scheme.bc);
    let gas = scheme.gas;

    let prim_interior: Vec<PrimState> = cells
        .par_iter()
        .enumerate()
        .map(|(p, c)| {
            let v = cons_to_prim(&cons_of(c), &gas).and_then(|v| {
                if scheme.floor {
                    Ok(floored(v))
                } else {
                    v.check_admissible().map(|_| v)
                }
            });
            v.map_err(|e| e.at((p % nx) as isize, (p / nx) as isize, "cell average"))
        })
        .collect::<Result<_, _>>()?;
    let prim = fill_ghosts(&prim_interior, nx, ny, &scheme.bc);

    let theta = scheme.limiter.theta();
    let characteristic = scheme.variant.is_characteristic();
    let zero = PrimState([0.0; 8]);
    let mut east = vec![zero; nxp * nyp];
    let mut west = vec![zero; nxp * nyp];
    let mut north = vec![zero; nxp * nyp];
    let mut south = vec![zero; nxp * nyp];

    let pair = |lo: usize, stride: usize, dir: Direction| -> Result<(PrimState, PrimState), MhdError> {
        let st = [
            &prim[lo - stride],
            &prim[lo],
            &prim[lo + stride],
            &prim[lo + 2 * stride],
        ];
        if characteristic {
            let v_hat = interface_prim(&padded[lo], &padded[lo + stride], scheme).map_err(|e| {
                let (j, k) = coords(lo, nxp);
                e.at(j, k, "interface average")
            })?;
            let eig = eigensystem_prim_unchecked(&v_hat, &gas, dir);
            Ok(reconstruct_interface(st, &eig, theta))
        } else {
            Ok(reconstruct_interface_componentwise(st, theta))
        }
    };

    // x-interfaces between (j, j+1) for j = -2..=nx on rows k = -1..=ny
    let rows: Vec<Vec<(PrimState, PrimState)>> = (GHOST - 1..GHOST + ny + 1)
        .into_par_iter()
        .map(|kp| {
            (GHOST - 2..=GHOST + nx)
                .map(|jp| pair(kp * nxp + jp, 1, Direction::X))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    for (r, kp) in rows.into_iter().zip(GHOST - 1..) {
        for (i, (e, w)) in r.into_iter().enumerate() {
            let jp = GHOST - 2 + i;
            east[kp * nxp + jp] = e;
            west[kp * nxp + jp + 1] = w;
        }
    }

    // y-interfaces between (k, k+1) for k = -2..=ny on columns j = -1..=nx
    let rows: Vec<Vec<(PrimState, PrimState)>> = (GHOST - 2..=GHOST + ny)
        .into_par_iter()
        .map(|kp| {
            (GHOST - 1..GHOST + nx + 1)
                .map(|jp| pair(kp * nxp + jp, nxp, Direction::Y))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    for (r, kp) in rows.into_iter().zip(GHOST - 2..) {
        for (i, (n, s)) in r.into_iter().enumerate() {
            let jp = GHOST - 1 + i;
            north[kp * nxp + jp] = n;
            south[(kp + 1) * nxp + jp] = s;
        }
    }

    let (dx, dy) = (grid.dx(), grid.dy());
    if scheme.variant.is_corrected() {
        // cells j = -1..=nx, k = -1..=ny
        for kp in GHOST - 1..GHOST + ny + 1 {
            for jp in GHOST - 1..GHOST + nx + 1 {
                let p = kp * nxp + jp;
                let c = divergence_correction(&CorrectionInput {
                    b1_bar: prim[p].b1(),
                    b2_bar: prim[p].b2(),
                    a_bar: padded[p][SLOT_A],
                    b_bar: padded[p][SLOT_B],
                    b1_hat_e: east[p].b1(),
                    b1_hat_w: west[p].b1(),
                    b2_hat_n: north[p].b2(),
                    b2_hat_s: south[p].b2(),
                    dx,
                    dy,
                });
                east[p].0[pidx::B1] = c.b1_e;
                west[p].0[pidx::B1] = c.b1_w;
                north[p].0[pidx::B2] = c.b2_n;
                south[p].0[pidx::B2] = c.b2_s;
            }
        }
    }

    let mut div = Vec::with_capacity(nx * ny);
    for k in 0..ny {
        for j in 0..nx {
            let p = (k + GHOST) * nxp + j + GHOST;
            div.push(cell_divergence(
                east[p].b1(),
                west[p].b1(),
                north[p].b2(),
                south[p].b2(),
                dx,
                dy,
            ));
        }
    }

    Ok(Reconstruction {
        nxp,
        cells: padded,
        prim,
        east,
        west,
        north,
        south,
        div,
    })
}

/// One row (x) or column (y) of interior cells.
struct Line {
    dir: Direction,
    /// Number of interior cells along the line.
    n: usize,
    /// Padded index of interior position 0.
    origin: usize,
    stride: usize,
    /// Padded stride in the transverse direction.
    cross: usize,
    /// Transverse spacing, for the velocity derivative.
    cross_h: f64,
}

impl Line {
    #[inline]
    fn at(&self, p: isize) -> usize {
        (self.origin as isize + p * self.stride as isize) as usize
    }
}

/// Interface fluxes (conservative and auxiliary) along one line: `n + 1`
/// interfaces, interface `i` between positions `i-1` and `i`. Also returns
/// the largest local speed.
fn line_fluxes(rec: &Reconstruction, line: &Line, scheme: &Scheme) -> Result<(Vec<CellVec>, f64), MhdError> {
    let n = line.n as isize;
    let gas = &scheme.gas;
    let dir = line.dir;
    let (lower_faces, upper_faces) = match dir {
        Direction::X => (&rec.west, &rec.east),
        Direction::Y => (&rec.south, &rec.north),
    };
    let normal_slot = match dir {
        Direction::X => idx::B1,
        Direction::Y => idx::B2,
    };
    let (t_slot, aux_dir) = match dir {
        Direction::X => (pidx::U, Direction::X),
        Direction::Y => (pidx::V, Direction::Y),
    };

    let locate = |p: isize| -> (isize, isize) { coords(line.at(p), rec.nxp) };
    let face = |v: &PrimState, p: isize, site: &'static str| -> Result<(PrimState, ConsState), MhdError> {
        let v = if scheme.floor { floored(*v) } else { *v };
        let checked = v.check_admissible().and_then(|_| prim_to_cons(&v, gas));
        checked.map(|u| (v, u)).map_err(|e| {
            let (j, k) = locate(p);
            e.at(j, k, site)
        })
    };

    let len = (n + 1) as usize;
    // upper faces of positions -1..n-1 and lower faces of positions 0..n
    let mut up = Vec::with_capacity(len);
    let mut lo = Vec::with_capacity(len);
    for i in 0..=n {
        up.push(face(&upper_faces[line.at(i - 1)], i - 1, "upper face")?);
        lo.push(face(&lower_faces[line.at(i)], i, "lower face")?);
    }
    let lam = |v: &PrimState, p: isize| -> Result<Vec8, MhdError> {
        eigenvalues_prim(v, gas, dir).map_err(|e| {
            let (j, k) = locate(p);
            e.at(j, k, "face eigenvalues")
        })
    };

    // nonconservative integrals
    let cq: Vec<Vec8> = (0..n)
        .map(|p| {
            let u_bar = cons_of(&rec.cells[line.at(p)]);
            let (pu, pl) = (p as usize + 1, p as usize);
            cell_q(&u_bar, up[pu].1 .0[normal_slot], lo[pl].1 .0[normal_slot])
        })
        .collect();
    let iq: Vec<Vec8> = (0..len).map(|i| interface_q(&up[i].1, &lo[i].1, dir)).collect();
    let (minus, plus) = integrate_globals(&cq, &iq);

    let mut out = Vec::with_capacity(len);
    let mut max_speed: f64 = 0.0;
    for i in 0..len {
        let ip = i as isize;
        let (vu, uu) = &up[i];
        let (vl, ul) = &lo[i];
        // K^E of position i-1 and K^W of position i
        let (k_lower, k_upper) = global_flux_faces(
            &flux_prim(uu, vu, dir),
            &flux_prim(ul, vl, dir),
            &minus[i],
            &plus[i],
        );
        let lam_l = lam(vu, ip - 1)?;
        let lam_r = lam(vl, ip)?;
        let speeds = local_speeds(&lam_l, &lam_r);
        max_speed = max_speed.max(speeds.max_abs());

        let f = if scheme.variant.is_characteristic() {
            let cl = &rec.cells[line.at(ip - 1)];
            let cr = &rec.cells[line.at(ip)];
            let v_hat = interface_prim(cl, cr, scheme).map_err(|e| {
                let (j, k) = locate(ip - 1);
                e.at(j, k, "interface average")
            })?;
            let eig = eigensystem_cons_prim(&v_hat, gas, dir);
            let bounds = SpectralBounds::new(&lam_l, &lam_r, scheme.eps);
            lcd_flux(&k_lower, &k_upper, &uu.0, &ul.0, &eig, &bounds)
        } else {
            pccu_flux(&k_lower, &k_upper, &uu.0, &ul.0, speeds)
        };

        // auxiliary (A, B) subsystem
        let sten = |slot: usize| -> [f64; 4] { std::array::from_fn(|s| rec.cells[line.at(ip - 2 + s as isize)][slot]) };
        let (a_l, a_r) = reconstruct_scalar(sten(SLOT_A), scheme.limiter.theta());
        let (b_l, b_r) = reconstruct_scalar(sten(SLOT_B), scheme.limiter.theta());
        let tdiff = |p: isize| -> f64 {
            let c = line.at(p);
            (rec.prim[c + line.cross].0[t_slot] - rec.prim[c - line.cross].0[t_slot]) / (2.0 * line.cross_h)
        };
        let d = 0.5 * (tdiff(ip - 1) + tdiff(ip));
        let ab_l = AugPair { a: a_l, b: b_l };
        let ab_r = AugPair { a: a_r, b: b_r };
        let (fa_l, fa_r) = match aux_dir {
            Direction::X => (aux_flux_x(vu, ab_l, d), aux_flux_x(vl, ab_r, d)),
            Direction::Y => (aux_flux_y(vu, ab_l, d), aux_flux_y(vl, ab_r, d)),
        };
        let fa = cu_aux_flux(&fa_l, &fa_r, &[a_l, b_l], &[a_r, b_r], speeds);

        let mut c = [0.0; NVAR];
        c[..8].copy_from_slice(&f);
        c[SLOT_A] = fa[0];
        c[SLOT_B] = fa[1];
        out.push(c);
    }
    Ok((out, max_speed))
}

/// Evaluates the time derivative of the cell averages into `out`.
pub fn rhs(cells: &[CellVec], grid: &Grid2D, scheme: &Scheme, out: &mut [CellVec]) -> Result<RhsInfo, MhdError> {
    let (nx, ny) = (grid.nx, grid.ny);
    assert_eq!(cells.len(), nx * ny);
    assert_eq!(out.len(), nx * ny);
    let rec = reconstruct(cells, grid, scheme)?;
    let nxp = rec.nxp;
    let (dx, dy) = (grid.dx(), grid.dy());

    let xs: Vec<(Vec<CellVec>, f64)> = (0..ny)
        .into_par_iter()
        .map(|k| {
            let line = Line {
                dir: Direction::X,
                n: nx,
                origin: rec.at(GHOST, k + GHOST),
                stride: 1,
                cross: nxp,
                cross_h: dy,
            };
            line_fluxes(&rec, &line, scheme)
        })
        .collect::<Result<_, _>>()?;
    let ys: Vec<(Vec<CellVec>, f64)> = (0..nx)
        .into_par_iter()
        .map(|j| {
            let line = Line {
                dir: Direction::Y,
                n: ny,
                origin: rec.at(j + GHOST, GHOST),
                stride: nxp,
                cross: 1,
                cross_h: dx,
            };
            line_fluxes(&rec, &line, scheme)
        })
        .collect::<Result<_, _>>()?;

    out.par_chunks_mut(nx).enumerate().for_each(|(k, row)| {
        let fx = &xs[k].0;
        for (j, o) in row.iter_mut().enumerate() {
            let fy = &ys[j].0;
            for m in 0..NVAR {
                o[m] = -(fx[j + 1][m] - fx[j][m]) / dx - (fy[k + 1][m] - fy[k][m]) / dy;
            }
        }
    });

    let area = grid.cell_area();
    Ok(RhsInfo {
        max_speed_x: xs.iter().map(|r| r.1).fold(0.0, f64::max),
        max_speed_y: ys.iter().map(|r| r.1).fold(0.0, f64::max),
        div_l1: rec.div.iter().map(|d| d.abs()).sum::<f64>() * area,
        div_linf: rec.div.iter().map(|d| d.abs()).fold(0.0, f64::max),
    })
}

/// Per-cell discrete divergence of the (corrected or uncorrected, according
/// to the scheme) point values of `cells`.
pub fn discrete_divergence(cells: &[CellVec], grid: &Grid2D, scheme: &Scheme) -> Result<Vec<f64>, MhdError> {
    Ok(reconstruct(cells, grid, scheme)?.div)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reconstruction::SlopeLimiterConfig;
    use crate::solver::field::AugField;
    use crate::solver::{BcKind, BoundaryCondition, SchemeVariant};
    use crate::state::GasModel;

    fn scheme(variant: SchemeVariant, bc: BcKind) -> Scheme {
        Scheme::new(
            variant,
            GasModel::new(5.0 / 3.0).unwrap(),
            SlopeLimiterConfig::new(1.3).unwrap(),
            BoundaryCondition::uniform(bc),
        )
    }

    #[test]
    fn uniform_state_is_steady() {
        let grid = Grid2D::new(6, 5, (0.0, 1.0), (0.0, 1.0)).unwrap();
        for variant in SchemeVariant::ALL {
            let s = scheme(variant, BcKind::Periodic);
            let f = AugField::from_fn(grid, &s.gas, |_, _| {
                (PrimState([1.2, 0.3, -0.2, 0.1, 0.8, 0.6, -0.4, 0.2]), AugPair::default())
            })
            .unwrap();
            let mut out = vec![[0.0; NVAR]; grid.num_cells()];
            let info = rhs(&f.cells, &grid, &s, &mut out).unwrap();
            assert!(out.iter().flatten().all(|x| x.abs() < 1e-13), "{variant}");
            assert!(info.max_speed_x > 0.0 && info.div_linf == 0.0);
        }
    }

    #[test]
    fn admissibility_error_carries_location() {
        let grid = Grid2D::new(4, 4, (0.0, 1.0), (0.0, 1.0)).unwrap();
        let s = scheme(SchemeVariant::LcdPccu, BcKind::Periodic);
        let mut f = AugField::from_fn(grid, &s.gas, |_, _| {
            (PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]), AugPair::default())
        })
        .unwrap();
        let i = f.index(2, 1);
        f.cells[i][idx::EN] = -1.0;
        let mut out = vec![[0.0; NVAR]; 16];
        match rhs(&f.cells, &grid, &s, &mut out) {
            Err(MhdError::Inadmissible { j, k, .. }) => assert_eq!((j, k), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
        let s = s.with_floor(true);
        assert!(rhs(&f.cells, &grid, &s, &mut out).is_ok());
    }
}
