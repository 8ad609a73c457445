use serde::{Deserialize, Serialize};

use crate::error::MhdError;

/// Number of ghost layers on each side. Three are needed so that the slope
/// correction of the first ghost cell has reconstructed values on all faces.
pub const GHOST: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BcKind {
    Periodic,
    /// Zero-order extrapolation (copy of the nearest interior cell).
    Extrapolate,
}

/// Boundary kind on each side of the domain.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundaryCondition {
    pub west: BcKind,
    pub east: BcKind,
    pub south: BcKind,
    pub north: BcKind,
}

impl BoundaryCondition {
    pub fn new(west: BcKind, east: BcKind, south: BcKind, north: BcKind) -> Result<Self, MhdError> {
        let periodic = |k| k == BcKind::Periodic;
        if periodic(west) != periodic(east) || periodic(south) != periodic(north) {
            return Err(MhdError::Config("periodic boundaries must be paired with the opposite side".into()));
        }
        Ok(Self {
            west,
            east,
            south,
            north,
        })
    }

    pub fn uniform(kind: BcKind) -> Self {
        Self {
            west: kind,
            east: kind,
            south: kind,
            north: kind,
        }
    }

    pub fn is_fully_periodic(&self) -> bool {
        [self.west, self.east, self.south, self.north]
            .iter()
            .all(|k| *k == BcKind::Periodic)
    }
}

/// Source index in `0..n` for padded position `p` in `0..n + 2 GHOST`.
#[inline]
pub fn source_index(p: usize, n: usize, low: BcKind, high: BcKind) -> usize {
    let i = p as isize - GHOST as isize;
    let n_i = n as isize;
    if i < 0 {
        match low {
            BcKind::Periodic => (i.rem_euclid(n_i)) as usize,
            BcKind::Extrapolate => 0,
        }
    } else if i >= n_i {
        match high {
            BcKind::Periodic => (i.rem_euclid(n_i)) as usize,
            BcKind::Extrapolate => n - 1,
        }
    } else {
        i as usize
    }
}

/// Copies `interior` (`nx * ny` values, x fastest) into a padded array with
/// `GHOST` layers filled according to `bc`.
pub fn fill_ghosts<T: Copy>(interior: &[T], nx: usize, ny: usize, bc: &BoundaryCondition) -> Vec<T> {
    assert_eq!(interior.len(), nx * ny);
    let nxp = nx + 2 * GHOST;
    let nyp = ny + 2 * GHOST;
    let xs: Vec<usize> = (0..nxp).map(|p| source_index(p, nx, bc.west, bc.east)).collect();
    let mut out = Vec::with_capacity(nxp * nyp);
    for kp in 0..nyp {
        let k = source_index(kp, ny, bc.south, bc.north);
        let row = &interior[k * nx..(k + 1) * nx];
        out.extend(xs.iter().map(|&j| row[j]));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn periodic_ghosts_wrap() {
        let bc = BoundaryCondition::uniform(BcKind::Periodic);
        let data: Vec<usize> = (0..16).collect();
        let p = fill_ghosts(&data, 4, 4, &bc);
        let nxp = 4 + 2 * GHOST;
        // ghost(-1, 0) = interior(3, 0)
        assert_eq!(p[GHOST * nxp + GHOST - 1], 3);
        // ghost(0, -1) = interior(0, 3)
        assert_eq!(p[(GHOST - 1) * nxp + GHOST], 12);
        // corner (-3, -3) wraps to (1, 1)
        assert_eq!(p[0], 5);
    }

    #[test]
    fn extrapolated_ghosts_copy_edge() {
        let bc = BoundaryCondition::uniform(BcKind::Extrapolate);
        let data: Vec<usize> = (0..6).collect();
        let p = fill_ghosts(&data, 3, 2, &bc);
        let nxp = 3 + 2 * GHOST;
        for g in 0..GHOST {
            assert_eq!(p[GHOST * nxp + g], 0);
            assert_eq!(p[GHOST * nxp + GHOST + 3 + g], 2);
            assert_eq!(p[g * nxp + GHOST + 1], 1);
        }
    }

    #[test]
    fn filling_twice_is_idempotent() {
        let bc = BoundaryCondition::uniform(BcKind::Periodic);
        let data: Vec<f64> = (0..12).map(|i| i as f64 * 0.5).collect();
        let a = fill_ghosts(&data, 4, 3, &bc);
        let b = fill_ghosts(&data, 4, 3, &bc);
        assert_eq!(a, b);
    }

    #[test]
    fn mismatched_periodic_rejected() {
        assert!(BoundaryCondition::new(BcKind::Periodic, BcKind::Extrapolate, BcKind::Periodic, BcKind::Periodic).is_err());
        assert!(BoundaryCondition::new(BcKind::Periodic, BcKind::Periodic, BcKind::Extrapolate, BcKind::Extrapolate).is_ok());
    }
}
