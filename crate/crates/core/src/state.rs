//! Conservative and primitive MHD states, the ideal-gas closure, and the
//! physical fluxes of the Godunov-Powell system augmented with the
//! derivative variables `A = (b1)_x` and `B = (b2)_y`.

use crate::error::MhdError;

/// Fixed-size state vector.
pub type Vec8 = [f64; 8];

/// Slot indices of the conservative vector `(rho, rho u, rho v, rho w, b1, b2, b3, E)`.
pub mod idx {
    pub const RHO: usize = 0;
    pub const MX: usize = 1;
    pub const MY: usize = 2;
    pub const MZ: usize = 3;
    pub const B1: usize = 4;
    pub const B2: usize = 5;
    pub const B3: usize = 6;
    pub const EN: usize = 7;
}

/// Slot indices of the primitive vector `(rho, u, v, w, p, b1, b2, b3)`.
pub mod pidx {
    pub const RHO: usize = 0;
    pub const U: usize = 1;
    pub const V: usize = 2;
    pub const W: usize = 3;
    pub const P: usize = 4;
    pub const B1: usize = 5;
    pub const B2: usize = 6;
    pub const B3: usize = 7;
}

/// Sweep direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    X,
    Y,
}

/// Conservative variables `U = (rho, rho u, rho v, rho w, b1, b2, b3, E)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConsState(pub Vec8);

/// Primitive variables `V = (rho, u, v, w, p, b1, b2, b3)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PrimState(pub Vec8);

/// Values of the derivative variables `A = (b1)_x`, `B = (b2)_y`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct AugPair {
    pub a: f64,
    pub b: f64,
}

/// Ideal-gas closure.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GasModel {
    gamma: f64,
}

impl GasModel {
    pub fn new(gamma: f64) -> Result<Self, MhdError> {
        if !(gamma > 1.0) || !gamma.is_finite() {
            return Err(MhdError::Config(format!("gamma must exceed 1, got {gamma}")));
        }
        Ok(Self { gamma })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// `n - gamma`, the shorthand used throughout the Jacobian entries.
    pub fn gamma_n(&self, n: u32) -> f64 {
        n as f64 - self.gamma
    }

    pub fn pressure(&self, u: &ConsState) -> f64 {
        let [rho, mx, my, mz, b1, b2, b3, en] = u.0;
        let kin = 0.5 * (mx * mx + my * my + mz * mz) / rho;
        let mag = 0.5 * (b1 * b1 + b2 * b2 + b3 * b3);
        (self.gamma - 1.0) * (en - kin - mag)
    }

    pub fn sound_speed(&self, v: &PrimState) -> f64 {
        (self.gamma * v.p() / v.rho()).sqrt()
    }
}

impl ConsState {
    pub fn rho(&self) -> f64 {
        self.0[idx::RHO]
    }
    pub fn energy(&self) -> f64 {
        self.0[idx::EN]
    }
    pub fn b(&self) -> [f64; 3] {
        [self.0[idx::B1], self.0[idx::B2], self.0[idx::B3]]
    }

    /// Swaps the x/y roles: `(rho u <-> rho v, b1 <-> b2)`.
    pub fn swap_xy(&self) -> Self {
        let mut s = self.0;
        s.swap(idx::MX, idx::MY);
        s.swap(idx::B1, idx::B2);
        Self(s)
    }

    pub fn midpoint(&self, other: &Self) -> Self {
        let mut m = [0.0; 8];
        for i in 0..8 {
            m[i] = 0.5 * (self.0[i] + other.0[i]);
        }
        Self(m)
    }
}

impl PrimState {
    pub fn rho(&self) -> f64 {
        self.0[pidx::RHO]
    }
    pub fn u(&self) -> f64 {
        self.0[pidx::U]
    }
    pub fn v(&self) -> f64 {
        self.0[pidx::V]
    }
    pub fn w(&self) -> f64 {
        self.0[pidx::W]
    }
    pub fn p(&self) -> f64 {
        self.0[pidx::P]
    }
    pub fn b1(&self) -> f64 {
        self.0[pidx::B1]
    }
    pub fn b2(&self) -> f64 {
        self.0[pidx::B2]
    }
    pub fn b3(&self) -> f64 {
        self.0[pidx::B3]
    }

    /// Normal velocity for a sweep direction.
    pub fn normal_velocity(&self, dir: Direction) -> f64 {
        match dir {
            Direction::X => self.u(),
            Direction::Y => self.v(),
        }
    }

    /// Swaps the x/y roles: `(u <-> v, b1 <-> b2)`.
    pub fn swap_xy(&self) -> Self {
        let mut s = self.0;
        s.swap(pidx::U, pidx::V);
        s.swap(pidx::B1, pidx::B2);
        Self(s)
    }

    /// Admissible means positive, finite density and pressure.
    pub fn check_admissible(&self) -> Result<(), MhdError> {
        if !(self.rho() > 0.0) || !self.rho().is_finite() {
            return Err(MhdError::NonPositiveDensity { rho: self.rho() });
        }
        if !(self.p() > 0.0) || !self.p().is_finite() {
            return Err(MhdError::NonPositivePressure { p: self.p() });
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }
}

/// Recovers `(rho, u, v, w, p, b)` from the conservative variables through
/// the ideal-gas EOS. Only the density is checked; a non-positive pressure
/// is returned as is and flagged by [`PrimState::check_admissible`].
pub fn cons_to_prim(u: &ConsState, gas: &GasModel) -> Result<PrimState, MhdError> {
    let rho = u.rho();
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(MhdError::NonPositiveDensity { rho });
    }
    let [_, mx, my, mz, b1, b2, b3, _] = u.0;
    let p = gas.pressure(u);
    Ok(PrimState([rho, mx / rho, my / rho, mz / rho, p, b1, b2, b3]))
}

/// `E = p/(gamma-1) + rho|u|^2/2 + |b|^2/2`.
pub fn prim_to_cons(v: &PrimState, gas: &GasModel) -> Result<ConsState, MhdError> {
    let [rho, u, vv, w, p, b1, b2, b3] = v.0;
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(MhdError::NonPositiveDensity { rho });
    }
    let en = p / (gas.gamma - 1.0)
        + 0.5 * rho * (u * u + vv * vv + w * w)
        + 0.5 * (b1 * b1 + b2 * b2 + b3 * b3);
    Ok(ConsState([rho, rho * u, rho * vv, rho * w, b1, b2, b3, en]))
}

/// Physical x-flux `F(U)`; the b1 slot is identically zero.
pub fn flux_x(u: &ConsState, gas: &GasModel) -> Result<Vec8, MhdError> {
    let v = cons_to_prim(u, gas)?;
    Ok(flux_x_prim(u, &v))
}

/// Physical y-flux `G(U)`; the b2 slot is identically zero.
pub fn flux_y(u: &ConsState, gas: &GasModel) -> Result<Vec8, MhdError> {
    let v = cons_to_prim(u, gas)?;
    Ok(flux_y_prim(u, &v))
}

/// `F(U)` with the primitive state already at hand.
pub fn flux_x_prim(cons: &ConsState, v: &PrimState) -> Vec8 {
    let [rho, u, vv, w, p, b1, b2, b3] = v.0;
    let en = cons.energy();
    let pt = p + 0.5 * (b1 * b1 + b2 * b2 + b3 * b3);
    let ub = u * b1 + vv * b2 + w * b3;
    [
        rho * u,
        rho * u * u + pt - b1 * b1,
        rho * u * vv - b1 * b2,
        rho * u * w - b1 * b3,
        0.0,
        u * b2 - vv * b1,
        u * b3 - w * b1,
        (en + pt) * u - ub * b1,
    ]
}

/// `G(U)` with the primitive state already at hand.
pub fn flux_y_prim(cons: &ConsState, v: &PrimState) -> Vec8 {
    let [rho, u, vv, w, p, b1, b2, b3] = v.0;
    let en = cons.energy();
    let pt = p + 0.5 * (b1 * b1 + b2 * b2 + b3 * b3);
    let ub = u * b1 + vv * b2 + w * b3;
    [
        rho * vv,
        rho * u * vv - b1 * b2,
        rho * vv * vv + pt - b2 * b2,
        rho * vv * w - b2 * b3,
        vv * b1 - u * b2,
        0.0,
        vv * b3 - w * b2,
        (en + pt) * vv - ub * b2,
    ]
}

pub fn flux_prim(cons: &ConsState, v: &PrimState, dir: Direction) -> Vec8 {
    match dir {
        Direction::X => flux_x_prim(cons, v),
        Direction::Y => flux_y_prim(cons, v),
    }
}

/// Godunov-Powell vector `q = -(0, b1, b2, b3, u, v, w, u.b)`. The
/// nonconservative matrices are `Q^x = q e_{b1}^T` and `Q^y = q e_{b2}^T`.
pub fn godunov_powell_q(u: &ConsState) -> Vec8 {
    let [rho, mx, my, mz, b1, b2, b3, _] = u.0;
    let (vx, vy, vz) = (mx / rho, my / rho, mz / rho);
    [
        0.0,
        -b1,
        -b2,
        -b3,
        -vx,
        -vy,
        -vz,
        -(vx * b1 + vy * b2 + vz * b3),
    ]
}

/// Auxiliary x-flux `(uA - b2 u_y, uB + b2 u_y)`.
pub fn aux_flux_x(v: &PrimState, ab: AugPair, u_y: f64) -> [f64; 2] {
    let u = v.u();
    let b2 = v.b2();
    [u * ab.a - b2 * u_y, u * ab.b + b2 * u_y]
}

/// Auxiliary y-flux `(vA + b1 v_x, vB - b1 v_x)`.
pub fn aux_flux_y(v: &PrimState, ab: AugPair, v_x: f64) -> [f64; 2] {
    let vv = v.v();
    let b1 = v.b1();
    [vv * ab.a + b1 * v_x, vv * ab.b - b1 * v_x]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gas(g: f64) -> GasModel {
        GasModel::new(g).unwrap()
    }

    #[test]
    fn brio_wu_left_state_energy() {
        let v = PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.75, 1.0, 0.0]);
        let u = prim_to_cons(&v, &gas(2.0)).unwrap();
        assert_eq!(u.energy(), 1.78125);
        let back = cons_to_prim(&u, &gas(2.0)).unwrap();
        assert_eq!(back.p(), 1.0);
        assert_eq!((back.u(), back.v(), back.w()), (0.0, 0.0, 0.0));
    }

    #[test]
    fn brio_wu_right_state_energy() {
        let v = PrimState([0.125, 0.0, 0.0, 0.0, 0.1, 0.75, -1.0, 0.0]);
        let u = prim_to_cons(&v, &gas(2.0)).unwrap();
        assert!((u.energy() - 0.88125).abs() < 1e-15);
    }

    #[test]
    fn unit_energy_construction() {
        let g = gas(1.4);
        let v = PrimState([1.0, 0.0, 0.0, 0.0, 0.4, 0.0, 0.0, 0.0]);
        assert!((prim_to_cons(&v, &g).unwrap().energy() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn zero_energy_gives_zero_pressure_and_is_flagged() {
        let u = ConsState([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        let v = cons_to_prim(&u, &gas(1.4)).unwrap();
        assert_eq!(v.p(), 0.0);
        assert!(matches!(
            v.check_admissible(),
            Err(MhdError::NonPositivePressure { .. })
        ));
    }

    #[test]
    fn non_positive_density_is_rejected() {
        let u = ConsState([-0.5, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0]);
        match cons_to_prim(&u, &gas(1.4)) {
            Err(MhdError::NonPositiveDensity { rho }) => assert_eq!(rho, -0.5),
            other => panic!("unexpected {other:?}"),
        }
        let v = PrimState([0.0, 0.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]);
        assert!(prim_to_cons(&v, &gas(1.4)).is_err());
    }

    #[test]
    fn gamma_must_exceed_one() {
        assert!(GasModel::new(1.0).is_err());
        assert!(GasModel::new(f64::NAN).is_err());
        assert_eq!(gas(5.0 / 3.0).gamma_n(2), 2.0 - 5.0 / 3.0);
    }

    #[test]
    fn flux_x_moving_gas() {
        let g = gas(2.0);
        let u = prim_to_cons(&PrimState([1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0]), &g).unwrap();
        assert_eq!(u.energy(), 1.5);
        let f = flux_x(&u, &g).unwrap();
        assert_eq!(f, [1.0, 2.0, 0.0, 0.0, 0.0, 0.0, 0.0, 2.5]);
    }

    #[test]
    fn static_gas_fluxes() {
        let g = gas(1.4);
        let u = prim_to_cons(&PrimState([2.0, 0.0, 0.0, 0.0, 0.7, 0.0, 0.0, 0.0]), &g).unwrap();
        let f = flux_x(&u, &g).unwrap();
        let gy = flux_y(&u, &g).unwrap();
        for (i, x) in f.iter().enumerate() {
            let p = if i == idx::MX { 0.7 } else { 0.0 };
            assert!((x - p).abs() < 1e-15);
        }
        for (i, x) in gy.iter().enumerate() {
            let p = if i == idx::MY { 0.7 } else { 0.0 };
            assert!((x - p).abs() < 1e-15);
        }
    }

    #[test]
    fn flux_y_is_swapped_flux_x() {
        let g = gas(5.0 / 3.0);
        let v = PrimState([1.3, 0.2, -0.7, 0.4, 0.9, 0.3, -1.1, 0.6]);
        let u = prim_to_cons(&v, &g).unwrap();
        let gy = flux_y(&u, &g).unwrap();
        let mut fx = flux_x(&u.swap_xy(), &g).unwrap();
        fx.swap(idx::MX, idx::MY);
        fx.swap(idx::B1, idx::B2);
        for i in 0..8 {
            assert!((gy[i] - fx[i]).abs() < 1e-14, "slot {i}");
        }
    }

    #[test]
    fn powell_vector() {
        let u = ConsState([1.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 100.0]);
        assert_eq!(
            godunov_powell_q(&u),
            [0.0, -4.0, -5.0, -6.0, -1.0, -2.0, -3.0, -32.0]
        );
        let still = ConsState([1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 7.0]);
        assert!(godunov_powell_q(&still).iter().all(|x| *x == 0.0));
        let mut other = u;
        other.0[idx::EN] = -3.0;
        assert_eq!(godunov_powell_q(&u), godunov_powell_q(&other));
    }

    #[test]
    fn aux_fluxes() {
        let v = PrimState([1.0, 2.0, 0.0, 0.0, 1.0, 0.0, 3.0, 0.0]);
        assert_eq!(aux_flux_x(&v, AugPair { a: 1.0, b: 0.0 }, 0.5), [0.5, 1.5]);
        let still = PrimState([1.0, 0.0, 0.0, 0.0, 1.0, 0.3, 3.0, 0.0]);
        assert_eq!(aux_flux_x(&still, AugPair { a: 1.0, b: 2.0 }, 0.0), [0.0, 0.0]);
        let f = aux_flux_y(&v, AugPair { a: 0.7, b: -0.7 }, 1.9);
        assert_eq!(f[0] + f[1], 0.0);
    }
}
