//! Properties of the semi-discrete operator and the time-marching driver.

#![allow(clippy::needless_range_loop)]

use std::f64::consts::PI;

use lcd_mhd::problems::problem;
use lcd_mhd::reconstruction::SlopeLimiterConfig;
use lcd_mhd::solver::field::{SLOT_A, SLOT_B};
use lcd_mhd::solver::{
    discrete_divergence, rhs, run, AugField, BcKind, BoundaryCondition, CellVec, Grid2D, RunSettings, Scheme,
    SchemeVariant, NVAR,
};
use lcd_mhd::state::{idx, AugPair, GasModel, PrimState};
use lcd_mhd::stepper::TimeControls;
use proptest::prelude::*;

fn periodic_scheme(variant: SchemeVariant, gamma: f64) -> Scheme {
    Scheme::new(
        variant,
        GasModel::new(gamma).unwrap(),
        SlopeLimiterConfig::new(1.3).unwrap(),
        BoundaryCondition::uniform(BcKind::Periodic),
    )
}

fn eval(field: &AugField, scheme: &Scheme) -> Vec<CellVec> {
    let mut out = vec![[0.0; NVAR]; field.cells.len()];
    rhs(&field.cells, &field.grid, scheme, &mut out).unwrap();
    out
}

/// A smooth periodic state depending on `s` only, with constant `b1`.
fn profile(s: f64) -> PrimState {
    let w = 2.0 * PI * s;
    PrimState([
        1.0 + 0.3 * w.sin(),
        0.4 * w.cos(),
        -0.2 + 0.1 * w.sin(),
        0.15 * (2.0 * w).cos(),
        1.0 + 0.2 * w.cos(),
        0.8,
        0.5 * w.sin(),
        0.3 + 0.1 * w.cos(),
    ])
}

fn transpose_cell(c: &CellVec) -> CellVec {
    let mut t = *c;
    t.swap(idx::MX, idx::MY);
    t.swap(idx::B1, idx::B2);
    t.swap(SLOT_A, SLOT_B);
    t
}

#[test]
fn transposed_data_gives_transposed_rhs() {
    let n = 16;
    let grid = Grid2D::new(n, n, (0.0, 1.0), (0.0, 1.0)).unwrap();
    for variant in SchemeVariant::ALL {
        let scheme = periodic_scheme(variant, 5.0 / 3.0);
        let gas = scheme.gas;
        let field = AugField::from_fn(grid, &gas, |x, y| {
            let v = profile(x + 0.3 * (2.0 * PI * y).sin());
            let a = 0.05 * (2.0 * PI * (x - y)).cos();
            (v, AugPair { a, b: -a })
        })
        .unwrap();
        let mut transposed = field.clone();
        for k in 0..n {
            for j in 0..n {
                transposed.cells[k * n + j] = transpose_cell(&field.cells[j * n + k]);
            }
        }
        let l = eval(&field, &scheme);
        let lt = eval(&transposed, &scheme);
        let mut worst: f64 = 0.0;
        for k in 0..n {
            for j in 0..n {
                let expect = transpose_cell(&l[j * n + k]);
                for m in 0..NVAR {
                    worst = worst.max((lt[k * n + j][m] - expect[m]).abs());
                }
            }
        }
        assert!(worst < 1e-11, "{variant}: transposition defect {worst:e}");
    }
}

#[test]
fn data_constant_in_y_stays_constant_in_y() {
    let (nx, ny) = (24, 4);
    let grid = Grid2D::new(nx, ny, (0.0, 1.0), (0.0, 0.25)).unwrap();
    for variant in SchemeVariant::ALL {
        let scheme = periodic_scheme(variant, 1.4);
        let field = AugField::from_fn(grid, &scheme.gas, |x, _| (profile(x), AugPair::default())).unwrap();
        let l = eval(&field, &scheme);
        // the y-flux differences vanish, so every row sees the same x-update
        for k in 1..ny {
            for j in 0..nx {
                for m in 0..NVAR {
                    let d = (l[k * nx + j][m] - l[j][m]).abs();
                    assert!(d <= 1e-13, "{variant}: row {k} cell {j} slot {m} differs by {d:e}");
                }
            }
        }
        // and the b1 equation is steady: F has a zero b1 slot and the path
        // term for a constant b1 vanishes
        for c in &l {
            assert!(c[idx::B1].abs() <= 1e-13);
        }
    }
}

#[test]
fn constant_field_and_velocity_keep_aux_variables_at_zero() {
    let grid = Grid2D::new(12, 10, (0.0, 1.0), (0.0, 1.0)).unwrap();
    for variant in SchemeVariant::ALL {
        let scheme = periodic_scheme(variant, 5.0 / 3.0);
        let field = AugField::from_fn(grid, &scheme.gas, |x, y| {
            let rho = 1.0 + 0.5 * (2.0 * PI * x).sin() * (2.0 * PI * y).cos();
            (
                PrimState([rho, 0.3, -0.2, 0.1, 1.0, 0.7, -0.4, 0.2]),
                AugPair::default(),
            )
        })
        .unwrap();
        for c in eval(&field, &scheme) {
            assert!(c[SLOT_A].abs() <= 1e-13 && c[SLOT_B].abs() <= 1e-13);
        }
    }
}

#[test]
fn zero_final_time_returns_initial_field() {
    let spec = problem("orszag_tang").unwrap();
    let f0 = spec.initial_field(8, 8).unwrap();
    let settings = RunSettings {
        scheme: spec.scheme(SchemeVariant::LcdPccu),
        controls: TimeControls::new(0.25, 0.0, 1e-12).unwrap(),
        snapshot_times: vec![],
    };
    let out = run(f0.clone(), &settings).unwrap();
    assert_eq!(out.steps, 0);
    assert_eq!(out.field, f0);
}

#[test]
fn snapshots_land_on_requested_times() {
    let spec = problem("alfven").unwrap();
    let settings = RunSettings {
        scheme: spec.scheme(SchemeVariant::Pccu),
        controls: TimeControls::new(0.25, 0.1, 1e-12).unwrap(),
        snapshot_times: vec![0.05, 0.025],
    };
    let mut seen = Vec::new();
    lcd_mhd::solver::run::run_with(spec.initial_field(8, 8).unwrap(), &settings, |t, _| {
        seen.push(t);
        Ok(())
    })
    .unwrap();
    assert_eq!(seen, vec![0.025, 0.05, 0.1]);
}

#[test]
fn uncorrected_variant_has_larger_divergence() {
    let spec = problem("alfven").unwrap();
    let mut finals = Vec::new();
    for variant in [SchemeVariant::LcdPccu, SchemeVariant::LcdPccuUncorrected] {
        let settings = RunSettings {
            scheme: spec.scheme(variant),
            controls: TimeControls::new(0.25, 0.2, 1e-12).unwrap(),
            snapshot_times: vec![],
        };
        finals.push(run(spec.initial_field(16, 16).unwrap(), &settings).unwrap().final_divergence.l1);
    }
    assert!(finals[1] > finals[0], "{finals:?}");
}

#[test]
fn corrected_divergence_vanishes_for_initial_data() {
    // b = curl of psi = sin(2 pi x) sin(2 pi y) / (2 pi), A = (b1)_x, B = -A
    let grid = Grid2D::new(20, 20, (0.0, 1.0), (0.0, 1.0)).unwrap();
    let scheme = periodic_scheme(SchemeVariant::LcdPccu, 5.0 / 3.0);
    let f = AugField::from_fn(grid, &scheme.gas, |x, y| {
        let (wx, wy) = (2.0 * PI * x, 2.0 * PI * y);
        let b1 = wx.sin() * wy.cos();
        let b2 = -wx.cos() * wy.sin();
        let a = 2.0 * PI * wx.cos() * wy.cos();
        (PrimState([1.0, 0.1, 0.2, 0.0, 1.0, b1, b2, 0.3]), AugPair { a, b: -a })
    })
    .unwrap();
    let div = discrete_divergence(&f.cells, &f.grid, &scheme).unwrap();
    let worst = div.iter().fold(0.0_f64, |m, d| m.max(d.abs()));
    assert!(worst <= 1e-12 * f.max_abs_b(), "{worst:e}");
    let uncorrected = Scheme {
        variant: SchemeVariant::LcdPccuUncorrected,
        ..scheme
    };
    let div = discrete_divergence(&f.cells, &f.grid, &uncorrected).unwrap();
    assert!(div.iter().any(|d| d.abs() > 1e-3));
}

fn random_field(seed: [f64; 6], a_amp: f64, n: usize) -> (AugField, Scheme) {
    let grid = Grid2D::new(n, n, (0.0, 1.0), (0.0, 1.0)).unwrap();
    let scheme = periodic_scheme(SchemeVariant::LcdPccu, 5.0 / 3.0);
    let field = AugField::from_fn(grid, &scheme.gas, |x, y| {
        let wx = 2.0 * PI * x;
        let wy = 2.0 * PI * y;
        let v = PrimState([
            1.0 + 0.5 * seed[0] * (wx + wy).sin(),
            seed[1] * wy.cos(),
            seed[2] * wx.sin(),
            0.1,
            1.0 + 0.5 * seed[3] * wx.cos(),
            0.5 + seed[4] * wy.sin(),
            -0.3 + seed[5] * wx.cos(),
            0.2,
        ]);
        let a = a_amp * (wx - 2.0 * wy).sin();
        (v, AugPair { a, b: -a })
    })
    .unwrap();
    (field, scheme)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn mass_and_aux_sum_are_preserved(
        s0 in -0.9f64..0.9, s1 in -0.5f64..0.5, s2 in -0.5f64..0.5,
        s3 in -0.9f64..0.9, s4 in -0.5f64..0.5, s5 in -0.5f64..0.5,
        a_amp in -1.0f64..1.0,
        variant in prop::sample::select(SchemeVariant::ALL.to_vec()),
    ) {
        let (field, mut scheme) = random_field([s0, s1, s2, s3, s4, s5], a_amp, 10);
        scheme.variant = variant;
        let settings = RunSettings {
            scheme,
            controls: TimeControls::new(0.25, 0.05, 1e-12).unwrap(),
            snapshot_times: vec![],
        };
        let out = run(field, &settings).unwrap();
        prop_assert!(out.diagnostics.mass_drift() <= 1e-12);
        for c in &out.field.cells {
            prop_assert!((c[SLOT_A] + c[SLOT_B]).abs() <= 1e-13);
        }
    }

    #[test]
    fn uniform_states_are_steady(
        rho in 0.1f64..10.0, p in 0.1f64..10.0,
        u in -2.0f64..2.0, v in -2.0f64..2.0, w in -1.0f64..1.0,
        b1 in -2.0f64..2.0, b2 in -2.0f64..2.0, b3 in -2.0f64..2.0,
        variant in prop::sample::select(SchemeVariant::ALL.to_vec()),
    ) {
        let grid = Grid2D::new(6, 5, (0.0, 1.0), (0.0, 2.0)).unwrap();
        let scheme = periodic_scheme(variant, 1.4);
        let field = AugField::from_fn(grid, &scheme.gas, |_, _| {
            (PrimState([rho, u, v, w, p, b1, b2, b3]), AugPair::default())
        }).unwrap();
        for c in eval(&field, &scheme) {
            for m in 0..NVAR {
                prop_assert!(c[m].abs() <= 1e-13 * (1.0 + rho * (u * u + v * v) + p + b1 * b1 + b2 * b2 + b3 * b3));
            }
        }
    }
}
