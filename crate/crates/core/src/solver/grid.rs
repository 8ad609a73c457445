use crate::error::MhdError;

/// Uniform Cartesian grid of `nx * ny` cells.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    pub nx: usize,
    pub ny: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, x: (f64, f64), y: (f64, f64)) -> Result<Self, MhdError> {
        if nx == 0 || ny == 0 {
            return Err(MhdError::Config(format!("grid needs at least one cell per direction, got {nx}x{ny}")));
        }
        if !(x.1 > x.0) || !(y.1 > y.0) || !(x.0.is_finite() && x.1.is_finite() && y.0.is_finite() && y.1.is_finite()) {
            return Err(MhdError::Config(format!("invalid domain {x:?} x {y:?}")));
        }
        Ok(Self {
            nx,
            ny,
            x_min: x.0,
            x_max: x.1,
            y_min: y.0,
            y_max: y.1,
        })
    }

    pub fn dx(&self) -> f64 {
        (self.x_max - self.x_min) / self.nx as f64
    }

    pub fn dy(&self) -> f64 {
        (self.y_max - self.y_min) / self.ny as f64
    }

    pub fn cell_area(&self) -> f64 {
        self.dx() * self.dy()
    }

    /// Cell-centre abscissa `x_j`.
    pub fn x_center(&self, j: usize) -> f64 {
        self.x_min + (j as f64 + 0.5) * self.dx()
    }

    pub fn y_center(&self, k: usize) -> f64 {
        self.y_min + (k as f64 + 0.5) * self.dy()
    }

    pub fn num_cells(&self) -> usize {
        self.nx * self.ny
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spacing_and_centres() {
        let g = Grid2D::new(200, 2, (-1.0, 1.0), (-0.01, 0.01)).unwrap();
        assert_eq!(g.dx(), 0.01);
        assert_eq!(g.dy(), 0.01);
        assert!((g.x_center(0) + 0.995).abs() < 1e-15);
        assert!((g.y_center(1) - 0.005).abs() < 1e-15);
        assert!(Grid2D::new(0, 2, (0.0, 1.0), (0.0, 1.0)).is_err());
        assert!(Grid2D::new(2, 2, (1.0, 1.0), (0.0, 1.0)).is_err());
    }
}
