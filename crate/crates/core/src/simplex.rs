//! Barycentric grid over the 3-state simplex.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::population::{entropy_of, lambda0_of};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimplexPoint {
    pub s: [f64; 3],
    pub lambda0: f64,
    pub entropy: f64,
}

/// All points `(i, j, R - i - j) / R`, `i` outer and `j` inner, ascending.
///
/// Boundary points are included; zero coordinates contribute nothing.
pub fn simplex_grid(m: usize, resolution: usize) -> Result<Vec<SimplexPoint>> {
    if m != 3 {
        return Err(Error::Domain(format!(
            "simplex grid is only available for m = 3, got {m}"
        )));
    }
    if resolution < 2 {
        return Err(Error::Domain(format!(
            "resolution must be >= 2, got {resolution}"
        )));
    }
    let r = resolution as f64;
    let mut points = Vec::with_capacity((resolution + 1) * (resolution + 2) / 2);
    for i in 0..=resolution {
        for j in 0..=resolution - i {
            let s = [i as f64 / r, j as f64 / r, (resolution - i - j) as f64 / r];
            points.push(SimplexPoint {
                s,
                lambda0: lambda0_of(&s),
                entropy: entropy_of(&s),
            });
        }
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_other_shapes() {
        assert!(simplex_grid(4, 10).is_err());
        assert!(simplex_grid(3, 1).is_err());
    }

    #[test]
    fn grid_size_and_vertices() {
        let g = simplex_grid(3, 4).unwrap();
        assert_eq!(g.len(), 15);
        assert_eq!(g[0].s, [0.0, 0.0, 1.0]);
        assert_eq!(g[0].lambda0, 0.0);
        assert_eq!(g[0].entropy, 0.0);
        assert!(g
            .iter()
            .all(|p| (p.s.iter().sum::<f64>() - 1.0).abs() < 1e-15));
    }

    #[test]
    fn centre_point() {
        let g = simplex_grid(3, 3).unwrap();
        let c = g.iter().find(|p| p.s == [1.0 / 3.0; 3]).unwrap();
        assert!(c.lambda0.abs() < 1e-15);
        assert!((c.entropy - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn grid_maximum_below_analytic() {
        let g = simplex_grid(3, 200).unwrap();
        let max = g.iter().map(|p| p.lambda0).fold(f64::MIN, f64::max);
        assert!((0.75..=0.762).contains(&max), "{max}");
    }
}
