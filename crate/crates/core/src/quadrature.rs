//! Gauss-Legendre quadrature on the section parameter domain.
//!
//! A section is integrated over (xi, eta) in (0,1) x (-1,1). The xi points are
//! mapped from the standard interval so that no sample ever lands on xi = 0,
//! where the inverse Jacobian is singular.

/// One sample of a tensor-product rule.
#[derive(Debug, Clone, Copy)]
pub struct QuadPoint {
    pub xi: f64,
    pub eta: f64,
    /// Parametric weight; already contains both directions.
    pub weight: f64,
}

/// Integration rule selector for sectional stiffness terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadratureScheme {
    /// 2x2 Gauss-Legendre; exact for every stiffness integrand of the
    /// straight-edged linear section.
    Full,
    /// Single centroid point.
    Reduced,
    /// Full rule for membrane/bending terms, reduced rule for the shear term.
    SelectiveReduced,
}

impl QuadratureScheme {
    /// Rule used for membrane and bending stiffness.
    pub fn primary(self) -> &'static [QuadPoint] {
        match self {
            QuadratureScheme::Reduced => one_point(),
            _ => two_by_two(),
        }
    }

    /// Rule used for the transverse shear stiffness.
    pub fn shear(self) -> &'static [QuadPoint] {
        match self {
            QuadratureScheme::Full => two_by_two(),
            _ => one_point(),
        }
    }
}

const G1: f64 = 0.577_350_269_189_625_76; // 1/sqrt(3)

/// Tensor rule with `n` = 2 points per direction on (0,1) x (-1,1).
pub fn two_by_two() -> &'static [QuadPoint] {
    const XI_A: f64 = 0.5 * (1.0 - G1);
    const XI_B: f64 = 0.5 * (1.0 + G1);
    // xi weights are 0.5 each (interval length 1), eta weights 1.0 each.
    const PTS: [QuadPoint; 4] = [
        QuadPoint { xi: XI_A, eta: -G1, weight: 0.5 },
        QuadPoint { xi: XI_B, eta: -G1, weight: 0.5 },
        QuadPoint { xi: XI_A, eta: G1, weight: 0.5 },
        QuadPoint { xi: XI_B, eta: G1, weight: 0.5 },
    ];
    &PTS
}

/// Single-point rule at the parametric centroid.
pub fn one_point() -> &'static [QuadPoint] {
    const PTS: [QuadPoint; 1] = [QuadPoint { xi: 0.5, eta: 0.0, weight: 2.0 }];
    &PTS
}

/// 3x3 tensor rule, used for error-norm integration.
pub fn three_by_three() -> Vec<QuadPoint> {
    let g = (3.0f64 / 5.0).sqrt();
    let pts = [-g, 0.0, g];
    let wts = [5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0];
    let mut out = Vec::with_capacity(9);
    for (i, &gx) in pts.iter().enumerate() {
        for (j, &ge) in pts.iter().enumerate() {
            out.push(QuadPoint {
                xi: 0.5 * (1.0 + gx),
                eta: ge,
                weight: 0.5 * wts[i] * wts[j],
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn total_weight(pts: &[QuadPoint]) -> f64 {
        pts.iter().map(|p| p.weight).sum()
    }

    #[test]
    fn weights_sum_to_parametric_area() {
        assert!((total_weight(two_by_two()) - 2.0).abs() < 1e-15);
        assert!((total_weight(one_point()) - 2.0).abs() < 1e-15);
        assert!((total_weight(&three_by_three()) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn xi_points_strictly_positive() {
        for p in two_by_two().iter().chain(one_point()) {
            assert!(p.xi > 0.0 && p.xi < 1.0);
        }
        for p in three_by_three() {
            assert!(p.xi > 0.0 && p.xi < 1.0);
        }
    }

    #[test]
    fn two_point_rule_integrates_cubics() {
        // int_0^1 xi^3 dxi = 1/4, int_-1^1 eta^2 deta = 2/3
        let mut acc = 0.0;
        for p in two_by_two() {
            acc += p.weight * p.xi.powi(3) * p.eta.powi(2);
        }
        assert!((acc - 0.25 * (2.0 / 3.0)).abs() < 1e-15);
    }
}
