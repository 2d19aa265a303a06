use nalgebra::{DMatrix, DVector};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::interval::quadratic_form;
use super::{Dimension, FrameMap, KinematicsError, SpeedOfLight};
use crate::tolerance::CONE_TOL;

/// Verdict of [`classify_cone_preserver`].
///
/// `lambda` is the positive factor relating the pulled-back form to the
/// original: `+lambda` for conformal Lorentz maps, `-lambda` for sign flips.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "class", rename_all = "kebab-case")]
pub enum ConePreserver {
    ConformalLorentz { lambda: f64 },
    SignFlip { lambda: f64 },
    NotConePreserving,
}

impl ConePreserver {
    pub fn preserves_cone(&self) -> bool {
        !matches!(self, ConePreserver::NotConePreserving)
    }
}

fn minkowski_form(dim: Dimension, c: SpeedOfLight) -> DMatrix<f64> {
    let mut g = DMatrix::identity(dim.len(), dim.len());
    g[(0, 0)] = -c.value() * c.value();
    g
}

/// The quadratic form `L^T G L` obtained by pulling the Minkowski form `G`
/// back through the linear part of `m`.
pub fn pullback_form(m: &FrameMap) -> DMatrix<f64> {
    let g = minkowski_form(m.dim(), m.c());
    m.linear().transpose() * g * m.linear()
}

/// Decides cone preservation by exact matrix algebra: fits the pulled-back
/// form as a multiple of the Minkowski form and checks the residual.
pub fn classify_cone_preserver(m: &FrameMap) -> Result<ConePreserver, KinematicsError> {
    let rel_det = m.relative_determinant();
    if rel_det.abs() <= 1e-12 || !rel_det.is_finite() {
        return Err(KinematicsError::Singular(rel_det));
    }
    let g = minkowski_form(m.dim(), m.c());
    let pulled = pullback_form(m);
    let lambda = pulled.dot(&g) / g.dot(&g);
    let residual = (&pulled - &g * lambda).norm();
    if residual > CONE_TOL * pulled.norm() || lambda == 0.0 {
        return Ok(ConePreserver::NotConePreserving);
    }
    Ok(if lambda > 0.0 {
        ConePreserver::ConformalLorentz { lambda }
    } else {
        ConePreserver::SignFlip { lambda: -lambda }
    })
}

/// Sampled cross-check: pushes `samples` random null directions through the
/// linear part and reports whether every image is null within tolerance.
pub fn preserves_null_lines<R: Rng + ?Sized>(m: &FrameMap, samples: usize, rng: &mut R) -> bool {
    let c = m.c();
    (0..samples.max(1)).all(|_| {
        let dir = random_null_direction(m.dim(), c, rng);
        let image = m.apply_linear(&dir);
        let (value, scale) = quadratic_form(image.as_slice(), c);
        value.abs() <= CONE_TOL * scale
    })
}

pub(crate) fn random_null_direction<R: Rng + ?Sized>(
    dim: Dimension,
    c: SpeedOfLight,
    rng: &mut R,
) -> DVector<f64> {
    let dt = rng.gen_range(0.1..10.0) * if rng.gen::<bool>() { 1.0 } else { -1.0 };
    let reach = c.value() * dt;
    match dim {
        Dimension::OnePlusOne => {
            let side = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            DVector::from_vec(vec![dt, side * reach])
        }
        Dimension::OnePlusThree => {
            let n = random_unit_vector(rng);
            DVector::from_vec(vec![dt, reach * n[0], reach * n[1], reach * n[2]])
        }
    }
}

pub(crate) fn random_unit_vector<R: Rng + ?Sized>(rng: &mut R) -> [f64; 3] {
    loop {
        let v: [f64; 3] = [
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
            rng.gen_range(-1.0..1.0),
        ];
        let n2 = v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return [v[0] / n, v[1] / n, v[2] / n];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::Eta;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const C: SpeedOfLight = SpeedOfLight::NATURAL;

    #[test]
    fn boost_is_conformal_lorentz_with_unit_factor() {
        let m = FrameMap::boost(0.7, C).unwrap();
        match classify_cone_preserver(&m).unwrap() {
            ConePreserver::ConformalLorentz { lambda } => assert!((lambda - 1.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn superluminal_is_sign_flip() {
        for eta in Eta::BOTH {
            let m = FrameMap::superluminal(2.0, eta, C).unwrap();
            match classify_cone_preserver(&m).unwrap() {
                ConePreserver::SignFlip { lambda } => assert!((lambda - 1.0).abs() < 1e-12),
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn scaled_3d_boost_has_factor_four() {
        let m = FrameMap::boost_3d([0.2, -0.3, 0.4], C)
            .unwrap()
            .scaled(2.0)
            .unwrap();
        match classify_cone_preserver(&m).unwrap() {
            ConePreserver::ConformalLorentz { lambda } => assert!((lambda - 4.0).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn anisotropic_scaling_is_rejected() {
        let m = FrameMap::general(
            DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 2.0])),
            DVector::zeros(2),
            C,
        )
        .unwrap();
        assert_eq!(
            classify_cone_preserver(&m).unwrap(),
            ConePreserver::NotConePreserving
        );
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(!preserves_null_lines(&m, 16, &mut rng));
        // (1, 1) is null; its image (1, 2) has interval 4 - 1 = 3.
        let img = m.apply_linear(&DVector::from_vec(vec![1.0, 1.0]));
        assert_eq!(quadratic_form(img.as_slice(), C).0, 3.0);
    }

    #[test]
    fn sampled_check_accepts_both_branches() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for v in [0.0, 0.3, -0.95] {
            assert!(preserves_null_lines(
                &FrameMap::boost(v, C).unwrap(),
                200,
                &mut rng
            ));
        }
        for eta in Eta::BOTH {
            for v in [1.01, -4.0, 80.0] {
                let m = FrameMap::superluminal(v, eta, C).unwrap();
                assert!(preserves_null_lines(&m, 200, &mut rng));
            }
        }
    }

    #[test]
    fn null_directions_are_null() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let c = SpeedOfLight::new(2.5).unwrap();
        for dim in [Dimension::OnePlusOne, Dimension::OnePlusThree] {
            for _ in 0..100 {
                let d = random_null_direction(dim, c, &mut rng);
                let (v, s) = quadratic_form(d.as_slice(), c);
                assert!(v.abs() <= 1e-14 * s);
            }
        }
    }
}
