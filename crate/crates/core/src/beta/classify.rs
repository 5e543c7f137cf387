//! Numeric Pisot/Salem classification. Not part of any certified check.

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;

use super::field::NumberField;
use super::poly::IntPoly;
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Classification {
    Pisot,
    Salem,
    Neither,
    BoundaryUnresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PisotCertificate {
    pub classification: Classification,
    pub beta: f64,
    /// `[lo, hi]` enclosures of the conjugate moduli.
    pub conjugate_moduli: Vec<(f64, f64)>,
    pub tolerance: f64,
}

/// Simultaneous Aberth iteration on the monic polynomial.
pub fn complex_roots(p: &IntPoly) -> Vec<Complex64> {
    let c: Vec<f64> = p
        .coeffs()
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    let n = c.len() - 1;
    let eval = |z: Complex64| {
        let mut v = Complex64::new(0.0, 0.0);
        let mut d = Complex64::new(0.0, 0.0);
        for &a in c.iter().rev() {
            d = d * z + v;
            v = v * z + a;
        }
        (v, d)
    };
    let radius = p.cauchy_bound().to_f64().unwrap_or(2.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            Complex64::from_polar(
                radius * 0.7,
                2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64,
            )
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / d;
            let repulse: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| 1.0 / (z[i] - z[j]))
                .sum();
            let w = ratio / (1.0 - ratio * repulse);
            z[i] -= w;
            moved = moved.max(w.norm());
        }
        if moved < 1e-17 {
            break;
        }
    }
    z
}

/// Radius `n |p(z)| / |p'(z)|` of a disc around `z` that contains a root.
fn inclusion_radius(p: &IntPoly, z: Complex64) -> f64 {
    let n = p.degree().unwrap_or(0) as f64;
    let mut v = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for a in p.coeffs().iter().rev() {
        let a = a.to_f64().unwrap_or(f64::NAN);
        d = d * z + v;
        v = v * z + a;
    }
    if v.norm() == 0.0 {
        return 4.0 * f64::EPSILON * z.norm().max(1.0);
    }
    n * v.norm() / d.norm() + 4.0 * f64::EPSILON * z.norm().max(1.0)
}

pub fn classify_pisot_salem(minpoly: &IntPoly, tol: f64) -> Result<PisotCertificate> {
    let l = minpoly.degree().unwrap_or(0);
    if l < 2 {
        return Err(Error::InvalidPolynomial(
            "classification needs degree at least 2".into(),
        ));
    }
    let field = NumberField::new(minpoly.clone())?;
    let beta = field.approx();
    let roots = complex_roots(minpoly);
    let own = roots
        .iter()
        .enumerate()
        .min_by(|a, b| (*a.1 - beta).norm().total_cmp(&(*b.1 - beta).norm()))
        .map(|(i, _)| i)
        .expect("degree at least 2");
    let conjugate_moduli: Vec<(f64, f64)> = roots
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != own)
        .map(|(_, &z)| {
            let r = inclusion_radius(minpoly, z);
            ((z.norm() - r).max(0.0), z.norm() + r)
        })
        .collect();
    let (inside, on, outside) = (1.0 - tol, 1.0 + tol, 1.0 + tol);
    let classification = if conjugate_moduli.iter().any(|&(lo, _)| lo > outside) {
        Classification::Neither
    } else if conjugate_moduli.iter().all(|&(_, hi)| hi < inside) {
        Classification::Pisot
    } else if conjugate_moduli
        .iter()
        .all(|&(lo, hi)| hi < inside || (lo >= inside && hi <= on))
    {
        Classification::Salem
    } else {
        Classification::BoundaryUnresolved
    };
    Ok(PisotCertificate {
        classification,
        beta,
        conjugate_moduli,
        tolerance: tol,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classify(c: &[i64]) -> Classification {
        classify_pisot_salem(&IntPoly::from_i64(c), DEFAULT_TOLERANCE)
            .unwrap()
            .classification
    }

    #[test]
    fn known_numbers() {
        assert_eq!(classify(&[-1, -1, 1]), Classification::Pisot);
        assert_eq!(classify(&[-1, -1, 0, 1]), Classification::Pisot);
        assert_eq!(classify(&[-1, -1, -1, 1]), Classification::Pisot);
        // X^2 - 3X + 1: conjugate 0.38
        assert_eq!(classify(&[1, -3, 1]), Classification::Pisot);
        // sqrt(2): conjugate -1.41
        assert_eq!(classify(&[-2, 0, 1]), Classification::Neither);
    }

    #[test]
    fn degree_four_salem() {
        let cert = classify_pisot_salem(&IntPoly::from_i64(&[1, -1, -1, -1, 1]), DEFAULT_TOLERANCE)
            .unwrap();
        assert_eq!(cert.classification, Classification::Salem);
        assert!((cert.beta - 1.7221).abs() < 1e-3);
        assert_eq!(cert.conjugate_moduli.len(), 3);
    }

    #[test]
    fn golden_conjugate() {
        let cert =
            classify_pisot_salem(&IntPoly::from_i64(&[-1, -1, 1]), DEFAULT_TOLERANCE).unwrap();
        let (lo, hi) = cert.conjugate_moduli[0];
        assert!(lo < 0.6181 && hi > 0.6180);
    }

    #[test]
    fn errors() {
        assert!(classify_pisot_salem(&IntPoly::from_i64(&[-3, 1]), DEFAULT_TOLERANCE).is_err());
        assert!(classify_pisot_salem(&IntPoly::from_i64(&[1, 0, 1]), DEFAULT_TOLERANCE).is_err());
    }
}
