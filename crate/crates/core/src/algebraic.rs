//! Pisot and Salem classification of monic integer polynomials.
//!
//! The only Bernoulli convolutions known to satisfy the asymptotically weak
//! separation condition have `1/rho` Pisot or Salem, so a polynomial with
//! such a root is what certifies the coverage lower bounds.
//!
//! Irreducibility is not checked: callers are expected to pass the minimal
//! polynomial.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use crate::{Error, Result};

pub const MAX_DEGREE: usize = 64;
/// Distance from the unit circle below which a conjugate counts as unimodular.
pub const UNIMODULAR_TOL: f64 = 1e-9;
/// Default Newton polishing tolerance on root positions.
pub const POLISH_TOL: f64 = 1e-12;
/// Largest `|P(1/rho)|` accepted by [`certify_rho`].
pub const CERTIFY_TOL: f64 = 1e-9;
const REAL_TOL: f64 = 1e-9;

/// Monic integer polynomial, coefficients stored highest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<i64>) -> Result<Self> {
        let degree = coeffs.len().saturating_sub(1);
        if degree < 2 {
            return Err(Error::InvalidPolynomial(format!("degree {degree} < 2")));
        }
        if degree > MAX_DEGREE {
            return Err(Error::InvalidPolynomial(format!("degree {degree} > {MAX_DEGREE}")));
        }
        if coeffs[0] != 1 {
            return Err(Error::InvalidPolynomial(format!("leading coefficient {} is not 1", coeffs[0])));
        }
        if coeffs[degree] == 0 {
            return Err(Error::InvalidPolynomial("constant term is 0".into()));
        }
        Ok(IntPolynomial { coeffs })
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c as f64)
    }

    fn eval_with_derivative(&self, z: Complex<f64>) -> (Complex<f64>, Complex<f64>) {
        let mut p = Complex::new(0.0, 0.0);
        let mut dp = Complex::new(0.0, 0.0);
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + Complex::new(c as f64, 0.0);
        }
        (p, dp)
    }

    /// All complex roots: companion-matrix eigenvalues polished by Newton's
    /// method until the step falls below `tol` (relative to `max(1, |z|)`).
    pub fn roots(&self, tol: f64) -> Vec<Complex<f64>> {
        let d = self.degree();
        let mut companion = DMatrix::<f64>::zeros(d, d);
        for j in 0..d {
            companion[(0, j)] = -(self.coeffs[j + 1] as f64);
        }
        for i in 1..d {
            companion[(i, i - 1)] = 1.0;
        }
        companion
            .complex_eigenvalues()
            .iter()
            .map(|&z| self.polish(z, tol))
            .collect()
    }

    fn polish(&self, mut z: Complex<f64>, tol: f64) -> Complex<f64> {
        let mut best = z;
        let mut best_residual = self.eval_with_derivative(z).0.norm();
        for _ in 0..100 {
            let (p, dp) = self.eval_with_derivative(z);
            if p.norm() == 0.0 || dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            z -= step;
            let residual = self.eval_with_derivative(z).0.norm();
            if residual < best_residual {
                best = z;
                best_residual = residual;
            }
            if step.norm() <= tol * z.norm().max(1.0) {
                break;
            }
        }
        best
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for IntPolynomial {
    type Err = Error;

    /// Comma-separated coefficients, highest degree first: `"1,0,-1,-1"`.
    fn from_str(s: &str) -> Result<Self> {
        let coeffs = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|e| Error::InvalidPolynomial(format!("{s:?}: {e}")))?;
        IntPolynomial::new(coeffs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum NumberKind {
    Pisot,
    Salem,
    Neither,
}

impl NumberKind {
    pub fn name(self) -> &'static str {
        match self {
            NumberKind::Pisot => "Pisot",
            NumberKind::Salem => "Salem",
            NumberKind::Neither => "Neither",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub kind: NumberKind,
    /// Largest real root greater than 1, if any.
    pub dominant_root: Option<f64>,
    pub reciprocal: Option<f64>,
    /// Moduli of the remaining roots, descending.
    pub conjugate_moduli: Vec<f64>,
    /// Number of remaining roots within [`UNIMODULAR_TOL`] of the unit circle.
    pub unimodular: usize,
}

pub fn classify(poly: &IntPolynomial) -> Classification {
    classify_with_tolerance(poly, POLISH_TOL)
}

pub fn classify_with_tolerance(poly: &IntPolynomial, tol: f64) -> Classification {
    let roots = poly.roots(tol);
    let dominant = roots
        .iter()
        .enumerate()
        .filter(|(_, z)| z.im.abs() <= REAL_TOL * z.norm().max(1.0) && z.re > 1.0 + UNIMODULAR_TOL)
        .max_by(|a, b| a.1.re.total_cmp(&b.1.re));
    let Some((index, root)) = dominant else {
        let mut moduli: Vec<f64> = roots.iter().map(|z| z.norm()).collect();
        moduli.sort_by(|a, b| b.total_cmp(a));
        return Classification {
            kind: NumberKind::Neither,
            dominant_root: None,
            reciprocal: None,
            unimodular: moduli.iter().filter(|m| (*m - 1.0).abs() <= UNIMODULAR_TOL).count(),
            conjugate_moduli: moduli,
        };
    };
    let beta = root.re;
    let mut moduli: Vec<f64> = roots
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != index)
        .map(|(_, z)| z.norm())
        .collect();
    moduli.sort_by(|a, b| b.total_cmp(a));
    let unimodular = moduli.iter().filter(|m| (*m - 1.0).abs() <= UNIMODULAR_TOL).count();
    let kind = if moduli.iter().all(|&m| m < 1.0 - UNIMODULAR_TOL) {
        NumberKind::Pisot
    } else if moduli.iter().all(|&m| m <= 1.0 + UNIMODULAR_TOL) && unimodular > 0 {
        NumberKind::Salem
    } else {
        NumberKind::Neither
    };
    Classification {
        kind,
        dominant_root: Some(beta),
        reciprocal: Some(1.0 / beta),
        conjugate_moduli: moduli,
        unimodular,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub awsc_known: bool,
    pub kind: Option<NumberKind>,
    pub note: String,
}

/// Whether `rho` is known to give the asymptotically weak separation
/// condition: `1/rho` must be a root of `poly` and `poly` Pisot or Salem.
pub fn certify_rho(rho: f64, poly: Option<&IntPolynomial>) -> Certificate {
    let Some(poly) = poly else {
        return Certificate {
            awsc_known: false,
            kind: None,
            note: "no algebraic certificate supplied".into(),
        };
    };
    let class = classify(poly);
    if class.kind == NumberKind::Neither {
        return Certificate {
            awsc_known: false,
            kind: Some(class.kind),
            note: format!("{poly} is neither Pisot nor Salem"),
        };
    }
    let residual = poly.eval(1.0 / rho).abs();
    if !(residual <= CERTIFY_TOL) {
        return Certificate {
            awsc_known: false,
            kind: Some(class.kind),
            note: format!("1/rho is not a root of {poly}: |P(1/rho)| = {residual:e}"),
        };
    }
    Certificate {
        awsc_known: true,
        kind: Some(class.kind),
        note: format!("1/rho is a {} number, root of {poly}", class.kind.name()),
    }
}

/// Named Pisot and Salem numbers, as (label, polynomial highest degree first).
pub const KNOWN_NUMBERS: [(&str, &[i64]); 6] = [
    ("golden ratio", &[1, -1, -1]),
    ("smallest Pisot (plastic) number", &[1, 0, -1, -1]),
    ("supergolden ratio", &[1, -1, 0, -1]),
    ("Pisot root of x^4-x^3-1", &[1, -1, 0, 0, -1]),
    ("Lehmer's number", &[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]),
    ("smallest Salem number of degree 4", &[1, -1, -1, -1, 1]),
];

/// Label of the known number whose reciprocal is within `tol` of `rho`.
pub fn known_label(rho: f64, tol: f64) -> Option<&'static str> {
    KNOWN_NUMBERS.iter().find_map(|&(label, coeffs)| {
        let poly = IntPolynomial::new(coeffs.to_vec()).ok()?;
        let beta = classify(&poly).dominant_root?;
        ((1.0 / beta - rho).abs() <= tol).then_some(label)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn poly(c: &[i64]) -> IntPolynomial {
        IntPolynomial::new(c.to_vec()).unwrap()
    }

    const LEHMER: [i64; 11] = [1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1];

    #[test]
    fn rejects_bad_input() {
        assert!(IntPolynomial::new(vec![2, 0, -1]).is_err());
        assert!(IntPolynomial::new(vec![1, -1]).is_err());
        assert!(IntPolynomial::new(vec![1, 1, 0]).is_err());
        assert!(IntPolynomial::new(vec![1; 66]).is_err());
        assert!("1,x,2".parse::<IntPolynomial>().is_err());
        assert_eq!("1, 0,-1,-1".parse::<IntPolynomial>().unwrap(), poly(&[1, 0, -1, -1]));
    }

    #[test]
    fn plastic_number() {
        let c = classify(&poly(&[1, 0, -1, -1]));
        assert_eq!(c.kind, NumberKind::Pisot);
        assert!((c.dominant_root.unwrap() - 1.324718).abs() < 1e-6);
        assert!((c.reciprocal.unwrap() - 0.754877).abs() < 1e-6);
    }

    #[test]
    fn lehmer_is_salem_with_eight_unimodular_conjugates() {
        let c = classify(&poly(&LEHMER));
        assert_eq!(c.kind, NumberKind::Salem);
        assert!((c.dominant_root.unwrap() - 1.176280).abs() < 1e-6);
        assert!((c.reciprocal.unwrap() - 0.850137).abs() < 1e-6);
        assert_eq!(c.unimodular, 8);
    }

    #[test]
    fn neither_examples() {
        assert_eq!(classify(&poly(&[1, 0, -2])).kind, NumberKind::Neither);
        // No root greater than 1.
        assert_eq!(classify(&poly(&[1, 0, 1])).kind, NumberKind::Neither);
        // 3 + 2 sqrt 2 has conjugate 3 - 2 sqrt 2 < 1: Pisot.
        assert_eq!(classify(&poly(&[1, -6, 1])).kind, NumberKind::Pisot);
    }

    #[test]
    fn reciprocal_times_dominant_is_one() {
        for (_, c) in KNOWN_NUMBERS {
            let class = classify(&poly(c));
            assert_ne!(class.kind, NumberKind::Neither);
            assert!((class.reciprocal.unwrap() * class.dominant_root.unwrap() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn roots_satisfy_polynomial() {
        let p = poly(&LEHMER);
        for z in p.roots(POLISH_TOL) {
            assert!(p.eval_with_derivative(z).0.norm() < 1e-12);
        }
    }

    #[test]
    fn stable_under_tolerance_halving() {
        let factors: [&[i64]; 7] = [
            &[1, 0, -1, -1],
            &[1, -1, -1],
            &[1, 0, -2],
            &[1, -3, 1],
            &[1, -1, 0, -1],
            &[1, 2, 3],
            &[1, -1, -1, -1, 1],
        ];
        let mut cases = vec![poly(&[1, 0, -1, -1]), poly(&LEHMER)];
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let count = rng.random_range(1..=3);
            let mut product = vec![1i64];
            for _ in 0..count {
                let f = factors[rng.random_range(0..factors.len())];
                let mut next = vec![0i64; product.len() + f.len() - 1];
                for (i, &a) in product.iter().enumerate() {
                    for (j, &b) in f.iter().enumerate() {
                        next[i + j] += a * b;
                    }
                }
                product = next;
            }
            if product.len() > 2 {
                cases.push(poly(&product));
            }
        }
        for p in cases {
            assert_eq!(classify_with_tolerance(&p, 1e-12).kind, classify_with_tolerance(&p, 5e-13).kind, "{p}");
        }
    }

    #[test]
    fn certificates() {
        let plastic = poly(&[1, 0, -1, -1]);
        let rho = classify(&plastic).reciprocal.unwrap();
        assert!(certify_rho(rho, Some(&plastic)).awsc_known);
        let none = certify_rho(0.8, None);
        assert!(!none.awsc_known);
        assert_eq!(none.note, "no algebraic certificate supplied");
        assert!(!certify_rho(0.754877, Some(&poly(&[1, 0, -2]))).awsc_known);
        assert!(!certify_rho(0.8, Some(&plastic)).awsc_known);
        assert!(!certify_rho(f64::NAN, Some(&plastic)).awsc_known);
    }

    #[test]
    fn labels() {
        let golden = (5f64.sqrt() - 1.0) / 2.0;
        assert_eq!(known_label(golden, 1e-9), Some("golden ratio"));
        assert_eq!(known_label(0.8, 1e-9), None);
    }
}
