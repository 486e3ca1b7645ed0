use rand::Rng as _;

use super::Graph;
use crate::error::{rejected, Result};

/// Target accuracy of the eigenvalue estimates.
pub const SPECTRAL_TOLERANCE: f64 = 1e-6;
const MAX_ITERATIONS: usize = 200_000;

/// Measured spectrum summary of a regular graph.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralCert {
    pub degree: usize,
    /// Largest |μ| over adjacency eigenvalues μ orthogonal to the all-ones vector.
    pub lambda: f64,
    /// Largest signed eigenvalue orthogonal to the all-ones vector.
    pub second_eigenvalue: f64,
    /// Residual-based error bound on `lambda`.
    pub tolerance: f64,
    pub iterations: usize,
}

fn adjacency_apply(nbrs: &[Vec<usize>], x: &[f64], out: &mut [f64]) {
    for (o, ns) in out.iter_mut().zip(nbrs) {
        *o = ns.iter().map(|&j| x[j]).sum();
    }
}

fn project_and_normalize(v: &mut [f64]) -> f64 {
    let mean = v.iter().sum::<f64>() / v.len() as f64;
    v.iter_mut().for_each(|x| *x -= mean);
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        v.iter_mut().for_each(|x| *x /= norm);
    }
    norm
}

/// Power iteration for the top eigenvalue of a symmetric PSD operator restricted to
/// the complement of the all-ones vector. Returns (Rayleigh quotient, residual, iterations).
fn power_iteration(
    n: usize,
    seed: u64,
    converged: impl Fn(f64, f64) -> bool,
    mut apply: impl FnMut(&[f64], &mut [f64]),
) -> (f64, f64, usize) {
    let mut rng = crate::rng(seed);
    let mut v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
    if project_and_normalize(&mut v) == 0.0 {
        return (0.0, 0.0, 0);
    }
    let mut w = vec![0.0; n];
    let mut rho = 0.0;
    let mut residual = f64::INFINITY;
    let mut iters = 0;
    while iters < MAX_ITERATIONS {
        iters += 1;
        apply(&v, &mut w);
        rho = v.iter().zip(&w).map(|(a, b)| a * b).sum::<f64>();
        residual = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (b - rho * a).powi(2))
            .sum::<f64>()
            .sqrt();
        if converged(rho, residual) {
            break;
        }
        std::mem::swap(&mut v, &mut w);
        if project_and_normalize(&mut v) == 0.0 {
            return (0.0, 0.0, iters);
        }
    }
    (rho, residual, iters)
}

/// Estimates the spectral certificate of a regular graph.
///
/// `lambda` is the square root of the top eigenvalue of A² on the complement of
/// the all-ones vector; `second_eigenvalue` is the top eigenvalue of A + D·I there,
/// shifted back by D.
pub fn spectral_certificate(g: &Graph, seed: u64) -> Result<SpectralCert> {
    let degree = g
        .regular_degree()
        .ok_or_else(|| rejected("spectral certificate needs a regular graph"))?;
    let n = g.n();
    if n < 2 {
        return Ok(SpectralCert {
            degree,
            lambda: 0.0,
            second_eigenvalue: 0.0,
            tolerance: 0.0,
            iterations: 0,
        });
    }
    let nbrs: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v)).collect();
    let d = degree as f64;

    let target = SPECTRAL_TOLERANCE * 0.1;
    let mut tmp = vec![0.0; n];
    let (rho, res, it1) = power_iteration(
        n,
        seed,
        |rho, res| res <= target * rho.max(1.0).sqrt(),
        |x, out| {
            adjacency_apply(&nbrs, x, &mut tmp);
            adjacency_apply(&nbrs, &tmp, out);
        },
    );
    let lambda = rho.max(0.0).sqrt().min(d);
    // |μ − ρ| ≤ res for some eigenvalue μ of A², so |√μ − λ| ≤ res / (√μ + λ).
    let tolerance = if lambda > 0.0 { res / lambda } else { res.sqrt() };

    let (rho2, _, it2) = power_iteration(
        n,
        seed.wrapping_add(1),
        |_, res| res <= target,
        |x, out| {
            adjacency_apply(&nbrs, x, out);
            out.iter_mut().zip(x).for_each(|(o, xi)| *o += d * xi);
        },
    );
    Ok(SpectralCert {
        degree,
        lambda,
        second_eigenvalue: rho2 - d,
        tolerance,
        iterations: it1 + it2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_lambda_is_one() {
        for n in 3..9 {
            let c = spectral_certificate(&Graph::complete(n), 1).unwrap();
            assert!((c.lambda - 1.0).abs() <= SPECTRAL_TOLERANCE, "{c:?}");
            assert!((c.second_eigenvalue + 1.0).abs() <= SPECTRAL_TOLERANCE, "{c:?}");
        }
    }

    #[test]
    fn cycle_spectrum() {
        use std::f64::consts::PI;
        for n in [5usize, 6, 7, 8, 9, 12] {
            let c = spectral_certificate(&Graph::cycle(n).unwrap(), 3).unwrap();
            let second = 2.0 * (2.0 * PI / n as f64).cos();
            assert!((c.second_eigenvalue - second).abs() <= 1e-5, "n={n} {c:?}");
            let lambda = if n % 2 == 0 { 2.0 } else { 2.0 * (PI / n as f64).cos() };
            assert!((c.lambda - lambda).abs() <= 1e-5, "n={n} {c:?}");
        }
    }

    #[test]
    fn irregular_rejected() {
        assert!(spectral_certificate(&Graph::path(4), 0).is_err());
    }
}
