//! Discretised connections on an interval or circle, and finite-difference
//! checks of the functional derivatives of holonomies.

use rand::Rng;

use super::{c, normal, LieBasis, Mat};
use crate::coeff::GroupSpec;
use crate::error::{Error, Result};

/// Where the perturbation is placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Probe {
    /// Inside the circle; compared against `tr(hol_t e_a)`.
    Interior,
    /// At both ends of the interval; compared against `e_a hol / 2` and `hol e_a / 2`.
    Endpoint,
}

/// Piecewise-constant Lie-algebra-valued connection on `[0, 1]` with `N`
/// equal segments.
#[derive(Debug, Clone)]
pub struct Lattice {
    group: GroupSpec,
    segments: Vec<Mat>,
}

impl Lattice {
    pub fn new(group: GroupSpec, segments: Vec<Mat>) -> Result<Self> {
        if segments.len() < 2 {
            return Err(Error::LatticeTooSmall(segments.len()));
        }
        Ok(Lattice { group, segments })
    }

    pub fn flat(group: GroupSpec, n: usize) -> Result<Self> {
        Self::new(group, vec![Mat::zeros(group.n, group.n); n])
    }

    /// Real Gaussian coordinates in the given basis.
    pub fn random(group: GroupSpec, basis: &LieBasis, n: usize, rng: &mut impl Rng) -> Result<Self> {
        let segs = (0..n)
            .map(|_| {
                basis.elements().iter().fold(Mat::zeros(group.n, group.n), |acc, e| {
                    acc + e * c(0.5 * normal(rng), 0.0)
                })
            })
            .collect();
        Self::new(group, segs)
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    fn width(&self) -> f64 {
        1.0 / self.segments.len() as f64
    }

    fn segment_exp(&self, k: usize, t: f64) -> Mat {
        (&self.segments[k] * c(t, 0.0)).exp()
    }

    fn product(&self, range: std::ops::Range<usize>) -> Mat {
        let n = self.group.n;
        range.fold(Mat::identity(n, n), |acc, k| acc * self.segment_exp(k, self.width()))
    }

    pub fn holonomy(&self) -> Mat {
        self.product(0..self.len())
    }
}

/// Max over basis directions of the gap between a forward difference with
/// increment `step`, using a box bump of half-width `step`, and the
/// closed-form derivative.
pub fn lattice_derivative_check(lat: &Lattice, basis: &LieBasis, probe: Probe, step: f64) -> Result<f64> {
    let w = lat.width();
    if !(step > 0.0 && 2.0 * step < w) {
        return Err(Error::BadStep(format!("{step}")));
    }
    let s = c(step, 0.0);
    let mut worst = 0.0f64;
    match probe {
        Probe::Interior => {
            let k = lat.len() / 2;
            let a = &lat.segments[k];
            let before = lat.product(0..k);
            let after = lat.product(k + 1..lat.len());
            let side = lat.segment_exp(k, w / 2.0 - step);
            let half = lat.segment_exp(k, w / 2.0);
            let base = (&before * &side * lat.segment_exp(k, 2.0 * step) * &side * &after).trace();
            let based_at_t = &half * &after * &before * &half;
            for e in basis.elements() {
                let bump = (a * c(2.0 * step, 0.0) + e * s).exp();
                let fd = ((&before * &side * bump * &side * &after).trace() - base) / s;
                let exact = (&based_at_t * e).trace();
                worst = worst.max((fd - exact).norm());
            }
        }
        Probe::Endpoint => {
            let last = lat.len() - 1;
            let hol = lat.holonomy();
            let first_rest = lat.segment_exp(0, w - step) * lat.product(1..lat.len());
            let last_rest = lat.product(0..last) * lat.segment_exp(last, w - step);
            for e in basis.elements() {
                let half_e = e * c(0.5, 0.0) * s;
                let start = (&lat.segments[0] * s + &half_e).exp() * &first_rest;
                let fd = (start - &hol) / s;
                worst = worst.max((fd - e * &hol * c(0.5, 0.0)).norm());
                let end = &last_rest * (&lat.segments[last] * s + &half_e).exp();
                let fd = (end - &hol) / s;
                worst = worst.max((fd - &hol * e * c(0.5, 0.0)).norm());
            }
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn too_small() {
        let g = GroupSpec::su2();
        assert_eq!(Lattice::flat(g, 1).unwrap_err(), Error::LatticeTooSmall(1));
    }

    #[test]
    fn flat_interior_matches_trace_of_basis() {
        let g = GroupSpec::gln(2);
        let b = LieBasis::standard(&g).unwrap();
        let lat = Lattice::flat(g, 8).unwrap();
        let r = lattice_derivative_check(&lat, &b, Probe::Interior, 1e-4).unwrap();
        assert!(r > 0.0 && r < 1e-4, "{r}");
    }

    #[test]
    fn first_order_convergence() {
        let mut r = ChaCha8Rng::seed_from_u64(1);
        for g in [GroupSpec::su2(), GroupSpec::gln(3)] {
            let b = LieBasis::standard(&g).unwrap();
            let lat = Lattice::random(g, &b, 64, &mut r).unwrap();
            for probe in [Probe::Interior, Probe::Endpoint] {
                let r4 = lattice_derivative_check(&lat, &b, probe, 1e-4).unwrap();
                let r5 = lattice_derivative_check(&lat, &b, probe, 1e-5).unwrap();
                assert!(r4 < 1e-3 && r5 < 1e-4, "{probe:?}: {r4} {r5}");
                assert!(r5 < r4 / 5.0, "{probe:?}: {r4} {r5}");
            }
        }
    }

    #[test]
    fn step_must_fit() {
        let g = GroupSpec::su2();
        let b = LieBasis::standard(&g).unwrap();
        let lat = Lattice::flat(g, 4).unwrap();
        assert!(lattice_derivative_check(&lat, &b, Probe::Interior, 0.2).is_err());
    }
}
