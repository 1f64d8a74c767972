//! Exact verification of the restriction limit `Ω|_{Δ*_I} = Ω_I`.
//!
//! Along a ray, `x_i = s·ray_i` for `i ∈ I` and `x_j = ray_j` otherwise.
//! As `s → ∞` the `I^c × I^c` block of `G(P)` must approach `G(P_{I^c})`
//! at `x_{I^c}`, where `P_{I^c}` is the metric polynomial of the stratum
//! orbit. The deviation at each scale is computed exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::algebra::mat::QMat;
use crate::algebra::rational::Rational;
use crate::error::{Error, Result};
use crate::hodge::spec::PolarizedOrbitSpec;
use crate::io;

use super::chern::ChernForm;
use super::factor::{check_stratum, stratum_metric_polynomial};
use super::metric::hodge_metric_polynomial;

/// Deviation at one scale.
#[derive(Clone, Debug, PartialEq)]
pub struct ScaleRow {
    pub scale: Rational,
    pub deviation: Rational,
}

/// Results along one ray.
#[derive(Clone, Debug, PartialEq)]
pub struct RayReport {
    pub ray: Vec<Rational>,
    pub rows: Vec<ScaleRow>,
    /// Deviations are non-increasing over the second half of the scales.
    pub eventually_decreasing: bool,
    pub final_deviation: Rational,
    /// `max_s s · deviation(s)`, the fitted constant of a `C/s` bound.
    pub constant: Rational,
    pub pass: bool,
}

/// Results over all rays.
#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    pub stratum: Vec<usize>,
    pub tolerance: Rational,
    pub rays: Vec<RayReport>,
    pub pass: bool,
}

impl LimitReport {
    /// Largest fitted constant over the rays.
    pub fn constant(&self) -> Rational {
        self.rays.iter().map(|r| r.constant.clone()).max().unwrap_or_else(Rational::zero)
    }

    /// `true` when every deviation is exactly zero.
    pub fn exact(&self) -> bool {
        self.rays.iter().all(|r| r.rows.iter().all(|x| x.deviation.is_zero()))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "stratum": self.stratum.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "tolerance": io::exact_and_decimal(&self.tolerance),
            "constant": io::exact_and_decimal(&self.constant()),
            "exact": self.exact(),
            "rays": self.rays.iter().map(|r| json!({
                "ray": io::qvec_to_json(&r.ray),
                "deviations": r.rows.iter().map(|x| json!({
                    "scale": io::rational_to_json(&x.scale),
                    "deviation": io::exact_and_decimal(&x.deviation),
                })).collect::<Vec<_>>(),
                "eventuallyDecreasing": r.eventually_decreasing,
                "finalDeviation": io::exact_and_decimal(&r.final_deviation),
                "constant": io::exact_and_decimal(&r.constant),
                "pass": r.pass,
            })).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

/// The default pass threshold `10⁻⁶` on the final relative deviation.
pub fn default_tolerance() -> Rational {
    Rational::pow10(-6)
}

/// Scales `10^lo, 10^{lo+1}, …, 10^hi`.
pub fn decade_scales(lo: i32, hi: i32) -> Vec<Rational> {
    (lo..=hi).map(Rational::pow10).collect()
}

/// Deterministic ray family of length `count`: the all-ones ray, then the
/// rays `1 + 9e_i` for `i ∈ I`, then seeded random rays with coordinates
/// in `[1/4, 4]` (multiples of 1/8).
pub fn default_rays(k: usize, stratum: &[usize], count: usize, seed: u64) -> Vec<Vec<Rational>> {
    let mut rays = vec![vec![Rational::one(); k]];
    for &i in stratum {
        let mut r = vec![Rational::one(); k];
        r[i] = Rational::from_int(10);
        rays.push(r);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    while rays.len() < count {
        rays.push((0..k).map(|_| Rational::new(rng.gen_range(2..=32), 8)).collect());
    }
    rays.truncate(count.max(1));
    rays
}

/// Relative max-entry deviation of `a` from `target` (absolute when the
/// target vanishes).
pub fn relative_deviation(a: &QMat, target: &QMat) -> Rational {
    let diff = a.sub(target).entries().iter().map(Rational::abs).max().unwrap_or_else(Rational::zero);
    let scale = target.entries().iter().map(Rational::abs).max().unwrap_or_else(Rational::zero);
    if scale.is_zero() {
        diff
    } else {
        &diff / &scale
    }
}

/// Runs the limit check along every ray and scale.
pub fn restriction_limit_check(
    spec: &PolarizedOrbitSpec,
    stratum: &[usize],
    rays: &[Vec<Rational>],
    scales: &[Rational],
) -> Result<LimitReport> {
    restriction_limit_check_with(spec, stratum, rays, scales, &default_tolerance())
}

/// [`restriction_limit_check`] with an explicit tolerance.
pub fn restriction_limit_check_with(
    spec: &PolarizedOrbitSpec,
    stratum: &[usize],
    rays: &[Vec<Rational>],
    scales: &[Rational],
    tolerance: &Rational,
) -> Result<LimitReport> {
    let k = spec.k();
    check_stratum(k, stratum)?;
    if scales.is_empty() || scales.windows(2).any(|w| w[0] >= w[1]) || !scales[0].is_positive() {
        return Err(Error::InvalidArgument("scales must be positive and strictly increasing".into()));
    }
    if rays.iter().any(|r| r.len() != k || r.iter().any(|x| !x.is_positive())) {
        return Err(Error::InvalidArgument(format!("rays must be positive vectors of length {k}")));
    }
    let mut stratum = stratum.to_vec();
    stratum.sort_unstable();
    let ic: Vec<usize> = (0..k).filter(|j| !stratum.contains(j)).collect();
    let full = ChernForm::new(&hodge_metric_polynomial(spec)?.p);
    let limit = ChernForm::new(&stratum_metric_polynomial(spec, &stratum)?);
    let mut reports = Vec::new();
    for ray in rays {
        let target = limit.at(ray)?.g.submatrix(&ic, &ic);
        let mut rows = Vec::new();
        for s in scales {
            let x: Vec<Rational> =
                (0..k).map(|i| if stratum.contains(&i) { s * &ray[i] } else { ray[i].clone() }).collect();
            let g = full.at(&x)?.g.submatrix(&ic, &ic);
            rows.push(ScaleRow { scale: s.clone(), deviation: relative_deviation(&g, &target) });
        }
        let half = rows.len() / 2;
        let eventually_decreasing = rows[half..].windows(2).all(|w| w[1].deviation <= w[0].deviation);
        let final_deviation = rows.last().map(|r| r.deviation.clone()).unwrap_or_else(Rational::zero);
        let constant = rows.iter().map(|r| &r.scale * &r.deviation).max().unwrap_or_else(Rational::zero);
        let pass = eventually_decreasing && final_deviation <= *tolerance;
        reports.push(RayReport { ray: ray.clone(), rows, eventually_decreasing, final_deviation, constant, pass });
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(LimitReport { stratum, tolerance: tolerance.clone(), rays: reports, pass })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn dollar_bill_single_divisor_converges() {
        let spec = fixtures::dollar_bill();
        let rays = default_rays(3, &[2], 5, 1);
        let r = restriction_limit_check(&spec, &[2], &rays, &decade_scales(1, 8)).unwrap();
        assert!(r.pass, "{:?}", r.rays.iter().map(|x| x.final_deviation.to_f64()).collect::<Vec<_>>());
        assert!(!r.exact());
    }

    #[test]
    fn product_is_exact() {
        let spec = fixtures::product_degeneration();
        let rays = default_rays(2, &[0], 4, 3);
        let r = restriction_limit_check(&spec, &[0], &rays, &decade_scales(1, 4)).unwrap();
        assert!(r.pass && r.exact());
    }
}
