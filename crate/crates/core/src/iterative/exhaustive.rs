use crate::objective::{gamma, CsiVector, PhaseConfig};
use crate::{Error, OptimizerOutcome, Result};

/// Largest `N` enumerated by default (`2^(N−1)` configurations).
pub const DEFAULT_EXHAUSTIVE_LIMIT: usize = 26;

const LOW_BITS: usize = 10;

/// Global optimum by enumeration.
///
/// Since `γ(φ) = γ(−φ)`, element 0 is fixed to `+1` and the remaining
/// `N − 1` elements are enumerated in binary counting order (bit set = `−1`);
/// the first configuration reaching the maximum wins. Partial sums over the
/// low bits are tabulated once, so each configuration costs two additions per
/// component.
pub fn exhaustive(c: &CsiVector, n_limit: usize) -> Result<OptimizerOutcome> {
    let n = c.len();
    if n > n_limit {
        return Err(Error::ExhaustiveLimit { n, limit: n_limit });
    }
    if n == 0 {
        return Ok(OptimizerOutcome {
            phi: PhaseConfig::ones(0),
            gamma: 0.0,
            objective_evals: 1,
            outer_iterations: 0,
            converged: true,
        });
    }
    let (re, im) = (c.re(), c.im());
    let free = n - 1;
    let low = free.min(LOW_BITS);
    let high = free - low;

    // element i + 1 is driven by bit i
    let partial = |mask: usize, bits: std::ops::Range<usize>, v: &[f64]| -> f64 {
        let mut s = 0.0;
        for (j, i) in bits.enumerate() {
            if mask >> j & 1 == 1 {
                s -= v[i + 1];
            } else {
                s += v[i + 1];
            }
        }
        s
    };
    let low_re: Vec<f64> = (0..1usize << low).map(|m| partial(m, 0..low, re)).collect();
    let low_im: Vec<f64> = (0..1usize << low).map(|m| partial(m, 0..low, im)).collect();

    let mut best = f64::NEG_INFINITY;
    let mut best_index = 0usize;
    for h in 0..1usize << high {
        let base_re = re[0] + partial(h, low..free, re);
        let base_im = im[0] + partial(h, low..free, im);
        for (l, (lr, li)) in low_re.iter().zip(&low_im).enumerate() {
            let a = base_re + lr;
            let b = base_im + li;
            let value = a * a + b * b;
            if value > best {
                best = value;
                best_index = h << low | l;
            }
        }
    }

    let phi = PhaseConfig::from_negated(
        std::iter::once(false).chain((0..free).map(|i| best_index >> i & 1 == 1)),
    );
    let gamma = gamma(c, &phi)?;
    Ok(OptimizerOutcome {
        phi,
        gamma,
        objective_evals: 1u64 << free,
        outer_iterations: 0,
        converged: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn csi(v: &[(f64, f64)]) -> CsiVector {
        CsiVector::new(v.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    #[test]
    fn two_elements() {
        let out = exhaustive(&csi(&[(3.0, 1.0), (-2.0, 2.0)]), 26).unwrap();
        assert_eq!(out.gamma, 26.0);
        assert_eq!(out.phi.to_vec(), vec![1.0, -1.0]);
        assert_eq!(out.objective_evals, 2);
    }

    #[test]
    fn single_element() {
        let out = exhaustive(&csi(&[(0.6, -0.8)]), 26).unwrap();
        assert_eq!(out.phi.to_vec(), vec![1.0]);
        assert!((out.gamma - 1.0).abs() < 1e-15);
    }

    #[test]
    fn refuses_large() {
        let c = CsiVector::new(vec![Complex64::new(1.0, 0.0); 27]);
        assert_eq!(
            exhaustive(&c, 26),
            Err(Error::ExhaustiveLimit { n: 27, limit: 26 })
        );
        assert!(exhaustive(&c, 26).unwrap_err().is_refusal());
    }

    #[test]
    fn first_optimum_wins() {
        // all configurations with φ_0 = +1 tie when c_1 = 0
        let out = exhaustive(&csi(&[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0)]), 26).unwrap();
        assert_eq!(out.phi, PhaseConfig::ones(3));
    }
}
