//! The SNR objective `γ(φ) = |cᵀφ|² = A(φ) + B(φ)` and its bounds.
//!
//! `A(φ) = (Σ φ_i Re c_i)²` and `B(φ) = (Σ φ_i Im c_i)²`. All sums run in
//! ascending index order so that `A + B` reproduces [`gamma`] bit for bit.

use bitvec::prelude::*;
use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Cascaded channel `c = h ⊙ g*` with cached real and imaginary parts.
#[derive(Debug, Clone, PartialEq)]
pub struct CsiVector {
    c: Vec<Complex64>,
    re: Vec<f64>,
    im: Vec<f64>,
}

impl CsiVector {
    pub fn new(c: Vec<Complex64>) -> Self {
        let re = c.iter().map(|z| z.re).collect();
        let im = c.iter().map(|z| z.im).collect();
        Self { c, re, im }
    }

    /// Builds `c_n = h_n · conj(g_n)`.
    pub fn cascade(h: &[Complex64], g: &[Complex64]) -> Result<Self> {
        check_len(h.len(), g.len())?;
        Ok(Self::new(
            h.iter().zip(g).map(|(h, g)| h * g.conj()).collect(),
        ))
    }

    pub fn len(&self) -> usize {
        self.c.len()
    }

    pub fn is_empty(&self) -> bool {
        self.c.is_empty()
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.c
    }

    /// `a_n = Re(c_n)`.
    pub fn re(&self) -> &[f64] {
        &self.re
    }

    /// `b_n = Im(c_n)`.
    pub fn im(&self) -> &[f64] {
        &self.im
    }

    /// `‖c‖²`.
    pub fn energy(&self) -> f64 {
        self.c.iter().map(|z| z.norm_sqr()).sum()
    }

    /// FNV-1a digest of the bit patterns of every entry.
    pub fn digest(&self) -> u64 {
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        for z in &self.c {
            for bytes in [z.re.to_bits().to_le_bytes(), z.im.to_bits().to_le_bytes()] {
                for b in bytes {
                    hash ^= u64::from(b);
                    hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
                }
            }
        }
        hash
    }
}

pub(crate) fn check_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::LengthMismatch { expected, found })
    }
}

/// `sign(x)` into `{−1, +1}` with `sign(0) = +1`.
#[inline]
pub fn sign(x: f64) -> f64 {
    if x < 0.0 {
        -1.0
    } else {
        1.0
    }
}

/// Anything that assigns a real weight `φ_n` to each surface element.
pub trait Configuration {
    fn len(&self) -> usize;

    fn weight(&self, n: usize) -> f64;

    fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Binary configuration `φ ∈ {−1, +1}^N`, one bit per element (set = `−1`,
/// i.e. phase `π`).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct PhaseConfig {
    bits: BitVec<u64, Lsb0>,
}

impl PhaseConfig {
    /// All elements at `+1`.
    pub fn ones(n: usize) -> Self {
        Self {
            bits: bitvec![u64, Lsb0; 0; n],
        }
    }

    /// `φ_n = sign(values_n)` with `sign(0) = +1`.
    pub fn sign_of(values: &[f64]) -> Self {
        Self {
            bits: values.iter().map(|&v| v < 0.0).collect(),
        }
    }

    /// Builds from exact `±1` entries.
    pub fn from_signs(signs: &[f64]) -> Result<Self> {
        if let Some(bad) = signs.iter().find(|&&s| s != 1.0 && s != -1.0) {
            return Err(Error::InvalidParameter(format!(
                "configuration entry {bad} is not ±1"
            )));
        }
        Ok(Self::sign_of(signs))
    }

    /// Builds from per-element flags where `true` means `−1`.
    pub fn from_negated(negated: impl IntoIterator<Item = bool>) -> Self {
        Self {
            bits: negated.into_iter().collect(),
        }
    }

    /// Uniformly random configuration.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        Self::from_negated((0..n).map(|_| rng.random::<bool>()))
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    #[inline]
    pub fn is_negative(&self, n: usize) -> bool {
        self.bits[n]
    }

    #[inline]
    pub fn get(&self, n: usize) -> f64 {
        if self.bits[n] {
            -1.0
        } else {
            1.0
        }
    }

    #[inline]
    pub fn flip(&mut self, n: usize) {
        let v = self.bits[n];
        self.bits.set(n, !v);
    }

    /// `−φ`.
    pub fn negated(&self) -> Self {
        Self {
            bits: !self.bits.clone(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.bits.iter().map(|b| if *b { -1.0 } else { 1.0 })
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.iter().collect()
    }

    /// Phase shifts in radians, `0` or `π`.
    pub fn phases(&self) -> Vec<f64> {
        self.bits
            .iter()
            .map(|b| if *b { std::f64::consts::PI } else { 0.0 })
            .collect()
    }
}

impl std::fmt::Debug for PhaseConfig {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PhaseConfig[")?;
        for b in self.bits.iter() {
            f.write_str(if *b { "-" } else { "+" })?;
        }
        f.write_str("]")
    }
}

impl Configuration for PhaseConfig {
    fn len(&self) -> usize {
        self.bits.len()
    }

    #[inline]
    fn weight(&self, n: usize) -> f64 {
        self.get(n)
    }
}

/// Continuous relaxation `φ ∈ [−1, +1]^N`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RelaxedConfig {
    phi: Vec<f64>,
}

impl RelaxedConfig {
    pub fn new(phi: Vec<f64>) -> Result<Self> {
        if let Some(bad) = phi.iter().find(|v| !(-1.0..=1.0).contains(*v)) {
            return Err(Error::InvalidParameter(format!(
                "relaxed entry {bad} outside [-1, 1]"
            )));
        }
        Ok(Self { phi })
    }

    pub fn zeros(n: usize) -> Self {
        Self { phi: vec![0.0; n] }
    }

    /// `scale · φ` for a binary `φ`; `scale` must lie in `[0, 1]`.
    pub fn scaled(config: &PhaseConfig, scale: f64) -> Result<Self> {
        Self::new(config.iter().map(|s| s * scale).collect())
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.phi
    }

    /// Adds `step` and clips each entry back into `[−1, 1]`.
    pub fn ascend_clipped(&mut self, step: &[f64]) {
        for (p, s) in self.phi.iter_mut().zip(step) {
            *p = (*p + s).clamp(-1.0, 1.0);
        }
    }

    /// Feasible binary configuration `sign(φ)`.
    pub fn to_binary(&self) -> PhaseConfig {
        PhaseConfig::sign_of(&self.phi)
    }
}

impl Configuration for RelaxedConfig {
    fn len(&self) -> usize {
        self.phi.len()
    }

    #[inline]
    fn weight(&self, n: usize) -> f64 {
        self.phi[n]
    }
}

/// `(Σ φ_i a_i, Σ φ_i b_i)` accumulated in index order.
pub(crate) fn projections<C: Configuration + ?Sized>(c: &CsiVector, phi: &C) -> Result<(f64, f64)> {
    check_len(c.len(), phi.len())?;
    let mut sa = 0.0;
    let mut sb = 0.0;
    for n in 0..c.len() {
        let w = phi.weight(n);
        sa += w * c.re[n];
        sb += w * c.im[n];
    }
    Ok((sa, sb))
}

/// `(A(φ), B(φ))`.
pub fn split_objective<C: Configuration + ?Sized>(c: &CsiVector, phi: &C) -> Result<(f64, f64)> {
    let (sa, sb) = projections(c, phi)?;
    Ok((sa * sa, sb * sb))
}

/// `γ(φ) = A(φ) + B(φ)`.
pub fn gamma<C: Configuration + ?Sized>(c: &CsiVector, phi: &C) -> Result<f64> {
    let (a, b) = split_objective(c, phi)?;
    Ok(a + b)
}

/// `max{A_max, B_max}` where `A_max = (Σ|Re c_i|)²`, `B_max = (Σ|Im c_i|)²`.
pub fn instantaneous_lower_bound(c: &CsiVector) -> f64 {
    let a: f64 = c.re.iter().map(|x| x.abs()).sum();
    let b: f64 = c.im.iter().map(|x| x.abs()).sum();
    (a * a).max(b * b)
}

/// `(Σ|c_i|)²`, the SNR reached by continuous phase alignment.
pub fn continuous_upper_bound(c: &CsiVector) -> f64 {
    let s: f64 = c.c.iter().map(|z| z.norm()).sum();
    s * s
}

pub fn normalized_snr(gamma_value: f64, reference: f64) -> Result<f64> {
    if reference > 0.0 {
        Ok(gamma_value / reference)
    } else {
        Err(Error::NonPositiveReference(reference))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn csi(v: &[(f64, f64)]) -> CsiVector {
        CsiVector::new(v.iter().map(|&(r, i)| Complex64::new(r, i)).collect())
    }

    fn cfg(v: &[f64]) -> PhaseConfig {
        PhaseConfig::from_signs(v).unwrap()
    }

    #[test]
    fn single_element() {
        assert_eq!(gamma(&csi(&[(1.0, 1.0)]), &cfg(&[1.0])).unwrap(), 2.0);
    }

    #[test]
    fn two_element_gamma() {
        let c = csi(&[(1.0, 2.0), (2.0, -1.0)]);
        let phi = cfg(&[1.0, -1.0]);
        assert_eq!(split_objective(&c, &phi).unwrap(), (1.0, 9.0));
        assert_eq!(gamma(&c, &phi).unwrap(), 10.0);
    }

    #[test]
    fn split_examples() {
        let c = csi(&[(3.0, 1.0), (-2.0, 2.0)]);
        assert_eq!(
            split_objective(&c, &cfg(&[1.0, -1.0])).unwrap(),
            (25.0, 1.0)
        );

        let real = csi(&[(1.5, 0.0), (-0.5, 0.0), (2.0, 0.0)]);
        let (_, b) = split_objective(&real, &cfg(&[1.0, -1.0, -1.0])).unwrap();
        assert_eq!(b, 0.0);

        let cancel = csi(&[(1.0, 2.0), (-1.0, -2.0)]);
        assert_eq!(
            split_objective(&cancel, &PhaseConfig::ones(2)).unwrap(),
            (0.0, 0.0)
        );
    }

    #[test]
    fn length_mismatch() {
        let c = csi(&[(1.0, 0.0)]);
        assert_eq!(
            gamma(&c, &PhaseConfig::ones(2)),
            Err(Error::LengthMismatch {
                expected: 1,
                found: 2
            })
        );
        assert!(split_objective(&c, &RelaxedConfig::zeros(3)).is_err());
    }

    #[test]
    fn bounds() {
        let c = csi(&[(3.0, 1.0), (-2.0, 2.0)]);
        assert_eq!(instantaneous_lower_bound(&c), 25.0);
        assert_eq!(
            instantaneous_lower_bound(&csi(&[(1.0, 0.0), (-2.0, 0.0)])),
            9.0
        );
        assert_eq!(continuous_upper_bound(&csi(&[(3.0, 4.0)])), 25.0);
    }

    #[test]
    fn unit_modulus_upper_bound_is_n_squared() {
        let c = CsiVector::new(
            (0..16)
                .map(|n| Complex64::from_polar(1.0, 0.37 * n as f64))
                .collect(),
        );
        assert!((continuous_upper_bound(&c) - 256.0).abs() < 1e-9);
    }

    #[test]
    fn normalization() {
        assert_eq!(normalized_snr(25.0, 100.0).unwrap(), 0.25);
        assert_eq!(normalized_snr(7.0, 7.0).unwrap(), 1.0);
        assert_eq!(
            normalized_snr(1.0, 0.0),
            Err(Error::NonPositiveReference(0.0))
        );
        assert!(normalized_snr(1.0, -2.0).is_err());
    }

    #[test]
    fn phase_config_basics() {
        let mut p = cfg(&[1.0, -1.0, 1.0]);
        assert_eq!(p.to_vec(), vec![1.0, -1.0, 1.0]);
        p.flip(0);
        assert_eq!(p.to_vec(), vec![-1.0, -1.0, 1.0]);
        assert_eq!(p.negated().to_vec(), vec![1.0, 1.0, -1.0]);
        assert_eq!(
            PhaseConfig::sign_of(&[0.0, -0.0, -3.0]).to_vec(),
            vec![1.0, 1.0, -1.0]
        );
        assert!(PhaseConfig::from_signs(&[1.0, 0.5]).is_err());
        assert_eq!(format!("{:?}", p), "PhaseConfig[--+]");
    }

    #[test]
    fn relaxed_range_checked() {
        assert!(RelaxedConfig::new(vec![1.0, -1.0, 0.3]).is_ok());
        assert!(RelaxedConfig::new(vec![1.01]).is_err());
        assert!(RelaxedConfig::new(vec![f64::NAN]).is_err());
        let mut r = RelaxedConfig::new(vec![0.9, -0.9]).unwrap();
        r.ascend_clipped(&[0.5, 0.05]);
        assert_eq!(r.as_slice(), &[1.0, -0.85]);
    }

    #[test]
    fn digest_tracks_content() {
        let a = csi(&[(1.0, 2.0)]);
        let b = csi(&[(1.0, 2.000_000_000_000_1)]);
        assert_eq!(a.digest(), a.clone().digest());
        assert_ne!(a.digest(), b.digest());
    }
}
