//! TX→RIS and RIS→RX channel generation over a uniform rectangular array.
//!
//! Elements are indexed row-major: element `(l, k)` (row `l` along the
//! vertical axis, column `k` along the horizontal axis) has index
//! `l · n_hor + k`. A plane wave arriving from direction cosines `(u, v)` in
//! the surface's local frame has phase `2π · spacing · (k·u + l·v)` at that
//! element (spacing in wavelengths; `π(k·u + l·v)` at half a wavelength).
//!
//! Ricean channels mix the line-of-sight steering vector and a unit-variance
//! Rayleigh component as `√(κ/(1+κ))·a + √(1/(1+κ))·w`, which keeps
//! `E[hᴴh] = N` for every κ.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::objective::CsiVector;
use crate::rng::{trial_rng, Stream};
use crate::{Error, Result};

pub type Point = [f64; 3];

fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: Point, b: Point) -> Point {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn scale(a: Point, s: f64) -> Point {
    [a[0] * s, a[1] * s, a[2] * s]
}

fn normalize(a: Point) -> Option<Point> {
    let n = dot(a, a).sqrt();
    (n > 1e-12 && n.is_finite()).then(|| scale(a, 1.0 / n))
}

/// `(n_vert, n_hor)` with `n_vert · n_hor = n`, `n_vert ≤ n_hor`, and the
/// smallest possible difference between the two.
pub fn ura_dims(n: usize) -> (usize, usize) {
    let mut v = (n as f64).sqrt() as usize;
    while v > 1 && !n.is_multiple_of(v) {
        v -= 1;
    }
    let v = v.max(1);
    (v, n / v)
}

/// Surface layout and link endpoints.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArrayGeometry {
    pub n_vert: usize,
    pub n_hor: usize,
    /// Element spacing in wavelengths.
    pub element_spacing: f64,
    pub ris_position: Point,
    pub tx_position: Point,
    pub rx_position: Point,
    /// Surface normal (need not be unit length).
    pub ris_orientation: Point,
}

impl ArrayGeometry {
    /// Reference deployment: TX at (0, 0, 6) m, RX at (0, 20, 1.5) m, surface
    /// at (2, 2, 2) m lying parallel to the yz plane and facing −x.
    pub fn reference(n: usize) -> Self {
        let (n_vert, n_hor) = ura_dims(n);
        Self {
            n_vert,
            n_hor,
            element_spacing: 0.5,
            ris_position: [2.0, 2.0, 2.0],
            tx_position: [0.0, 0.0, 6.0],
            rx_position: [0.0, 20.0, 1.5],
            ris_orientation: [-1.0, 0.0, 0.0],
        }
    }

    /// Same placement, resized to `n` elements.
    pub fn with_count(&self, n: usize) -> Self {
        let (n_vert, n_hor) = ura_dims(n);
        Self {
            n_vert,
            n_hor,
            ..self.clone()
        }
    }

    pub fn len(&self) -> usize {
        self.n_vert * self.n_hor
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_vert == 0 || self.n_hor == 0 {
            return Err(Error::InvalidGeometry(
                "array dimensions must be positive".into(),
            ));
        }
        if !(self.element_spacing > 0.0 && self.element_spacing.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "element spacing {} must be positive",
                self.element_spacing
            )));
        }
        self.local_axes().map(|_| ())
    }

    /// `(horizontal, vertical)` unit axes of the surface plane. The vertical
    /// axis is global z projected onto the plane (global x if the surface is
    /// horizontal); horizontal completes the frame as `normal × vertical`.
    pub fn local_axes(&self) -> Result<(Point, Point)> {
        let normal = normalize(self.ris_orientation)
            .ok_or_else(|| Error::InvalidGeometry("surface orientation is zero".into()))?;
        let up = if normal[2].abs() > 0.99 {
            [1.0, 0.0, 0.0]
        } else {
            [0.0, 0.0, 1.0]
        };
        let vertical = normalize(sub(up, scale(normal, dot(up, normal))))
            .ok_or_else(|| Error::InvalidGeometry("degenerate surface frame".into()))?;
        Ok((cross(normal, vertical), vertical))
    }

    /// Direction cosines `(u, v)` of the surface→`target` unit vector.
    pub fn direction_cosines(&self, target: Point) -> Result<(f64, f64)> {
        let d = normalize(sub(target, self.ris_position)).ok_or(Error::DegenerateGeometry)?;
        let (horizontal, vertical) = self.local_axes()?;
        Ok((dot(d, horizontal), dot(d, vertical)))
    }
}

/// Unit-modulus response of the array to a plane wave from `target`.
pub fn steering_vector(geometry: &ArrayGeometry, target: Point) -> Result<Vec<Complex64>> {
    let (u, v) = geometry.direction_cosines(target)?;
    Ok(steering_from_cosines(geometry, u, v))
}

pub fn steering_from_cosines(geometry: &ArrayGeometry, u: f64, v: f64) -> Vec<Complex64> {
    let step = TAU * geometry.element_spacing;
    let mut out = Vec::with_capacity(geometry.len());
    for l in 0..geometry.n_vert {
        for k in 0..geometry.n_hor {
            out.push(Complex64::from_polar(
                1.0,
                step * (k as f64 * u + l as f64 * v),
            ));
        }
    }
    out
}

/// `n` i.i.d. `CN(0, 1)` draws; real then imaginary part per element.
pub fn generate_rayleigh<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex64> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0..n)
        .map(|_| {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex64::new(re * s, im * s)
        })
        .collect()
}

/// Ricean κ-factor with exact sentinels at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kappa {
    Rayleigh,
    Db(f64),
    LineOfSight,
}

impl Kappa {
    /// `−∞ → Rayleigh`, `+∞ → LineOfSight`.
    pub fn from_db(db: f64) -> Self {
        if db == f64::NEG_INFINITY {
            Kappa::Rayleigh
        } else if db == f64::INFINITY {
            Kappa::LineOfSight
        } else {
            Kappa::Db(db)
        }
    }

    pub fn as_db(self) -> f64 {
        match self {
            Kappa::Rayleigh => f64::NEG_INFINITY,
            Kappa::Db(db) => db,
            Kappa::LineOfSight => f64::INFINITY,
        }
    }

    /// `κ = 10^(dB/10)`.
    pub fn linear(self) -> f64 {
        10f64.powf(self.as_db() / 10.0)
    }
}

impl std::fmt::Display for Kappa {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Kappa::Rayleigh => f.write_str("rayleigh"),
            Kappa::Db(db) => write!(f, "{db}"),
            Kappa::LineOfSight => f.write_str("los"),
        }
    }
}

impl std::str::FromStr for Kappa {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "rayleigh" | "-inf" => Ok(Kappa::Rayleigh),
            "los" | "inf" | "+inf" => Ok(Kappa::LineOfSight),
            other => other
                .parse::<f64>()
                .ok()
                .filter(|v| !v.is_nan())
                .map(Kappa::from_db)
                .ok_or_else(|| Error::InvalidParameter(format!("bad kappa value `{s}`"))),
        }
    }
}

impl Serialize for Kappa {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Kappa::Db(db) => s.serialize_f64(*db),
            other => s.serialize_str(&other.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Kappa {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(v) => Ok(Kappa::from_db(v)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// One draw of both links and their cascade.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    pub h: Vec<Complex64>,
    pub g: Vec<Complex64>,
    pub c: CsiVector,
}

impl ChannelRealization {
    pub fn new(h: Vec<Complex64>, g: Vec<Complex64>) -> Result<Self> {
        let c = CsiVector::cascade(&h, &g)?;
        Ok(Self { h, g, c })
    }
}

fn mix<R: Rng + ?Sized>(los: Vec<Complex64>, kappa: Kappa, rng: &mut R) -> Vec<Complex64> {
    match kappa {
        Kappa::Rayleigh => generate_rayleigh(los.len(), rng),
        Kappa::LineOfSight => los,
        Kappa::Db(_) => {
            let k = kappa.linear();
            let wl = (k / (1.0 + k)).sqrt();
            let wn = (1.0 / (1.0 + k)).sqrt();
            let nlos = generate_rayleigh(los.len(), rng);
            los.into_iter()
                .zip(nlos)
                .map(|(a, w)| a * wl + w * wn)
                .collect()
        }
    }
}

/// Ricean links with line-of-sight components supplied by the caller.
/// The NLoS draws for `h` precede those for `g`.
pub fn compose_ricean<R: Rng + ?Sized>(
    los_h: Vec<Complex64>,
    los_g: Vec<Complex64>,
    kappa: Kappa,
    rng: &mut R,
) -> Result<ChannelRealization> {
    let h = mix(los_h, kappa, rng);
    let g = mix(los_g, kappa, rng);
    ChannelRealization::new(h, g)
}

/// Ricean links with geometric TX and RX line-of-sight directions.
pub fn generate_ricean<R: Rng + ?Sized>(
    geometry: &ArrayGeometry,
    kappa: Kappa,
    rng: &mut R,
) -> Result<ChannelRealization> {
    let los_h = steering_vector(geometry, geometry.tx_position)?;
    let los_g = steering_vector(geometry, geometry.rx_position)?;
    compose_ricean(los_h, los_g, kappa, rng)
}

/// `count²` (azimuth, elevation) pairs at the midpoints of a uniform grid over
/// `(−π/2, π/2)²`, azimuth-major.
pub fn angle_grid(count_per_axis: usize) -> Vec<(f64, f64)> {
    let m = count_per_axis.max(1);
    let axis: Vec<f64> = (0..m)
        .map(|i| -FRAC_PI_2 + (i as f64 + 0.5) * PI / m as f64)
        .collect();
    axis.iter()
        .flat_map(|&az| axis.iter().map(move |&el| (az, el)))
        .collect()
}

/// Direction cosines `(u, v) = (cos el · sin az, sin el)` in the surface frame.
pub fn angles_to_cosines(azimuth: f64, elevation: f64) -> (f64, f64) {
    (elevation.cos() * azimuth.sin(), elevation.sin())
}

fn default_rho_pl() -> f64 {
    1.0
}

/// Everything needed to regenerate trial `i` of an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub geometry: ArrayGeometry,
    pub kappa: Kappa,
    pub seed: u64,
    pub trials: u64,
    /// Transmit SNR times path loss; scales absolute SNR only.
    #[serde(default = "default_rho_pl")]
    pub rho_pl: f64,
    /// When set, trial `i` replaces the TX line-of-sight direction with entry
    /// `i mod count²` of [`angle_grid`]`(count)`; the RX side stays geometric.
    #[serde(default)]
    pub tx_angle_grid: Option<usize>,
}

impl Scenario {
    pub fn new(geometry: ArrayGeometry, kappa: Kappa, seed: u64, trials: u64) -> Self {
        Self {
            geometry,
            kappa,
            seed,
            trials,
            rho_pl: 1.0,
            tx_angle_grid: None,
        }
    }

    /// Pure line-of-sight scenario averaged over the TX angle grid, one
    /// trial per grid point.
    pub fn los_angle_grid(geometry: ArrayGeometry, count_per_axis: usize, seed: u64) -> Self {
        Self {
            tx_angle_grid: Some(count_per_axis),
            trials: (count_per_axis * count_per_axis) as u64,
            ..Self::new(geometry, Kappa::LineOfSight, seed, 1)
        }
    }

    pub fn len(&self) -> usize {
        self.geometry.len()
    }

    pub fn is_empty(&self) -> bool {
        self.geometry.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        self.geometry.validate()?;
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if let Kappa::Db(db) = self.kappa {
            if db.is_nan() {
                return Err(Error::InvalidParameter("kappa is NaN".into()));
            }
        }
        if self.tx_angle_grid == Some(0) {
            return Err(Error::InvalidParameter(
                "angle grid needs at least one point per axis".into(),
            ));
        }
        if !(self.rho_pl > 0.0 && self.rho_pl.is_finite()) {
            return Err(Error::InvalidParameter("rho_pl must be positive".into()));
        }
        Ok(())
    }

    /// Channel of trial `trial`; a pure function of `(self, trial)`.
    pub fn realize(&self, trial: u64) -> Result<ChannelRealization> {
        let mut rng = trial_rng(self.seed, Stream::Channel, trial);
        let los_h = match self.tx_angle_grid {
            Some(m) => {
                let grid = angle_grid(m);
                let (az, el) = grid[(trial % grid.len() as u64) as usize];
                let (u, v) = angles_to_cosines(az, el);
                steering_from_cosines(&self.geometry, u, v)
            }
            None => steering_vector(&self.geometry, self.geometry.tx_position)?,
        };
        let los_g = steering_vector(&self.geometry, self.geometry.rx_position)?;
        compose_ricean(los_h, los_g, self.kappa, &mut rng)
    }
}
