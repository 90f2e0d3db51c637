use crate::error::{Error, Result};
use crate::graph::{pair_count, BaseGraphProfile};
use sha2::{Digest, Sha256};
use std::fmt::Write as _;

/// Constant multipliers behind every sample size and iteration count.
#[derive(Clone, Debug, PartialEq)]
pub struct TesterParams {
    /// Stage-1 iterations `⌈a_iter1·c⌉`.
    pub a_iter1: f64,
    /// `|S| = ⌈a_S·Δ/(αε)⌉`.
    pub a_s: f64,
    /// `|T| = ⌈a_T·Δ²/(αε)⌉`.
    pub a_t: f64,
    /// Stage-2 iterations `min(⌈(a_iter2·W·c)^W⌉, iter2_cap)`.
    pub a_iter2: f64,
    pub iter2_cap: usize,
    /// `|T_j| = ⌈a_Tj·Δ/ε⌉`.
    pub a_tj: f64,
    /// `|S₁| = ⌈a_N1·(αε)^(−1+1/(Δ+2))⌉`.
    pub a_n1: f64,
    /// `|S₂| = ⌈a_N3·(Δc²ε)^(−1+1/W)⌉`.
    pub a_n3: f64,
    /// Low-degree vertices per level.
    pub a_l1: f64,
    /// Low-degree probes per sampled vertex.
    pub a_l2: f64,
    pub w_override: Option<usize>,
    /// Low-degree tolerance for standalone runs; `None` means `1/(18cΔ²)`.
    pub beta: Option<f64>,
}

impl Default for TesterParams {
    fn default() -> Self {
        TesterParams {
            a_iter1: 12.0,
            a_s: 2.0,
            a_t: 2.0,
            a_iter2: 4.0,
            iter2_cap: 200,
            a_tj: 2.0,
            a_n1: 2.0,
            a_n3: 16.0,
            a_l1: 3.0,
            a_l2: 16.0,
            w_override: None,
            beta: None,
        }
    }
}

const KEYS: [&str; 12] = [
    "a_iter1", "a_S", "a_T", "a_iter2", "iter2_cap", "a_Tj", "a_N1", "a_N3", "a_L1", "a_L2",
    "w_override", "beta",
];

impl TesterParams {
    /// Fractional multipliers sized so that no sample saturates at `N` on
    /// the query-scaling grid; used for slope measurements only.
    pub fn scaling_profile() -> Self {
        TesterParams {
            a_iter1: 2.0,
            a_s: 1.0 / 128.0,
            a_t: 1.0 / 128.0,
            iter2_cap: 50,
            a_n1: 0.01,
            a_n3: 100.0,
            ..TesterParams::default()
        }
    }

    pub fn keys() -> &'static [&'static str] {
        &KEYS
    }

    /// Overrides one parameter by name (`a_S`, `iter2_cap`, `w_override`, ...).
    /// Names are case-insensitive; `none` clears an optional value.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let float = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::Config(format!("{key}: `{v}` is not a number")))
        };
        let int = |v: &str| -> Result<usize> {
            v.parse::<usize>()
                .map_err(|_| Error::Config(format!("{key}: `{v}` is not a count")))
        };
        let none = value.eq_ignore_ascii_case("none");
        match key.to_ascii_lowercase().as_str() {
            "a_iter1" => self.a_iter1 = float(value)?,
            "a_s" => self.a_s = float(value)?,
            "a_t" => self.a_t = float(value)?,
            "a_iter2" => self.a_iter2 = float(value)?,
            "iter2_cap" => self.iter2_cap = int(value)?,
            "a_tj" => self.a_tj = float(value)?,
            "a_n1" => self.a_n1 = float(value)?,
            "a_n3" => self.a_n3 = float(value)?,
            "a_l1" => self.a_l1 = float(value)?,
            "a_l2" => self.a_l2 = float(value)?,
            "w_override" | "w" => self.w_override = if none { None } else { Some(int(value)?) },
            "beta" => self.beta = if none { None } else { Some(float(value)?) },
            _ => return Err(Error::Config(format!("unknown parameter `{key}`"))),
        }
        self.validate()
    }

    pub fn validate(&self) -> Result<()> {
        let multipliers = [
            ("a_iter1", self.a_iter1),
            ("a_S", self.a_s),
            ("a_T", self.a_t),
            ("a_iter2", self.a_iter2),
            ("a_Tj", self.a_tj),
            ("a_N1", self.a_n1),
            ("a_N3", self.a_n3),
            ("a_L1", self.a_l1),
            ("a_L2", self.a_l2),
        ];
        for (name, v) in multipliers {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        if self.iter2_cap == 0 {
            return Err(Error::Config("iter2_cap must be at least 1".into()));
        }
        if self.w_override == Some(0) {
            return Err(Error::Config("w_override must be at least 1".into()));
        }
        if let Some(b) = self.beta {
            if !(b > 0.0 && b <= 1.0) {
                return Err(Error::Config(format!("beta must lie in (0, 1], got {b}")));
            }
        }
        Ok(())
    }

    /// `key=value` pairs in a fixed order.
    pub fn canonical(&self) -> String {
        let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
        let mut s = String::new();
        let values = [
            self.a_iter1.to_string(),
            self.a_s.to_string(),
            self.a_t.to_string(),
            self.a_iter2.to_string(),
            self.iter2_cap.to_string(),
            self.a_tj.to_string(),
            self.a_n1.to_string(),
            self.a_n3.to_string(),
            self.a_l1.to_string(),
            self.a_l2.to_string(),
            opt(self.w_override.map(|w| w.to_string())),
            opt(self.beta.map(|b| b.to_string())),
        ];
        for (i, (k, v)) in KEYS.iter().zip(values).enumerate() {
            if i > 0 {
                s.push(';');
            }
            let _ = write!(s, "{k}={v}");
        }
        s
    }

    /// First 12 hex digits of the SHA-256 of [`canonical`](Self::canonical).
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.canonical().as_bytes());
        digest[..6].iter().fold(String::new(), |mut s, b| {
            let _ = write!(s, "{b:02x}");
            s
        })
    }
}

/// `⌈x⌉` as a sample size, capped at `n`.
pub(crate) fn sample_size(x: f64, n: usize) -> usize {
    if !x.is_finite() || x >= n as f64 {
        n
    } else {
        (x.ceil() as usize).min(n)
    }
}

pub(crate) fn iterations(x: f64, cap: usize) -> usize {
    if !x.is_finite() || x >= cap as f64 {
        cap
    } else {
        (x.ceil() as usize).clamp(1, cap)
    }
}

/// `Δ` with `Δ = 0` treated as 1, so that formulas stay finite.
pub(crate) fn delta_eff(profile: &BaseGraphProfile) -> usize {
    profile.delta().max(1)
}

/// `α = 1/(16·Δ·h²)`.
pub fn alpha(profile: &BaseGraphProfile) -> f64 {
    let h = profile.h() as f64;
    1.0 / (16.0 * delta_eff(profile) as f64 * h * h)
}

pub(crate) fn check_eps_c(eps: f64, c: f64) -> Result<()> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(Error::arg(format!("c must be positive, got {c}")));
    }
    Ok(())
}

pub(crate) fn resolve_w(profile: &BaseGraphProfile, params: &TesterParams) -> Result<usize> {
    profile.resolve_w(params.w_override).ok_or_else(|| {
        Error::Config(format!(
            "W(H) is unknown for this base graph; supply w_override (search cap {})",
            profile.w_bound()
        ))
    })
}

/// Sample sizes and iteration counts of the adaptive tester.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AdaptiveSizes {
    pub iter1: usize,
    pub s: usize,
    pub sbar_cap: usize,
    pub t: usize,
    pub iter2: usize,
    pub tj: usize,
    pub w: usize,
}

impl AdaptiveSizes {
    pub fn new(
        n: usize,
        eps: f64,
        profile: &BaseGraphProfile,
        c: f64,
        params: &TesterParams,
    ) -> Result<Self> {
        check_eps_c(eps, c)?;
        params.validate()?;
        let w = resolve_w(profile, params)?;
        let d = delta_eff(profile) as f64;
        let a = alpha(profile);
        Ok(AdaptiveSizes {
            iter1: iterations(params.a_iter1 * c, usize::MAX),
            s: sample_size(params.a_s * d / (a * eps), n),
            sbar_cap: sample_size(c * d / a, n),
            t: sample_size(params.a_t * d * d / (a * eps), n),
            iter2: iterations((params.a_iter2 * w as f64 * c).powi(w as i32), params.iter2_cap),
            tj: sample_size(params.a_tj * d / eps, n),
            w,
        })
    }

    /// Largest possible distinct-query count: stage 1 probes `v × S` and
    /// `Ō × T`; stage 2 probes `U × T_j` with `|U| = j − 1` for `j = 2..W`.
    pub fn query_bound(&self, n: usize) -> usize {
        let stage1 = self.iter1.saturating_mul(self.s + self.sbar_cap.saturating_mul(self.t));
        let walk = self.w * self.w.saturating_sub(1) / 2;
        let stage2 = self.iter2.saturating_mul(walk).saturating_mul(self.tj);
        stage1.saturating_add(stage2).min(pair_count(n))
    }
}

/// Sample sizes of the non-adaptive tester.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonAdaptiveSizes {
    pub s1: usize,
    pub t: usize,
    pub s2: usize,
    pub w: usize,
}

impl NonAdaptiveSizes {
    pub fn new(
        n: usize,
        eps: f64,
        profile: &BaseGraphProfile,
        c: f64,
        params: &TesterParams,
    ) -> Result<Self> {
        check_eps_c(eps, c)?;
        params.validate()?;
        let w = resolve_w(profile, params)?;
        let d = delta_eff(profile) as f64;
        let a = alpha(profile);
        let e1 = 1.0 - 1.0 / (d + 2.0);
        let e2 = 1.0 - 1.0 / w as f64;
        Ok(NonAdaptiveSizes {
            s1: sample_size(params.a_n1 * (a * eps).powf(-e1), n),
            t: sample_size(params.a_t * d * d / (a * eps), n),
            s2: sample_size(params.a_n3 * (d * c * c * eps).powf(-e2), n),
            w,
        })
    }

    /// `C(|S₁|,2) + |S₁|·|T| + C(|S₂|,2)`, the committed pairs before overlaps.
    pub fn query_bound(&self, n: usize) -> usize {
        (pair_count(self.s1) + self.s1 * self.t + pair_count(self.s2)).min(pair_count(n))
    }
}

/// One scale of the low-degree tester.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LowDegreeLevel {
    pub j: usize,
    pub vertices: usize,
    pub probes: usize,
    pub threshold: f64,
}

/// Levels `j = 0..⌈log₂(1/(cε))⌉`.
pub fn low_degree_levels(
    n: usize,
    eps: f64,
    c: f64,
    beta: f64,
    params: &TesterParams,
) -> Result<Vec<LowDegreeLevel>> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::arg(format!("eps must lie in (0, 1), got {eps}")));
    }
    if !(c.is_finite() && c > 1.0) {
        return Err(Error::arg(format!("c must exceed 1, got {c}")));
    }
    if !(beta > 0.0 && beta <= 1.0) {
        return Err(Error::arg(format!("beta must lie in (0, 1], got {beta}")));
    }
    params.validate()?;
    let ce = c * eps;
    let top = if ce >= 1.0 { 0 } else { (1.0 / ce).log2().ceil() as usize };
    let nf = n as f64;
    Ok((0..=top)
        .map(|j| {
            let scale = (1u64 << j) as f64;
            let vertices = sample_size(
                params.a_l1 * scale / beta * (8.0 * (j as f64 + 2.0)).ln(),
                n,
            );
            let probes = sample_size(
                params.a_l2 / (scale * ce) * (40.0 * vertices.max(1) as f64).ln(),
                n,
            );
            let threshold = ((1.0 + beta / 4.0) * ce * nf).max(0.75 * scale * ce * nf);
            LowDegreeLevel {
                j,
                vertices,
                probes,
                threshold,
            }
        })
        .collect())
}

/// Upper bound on the low-degree tester's distinct queries.
pub fn low_degree_query_bound(levels: &[LowDegreeLevel], n: usize) -> usize {
    levels
        .iter()
        .map(|l| l.vertices * l.probes)
        .sum::<usize>()
        .min(pair_count(n))
}
