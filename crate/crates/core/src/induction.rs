//! Planning for the inductive cohomology argument: the homological
//! vanishing bound c(g, n), compact-support vanishing via duality, the base
//! cases a fixed degree leaves over a finite window, and Betti-number
//! sandwiches (deduce the full Betti vector from chi, duality, and bounds).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::euler::{rational_str, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum InductionError {
    #[error("(g, n) = ({0}, {1}) violates 2g - 2 + n > 0")]
    UnstablePair(u32, u32),
}

/// The vanishing bound: homology of the open moduli space (and of any of
/// its level covers) vanishes above c(g, n), where
/// c(0, n) = n - 3, c(g, 0) = 4g - 5 and c(g, n) = 4g - 4 + n for g, n > 0.
pub fn harer_bound(g: u32, n: u32) -> Result<i64, InductionError> {
    if 2 * i64::from(g) - 2 + i64::from(n) <= 0 {
        return Err(InductionError::UnstablePair(g, n));
    }
    let (g, n) = (i64::from(g), i64::from(n));
    Ok(if g == 0 {
        n - 3
    } else if n == 0 {
        4 * g - 5
    } else {
        4 * g - 4 + n
    })
}

/// Outcome of the compact-support vanishing test in one degree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VanishingReport {
    pub g: u32,
    pub n: u32,
    pub k: u32,
    pub c_value: i64,
    pub complex_dim: i64,
    /// H^k_c = 0 by duality: 2 dim - k exceeds the vanishing bound.
    pub vanishes: bool,
    /// True when the claimed range for this degree disagrees with the
    /// duality computation. Never silently dropped.
    pub flagged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claimed_range: Option<String>,
}

/// The ranges claimed for degrees 1 and 3; other degrees carry no claim.
fn claimed_vanishing(g: u32, n: u32, k: u32) -> Option<(bool, &'static str)> {
    match k {
        1 => Some((
            g >= 2 || (g == 1 && n >= 2) || (g == 0 && n >= 4),
            "k=1: g >= 2; g = 1, n >= 2; g = 0, n >= 4",
        )),
        3 => Some((
            g >= 3 || (g == 2 && n >= 2) || (g == 1 && n >= 4) || (g == 0 && n >= 7),
            "k=3: g >= 3; g = 2, n >= 2; g = 1, n >= 4; g = 0, n >= 7",
        )),
        _ => None,
    }
}

/// Does H^k with compact supports vanish on the open space? Decided through
/// duality against the vanishing bound: H^k_c is dual to homology in degree
/// 2(3g - 3 + n) - k, which vanishes when that degree exceeds c(g, n).
pub fn hc_vanishes(g: u32, n: u32, k: u32) -> Result<VanishingReport, InductionError> {
    let c_value = harer_bound(g, n)?;
    let complex_dim = 3 * i64::from(g) - 3 + i64::from(n);
    let vanishes = 2 * complex_dim - i64::from(k) > c_value;
    let (flagged, claimed_range) = match claimed_vanishing(g, n, k) {
        Some((claimed, range)) => (claimed != vanishes, Some(range.to_string())),
        None => (false, None),
    };
    Ok(VanishingReport {
        g,
        n,
        k,
        c_value,
        complex_dim,
        vanishes,
        flagged,
        claimed_range,
    })
}

/// All stable (g, n) in the window where the duality test does NOT give
/// vanishing in degree k: the base cases the induction must verify
/// directly. A degree above the real dimension of everything in the window
/// is trivially zero everywhere, and the query collapses to the empty list.
pub fn base_cases(k: u32, g_max: u32, n_max: u32) -> Vec<(u32, u32)> {
    let window_top = 2 * (3 * i64::from(g_max) - 3 + i64::from(n_max));
    if i64::from(k) > window_top {
        return Vec::new();
    }
    let mut out = Vec::new();
    for g in 0..=g_max {
        for n in 0..=n_max {
            let Ok(report) = hc_vanishes(g, n, k) else {
                continue; // unstable pair
            };
            if !report.vanishes {
                out.push((g, n));
            }
        }
    }
    out
}

/// Vanishing reports for every stable pair in a window, sorted by (g, n).
pub fn window_reports(k: u32, g_max: u32, n_max: u32) -> Vec<VanishingReport> {
    let mut out = Vec::new();
    for g in 0..=g_max {
        for n in 0..=n_max {
            if let Ok(report) = hc_vanishes(g, n, k) {
                out.push(report);
            }
        }
    }
    out
}

/// A bound on one Betti number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiBound {
    pub k: usize,
    pub value: u64,
}

/// Constraints on the Betti vector of a smooth compact space of complex
/// dimension d: duality b_k = b_{2d-k}, the alternating sum equal to chi,
/// per-degree fixed values and upper/lower bounds, and a global cap making
/// the search box finite. Connectedness (b_0 = 1) is an explicit input,
/// never assumed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BettiConstraintSystem {
    pub complex_dim: usize,
    #[serde(with = "rational_str")]
    pub chi: Rational,
    pub cap: u64,
    #[serde(default)]
    pub fixed: Vec<BettiBound>,
    #[serde(default)]
    pub lower: Vec<BettiBound>,
    #[serde(default)]
    pub upper: Vec<BettiBound>,
}

/// Result of the exhaustive search over the constrained integer box.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum BettiResolution {
    Unique { betti: Vec<u64> },
    Ambiguous { first: Vec<u64>, second: Vec<u64> },
    Infeasible,
}

impl BettiConstraintSystem {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Interval [lo, hi] allowed for b_k after folding all bounds through
    /// duality; empty intervals come out as lo > hi.
    fn interval(&self, k: usize) -> (u64, u64) {
        let mirror = 2 * self.complex_dim - k;
        let mut lo = 0u64;
        let mut hi = self.cap;
        for &BettiBound { k: j, value } in &self.fixed {
            if j == k || j == mirror {
                lo = lo.max(value);
                hi = hi.min(value);
            }
        }
        for &BettiBound { k: j, value } in &self.lower {
            if j == k || j == mirror {
                lo = lo.max(value);
            }
        }
        for &BettiBound { k: j, value } in &self.upper {
            if j == k || j == mirror {
                hi = hi.min(value);
            }
        }
        (lo, hi)
    }

    pub fn satisfies(&self, betti: &[u64]) -> bool {
        if betti.len() != 2 * self.complex_dim + 1 {
            return false;
        }
        for k in 0..=2 * self.complex_dim {
            if betti[k] != betti[2 * self.complex_dim - k] {
                return false;
            }
            let (lo, hi) = self.interval(k);
            if betti[k] < lo || betti[k] > hi {
                return false;
            }
        }
        let sum: i64 = betti
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        Rational::from_integer(sum) == self.chi
    }
}

/// Exhaustively search the constrained box for Betti vectors. The free
/// variables are b_0..b_{d-1}; duality mirrors them and the alternating sum
/// determines the middle number.
pub fn resolve_betti(sys: &BettiConstraintSystem) -> BettiResolution {
    let d = sys.complex_dim;
    if !sys.chi.is_integer() {
        return BettiResolution::Infeasible;
    }
    let chi = sys.chi.to_integer();
    let mut solutions: Vec<Vec<u64>> = Vec::new();
    let mut lows = Vec::with_capacity(d);
    let mut highs = Vec::with_capacity(d);
    for k in 0..d {
        let (lo, hi) = sys.interval(k);
        if lo > hi {
            return BettiResolution::Infeasible;
        }
        lows.push(lo);
        highs.push(hi);
    }
    let (mid_lo, mid_hi) = sys.interval(d);
    if mid_lo > mid_hi {
        return BettiResolution::Infeasible;
    }

    let mut current = lows.clone();
    'search: loop {
        // middle Betti number forced by the alternating sum
        let partial: i64 = current
            .iter()
            .enumerate()
            .map(|(k, &b)| if k % 2 == 0 { b as i64 } else { -(b as i64) })
            .sum();
        let middle = if d.is_multiple_of(2) {
            chi - 2 * partial
        } else {
            2 * partial - chi
        };
        if middle >= 0 {
            let middle = middle as u64;
            if middle >= mid_lo && middle <= mid_hi {
                let mut betti = vec![0u64; 2 * d + 1];
                for k in 0..d {
                    betti[k] = current[k];
                    betti[2 * d - k] = current[k];
                }
                betti[d] = middle;
                debug_assert!(sys.satisfies(&betti));
                solutions.push(betti);
                if solutions.len() == 2 {
                    break 'search;
                }
            }
        }
        // advance the odometer over the free box
        let mut pos = 0;
        loop {
            if pos == d {
                break 'search;
            }
            if current[pos] < highs[pos] {
                current[pos] += 1;
                break;
            }
            current[pos] = lows[pos];
            pos += 1;
        }
    }

    match solutions.len() {
        0 => BettiResolution::Infeasible,
        1 => BettiResolution::Unique {
            betti: solutions.pop().expect("one solution"),
        },
        _ => {
            let second = solutions.pop().expect("two solutions");
            let first = solutions.pop().expect("two solutions");
            BettiResolution::Ambiguous { first, second }
        }
    }
}

/// Convenience constructor used by the bundled systems.
pub fn betti_system(
    complex_dim: usize,
    chi: i64,
    cap: u64,
    fixed: &[(usize, u64)],
    lower: &[(usize, u64)],
    upper: &[(usize, u64)],
) -> BettiConstraintSystem {
    let bound = |list: &[(usize, u64)]| {
        list.iter()
            .map(|&(k, value)| BettiBound { k, value })
            .collect()
    };
    BettiConstraintSystem {
        complex_dim,
        chi: Rational::from_integer(chi),
        cap,
        fixed: bound(fixed),
        lower: bound(lower),
        upper: bound(upper),
    }
}

/// The flagged subset of a window, keyed by (g, n, k). Exposed so callers
/// can assert that no discrepancy is silently dropped.
pub fn flagged_cases(k: u32, g_max: u32, n_max: u32) -> BTreeMap<(u32, u32), VanishingReport> {
    window_reports(k, g_max, n_max)
        .into_iter()
        .filter(|r| r.flagged)
        .map(|r| ((r.g, r.n), r))
        .collect()
}
