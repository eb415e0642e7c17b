//! `first`, `last` and the successor map `after` for `N` points of the orbit
//! `{n * alpha}`, built by induction on `N`, together with the closed form
//! for `after(N, m) - m` and the resulting gap census.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{GapError, Result};
use crate::numeric::{frac_point, surd_sign_i128, Angle, FieldValue};
use num_traits::ToPrimitive;

/// Orbits at least this long compute their positions in parallel.
const PARALLEL_POSITIONS: usize = 2048;

/// A point number `n`, meaningful for `0 <= n < N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointIndex(pub usize);

impl From<usize> for PointIndex {
    fn from(n: usize) -> Self {
        PointIndex(n)
    }
}

/// An angle together with a point count `N >= 1` whose points are pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CircleConfig {
    alpha: Angle,
    n_points: usize,
}

impl CircleConfig {
    /// Fails with `EmptyCircle` for `N = 0` and `PointCollision` for a rational
    /// `p/q` with `N > q`.
    pub fn new(alpha: Angle, n_points: usize) -> Result<Self> {
        if n_points == 0 {
            return Err(GapError::EmptyCircle);
        }
        if let Some(q) = alpha.denominator() {
            if BigInt::from(n_points) > q {
                return Err(GapError::PointCollision {
                    n: n_points,
                    q: q.to_string(),
                });
            }
        }
        Ok(CircleConfig { alpha, n_points })
    }

    pub fn alpha(&self) -> &Angle {
        &self.alpha
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Same angle, different point count.
    pub fn with_points(&self, n_points: usize) -> Result<Self> {
        Self::new(self.alpha.clone(), n_points)
    }

    fn check_index(&self, n: PointIndex) -> Result<usize> {
        if n.0 < self.n_points {
            Ok(n.0)
        } else {
            Err(GapError::IndexOutOfRange {
                m: n.0,
                n: self.n_points,
            })
        }
    }
}

/// Which of the three closed-form bands a point falls in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AfterBranch {
    /// `0 <= m < N - first`: successor is `m + first`.
    First,
    /// `N - first <= m < last`: successor is `m + first - last`.
    Combined,
    /// `last <= m < N`: successor is `m - last`.
    Last,
}

impl fmt::Display for AfterBranch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AfterBranch::First => "First",
            AfterBranch::Combined => "Combined",
            AfterBranch::Last => "Last",
        })
    }
}

/// Closed-form successor of `m` given `N`, `first(N)` and `last(N)`.
///
/// The half-open bands are tried in order, so they partition `0..N`
/// whenever `N <= first + last`.
pub fn closed_form_successor(n_points: usize, first: usize, last: usize, m: usize) -> (usize, AfterBranch) {
    if m + first < n_points {
        (m + first, AfterBranch::First)
    } else if m < last {
        (m + first - last, AfterBranch::Combined)
    } else {
        (m - last, AfterBranch::Last)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GapKind {
    FirstGap,
    LastGap,
    CombinedGap,
}

impl GapKind {
    pub const ALL: [GapKind; 3] = [GapKind::FirstGap, GapKind::LastGap, GapKind::CombinedGap];

    pub fn as_str(self) -> &'static str {
        match self {
            GapKind::FirstGap => "FirstGap",
            GapKind::LastGap => "LastGap",
            GapKind::CombinedGap => "CombinedGap",
        }
    }
}

impl fmt::Display for GapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapClass {
    pub kind: GapKind,
    pub length: FieldValue,
    pub count: usize,
}

/// `successor[m] = after(N, m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AfterTable {
    pub successor: Vec<usize>,
}

impl AfterTable {
    pub fn len(&self) -> usize {
        self.successor.len()
    }

    pub fn is_empty(&self) -> bool {
        self.successor.is_empty()
    }

    pub fn is_permutation(&self) -> bool {
        let mut seen = vec![false; self.len()];
        self.successor
            .iter()
            .all(|&s| s < seen.len() && !std::mem::replace(&mut seen[s], true))
    }

    /// Following `after` from 0 visits every point once before returning to 0.
    pub fn is_single_cycle(&self) -> bool {
        let n = self.len();
        let mut at = 0;
        for step in 1..=n {
            at = match self.successor.get(at) {
                Some(&s) => s,
                None => return false,
            };
            if at == 0 {
                return step == n;
            }
        }
        false
    }
}

/// Gap structure of one configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    pub config: CircleConfig,
    /// `None` when `N = 1`.
    pub first: Option<usize>,
    pub last: Option<usize>,
    /// `first + last`.
    pub m_total: Option<usize>,
    /// At most three classes, zero counts dropped, equal lengths merged.
    pub classes: Vec<GapClass>,
    pub after_table: Option<AfterTable>,
}

impl GapReport {
    pub fn class(&self, kind: GapKind) -> Option<&GapClass> {
        self.classes.iter().find(|c| c.kind == kind)
    }

    /// `sum(count * length)`, which is exactly 1 for a correct census.
    pub fn total_length(&self) -> FieldValue {
        self.classes.iter().fold(FieldValue::zero(), |acc, c| {
            acc.try_add(&c.length.scale(&BigInt::from(c.count)))
                .expect("class lengths share the angle's radicand")
        })
    }
}

/// The positions `{n * alpha}` for `0 <= n < N`, computed once.
#[derive(Clone, Debug)]
pub struct Orbit {
    config: CircleConfig,
    positions: Vec<FieldValue>,
    keys: Option<SharedDenominator>,
    /// `ranks[n]` is the place of point `n` in increasing position; absent
    /// when two positions coincide.
    ranks: Option<Vec<u32>>,
}

/// Positions rewritten as `(A_n + B_n*sqrt(d)) / c` over the angle's own
/// denominator `c`, so two points compare by the sign of
/// `(A_i - A_j) + (B_i - B_j)*sqrt(d)` alone.
#[derive(Clone, Debug)]
struct SharedDenominator {
    d: i128,
    coeffs: Vec<(i128, i128)>,
}

impl SharedDenominator {
    fn build(alpha: &FieldValue, positions: &[FieldValue]) -> Option<Self> {
        let c = alpha.c();
        let d = alpha.d().to_i128()?;
        let coeffs = positions
            .iter()
            .map(|p| {
                let k = &c / p.c();
                Some(((p.a() * &k).to_i128()?, (p.b() * &k).to_i128()?))
            })
            .collect::<Option<Vec<_>>>()?;
        Some(SharedDenominator { d, coeffs })
    }

    fn cmp(&self, i: usize, j: usize) -> Option<Ordering> {
        let (ai, bi) = self.coeffs[i];
        let (aj, bj) = self.coeffs[j];
        surd_sign_i128(ai.checked_sub(aj)?, bi.checked_sub(bj)?, self.d)
    }
}

impl Orbit {
    pub fn new(config: &CircleConfig) -> Self {
        let alpha = config.alpha();
        let n = config.n_points();
        let positions: Vec<FieldValue> = if n >= PARALLEL_POSITIONS {
            (0..n as u64).into_par_iter().map(|k| frac_point(alpha, k)).collect()
        } else {
            (0..n as u64).map(|k| frac_point(alpha, k)).collect()
        };
        let keys = SharedDenominator::build(alpha.value(), &positions);
        let mut orbit = Orbit {
            config: config.clone(),
            positions,
            keys,
            ranks: None,
        };
        orbit.ranks = orbit.rank_points();
        orbit
    }

    pub fn config(&self) -> &CircleConfig {
        &self.config
    }

    pub fn n_points(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[FieldValue] {
        &self.positions
    }

    pub fn position(&self, n: usize) -> &FieldValue {
        &self.positions[n]
    }

    fn exact_cmp(&self, i: usize, j: usize) -> Ordering {
        let fast = self.keys.as_ref().and_then(|k| k.cmp(i, j));
        fast.unwrap_or_else(|| {
            self.positions[i]
                .compare(&self.positions[j])
                .expect("orbit positions share one radicand")
        })
    }

    fn rank_points(&self) -> Option<Vec<u32>> {
        let n = self.positions.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_unstable_by(|&i, &j| self.exact_cmp(i, j));
        if order.windows(2).any(|w| self.exact_cmp(w[0], w[1]) == Ordering::Equal) {
            return None;
        }
        let mut ranks = vec![0u32; n];
        for (r, &p) in order.iter().enumerate() {
            ranks[p] = r as u32;
        }
        Some(ranks)
    }

    /// Order of two points; equal positions of distinct points are a collision.
    pub fn cmp_points(&self, i: usize, j: usize) -> Result<Ordering> {
        if let Some(ranks) = &self.ranks {
            return Ok(ranks[i].cmp(&ranks[j]));
        }
        let ord = self.exact_cmp(i, j);
        if ord == Ordering::Equal && i != j {
            return Err(self.collision());
        }
        Ok(ord)
    }

    fn collision(&self) -> GapError {
        GapError::PointCollision {
            n: self.n_points(),
            q: self
                .config
                .alpha()
                .denominator()
                .map_or_else(|| "?".into(), |q| q.to_string()),
        }
    }

    fn require_two(&self) -> Result<()> {
        if self.n_points() < 2 {
            Err(GapError::TooFewPoints(self.n_points()))
        } else {
            Ok(())
        }
    }

    /// Extreme point of `1..N` under `keep(current, candidate)`, by induction
    /// on `N` starting from `N = 2` where the only candidate is 1.
    fn extreme(&self, keep_current: Ordering) -> Result<usize> {
        self.require_two()?;
        let mut best = 1;
        for k in 2..self.n_points() {
            if self.cmp_points(best, k)? != keep_current {
                best = k;
            }
        }
        Ok(best)
    }

    /// The point with the smallest nonzero position.
    pub fn first(&self) -> Result<usize> {
        self.extreme(Ordering::Less)
    }

    /// The point with the largest position.
    pub fn last(&self) -> Result<usize> {
        self.extreme(Ordering::Greater)
    }

    /// Successor of `n` built by induction on the number of points: the
    /// candidate is replaced by `k` whenever `{k a}` lies strictly between
    /// `{n a}` and the candidate. No candidate means `n` is the last point
    /// and the successor wraps to 0.
    pub fn after_inductive(&self, n: PointIndex) -> Result<usize> {
        let n = self.config.check_index(n)?;
        let mut candidate: Option<usize> = None;
        for k in 1..self.n_points() {
            if self.cmp_points(n, k)? != Ordering::Less {
                continue;
            }
            candidate = match candidate {
                Some(i) if self.cmp_points(i, k)? == Ordering::Less => Some(i),
                _ => Some(k),
            };
        }
        Ok(candidate.unwrap_or(0))
    }

    /// Successor of `m` from the closed form; requires `N >= 2`.
    pub fn after_closed_form(&self, m: PointIndex) -> Result<(usize, AfterBranch)> {
        let m = self.config.check_index(m)?;
        let (first, last) = (self.first()?, self.last()?);
        Ok(closed_form_successor(self.n_points(), first, last, m))
    }

    /// Whole successor table from the closed form, `O(N)` after `first`/`last`.
    pub fn after_table(&self) -> Result<AfterTable> {
        let (first, last) = (self.first()?, self.last()?);
        let n = self.n_points();
        Ok(AfterTable {
            successor: (0..n).map(|m| closed_form_successor(n, first, last, m).0).collect(),
        })
    }

    /// Whole successor table by the inductive construction, `O(N^2)`.
    pub fn after_table_inductive(&self) -> Result<AfterTable> {
        let successor = (0..self.n_points())
            .map(|m| self.after_inductive(PointIndex(m)))
            .collect::<Result<_>>()?;
        Ok(AfterTable { successor })
    }

    /// Gap classes with their exact lengths and multiplicities.
    ///
    /// Arc lengths are the clockwise distances `{first a}` and `1 - {last a}`
    /// and their sum. When two classes share a length (only possible for a
    /// rational angle with `N = q`) they are merged into the earlier kind.
    pub fn census(&self, with_table: bool) -> Result<GapReport> {
        let n = self.n_points();
        if n == 1 {
            return Ok(GapReport {
                config: self.config.clone(),
                first: None,
                last: None,
                m_total: None,
                classes: vec![GapClass {
                    kind: GapKind::FirstGap,
                    length: FieldValue::one(),
                    count: 1,
                }],
                after_table: with_table.then(|| AfterTable { successor: vec![0] }),
            });
        }
        let (first, last) = (self.first()?, self.last()?);
        let first_len = self.positions[first].clone();
        let last_len = FieldValue::one()
            .try_sub(&self.positions[last])
            .expect("rational minus orbit position");
        let combined_len = first_len.try_add(&last_len).expect("same radicand");
        let candidates = [
            (GapKind::FirstGap, first_len, n - first),
            (GapKind::LastGap, last_len, n - last),
            (GapKind::CombinedGap, combined_len, (first + last).saturating_sub(n)),
        ];
        let mut classes: Vec<GapClass> = Vec::with_capacity(3);
        for (kind, length, count) in candidates {
            if count == 0 {
                continue;
            }
            match classes.iter_mut().find(|c| c.length == length) {
                Some(c) => c.count += count,
                None => classes.push(GapClass { kind, length, count }),
            }
        }
        let after_table = if with_table { Some(self.after_table()?) } else { None };
        Ok(GapReport {
            config: self.config.clone(),
            first: Some(first),
            last: Some(last),
            m_total: Some(first + last),
            classes,
            after_table,
        })
    }
}

pub fn first(cfg: &CircleConfig) -> Result<usize> {
    Orbit::new(cfg).first()
}

pub fn last(cfg: &CircleConfig) -> Result<usize> {
    Orbit::new(cfg).last()
}

pub fn after_inductive(cfg: &CircleConfig, n: PointIndex) -> Result<usize> {
    Orbit::new(cfg).after_inductive(n)
}

pub fn after_closed_form(cfg: &CircleConfig, m: PointIndex) -> Result<usize> {
    Ok(Orbit::new(cfg).after_closed_form(m)?.0)
}

pub fn gap_census(cfg: &CircleConfig, with_table: bool) -> Result<GapReport> {
    Orbit::new(cfg).census(with_table)
}

/// `N = first(N) + last(N)`: the saturated size with at most two gap lengths.
pub fn particular_case_holds(cfg: &CircleConfig) -> Result<bool> {
    let orbit = Orbit::new(cfg);
    Ok(orbit.first()? + orbit.last()? == cfg.n_points())
}
